#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cmt/rational.hpp"

namespace cmt {

// Finite words over the binary alphabet {0,1}. All wire encodings in
// this library stay inside {0,1}; the human-readable separator used by
// the CLI never reaches a name stream.
using Word = std::string;

/// True iff every symbol of `w` is '0' or '1'.
bool is_binary(const Word& w);

// ---------------------------------------------------------------------------
// Wrapping codec.
//
// wrap(a1 a2 ... ak) = 110 0a1 0a2 ... 0ak 011.  Each payload symbol is
// prefixed by '0', so "11" never occurs strictly inside the payload and
// a concatenation of wrapped units (with optional '0' filler between
// them) parses back uniquely.

/// iota-wrapping of a binary word.
Word wrap(const Word& w);

/// Incremental scanner for wrapped units inside a growing symbol
/// sequence. Feeding more symbols never changes units already found;
/// malformed regions between units are skipped.
class WrapScanner {
 public:
  /// Appends symbols and returns the units completed by this chunk,
  /// already unwrapped.
  std::vector<Word> feed(std::string_view chunk);

  /// Units found so far, in order of completion.
  const std::vector<Word>& units() const { return units_; }

 private:
  void scan();

  std::string buf_;
  std::size_t pos_ = 0;  // start of the unscanned region
  std::vector<Word> units_;
};

/// All maximal wrapped units of a finite word, unwrapped.
std::vector<Word> scan_wrapped(const Word& w);

/// <w1,...,wn> = wrap(w1) ... wrap(wn).
Word tuple_words(const std::vector<Word>& parts);

/// Inverse of tuple_words on well-formed tuples; nullopt when `w` is not
/// exactly a concatenation of wrapped units.
std::optional<std::vector<Word>> untuple_words(const Word& w);

// ---------------------------------------------------------------------------
// Pairing on naturals: pi(i,j) = (i+j)(i+j+1)/2 + j.

std::uint64_t cantor_pair(std::uint64_t i, std::uint64_t j);
std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t n);

// ---------------------------------------------------------------------------
// Canonical notations nu_N and nu_Q.
//
// nu_N: binary, most significant bit first, no leading zeros; 0 -> "0".
// nu_Q: the tuple <sign, nu_N(|num|), nu_N(den)> with sign word "0" for
// >= 0 and "1" for < 0, the fraction reduced, den >= 1, and no "-0".

Word nat_word(std::uint64_t n);
std::optional<std::uint64_t> word_nat(const Word& w);

Word rat_word(const Rat& q);
std::optional<Rat> word_rat(const Word& w);

/// Encoded size |rat_word(q)| without building the word.
std::size_t rat_word_size(const Rat& q);

// ---------------------------------------------------------------------------
// Canonical enumeration of the rationals, ordered by encoded word size
// and deterministically within one size. Used as the search order of
// every dovetailed bound search, so token appearance budgets are
// reproducible.

class RationalEnumerator {
 public:
  /// i-th rational of the canonical order (cached, thread-unsafe).
  const Rat& at(std::size_t i);

  /// Index of `q` in the canonical order (linear scan; test helper).
  std::size_t index_of(const Rat& q);

  /// Number of rationals with encoded size <= `size`.
  std::size_t count_below_size(std::size_t size);

 private:
  void grow();

  std::vector<Rat> cache_;
  std::size_t next_bits_ = 2;  // total bit size num+den of the next batch
};

/// Process-wide enumerator (single-threaded reference scheduler).
RationalEnumerator& rationals();

}  // namespace cmt
