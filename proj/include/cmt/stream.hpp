#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cmt/words.hpp"

namespace cmt {

/// Sink handed to stream producers. `token` appends one wrapped unit,
/// `raw` appends bare symbols (En-style markers, interleavings, ...).
class Emitter {
 public:
  virtual ~Emitter() = default;
  virtual void raw(std::string_view symbols) = 0;
  virtual void token(const Word& payload) = 0;
};

/// One resumable computation inside a dovetailed stream. Each call does
/// a bounded amount of work; returning false retires the task.
using Task = std::function<bool(Emitter&)>;

/// Lazily materialized countable task family; nullopt ends the family.
using TaskFamily = std::function<std::optional<Task>(std::size_t)>;

/// Budget by which task `n` of a dovetailed family is guaranteed to
/// have received `s` steps (triangle schedule; one budget unit is one
/// scheduler step).
inline constexpr std::size_t dovetail_budget(std::size_t n, std::size_t s) {
  return (n + s + 1) * (n + s + 1);
}

/// Source budget a searching task uses at refinement level `s`. With a
/// quadratic ramp, a token whose witness needs source budget B appears
/// within dovetail_budget(n, sqrt(B)+1) of the searching stream, and the
/// total work spent on a source stays linear in the caller's budget.
inline constexpr std::size_t refine_budget(std::size_t level) { return level * level; }

/// A deterministic producer of symbols. `step` may append any bounded
/// number of symbols (possibly none); returning false means the stream
/// is exhausted (finite streams only).
class SymbolSource {
 public:
  virtual ~SymbolSource() = default;
  virtual bool step(Emitter& out) = 0;
};

// ---------------------------------------------------------------------------

/// An immutable, replayable symbol stream. Prefixes are memoized: the
/// underlying source runs once, so prefix(n) is a prefix of prefix(m)
/// for n <= m and repeated calls agree. Cheap to copy (shared state).
class NameStream {
 public:
  /// Exhausted empty stream.
  NameStream();
  explicit NameStream(std::unique_ptr<SymbolSource> source);

  /// Symbols produced within `budget` scheduler steps.
  std::string prefix(std::size_t budget) const;

  /// Number of complete wrapped units within `budget` steps.
  std::size_t token_count(std::size_t budget) const;

  /// i-th completed unit, unwrapped. Requires a prior token_count (or
  /// tokens) call that returned > i.
  Word token_at(std::size_t i) const;

  /// All units completed within `budget` steps, unwrapped.
  std::vector<Word> tokens(std::size_t budget) const;

  /// True once the source reported exhaustion within `budget` steps.
  bool exhausted_at(std::size_t budget) const;

  // -- constructors ---------------------------------------------------------

  /// Fair dovetailing of one or more task families. Families are merged
  /// round-robin by index, so family f's task n has merged index
  /// n * families.size() + f. When every step of a scheduler round
  /// emits nothing, a single '0' filler symbol is appended; fillers
  /// never form or break a wrapped unit.
  static NameStream list_name(TaskFamily family);
  static NameStream list_name(std::vector<TaskFamily> families);

  /// Finite stream of the given units, one per step.
  static NameStream from_units(std::vector<Word> units);

  /// <w, p> = wrap(w) followed by p.
  static NameStream pair_word(const Word& w, NameStream p);

  /// <a, b>: symbols a(0) b(0) a(1) b(1) ...
  static NameStream interleave(NameStream a, NameStream b);

  /// Components of an interleaved pair.
  static NameStream even_symbols(NameStream p);
  static NameStream odd_symbols(NameStream p);

  /// <p_0, p_1, ...>(pi(i,j)) = p_i(j) with the Cantor pairing.
  static NameStream omega_tuple(std::function<NameStream(std::size_t)> family);

  /// Component i of an omega tuple.
  static NameStream project(NameStream p, std::size_t i);

  /// Applies `fn` to every token of `src` in order; whatever `fn` emits
  /// becomes the new stream.
  static NameStream map_tokens(NameStream src,
                               std::function<void(const Word&, Emitter&)> fn);

  // -- low-level accessors used by stream combinators ------------------------

  std::size_t symbol_count(std::size_t budget) const;
  char symbol_at(std::size_t i) const;
  /// Appends symbols [from, symbol_count) to `out`; returns the new end.
  std::size_t copy_symbols(std::size_t from, std::string& out) const;

 private:
  struct Core;
  std::shared_ptr<Core> core_;
};

/// Incremental reader of a stream's token sequence: each token is
/// reported exactly once across drain calls.
class TokenCursor {
 public:
  explicit TokenCursor(NameStream s) : stream_(std::move(s)) {}

  void drain(std::size_t budget, const std::function<void(const Word&)>& fn) {
    std::size_t n = stream_.token_count(budget);
    for (; next_ < n; ++next_) fn(stream_.token_at(next_));
  }

  const NameStream& stream() const { return stream_; }

 private:
  NameStream stream_;
  std::size_t next_ = 0;
};

/// Task that repeatedly evaluates `accept(level)` with level = 0,1,2,...
/// and emits `token` once accepted. `accept` must be monotone: once it
/// holds for some level it holds for all larger ones.
Task search_task(Word token, std::function<bool(std::size_t)> accept);

/// Task that at each level emits whatever `produce(level)` returns.
/// Producers must be sound at every level; the task never retires.
Task refine_task(std::function<std::optional<Word>(std::size_t)> produce);

}  // namespace cmt
