#include "cmt/words.hpp"

#include <algorithm>
#include <cmath>

#include "cmt/errors.hpp"

namespace cmt {

bool is_binary(const Word& w) {
  return std::all_of(w.begin(), w.end(), [](char c) { return c == '0' || c == '1'; });
}

Word wrap(const Word& w) {
  Word out;
  out.reserve(2 * w.size() + 6);
  out += "110";
  for (char c : w) {
    out += '0';
    out += c;
  }
  out += "011";
  return out;
}

namespace {

enum class Parse { kComplete, kViolation, kIncomplete };

// Attempts to parse one wrapped unit starting at offset i ("110" already
// matched there). On kComplete, `payload` holds the unwrapped word and
// `end` the offset one past the trailer.
Parse parse_unit(const std::string& s, std::size_t i, Word& payload, std::size_t& end) {
  std::size_t j = i + 3;
  payload.clear();
  while (true) {
    if (j >= s.size()) return Parse::kIncomplete;
    if (s[j] != '0') return Parse::kViolation;
    if (j + 1 >= s.size()) return Parse::kIncomplete;
    char d = s[j + 1];
    if (d == '0') {
      payload.push_back('0');
      j += 2;
      continue;
    }
    if (d != '1') return Parse::kViolation;
    // "01...": either the pair (0,1) or the start of the trailer "011";
    // the next symbol decides (a pair can only be followed by '0').
    if (j + 2 >= s.size()) return Parse::kIncomplete;
    if (s[j + 2] == '1') {
      end = j + 3;
      return Parse::kComplete;
    }
    payload.push_back('1');
    j += 2;
  }
}

}  // namespace

void WrapScanner::scan() {
  Word payload;
  while (true) {
    std::size_t i = buf_.find("110", pos_);
    if (i == std::string::npos) {
      // Nothing before the last two symbols can still become a unit start.
      if (buf_.size() >= 2) pos_ = std::max(pos_, buf_.size() - 2);
      return;
    }
    pos_ = i;
    std::size_t end = 0;
    switch (parse_unit(buf_, i, payload, end)) {
      case Parse::kComplete:
        units_.push_back(payload);
        pos_ = end;
        break;
      case Parse::kViolation:
        pos_ = i + 1;
        break;
      case Parse::kIncomplete:
        return;  // decided by future symbols; pos_ stays at i
    }
  }
}

std::vector<Word> WrapScanner::feed(std::string_view chunk) {
  std::size_t before = units_.size();
  buf_.append(chunk);
  scan();
  return {units_.begin() + static_cast<std::ptrdiff_t>(before), units_.end()};
}

std::vector<Word> scan_wrapped(const Word& w) {
  WrapScanner scanner;
  return scanner.feed(w);
}

Word tuple_words(const std::vector<Word>& parts) {
  Word out;
  for (const Word& p : parts) out += wrap(p);
  return out;
}

std::optional<std::vector<Word>> untuple_words(const Word& w) {
  // Exact concatenation of units: re-wrapping the scan must reproduce w.
  std::vector<Word> units = scan_wrapped(w);
  if (tuple_words(units) != w) return std::nullopt;
  return units;
}

std::uint64_t cantor_pair(std::uint64_t i, std::uint64_t j) {
  std::uint64_t s = i + j;
  return s * (s + 1) / 2 + j;
}

std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t n) {
  // Largest s with s(s+1)/2 <= n.
  std::uint64_t s = static_cast<std::uint64_t>((std::sqrt(8.0 * static_cast<double>(n) + 1.0) - 1.0) / 2.0);
  while (s * (s + 1) / 2 > n) --s;
  while ((s + 1) * (s + 2) / 2 <= n) ++s;
  std::uint64_t j = n - s * (s + 1) / 2;
  return {s - j, j};
}

Word nat_word(std::uint64_t n) {
  if (n == 0) return "0";
  Word out;
  while (n > 0) {
    out.push_back(static_cast<char>('0' + (n & 1)));
    n >>= 1;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::optional<std::uint64_t> word_nat(const Word& w) {
  if (w.empty() || !is_binary(w)) return std::nullopt;
  if (w == "0") return 0;
  if (w[0] != '1') return std::nullopt;  // no leading zeros
  if (w.size() > 63) return std::nullopt;
  std::uint64_t n = 0;
  for (char c : w) n = (n << 1) | static_cast<std::uint64_t>(c - '0');
  return n;
}

namespace {

Word int_bits(const Int& n) {
  // |n| in binary, MSB first; 0 -> "0".
  if (n == 0) return "0";
  Int a = abs(n);
  return a.get_str(2);
}

std::optional<Int> bits_int(const Word& w) {
  if (w.empty() || !is_binary(w)) return std::nullopt;
  if (w != "0" && w[0] != '1') return std::nullopt;
  Int n;
  if (mpz_set_str(n.get_mpz_t(), w.c_str(), 2) != 0) return std::nullopt;
  return n;
}

std::size_t bit_count(const Int& n) {
  if (n == 0) return 1;
  return mpz_sizeinbase(n.get_mpz_t(), 2);
}

}  // namespace

Word rat_word(const Rat& q) {
  Word sign = (q < 0) ? "1" : "0";
  return tuple_words({sign, int_bits(q.get_num()), int_bits(q.get_den())});
}

std::optional<Rat> word_rat(const Word& w) {
  auto parts = untuple_words(w);
  if (!parts || parts->size() != 3) return std::nullopt;
  const Word& sign = (*parts)[0];
  if (sign != "0" && sign != "1") return std::nullopt;
  auto num = bits_int((*parts)[1]);
  auto den = bits_int((*parts)[2]);
  if (!num || !den || *den < 1) return std::nullopt;
  if (sign == "1" && *num == 0) return std::nullopt;  // no "-0"
  Rat q(*num, *den);
  Rat canon = q;
  canon.canonicalize();
  if (canon.get_num() != q.get_num() || canon.get_den() != q.get_den()) {
    return std::nullopt;  // not reduced
  }
  if (sign == "1") canon = -canon;
  return canon;
}

std::size_t rat_word_size(const Rat& q) {
  return 20 + 2 * (bit_count(q.get_num()) + bit_count(q.get_den()));
}

const Rat& RationalEnumerator::at(std::size_t i) {
  while (cache_.size() <= i) grow();
  return cache_[i];
}

std::size_t RationalEnumerator::index_of(const Rat& q) {
  for (std::size_t i = 0;; ++i) {
    if (at(i) == q) return i;
  }
}

std::size_t RationalEnumerator::count_below_size(std::size_t size) {
  if (size < 24) return 0;
  std::size_t max_bits = (size - 20) / 2;
  while (next_bits_ <= max_bits) grow();
  std::size_t n = 0;
  while (n < cache_.size() && rat_word_size(cache_[n]) <= size) ++n;
  return n;
}

void RationalEnumerator::grow() {
  // One batch: all reduced fractions with bit_count(num)+bit_count(den)
  // == next_bits_, ordered by (num bits, num, den, sign).
  std::size_t t = next_bits_++;
  for (std::size_t nbits = 1; nbits < t; ++nbits) {
    std::size_t dbits = t - nbits;
    Int num_lo = (nbits == 1) ? Int(0) : Int(Int(1) << (nbits - 1));
    Int num_hi = (Int(1) << nbits) - 1;
    Int den_lo = (dbits == 1) ? Int(1) : Int(Int(1) << (dbits - 1));
    Int den_hi = (Int(1) << dbits) - 1;
    for (Int num = num_lo; num <= num_hi; ++num) {
      for (Int den = den_lo; den <= den_hi; ++den) {
        Int g;
        mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (g != 1) continue;
        Rat q(num, den);
        cache_.push_back(q);
        if (num != 0) cache_.push_back(-q);
      }
    }
  }
}

RationalEnumerator& rationals() {
  static RationalEnumerator e;
  return e;
}

std::optional<Rat> rat_parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::string s(text);
  // mpq_class accepts "p/q"; validate shape first to avoid GMP aborts.
  std::size_t slash = s.find('/');
  auto is_int = [](std::string_view v) {
    if (!v.empty() && v[0] == '-') v.remove_prefix(1);
    if (v.empty()) return false;
    return std::all_of(v.begin(), v.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (slash == std::string::npos) {
    if (!is_int(s)) return std::nullopt;
  } else {
    std::string_view den = std::string_view(s).substr(slash + 1);
    if (!is_int(std::string_view(s).substr(0, slash)) || !is_int(den) ||
        (!den.empty() && den[0] == '-')) {
      return std::nullopt;
    }
  }
  Rat q;
  if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0) return std::nullopt;
  if (q.get_den() == 0) return std::nullopt;
  q.canonicalize();
  return q;
}

}  // namespace cmt
