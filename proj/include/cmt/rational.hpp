#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace cmt {

// Exact arithmetic throughout: all measure values, metric values and
// bound comparisons are GMP rationals, never floating point.
using Rat = mpq_class;
using Int = mpz_class;

/// 2^e for possibly negative e.
inline Rat pow2(long e) {
  Rat r(1);
  if (e >= 0) {
    mpz_ui_pow_ui(mpq_numref(r.get_mpq_t()), 2, static_cast<unsigned long>(e));
  } else {
    mpz_ui_pow_ui(mpq_denref(r.get_mpq_t()), 2, static_cast<unsigned long>(-e));
  }
  return r;
}

/// base^e for positive integer base and possibly negative e.
inline Rat pow_int(unsigned long base, long e) {
  Rat r(1);
  if (e >= 0) {
    mpz_ui_pow_ui(mpq_numref(r.get_mpq_t()), base, static_cast<unsigned long>(e));
  } else {
    mpz_ui_pow_ui(mpq_denref(r.get_mpq_t()), base, static_cast<unsigned long>(-e));
  }
  return r;
}

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

/// Parses "p", "-p" or "p/q" (q > 0 after canonicalization). Returns
/// nullopt on malformed input.
std::optional<Rat> rat_parse(std::string_view text);

}  // namespace cmt
