#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <utility>

#include "cmt/stream.hpp"

namespace cmt {

// Names of reals. A lower name lists (as nu_Q tokens) exactly the
// rationals strictly below the named value, an upper name exactly those
// strictly above. The extended variants for R u {-oo, +oo} are the same
// streams with unbounded token sets; arithmetic never materializes the
// infinities, best_lower/best_upper just report an empty prefix.

struct LowerRealName {
  NameStream stream;
};

struct UpperRealName {
  NameStream stream;
};

/// Two-sided name; both components name the same value.
struct RealName {
  LowerRealName lower;
  UpperRealName upper;
};

/// Builds a lower name from a nondecreasing approximation with
/// sup_k f(k) = x (x = +oo allowed). Tokens come from two dovetailed
/// families: the canonical rational enumeration filtered against f
/// (completeness at bounded encoded size) and the fast family
/// f(k) - 2^-k (convergence speed).
LowerRealName lower_from_approx(std::function<Rat(std::size_t)> f);

/// Upper counterpart: g nonincreasing, inf_k g(k) = x.
UpperRealName upper_from_approx(std::function<Rat(std::size_t)> g);

LowerRealName lower_of_exact(const Rat& x);
UpperRealName upper_of_exact(const Rat& x);
RealName real_of_exact(const Rat& x);

/// Largest rational listed within `budget`; nullopt for an empty prefix
/// (the -oo sentinel).
std::optional<Rat> best_lower(const LowerRealName& p, std::size_t budget);
std::optional<Rat> best_upper(const UpperRealName& p, std::size_t budget);

struct Approx {
  Rat value;
  std::size_t budget_used;
};

/// A rational within 2^-k of the named (finite) value. Budget grows
/// geometrically until the two sides are close enough; throws
/// budget_error at `max_budget` and inconsistency_error if a listed
/// lower bound ever reaches a listed upper bound.
Approx real_approx(const RealName& x, std::size_t k, std::size_t max_budget = 1u << 24);

// -- arithmetic fragments used by the translators ---------------------------

/// Upper name of a - b from (the upper side of) a and a lower name b.
UpperRealName sub_upper(const RealName& a, const LowerRealName& b);
/// Lower name of a - b from (the lower side of) a and an upper name b.
LowerRealName sub_lower(const RealName& a, const UpperRealName& b);
LowerRealName add_lower(const LowerRealName& a, const LowerRealName& b);
UpperRealName add_upper(const UpperRealName& a, const UpperRealName& b);

// -- pairing ----------------------------------------------------------------

RealName meet(LowerRealName p, UpperRealName q);
std::pair<LowerRealName, UpperRealName> split(const RealName& r);
LowerRealName weaken_lower(const RealName& r);
UpperRealName weaken_upper(const RealName& r);

/// Wire form <p, q> (symbol interleaving) and its inverse.
NameStream real_to_stream(const RealName& r);
RealName real_from_stream(NameStream s);

// -- incremental best-bound trackers (shared by translators) ----------------

class LowerTracker {
 public:
  explicit LowerTracker(NameStream s) : cursor_(std::move(s)) {}
  std::optional<Rat> at(std::size_t budget);

 private:
  TokenCursor cursor_;
  std::optional<Rat> best_;
};

class UpperTracker {
 public:
  explicit UpperTracker(NameStream s) : cursor_(std::move(s)) {}
  std::optional<Rat> at(std::size_t budget);

 private:
  TokenCursor cursor_;
  std::optional<Rat> best_;
};

}  // namespace cmt
