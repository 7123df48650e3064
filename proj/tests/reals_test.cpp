#include "cmt/reals.hpp"

#include "cmt/errors.hpp"
#include "doctest.h"

using namespace cmt;

namespace {

Rat geometric_partial(unsigned base, std::size_t k) {
  // sum_{i<=k} base^-i
  Rat s;
  for (std::size_t i = 0; i <= k; ++i) s += pow_int(base, -static_cast<long>(i));
  return s;
}

}  // namespace

TEST_CASE("lower name of 0 is sound") {
  LowerRealName zero = lower_from_approx([](std::size_t) { return Rat(0); });
  for (const Word& w : zero.stream.tokens(4000)) {
    auto q = word_rat(w);
    REQUIRE(q);
    CHECK(*q < 0);
  }
}

TEST_CASE("geometric partial sums name 3/2 and reach 3/2 - 2^-20") {
  LowerRealName p = lower_from_approx([](std::size_t k) { return geometric_partial(3, k); });
  Rat target = rat(3, 2);
  // fast task 21 sits at merged index 2*21+1 and emits at its first step
  std::size_t budget = dovetail_budget(2 * 21 + 1, 1);
  auto best = best_lower(p, budget);
  REQUIRE(best);
  CHECK(*best < target);
  CHECK(*best >= target - pow2(-20));
}

TEST_CASE("diverging approximations give the extended lower name of +oo") {
  LowerRealName p = lower_from_approx([](std::size_t k) { return Rat(static_cast<long>(k)); });
  auto best = best_lower(p, 12000);
  REQUIRE(best);
  CHECK(*best >= 50);
}

TEST_CASE("best_lower: sentinel on empty prefix, monotone in budget") {
  LowerRealName third = lower_from_approx([](std::size_t k) { return Rat(rat(1, 3) - pow2(-static_cast<long>(k))); });
  CHECK(!best_lower(third, 0));
  std::optional<Rat> prev;
  for (std::size_t b : {100u, 400u, 1600u, 6400u}) {
    auto cur = best_lower(third, b);
    if (prev && cur) CHECK(*cur >= *prev);
    if (cur) prev = cur;
  }
  auto last = best_lower(third, 20000);
  REQUIRE(last);
  CHECK(*last < rat(1, 3));
  CHECK(*last > rat(1, 3) - rat(1, 1000));
}

TEST_CASE("real_approx meets the 2^-k contract") {
  Approx a0 = real_approx(real_of_exact(Rat(0)), 10);
  CHECK(abs(a0.value) <= pow2(-10));

  Approx a1 = real_approx(real_of_exact(rat(5, 12)), 20);
  CHECK(abs(a1.value - rat(5, 12)) <= pow2(-20));

  RealName total{lower_from_approx([](std::size_t k) { return geometric_partial(3, k); }),
                 upper_from_approx([](std::size_t k) {
                   return Rat(geometric_partial(3, k) + pow_int(3, -static_cast<long>(k)) / 2);
                 })};
  Approx a2 = real_approx(total, 20);
  CHECK(abs(a2.value - rat(3, 2)) <= pow2(-20));
}

TEST_CASE("meet of the even-power series is approximable to 2^-30") {
  // sum 3^-2i = 9/8 by the geometric series
  RealName x{lower_from_approx([](std::size_t k) { return geometric_partial(9, k); }),
             upper_from_approx([](std::size_t k) {
               return Rat(geometric_partial(9, k) + pow_int(9, -static_cast<long>(k)) / 8);
             })};
  Approx a = real_approx(x, 30);
  CHECK(abs(a.value - rat(9, 8)) <= pow2(-30));
}

TEST_CASE("split and weaken are the projections of meet") {
  LowerRealName lo = lower_of_exact(rat(1, 3));
  UpperRealName hi = upper_of_exact(rat(1, 3));
  RealName r = meet(lo, hi);
  auto [l2, u2] = split(r);
  CHECK(l2.stream.prefix(500) == lo.stream.prefix(500));
  CHECK(u2.stream.prefix(500) == hi.stream.prefix(500));
  for (const Word& w : weaken_lower(r).stream.tokens(3000)) {
    auto q = word_rat(w);
    REQUIRE(q);
    CHECK(*q < rat(1, 3));
  }
}

TEST_CASE("difference names: known minus lower is an upper name") {
  RealName one = real_of_exact(Rat(1));
  UpperRealName u = sub_upper(one, lower_of_exact(Rat(0)));
  for (const Word& w : u.stream.tokens(3000)) {
    auto q = word_rat(w);
    REQUIRE(q);
    CHECK(*q > 1);
  }
  auto best = best_upper(u, 30000);
  REQUIRE(best);
  CHECK(*best - 1 <= rat(1, 1000));

  UpperRealName zero = sub_upper(real_of_exact(rat(3, 2)), lower_of_exact(rat(3, 2)));
  auto bz = best_upper(zero, 30000);
  REQUIRE(bz);
  CHECK(*bz > 0);
  CHECK(*bz <= rat(1, 1000));
}

TEST_CASE("sum of lower names") {
  LowerRealName s = add_lower(lower_of_exact(rat(1, 3)), lower_of_exact(rat(1, 6)));
  for (const Word& w : s.stream.tokens(3000)) {
    auto q = word_rat(w);
    REQUIRE(q);
    CHECK(*q < rat(1, 2));
  }
  auto best = best_lower(s, 30000);
  REQUIRE(best);
  CHECK(rat(1, 2) - *best <= rat(1, 1000));
}

TEST_CASE("bounded completeness of exact lower names") {
  Rat x = rat(1, 3);
  LowerRealName p = lower_of_exact(x);
  RationalEnumerator& e = rationals();
  // every rational q < x of encoded size <= 28 appears within the
  // documented budget (searched task at merged index 2m accepts at its
  // first step for an exact approximation)
  for (std::size_t m = 0; m < e.count_below_size(28); ++m) {
    const Rat& q = e.at(m);
    if (!(q < x)) continue;
    std::size_t budget = dovetail_budget(2 * m, 1);
    auto toks = p.stream.tokens(budget);
    bool found = false;
    for (const Word& w : toks) {
      if (word_rat(w) == q) found = true;
    }
    CHECK(found);
  }
}

TEST_CASE("inconsistent pairs are detected") {
  RealName bad = meet(lower_of_exact(Rat(2)), upper_of_exact(Rat(1)));
  CHECK_THROWS_AS(real_approx(bad, 4), inconsistency_error);
}

TEST_CASE("budget exhaustion is reported as a retryable error") {
  CHECK_THROWS_AS(real_approx(real_of_exact(rat(1, 7)), 60, 100), budget_error);
}

TEST_CASE("interleaved wire form round trips") {
  RealName r = real_of_exact(rat(2, 7));
  RealName back = real_from_stream(real_to_stream(r));
  auto l = best_lower(back.lower, 40000);
  auto u = best_upper(back.upper, 40000);
  REQUIRE(l);
  REQUIRE(u);
  CHECK(*l < rat(2, 7));
  CHECK(*u > rat(2, 7));
  CHECK(*u - *l < rat(1, 100));
}
