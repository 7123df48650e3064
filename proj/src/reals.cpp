#include "cmt/reals.hpp"

#include <vector>

#include "cmt/errors.hpp"

namespace cmt {

namespace {

// Shared memo for approximation functions: tasks of one name evaluate
// f at many levels; each level is computed once.
class ApproxMemo {
 public:
  explicit ApproxMemo(std::function<Rat(std::size_t)> f) : f_(std::move(f)) {}
  const Rat& at(std::size_t k) {
    while (cache_.size() <= k) cache_.push_back(f_(cache_.size()));
    return cache_[k];
  }

 private:
  std::function<Rat(std::size_t)> f_;
  std::vector<Rat> cache_;
};

NameStream approx_name(std::function<Rat(std::size_t)> f, bool lower) {
  auto memo = std::make_shared<ApproxMemo>(std::move(f));
  TaskFamily searched = [memo, lower](std::size_t m) -> std::optional<Task> {
    Word token = rat_word(rationals().at(m));
    Rat q = rationals().at(m);
    return search_task(token, [memo, lower, q](std::size_t level) {
      return lower ? (q < memo->at(level)) : (q > memo->at(level));
    });
  };
  TaskFamily fast = [memo, lower](std::size_t k) -> std::optional<Task> {
    return [memo, lower, k, done = false](Emitter& out) mutable {
      if (done) return false;
      Rat delta = pow2(-static_cast<long>(k));
      out.token(rat_word(lower ? Rat(memo->at(k) - delta) : Rat(memo->at(k) + delta)));
      done = true;
      return false;
    };
  };
  return NameStream::list_name({searched, fast});
}

}  // namespace

LowerRealName lower_from_approx(std::function<Rat(std::size_t)> f) {
  return {approx_name(std::move(f), true)};
}

UpperRealName upper_from_approx(std::function<Rat(std::size_t)> g) {
  return {approx_name(std::move(g), false)};
}

LowerRealName lower_of_exact(const Rat& x) {
  return lower_from_approx([x](std::size_t) { return x; });
}

UpperRealName upper_of_exact(const Rat& x) {
  return upper_from_approx([x](std::size_t) { return x; });
}

RealName real_of_exact(const Rat& x) {
  return {lower_of_exact(x), upper_of_exact(x)};
}

std::optional<Rat> LowerTracker::at(std::size_t budget) {
  cursor_.drain(budget, [&](const Word& w) {
    if (auto q = word_rat(w)) {
      if (!best_ || *q > *best_) best_ = *q;
    }
  });
  return best_;
}

std::optional<Rat> UpperTracker::at(std::size_t budget) {
  cursor_.drain(budget, [&](const Word& w) {
    if (auto q = word_rat(w)) {
      if (!best_ || *q < *best_) best_ = *q;
    }
  });
  return best_;
}

std::optional<Rat> best_lower(const LowerRealName& p, std::size_t budget) {
  LowerTracker t(p.stream);
  return t.at(budget);
}

std::optional<Rat> best_upper(const UpperRealName& p, std::size_t budget) {
  UpperTracker t(p.stream);
  return t.at(budget);
}

Approx real_approx(const RealName& x, std::size_t k, std::size_t max_budget) {
  LowerTracker lo(x.lower.stream);
  UpperTracker hi(x.upper.stream);
  Rat eps = pow2(-static_cast<long>(k));
  for (std::size_t budget = 64;; budget *= 2) {
    if (budget > max_budget) budget = max_budget;
    auto l = lo.at(budget);
    auto u = hi.at(budget);
    if (l && u) {
      if (*l >= *u) {
        throw inconsistency_error("lower bound " + rat_str(*l) +
                                  " meets upper bound " + rat_str(*u));
      }
      if (*u - *l <= eps) return {Rat((*l + *u) / 2), budget};
    }
    if (budget == max_budget) {
      throw budget_error("insufficient precision at budget", budget);
    }
  }
}

namespace {

// Difference / sum names. Searched family certifies each candidate
// rational against current best bounds of the operands; the fast family
// republishes the combined best bound itself whenever it improves.
NameStream combine_name(NameStream sa, NameStream sb, bool a_upper, bool b_upper,
                        std::function<Rat(const Rat&, const Rat&)> combine,
                        bool result_upper) {
  struct Sources {
    Sources(NameStream a, NameStream b, bool au, bool bu)
        : a_lo(a), a_hi(a), b_lo(b), b_hi(b), a_upper(au), b_upper(bu) {}
    LowerTracker a_lo;
    UpperTracker a_hi;
    LowerTracker b_lo;
    UpperTracker b_hi;
    bool a_upper, b_upper;
    std::optional<Rat> combined(std::size_t budget,
                                const std::function<Rat(const Rat&, const Rat&)>& f) {
      auto va = a_upper ? a_hi.at(budget) : a_lo.at(budget);
      auto vb = b_upper ? b_hi.at(budget) : b_lo.at(budget);
      if (!va || !vb) return std::nullopt;
      return f(*va, *vb);
    }
  };
  auto src = std::make_shared<Sources>(std::move(sa), std::move(sb), a_upper, b_upper);
  auto fn = std::make_shared<std::function<Rat(const Rat&, const Rat&)>>(std::move(combine));

  TaskFamily searched = [src, fn, result_upper](std::size_t m) -> std::optional<Task> {
    Rat q = rationals().at(m);
    return search_task(rat_word(q), [src, fn, result_upper, q](std::size_t level) {
      auto c = src->combined(refine_budget(level), *fn);
      if (!c) return false;
      return result_upper ? (q >= *c) : (q <= *c);
    });
  };
  TaskFamily fast = [src, fn](std::size_t k) -> std::optional<Task> {
    if (k > 0) return std::nullopt;  // one task is enough; it refines forever
    auto last = std::make_shared<std::optional<Rat>>();
    return refine_task([src, fn, last](std::size_t level) -> std::optional<Word> {
      auto c = src->combined(refine_budget(level), *fn);
      if (!c || (*last && **last == *c)) return std::nullopt;
      *last = *c;
      return rat_word(*c);
    });
  };
  return NameStream::list_name({searched, fast});
}

}  // namespace

UpperRealName sub_upper(const RealName& a, const LowerRealName& b) {
  return {combine_name(a.upper.stream, b.stream, true, false,
                       [](const Rat& x, const Rat& y) { return Rat(x - y); }, true)};
}

LowerRealName sub_lower(const RealName& a, const UpperRealName& b) {
  return {combine_name(a.lower.stream, b.stream, false, true,
                       [](const Rat& x, const Rat& y) { return Rat(x - y); }, false)};
}

LowerRealName add_lower(const LowerRealName& a, const LowerRealName& b) {
  return {combine_name(a.stream, b.stream, false, false,
                       [](const Rat& x, const Rat& y) { return Rat(x + y); }, false)};
}

UpperRealName add_upper(const UpperRealName& a, const UpperRealName& b) {
  return {combine_name(a.stream, b.stream, true, true,
                       [](const Rat& x, const Rat& y) { return Rat(x + y); }, true)};
}

RealName meet(LowerRealName p, UpperRealName q) {
  return {std::move(p), std::move(q)};
}

std::pair<LowerRealName, UpperRealName> split(const RealName& r) {
  return {r.lower, r.upper};
}

LowerRealName weaken_lower(const RealName& r) { return r.lower; }

UpperRealName weaken_upper(const RealName& r) { return r.upper; }

NameStream real_to_stream(const RealName& r) {
  return NameStream::interleave(r.lower.stream, r.upper.stream);
}

RealName real_from_stream(NameStream s) {
  return {{NameStream::even_symbols(s)}, {NameStream::odd_symbols(std::move(s))}};
}

}  // namespace cmt
