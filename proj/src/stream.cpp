#include "cmt/stream.hpp"

#include <mutex>
#include <utility>

namespace cmt {

namespace {

class BufferEmitter : public Emitter {
 public:
  explicit BufferEmitter(std::string& buf) : buf_(buf), mark_(buf.size()) {}
  void raw(std::string_view symbols) override { buf_.append(symbols); }
  void token(const Word& payload) override { buf_.append(wrap(payload)); }
  bool emitted() const { return buf_.size() > mark_; }

 private:
  std::string& buf_;
  std::size_t mark_;
};

}  // namespace

struct NameStream::Core {
  std::unique_ptr<SymbolSource> source;
  mutable std::mutex mu;
  std::string buf;
  std::size_t steps = 0;
  bool exhausted = false;
  WrapScanner scanner;
  std::size_t scanned = 0;

  explicit Core(std::unique_ptr<SymbolSource> s) : source(std::move(s)) {
    exhausted = (source == nullptr);
  }

  // Runs the source up to `budget` steps (memoized, single run).
  void ensure(std::size_t budget) {
    std::lock_guard<std::mutex> lock(mu);
    while (steps < budget && !exhausted) {
      BufferEmitter out(buf);
      if (!source->step(out)) exhausted = true;
      ++steps;
    }
    if (scanned < buf.size()) {
      scanner.feed(std::string_view(buf).substr(scanned));
      scanned = buf.size();
    }
  }
};

NameStream::NameStream() : core_(std::make_shared<Core>(nullptr)) {}

NameStream::NameStream(std::unique_ptr<SymbolSource> source)
    : core_(std::make_shared<Core>(std::move(source))) {}

std::string NameStream::prefix(std::size_t budget) const {
  core_->ensure(budget);
  std::lock_guard<std::mutex> lock(core_->mu);
  return core_->buf;
}

std::size_t NameStream::token_count(std::size_t budget) const {
  core_->ensure(budget);
  std::lock_guard<std::mutex> lock(core_->mu);
  return core_->scanner.units().size();
}

Word NameStream::token_at(std::size_t i) const {
  std::lock_guard<std::mutex> lock(core_->mu);
  return core_->scanner.units().at(i);
}

std::vector<Word> NameStream::tokens(std::size_t budget) const {
  core_->ensure(budget);
  std::lock_guard<std::mutex> lock(core_->mu);
  return core_->scanner.units();
}

bool NameStream::exhausted_at(std::size_t budget) const {
  core_->ensure(budget);
  std::lock_guard<std::mutex> lock(core_->mu);
  return core_->exhausted;
}

std::size_t NameStream::symbol_count(std::size_t budget) const {
  core_->ensure(budget);
  std::lock_guard<std::mutex> lock(core_->mu);
  return core_->buf.size();
}

char NameStream::symbol_at(std::size_t i) const {
  std::lock_guard<std::mutex> lock(core_->mu);
  return core_->buf.at(i);
}

std::size_t NameStream::copy_symbols(std::size_t from, std::string& out) const {
  std::lock_guard<std::mutex> lock(core_->mu);
  if (from < core_->buf.size()) out.append(core_->buf, from, std::string::npos);
  return core_->buf.size();
}

// ---------------------------------------------------------------------------
// Dovetailer: triangle schedule over a lazily materialized task family.
// Round r visits indices 0..r in order; retired slots are skipped
// without consuming budget, so task n still receives its s-th step
// within dovetail_budget(n, s) steps.

namespace {

class Dovetailer : public SymbolSource {
 public:
  explicit Dovetailer(TaskFamily family) : family_(std::move(family)) {}

  bool step(Emitter& out) override {
    std::string local;
    BufferEmitter probe(local);
    while (true) {
      if (family_end_ && live_ == 0) return false;
      if (index_ > round_) {
        ++round_;
        index_ = 0;
        continue;
      }
      std::size_t i = index_++;
      if (family_end_ && i >= *family_end_) continue;
      if (tasks_.size() <= i) {
        auto t = family_(i);
        if (!t) {
          family_end_ = i;
          continue;
        }
        tasks_.push_back(std::move(t));
        ++live_;
      }
      if (!tasks_[i]) continue;
      if (!(*tasks_[i])(probe)) {
        tasks_[i].reset();
        --live_;
      }
      if (local.empty()) {
        out.raw("0");  // filler; cannot form or break a wrapped unit
      } else {
        out.raw(local);
      }
      return true;
    }
  }

 private:
  TaskFamily family_;
  std::vector<std::optional<Task>> tasks_;
  std::optional<std::size_t> family_end_;
  std::size_t live_ = 0;
  std::size_t round_ = 0;
  std::size_t index_ = 0;
};

Task noop_task() {
  return [](Emitter&) { return false; };
}

TaskFamily merge_families(std::vector<TaskFamily> families) {
  struct State {
    std::vector<TaskFamily> fams;
    std::vector<std::optional<std::size_t>> ends;
  };
  auto state = std::make_shared<State>();
  state->fams = std::move(families);
  state->ends.resize(state->fams.size());
  return [state](std::size_t i) -> std::optional<Task> {
    std::size_t k = state->fams.size();
    std::size_t f = i % k;
    std::size_t n = i / k;
    bool all_ended = true;
    for (std::size_t j = 0; j < k; ++j) {
      if (!state->ends[j] || n < *state->ends[j]) all_ended = false;
    }
    if (all_ended) return std::nullopt;
    if (state->ends[f] && n >= *state->ends[f]) return noop_task();
    auto t = state->fams[f](n);
    if (!t) {
      state->ends[f] = n;
      return noop_task();
    }
    return t;
  };
}

class UnitsSource : public SymbolSource {
 public:
  explicit UnitsSource(std::vector<Word> units) : units_(std::move(units)) {}
  bool step(Emitter& out) override {
    if (next_ >= units_.size()) return false;
    out.token(units_[next_++]);
    return next_ <= units_.size();
  }

 private:
  std::vector<Word> units_;
  std::size_t next_ = 0;
};

class PairWordSource : public SymbolSource {
 public:
  PairWordSource(Word head, NameStream tail) : head_(std::move(head)), tail_(std::move(tail)) {}
  bool step(Emitter& out) override {
    ++t_;
    if (!head_done_) {
      out.token(head_);
      head_done_ = true;
      return true;
    }
    std::string chunk;
    tail_.symbol_count(t_);
    cursor_ = tail_.copy_symbols(cursor_, chunk);
    out.raw(chunk);
    return !(chunk.empty() && tail_.exhausted_at(t_));
  }

 private:
  Word head_;
  NameStream tail_;
  std::size_t t_ = 0;
  std::size_t cursor_ = 0;
  bool head_done_ = false;
};

class InterleaveSource : public SymbolSource {
 public:
  InterleaveSource(NameStream a, NameStream b) : a_(std::move(a)), b_(std::move(b)) {}
  bool step(Emitter& out) override {
    ++t_;
    std::size_t na = a_.symbol_count(t_);
    std::size_t nb = b_.symbol_count(t_);
    std::string chunk;
    while (chunk.size() < 64) {
      std::size_t k = emitted_ / 2;
      if (emitted_ % 2 == 0) {
        if (k >= na) break;
        chunk += a_.symbol_at(k);
      } else {
        if (k >= nb) break;
        chunk += b_.symbol_at(k);
      }
      ++emitted_;
    }
    out.raw(chunk);
    if (chunk.empty() && a_.exhausted_at(t_) && b_.exhausted_at(t_)) return false;
    return true;
  }

 private:
  NameStream a_, b_;
  std::size_t t_ = 0;
  std::size_t emitted_ = 0;
};

class StrideSource : public SymbolSource {
 public:
  StrideSource(NameStream p, std::size_t offset, std::size_t stride)
      : p_(std::move(p)), offset_(offset), stride_(stride) {}
  bool step(Emitter& out) override {
    ++t_;
    std::size_t n = p_.symbol_count(t_);
    std::string chunk;
    while (chunk.size() < 64) {
      std::size_t pos = offset_ + j_ * stride_;
      if (pos >= n) break;
      chunk += p_.symbol_at(pos);
      ++j_;
    }
    out.raw(chunk);
    if (chunk.empty() && p_.exhausted_at(t_)) return false;
    return true;
  }

 private:
  NameStream p_;
  std::size_t offset_, stride_;
  std::size_t t_ = 0;
  std::size_t j_ = 0;
};

class OmegaSource : public SymbolSource {
 public:
  explicit OmegaSource(std::function<NameStream(std::size_t)> family)
      : family_(std::move(family)) {}
  bool step(Emitter& out) override {
    ++t_;
    std::string chunk;
    while (chunk.size() < 64) {
      auto [i, j] = cantor_unpair(n_);
      NameStream& s = component(i);
      if (s.symbol_count(t_) <= j) break;
      chunk += s.symbol_at(j);
      ++n_;
    }
    out.raw(chunk);
    return true;
  }

 private:
  NameStream& component(std::size_t i) {
    while (streams_.size() <= i) streams_.push_back(family_(streams_.size()));
    return streams_[i];
  }

  std::function<NameStream(std::size_t)> family_;
  std::vector<NameStream> streams_;
  std::size_t t_ = 0;
  std::size_t n_ = 0;  // next output position
};

class ProjectSource : public SymbolSource {
 public:
  ProjectSource(NameStream p, std::size_t i) : p_(std::move(p)), i_(i) {}
  bool step(Emitter& out) override {
    ++t_;
    std::size_t n = p_.symbol_count(t_);
    std::string chunk;
    while (chunk.size() < 64) {
      std::size_t pos = cantor_pair(i_, j_);
      if (pos >= n) break;
      chunk += p_.symbol_at(pos);
      ++j_;
    }
    out.raw(chunk);
    if (chunk.empty() && p_.exhausted_at(t_)) return false;
    return true;
  }

 private:
  NameStream p_;
  std::size_t i_;
  std::size_t t_ = 0;
  std::size_t j_ = 0;
};

class MapTokensSource : public SymbolSource {
 public:
  MapTokensSource(NameStream src, std::function<void(const Word&, Emitter&)> fn)
      : cursor_(std::move(src)), fn_(std::move(fn)) {}
  bool step(Emitter& out) override {
    ++t_;
    std::string local;
    BufferEmitter probe(local);
    std::size_t before = seen_;
    cursor_.drain(t_, [&](const Word& w) {
      ++seen_;
      fn_(w, probe);
    });
    out.raw(local.empty() ? std::string("0") : local);
    if (seen_ == before && cursor_.stream().exhausted_at(t_)) return false;
    return true;
  }

 private:
  TokenCursor cursor_;
  std::function<void(const Word&, Emitter&)> fn_;
  std::size_t t_ = 0;
  std::size_t seen_ = 0;
};

}  // namespace

NameStream NameStream::list_name(TaskFamily family) {
  return NameStream(std::make_unique<Dovetailer>(std::move(family)));
}

NameStream NameStream::list_name(std::vector<TaskFamily> families) {
  if (families.size() == 1) return list_name(std::move(families.front()));
  return NameStream(std::make_unique<Dovetailer>(merge_families(std::move(families))));
}

NameStream NameStream::from_units(std::vector<Word> units) {
  return NameStream(std::make_unique<UnitsSource>(std::move(units)));
}

NameStream NameStream::pair_word(const Word& w, NameStream p) {
  return NameStream(std::make_unique<PairWordSource>(w, std::move(p)));
}

NameStream NameStream::interleave(NameStream a, NameStream b) {
  return NameStream(std::make_unique<InterleaveSource>(std::move(a), std::move(b)));
}

NameStream NameStream::even_symbols(NameStream p) {
  return NameStream(std::make_unique<StrideSource>(std::move(p), 0, 2));
}

NameStream NameStream::odd_symbols(NameStream p) {
  return NameStream(std::make_unique<StrideSource>(std::move(p), 1, 2));
}

NameStream NameStream::omega_tuple(std::function<NameStream(std::size_t)> family) {
  return NameStream(std::make_unique<OmegaSource>(std::move(family)));
}

NameStream NameStream::project(NameStream p, std::size_t i) {
  return NameStream(std::make_unique<ProjectSource>(std::move(p), i));
}

NameStream NameStream::map_tokens(NameStream src, std::function<void(const Word&, Emitter&)> fn) {
  return NameStream(std::make_unique<MapTokensSource>(std::move(src), std::move(fn)));
}

Task search_task(Word token, std::function<bool(std::size_t)> accept) {
  auto level = std::make_shared<std::size_t>(0);
  return [token = std::move(token), accept = std::move(accept), level](Emitter& out) {
    if (accept((*level)++)) {
      out.token(token);
      return false;
    }
    return true;
  };
}

Task refine_task(std::function<std::optional<Word>(std::size_t)> produce) {
  auto level = std::make_shared<std::size_t>(0);
  return [produce = std::move(produce), level](Emitter& out) {
    if (auto w = produce((*level)++)) out.token(*w);
    return true;
  };
}

}  // namespace cmt
