// Copyright 2026 The tablesynth Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tablesynth/synthesizer.h"

#include <atomic>
#include <chrono>
#include <mutex>
#include <queue>
#include <sstream>
#include <thread>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "tablesynth/completion.h"
#include "tablesynth/deduction.h"
#include "tablesynth/errors.h"
#include "tablesynth/solver.h"

namespace tablesynth {

namespace {

using Clock = std::chrono::steady_clock;

double bigram_score(const HNode& n, const BigramWeights& w) {
  double s = 0;
  for (const HNodePtr& c : n.children) {
    if (c->kind != HNode::Kind::kComponent) continue;
    auto it = w.find({c->component, n.component});
    if (it != w.end()) s += it->second;
    s += bigram_score(*c, w);
  }
  return s;
}

struct Entry {
  int size;
  double bigram;
  std::vector<int> sequence;
  size_t seq;
  Hypothesis h;
};

struct EntryOrder {
  // priority_queue pops the largest; invert so the best entry is largest.
  bool operator()(const Entry& a, const Entry& b) const {
    if (a.size != b.size) return a.size > b.size;
    if (a.bigram != b.bigram) return a.bigram < b.bigram;
    if (a.sequence != b.sequence) return a.sequence > b.sequence;
    return a.seq > b.seq;
  }
};

class Search {
 public:
  Search(const Example& e, const Registry& registry, const SpecLibrary& specs,
         const SearchConfig& cfg, std::optional<int> only_size, std::atomic<bool>* cancel)
      : e_(e),
        registry_(registry),
        cfg_(cfg),
        only_size_(only_size),
        cancel_(cancel),
        deducer_(e, specs.at(cfg.level),
                 DeduceOptions{cfg.partial_eval, static_cast<bool>(cfg.explain), {}}),
        start_(Clock::now()),
        deadline_(start_ + std::chrono::duration_cast<Clock::duration>(
                               std::chrono::duration<double>(cfg.timeout_seconds))) {
    FillOptions fo;
    fo.depth_budget = cfg.term_depth;
    fo.extra_constants = cfg.extra_constants;
    fo.registry = &registry_;
    fo.skip_equivalent = true;
    fo.cancelled = [this] { return stop_requested() || over_budget(); };
    filler_.emplace(e_, deducing() ? &deducer_ : nullptr, std::move(fo));
  }

  SynthesisResult run() {
    SynthesisResult result;
    push(Hypothesis::initial());
    while (!queue_.empty()) {
      if (stop_requested()) break;
      Entry entry = queue_.top();
      queue_.pop();
      const Hypothesis& h = entry.h;
      bool sketch_here = !only_size_ || entry.size == *only_size_;
      if (sketch_here) {
        ++stats_.hypotheses_explored;
        if (auto found = explore(h)) {
          result.program = std::move(found);
          break;
        }
      }
      if (entry.size < cfg_.max_depth) {
        for (const HNode* hole : h.open_table_holes()) {
          for (const TableComponent& c : registry_.table_components()) {
            push(h.refine(hole->id, c.name, registry_));
          }
        }
      }
    }
    for (size_t budget = cfg_.sketch_budget; !result.program && !deferred_.empty();) {
      if (stop_requested()) break;
      budget = budget > SIZE_MAX / 4 ? 0 : budget * 4;
      std::vector<Hypothesis> round = std::move(deferred_);
      deferred_.clear();
      for (const Hypothesis& s : round) {
        if (stop_requested()) break;
        if (auto found = complete(s, budget)) {
          result.program = std::move(found);
          break;
        }
      }
    }
    if (result.program) {
      result.outcome = Outcome::kFound;
    } else {
      result.outcome = timed_out_ ? Outcome::kTimedOut : Outcome::kNotFound;
    }
    stats_.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start_).count();
    result.stats = stats_;
    return result;
  }

 private:
  bool deducing() const { return cfg_.level != SpecLevel::kNone; }

  bool stop_requested() {
    if (cancel_ && cancel_->load(std::memory_order_relaxed)) return true;
    if (Clock::now() > deadline_) {
      timed_out_ = true;
      return true;
    }
    return false;
  }

  void push(Hypothesis h) {
    if (!seen_.insert(h.canonical_key()).second) return;
    Entry e{h.transformer_count(), bigram_score(h.root(), cfg_.bigrams), {}, next_seq_++,
            std::move(h)};
    for (const std::string& name : e.h.component_sequence()) {
      const auto& all = registry_.table_components();
      for (size_t i = 0; i < all.size(); ++i) {
        if (all[i].name == name) e.sequence.push_back(static_cast<int>(i));
      }
    }
    queue_.push(std::move(e));
  }

  bool feasible(const Hypothesis& h) {
    ++stats_.deduce_calls;
    DeduceResult r = deducer_.deduce(h);
    if (r.feasible()) return true;
    if (cfg_.explain) {
      std::string line = "rejected " + h.to_string();
      if (r.formula) line += "\n" + to_smtlib(*r.formula);
      if (r.eval_error) line += " (" + std::string(error_code_name(*r.eval_error)) + ")";
      cfg_.explain(line);
    }
    return false;
  }

  bool over_budget() const {
    return budget_ && fill_stats_ && fill_stats_->deduce_calls + checked_ >= budget_;
  }

  bool satisfies(const Hypothesis& p) {
    try {
      return tables_equal(evaluate(p), *e_.output, cfg_.ordered_rows);
    } catch (const Error&) {
      return false;
    }
  }

  std::optional<Hypothesis> explore(const Hypothesis& h) {
    if (deducing() && !feasible(h)) {
      ++stats_.deduce_rejects_pre_sketch;
      return std::nullopt;
    }
    for (const Hypothesis& s : sketches(h, e_)) {
      if (stop_requested()) return std::nullopt;
      ++stats_.sketches_generated;
      if (deducing() && !feasible(s)) {
        ++stats_.sketch_rejects;
        continue;
      }
      if (auto found = complete(s, cfg_.sketch_budget)) return found;
    }
    return std::nullopt;
  }

  // Fills one sketch with at most `budget` effort (0 for no limit); a sketch
  // cut short is queued for the next round.
  std::optional<Hypothesis> complete(const Hypothesis& s, size_t budget) {
    std::optional<Hypothesis> found;
    FillStats fs;
    budget_ = budget;
    fill_stats_ = &fs;
    checked_ = 0;
    bool finished = filler_->fill(
        s,
        [&](const Hypothesis& p) {
          ++stats_.programs_checked;
          if (satisfies(p)) {
            found = p;
            return false;
          }
          ++checked_;
          return true;
        },
        &fs);
    budget_ = 0;
    fill_stats_ = nullptr;
    stats_.deduce_calls += fs.deduce_calls;
    stats_.deduce_rejects_during_completion += fs.deduce_rejects;
    if (!found && !finished && !stop_requested()) {
      ++stats_.sketches_deferred;
      deferred_.push_back(s);
    }
    return found;
  }

  const Example& e_;
  const Registry& registry_;
  const SearchConfig& cfg_;
  std::optional<int> only_size_;
  std::atomic<bool>* cancel_;
  Deducer deducer_;
  std::optional<SketchFiller> filler_;
  Clock::time_point start_;
  Clock::time_point deadline_;
  bool timed_out_ = false;
  SearchStats stats_;
  std::priority_queue<Entry, std::vector<Entry>, EntryOrder> queue_;
  std::unordered_set<std::string> seen_;
  size_t next_seq_ = 0;
  std::vector<Hypothesis> deferred_;
  size_t budget_ = 0;
  const FillStats* fill_stats_ = nullptr;
  size_t checked_ = 0;
};

}  // namespace

double SearchStats::prune_fraction() const {
  if (deduce_calls == 0) return 0;
  size_t rejected = deduce_rejects_pre_sketch + sketch_rejects +
                    deduce_rejects_during_completion;
  return static_cast<double>(rejected) / static_cast<double>(deduce_calls);
}

std::string SearchStats::to_json(bool include_elapsed) const {
  nlohmann::ordered_json j;
  j["hypothesesExplored"] = hypotheses_explored;
  j["sketchesGenerated"] = sketches_generated;
  j["deduceRejectsPreSketch"] = deduce_rejects_pre_sketch;
  j["sketchRejects"] = sketch_rejects;
  j["deduceRejectsDuringCompletion"] = deduce_rejects_during_completion;
  j["deduceCalls"] = deduce_calls;
  j["programsChecked"] = programs_checked;
  j["sketchesDeferred"] = sketches_deferred;
  j["pruneFraction"] = prune_fraction();
  if (include_elapsed) j["elapsed"] = elapsed_seconds;
  return j.dump();
}

SearchStats& SearchStats::operator+=(const SearchStats& o) {
  hypotheses_explored += o.hypotheses_explored;
  sketches_generated += o.sketches_generated;
  deduce_rejects_pre_sketch += o.deduce_rejects_pre_sketch;
  sketch_rejects += o.sketch_rejects;
  deduce_rejects_during_completion += o.deduce_rejects_during_completion;
  deduce_calls += o.deduce_calls;
  programs_checked += o.programs_checked;
  sketches_deferred += o.sketches_deferred;
  elapsed_seconds = std::max(elapsed_seconds, o.elapsed_seconds);
  return *this;
}

std::string_view outcome_name(Outcome o) {
  switch (o) {
    case Outcome::kFound: return "found";
    case Outcome::kNotFound: return "not-found";
    case Outcome::kTimedOut: return "timed-out";
  }
  return "?";
}

SynthesisResult synthesize(const Example& example, const Registry& registry,
                           const SpecLibrary& specs, const SearchConfig& config) {
  example.validate();
  return Search(example, registry, specs, config, std::nullopt, nullptr).run();
}

SynthesisResult synthesize_parallel(const Example& example, const Registry& registry,
                                    const SpecLibrary& specs, const SearchConfig& config) {
  if (config.threads <= 1) return synthesize(example, registry, specs, config);
  example.validate();
  auto start = Clock::now();
  std::atomic<bool> cancel{false};
  std::atomic<int> next_size{0};
  std::mutex mu;
  SynthesisResult winner;
  int winner_size = -1;
  bool any_timeout = false;
  SearchStats total;

  auto worker = [&] {
    while (!cancel.load()) {
      int size = next_size.fetch_add(1);
      if (size > config.max_depth) return;
      SearchConfig cfg = config;
      cfg.max_depth = size;
      SynthesisResult r = Search(example, registry, specs, cfg, size, &cancel).run();
      std::lock_guard<std::mutex> lock(mu);
      total += r.stats;
      if (r.outcome == Outcome::kTimedOut) any_timeout = true;
      if (r.program && (winner_size < 0 || size < winner_size)) {
        winner = std::move(r);
        winner_size = size;
        cancel.store(true);
      }
    }
  };
  std::vector<std::thread> pool;
  int n = std::min(config.threads, config.max_depth + 1);
  for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  SynthesisResult result;
  if (winner.program) {
    result.outcome = Outcome::kFound;
    result.program = std::move(winner.program);
  } else {
    result.outcome = any_timeout ? Outcome::kTimedOut : Outcome::kNotFound;
  }
  result.stats = total;
  result.stats.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

BigramWeights parse_bigram_weights(std::string_view text) {
  BigramWeights out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string a;
    std::string b;
    double w;
    if (!(fields >> a)) continue;
    if (!(fields >> b >> w)) throw ParseError(lineno, 1, "expected 'first second weight'");
    std::string extra;
    if (fields >> extra) throw ParseError(lineno, 1, "trailing text");
    out[{a, b}] = w;
  }
  return out;
}

}  // namespace tablesynth
