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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tablesynth/completion.h"
#include "tablesynth/deduction.h"
#include "tablesynth/errors.h"
#include "tablesynth/problem.h"
#include "tablesynth/program_text.h"
#include "tablesynth/solver.h"
#include "tablesynth/synthesizer.h"
#include "test_support.h"

namespace tablesynth {
namespace {

namespace ts = testing;

struct Verdict_ {
  bool pass = false;
  std::string detail;
};

struct BundledRun {
  std::string name;
  int max_depth = 4;
  SynthesisResult spec2;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class Acceptance {
 public:
  Acceptance(double ablation_timeout) : ablation_timeout_(ablation_timeout) {
    bigrams_ = parse_bigram_weights(read_file(ts::data_dir() + "/pipelines.bigram"));
  }

  int run() {
    report(1, "long-to-wide example, Spec 2, depth 3, < 120 s", criterion1());
    report(2, "proportions example, Spec 2, depth 4, < 300 s", criterion2());
    report(3, "two-table example, bag equality, Spec 2, depth 4, < 300 s", criterion3());
    report(4, "deduction worked examples", criterion4());
    report(5, "solver never refutes a brute-force model (1000 formulas)", criterion5());
    report(6, "deduction never rejects a solvable hypothesis (200 problems)", criterion6());
    report(7, "programsChecked Spec2 <= Spec1 <= None on bundled problems", criterion7());
    report(8, "partial evaluation round trips bit-exactly (500 cases)", criterion8());
    report(9, "outputs satisfy Spec 1 and Spec 2 (1000 cases)", criterion9());
    report(10, "two sequential runs agree on program and stats", criterion10());
    std::printf("%d/10 criteria passed\n", passed_);
    return passed_ == 10 ? 0 : 1;
  }

 private:
  void report(int id, const char* what, const Verdict_& v) {
    if (v.pass) ++passed_;
    std::printf("[%s] criterion %d: %s: %s\n", v.pass ? "PASS" : "FAIL", id, what,
                v.detail.c_str());
    std::fflush(stdout);
  }

  SynthesisResult solve(const std::string& name, SpecLevel level, int max_depth,
                        double timeout) {
    Problem p = load_problem_file(ts::problems_dir() + "/" + name + ".json");
    SearchConfig cfg;
    cfg.level = level;
    cfg.max_depth = max_depth;
    cfg.timeout_seconds = timeout;
    cfg.threads = 1;
    cfg.ordered_rows = p.ordered_rows;
    cfg.extra_constants = p.constants;
    cfg.bigrams = bigrams_;
    return synthesize(p.example(), p.registry(), lib_, cfg);
  }

  static Example example_of(const std::string& name) {
    return load_problem_file(ts::problems_dir() + "/" + name + ".json").example();
  }

  BundledRun& bundled(const std::string& name, int max_depth, double timeout) {
    for (BundledRun& b : runs_) {
      if (b.name == name) return b;
    }
    runs_.push_back({name, max_depth, solve(name, SpecLevel::kSpec2, max_depth, timeout)});
    return runs_.back();
  }

  static std::string describe(const SynthesisResult& r) {
    std::string s = std::string(outcome_name(r.outcome));
    char buf[64];
    std::snprintf(buf, sizeof buf, " in %.2f s", r.stats.elapsed_seconds);
    s += buf;
    if (r.program) {
      std::string text = print_program(*r.program);
      for (char& c : text) {
        if (c == '\n') c = ';';
      }
      s += ", " + text;
    }
    return s;
  }

  // Found, equal to the expected output, and within the time limit.
  Verdict_ end_to_end(const std::string& name, int depth, double limit,
                      const std::function<std::string(const Table&)>& extra = {}) {
    const SynthesisResult& r = bundled(name, depth, limit).spec2;
    Verdict_ v;
    v.detail = describe(r);
    if (!r.program) return v;
    Problem p = load_problem_file(ts::problems_dir() + "/" + name + ".json");
    Table got = evaluate(*r.program);
    bool equal = tables_equal(got, *p.example().output, p.ordered_rows);
    std::string problem = extra ? extra(got) : "";
    v.pass = equal && problem.empty() && r.stats.elapsed_seconds < limit;
    if (!equal) v.detail += ", output differs";
    if (!problem.empty()) v.detail += ", " + problem;
    return v;
  }

  Verdict_ criterion1() {
    Verdict_ v = end_to_end("ex1_long_to_wide", 3, 120);
    const SynthesisResult& r = bundled("ex1_long_to_wide", 3, 120).spec2;
    if (r.program) {
      std::vector<std::string> seq = r.program->component_sequence();
      if (seq != std::vector<std::string>{"spread", "unite", "gather"}) {
        v.pass = false;
        v.detail += ", not a gather/unite/spread pipeline";
      }
    }
    return v;
  }

  Verdict_ criterion2() {
    return end_to_end("ex2_flights", 4, 300, [](const Table& t) -> std::string {
      auto col = t.column_index("prop");
      if (!col) return "no prop column";
      std::multiset<std::string> props;
      for (size_t r = 0; r < t.rows(); ++r) props.insert(t.at(r, *col).render());
      if (props != std::multiset<std::string>{"0.6666667", "0.3333333"}) {
        return "prop values differ";
      }
      return "";
    });
  }

  Verdict_ criterion3() {
    Verdict_ v = end_to_end("ex3_vehicles", 4, 300);
    return v;
  }

  Verdict_ criterion4() {
    std::vector<std::string> failures;
    auto expect = [&](bool ok, const std::string& what) {
      if (!ok) failures.push_back(what);
    };
    Hypothesis select_filter = Hypothesis::initial().refine(0, "select").refine(1, "filter");
    Example older = ts::example({{"x1", ts::kStudents}}, ts::kStudentsOlder);
    expect(deduce(select_filter, older, SpecLevel::kSpec1) == Verdict::kInfeasible,
           "select(filter) not rejected under Spec 1");

    Example wide = ts::example({{"input", ts::kLongInput}}, ts::kWideOutput);
    Hypothesis spread = Hypothesis::initial().refine(0, "spread");
    spread = spread.bind(spread.open_table_holes()[0]->id,
                         Qualifier::input("input", wide.inputs[0].table));
    expect(deduce(spread, wide, SpecLevel::kSpec1) == Verdict::kFeasible,
           "spread rejected under Spec 1");
    expect(deduce(spread, wide, SpecLevel::kSpec2) == Verdict::kInfeasible,
           "spread not rejected under Spec 2");

    // Fill select(filter(x1, ?pred), ?cols) against the 2x3 projection:
    // candidates for ?cols are only attempted after predicates that survive,
    // and "age > 12" is rejected right after it is filled.
    Example projected = ts::example({{"x1", ts::kStudents}}, ts::kStudentsProjected);
    SpecSet spec1 = load_builtin_specs(SpecLevel::kSpec1);
    Deducer deducer(projected, spec1);
    Hypothesis sketch = sketches(select_filter, projected).at(0);
    int pred = sketch.root().children[0]->children[1]->id;
    int cols = sketch.root().children[1]->id;
    FillStats stats;
    size_t cols_after_age12 = 0;
    bool saw_age12 = false;
    SketchFiller filler(projected, &deducer);
    filler.fill(
        sketch,
        [&](const Hypothesis&) { return true; }, &stats);
    Hypothesis age12 =
        sketch.bind(pred, Qualifier::of_term(Term::lambda(
                              {{"row", TypeExpr::row()}},
                              Term::apply(">", {Term::column("age"), Term::constant(12)}))));
    saw_age12 = !deducer.deduce(age12).feasible();
    cols_after_age12 = stats.attempted[cols] - 15 * stats.accepted[pred];
    expect(saw_age12, "filter(x1, age > 12) survives before ?cols is filled");
    expect(stats.accepted[pred] < stats.attempted[pred], "no predicate rejected");
    expect(cols_after_age12 == 0, "?cols attempted after rejected predicates");
    Verdict_ v;
    v.pass = failures.empty();
    std::ostringstream d;
    d << "predicates attempted " << stats.attempted[pred] << ", accepted "
      << stats.accepted[pred] << ", projection candidates attempted " << stats.attempted[cols];
    for (const std::string& f : failures) d << "; " << f;
    v.detail = d.str();
    return v;
  }

  Verdict_ criterion5() {
    ts::Rng rng(20260501);
    size_t unsat = 0;
    size_t violations = 0;
    for (int i = 0; i < 1000; ++i) {
      ts::PlainFormula pf = ts::random_formula(rng, 5, 8);
      if (is_satisfiable(pf.to_formula()) == SatResult::kSat) continue;
      ++unsat;
      if (auto model = ts::brute_force_model(pf, 16)) {
        ++violations;
        if (violations <= 3) std::fprintf(stderr, "refuted model: %s\n",
                                          pf.to_formula().to_string().c_str());
      }
    }
    Verdict_ v;
    v.pass = violations == 0;
    v.detail = std::to_string(unsat) + " Unsat verdicts, " + std::to_string(violations) +
               " with a brute-force model";
    return v;
  }

  // Complete programs with at most two transformers and depth-1 terms over
  // one input, at most `per_sketch` per sketch, that produce the output.
  static std::vector<Hypothesis> brute_force_solutions(const Example& e, size_t per_sketch) {
    std::vector<Hypothesis> out;
    std::vector<Hypothesis> frontier{Hypothesis::initial()};
    std::set<std::string> seen;
    FillOptions fo;
    fo.depth_budget = 1;
    for (int size = 0; size <= 2; ++size) {
      std::vector<Hypothesis> next;
      for (const Hypothesis& h : frontier) {
        for (const Hypothesis& s : sketches(h, e)) {
          size_t tried = 0;
          SketchFiller(e, nullptr, fo).fill(s, [&](const Hypothesis& p) {
            try {
              if (tables_equal(evaluate(p), *e.output, false)) out.push_back(p);
            } catch (const Error&) {
            }
            return ++tried < per_sketch;
          });
        }
        if (size == 2) continue;
        for (const HNode* hole : h.open_table_holes()) {
          for (const TableComponent& c : builtin_registry().table_components()) {
            Hypothesis r = h.refine(hole->id, c.name);
            if (seen.insert(r.canonical_key()).second) next.push_back(std::move(r));
          }
        }
      }
      frontier = std::move(next);
    }
    return out;
  }

  // Hypotheses the search and completion pass through on the way to p: the
  // tree with every leaf open, the sketch, and partial fills. Deduction
  // reads an open table hole as "some input", so subtrees are not cut.
  static std::vector<Hypothesis> ancestors(const Hypothesis& p, ts::Rng& rng) {
    std::vector<Hypothesis> out;
    std::vector<int> leaves = ts::qualified_leaves(p);
    std::vector<int> terms;
    for (int id : leaves) {
      if (p.find(id)->qualifier->kind == Qualifier::Kind::kTerm) terms.push_back(id);
    }
    out.push_back(ts::unbind(p, leaves));
    out.push_back(ts::unbind(p, terms));
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<int> drop;
      for (int id : terms) {
        if (std::bernoulli_distribution(0.5)(rng)) drop.push_back(id);
      }
      out.push_back(ts::unbind(p, drop));
    }
    return out;
  }

  Verdict_ criterion6() {
    ts::Rng rng(6006);
    int problems = 0;
    size_t checks = 0;
    size_t solutions = 0;
    size_t violations = 0;
    while (problems < 200) {
      size_t rows = std::uniform_int_distribution<size_t>(1, 4)(rng);
      size_t cols = std::uniform_int_distribution<size_t>(1, 4)(rng);
      std::vector<NamedTable> inputs{
          {"x", std::make_shared<const Table>(ts::random_table(rng, rows, cols))}};
      int k = std::uniform_int_distribution<int>(1, 2)(rng);
      auto gen = ts::random_program(rng, inputs, k, 20, 1);
      if (!gen) continue;
      Table out = evaluate(*gen);
      if (out.rows() > 4 || out.cols() > 4) continue;
      ++problems;
      Example e{inputs, std::make_shared<const Table>(out)};
      std::vector<Hypothesis> found = brute_force_solutions(e, 400);
      found.push_back(*gen);
      solutions += found.size();
      if (found.size() > 12) {
        std::shuffle(found.begin(), found.end() - 1, rng);
        found.erase(found.begin() + 11, found.end() - 1);
      }
      for (SpecLevel level : {SpecLevel::kSpec1, SpecLevel::kSpec2}) {
        Deducer d(e, lib_.at(level));
        for (const Hypothesis& p : found) {
          for (const Hypothesis& h : ancestors(p, rng)) {
            ++checks;
            if (!d.deduce(h).feasible()) {
              ++violations;
              if (violations <= 3) {
                std::fprintf(stderr, "%s rejected %s\nsolved by %s\n",
                             std::string(spec_level_name(level)).c_str(),
                             h.to_string().c_str(), print_program(p).c_str());
              }
            }
          }
        }
      }
    }
    Verdict_ v;
    v.pass = violations == 0;
    v.detail = std::to_string(problems) + " problems, " + std::to_string(solutions) +
               " solving programs, " + std::to_string(checks) + " hypotheses checked, " +
               std::to_string(violations) + " rejected";
    return v;
  }

  // a <= b where a timed-out count is only a lower bound.
  static std::optional<bool> at_most(const SynthesisResult& a, const SynthesisResult& b) {
    size_t x = a.stats.programs_checked;
    size_t y = b.stats.programs_checked;
    bool a_exact = a.outcome != Outcome::kTimedOut;
    bool b_exact = b.outcome != Outcome::kTimedOut;
    if (a_exact && x <= y) return true;
    if (b_exact && x > y) return false;
    if (a_exact && b_exact) return x <= y;
    return std::nullopt;
  }

  Verdict_ criterion7() {
    struct Row {
      const char* name;
      int depth;
    };
    const Row rows[] = {{"ex1_long_to_wide", 3},
                        {"ex2_flights", 4},
                        {"ex3_vehicles", 4},
                        {"students_filter", 4}};
    Verdict_ v;
    v.pass = true;
    std::ostringstream d;
    for (const Row& row : rows) {
      const SynthesisResult& s2 = bundled(row.name, row.depth, 300).spec2;
      SynthesisResult s1 = solve(row.name, SpecLevel::kSpec1, row.depth, ablation_timeout_);
      SynthesisResult none = solve(row.name, SpecLevel::kNone, row.depth, ablation_timeout_);
      auto count = [](const SynthesisResult& r) {
        return std::to_string(r.stats.programs_checked) +
               (r.outcome == Outcome::kTimedOut ? "+" : "");
      };
      std::optional<bool> lo = at_most(s2, s1);
      std::optional<bool> hi = at_most(s1, none);
      bool ok = lo.value_or(false) && hi.value_or(false);
      v.pass = v.pass && ok;
      char prune[32];
      std::snprintf(prune, sizeof prune, "%.3f", s2.stats.prune_fraction());
      d << row.name << " " << count(s2) << "/" << count(s1) << "/" << count(none)
        << " prune " << prune;
      if (!lo || !hi) d << " undecided";
      else if (!ok) d << " violated";
      d << "; ";
    }
    d << "(Spec2/Spec1/None, + marks a timed-out lower bound)";
    v.detail = d.str();
    return v;
  }

  Verdict_ criterion8() {
    ts::Rng rng(808);
    int cases = 0;
    int mismatches = 0;
    while (cases < 500) {
      std::vector<NamedTable> inputs{
          {"x", std::make_shared<const Table>(ts::random_table(rng, 2 + cases % 3, 2 + cases % 3))},
          {"y", std::make_shared<const Table>(ts::random_table(rng, 3, 3))}};
      auto p = ts::random_program(rng, inputs, 1 + cases % 3, 20, 2);
      if (!p) continue;
      ++cases;
      Table expected = evaluate(*p);
      std::vector<int> leaves = ts::qualified_leaves(*p);
      std::vector<int> drop;
      for (int id : leaves) {
        if (std::bernoulli_distribution(0.4)(rng)) drop.push_back(id);
      }
      Hypothesis r = residual_to_hypothesis(partial_eval(ts::unbind(*p, drop)));
      for (int id : drop) {
        if (r.find(id)) r = r.bind(id, *p->find(id)->qualifier);
      }
      PartialValue whole = partial_eval(*p);
      bool ok = whole.is_concrete() && ts::bit_equal(whole.table(), expected);
      try {
        ok = ok && r.is_complete() && ts::bit_equal(evaluate(r), expected);
      } catch (const Error&) {
        ok = false;
      }
      if (!ok) {
        ++mismatches;
        if (mismatches <= 3) std::fprintf(stderr, "mismatch: %s\n", p->to_string().c_str());
      }
    }
    Verdict_ v;
    v.pass = mismatches == 0;
    v.detail = std::to_string(cases) + " programs, " + std::to_string(mismatches) + " mismatches";
    return v;
  }

  Verdict_ criterion9() {
    ts::Rng rng(909);
    std::map<std::string, int> per_component;
    int cases = 0;
    int violations = 0;
    while (cases < 1000) {
      size_t rows = std::uniform_int_distribution<size_t>(1, 4)(rng);
      size_t cols = std::uniform_int_distribution<size_t>(1, 4)(rng);
      std::vector<NamedTable> inputs{
          {"x", std::make_shared<const Table>(ts::random_table(rng, rows, cols))},
          {"y", std::make_shared<const Table>(ts::random_table(rng, rows, cols))}};
      if (std::bernoulli_distribution(0.5)(rng)) {
        inputs[0].table = std::make_shared<const Table>(inputs[0].table->with_group_cols(
            {inputs[0].table->column(0).name}));
      }
      auto p = ts::random_program(rng, inputs, 1, 5, 2);
      if (!p) continue;
      ++cases;
      ++per_component[p->root().component];
      Example e{inputs, std::make_shared<const Table>(evaluate(*p))};
      InputUniverse universe(e);
      for (SpecLevel level : {SpecLevel::kSpec1, SpecLevel::kSpec2}) {
        std::vector<Formula> parts;
        std::vector<Owner> ins;
        const HNode& root = p->root();
        for (const HNodePtr& c : root.children) {
          if (!c->is_table_typed()) continue;
          ins.push_back(Owner::hole(c->id));
          parts.push_back(abstract(*c->qualifier->table, universe, level)
                              .renamed(Owner::subject(), Owner::hole(c->id)));
        }
        parts.push_back(abstract(*e.output, universe, level)
                            .renamed(Owner::subject(), Owner::hole(root.id)));
        parts.push_back(lib_.at(level).find(root.component)->instantiate(Owner::hole(root.id),
                                                                         ins));
        if (is_satisfiable(Formula::conj(std::move(parts))) == SatResult::kUnsat) {
          ++violations;
          if (violations <= 3) {
            std::fprintf(stderr, "%s violated by %s on\n%s",
                         std::string(spec_level_name(level)).c_str(),
                         print_program(*p).c_str(), to_csv(*inputs[0].table).c_str());
          }
        }
      }
    }
    Verdict_ v;
    v.pass = violations == 0;
    std::ostringstream d;
    d << cases << " cases (";
    bool first = true;
    for (const auto& [name, n] : per_component) {
      d << (first ? "" : " ") << name << "=" << n;
      first = false;
    }
    d << "), " << violations << " violations";
    v.detail = d.str();
    return v;
  }

  Verdict_ criterion10() {
    Verdict_ v;
    v.pass = true;
    std::ostringstream d;
    for (const BundledRun& b : runs_) {
      SynthesisResult again = solve(b.name, SpecLevel::kSpec2, b.max_depth, 300);
      bool same_program = b.spec2.program.has_value() == again.program.has_value() &&
                          (!again.program || print_program(*b.spec2.program) ==
                                                 print_program(*again.program));
      bool same_stats = b.spec2.stats.to_json(false) == again.stats.to_json(false) &&
                        b.spec2.outcome == again.outcome;
      bool ok = same_program && same_stats;
      v.pass = v.pass && ok;
      d << b.name << (ok ? " identical" : same_program ? " stats differ" : " program differs")
        << "; ";
    }
    d << "(elapsed time excluded)";
    v.detail = d.str();
    return v;
  }

  double ablation_timeout_;
  SpecLibrary lib_ = SpecLibrary::builtin();
  BigramWeights bigrams_;
  std::vector<BundledRun> runs_;
  int passed_ = 0;
};

}  // namespace
}  // namespace tablesynth

int main(int argc, char** argv) {
  double ablation_timeout = 300;
  if (argc > 1) ablation_timeout = std::stod(argv[1]);
  return tablesynth::Acceptance(ablation_timeout).run();
}
