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

#include "cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "tablesynth/errors.h"
#include "tablesynth/problem.h"
#include "tablesynth/program_text.h"
#include "tablesynth/spec_registry.h"
#include "tablesynth/synthesizer.h"

namespace tablesynth::cli {

namespace {

struct CommonOptions {
  std::string spec = "2";
  int max_depth = 4;
  double timeout = 300;
  int threads = 1;
  bool ordered_rows = false;
  size_t sketch_budget = SearchConfig{}.sketch_budget;
  std::string spec_file;
  std::string bigram_file;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kMalformedInput, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

SpecLevel parse_level(const std::string& s) {
  if (s == "none") return SpecLevel::kNone;
  if (s == "1") return SpecLevel::kSpec1;
  return SpecLevel::kSpec2;
}

SpecLibrary load_specs(const CommonOptions& o) {
  if (o.spec_file.empty()) return SpecLibrary::builtin();
  return load_spec_file(read_file(o.spec_file));
}

SearchConfig make_config(const CommonOptions& o, const Problem& p) {
  SearchConfig cfg;
  cfg.level = parse_level(o.spec);
  cfg.max_depth = o.max_depth;
  cfg.timeout_seconds = o.timeout;
  cfg.threads = o.threads;
  cfg.ordered_rows = o.ordered_rows || p.ordered_rows;
  cfg.extra_constants = p.constants;
  cfg.sketch_budget = o.sketch_budget;
  if (!o.bigram_file.empty()) cfg.bigrams = parse_bigram_weights(read_file(o.bigram_file));
  return cfg;
}

void add_common(CLI::App* cmd, CommonOptions* o) {
  cmd->add_option("--spec", o->spec, "specification level")
      ->check(CLI::IsMember({"none", "1", "2"}));
  cmd->add_option("--max-depth", o->max_depth, "maximum number of table transformers")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--timeout", o->timeout, "wall-clock limit in seconds")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--threads", o->threads, "worker threads")->check(CLI::Range(1, 256));
  cmd->add_flag("--ordered-rows", o->ordered_rows, "compare rows in order");
  cmd->add_option("--sketch-budget", o->sketch_budget,
                  "completion effort before a sketch is set aside (0: no limit)");
  cmd->add_option("--spec-file", o->spec_file, "TOML or JSON specification overrides");
  cmd->add_option("--bigram", o->bigram_file, "component bigram weights");
}

int solve(const std::string& path, const CommonOptions& o, const std::string& emit,
          bool stats, bool explain, std::ostream& out, std::ostream& err) {
  Problem problem = load_problem_file(path);
  Example example = problem.example();
  Registry registry = problem.registry();
  SpecLibrary specs = load_specs(o);
  SearchConfig cfg = make_config(o, problem);
  if (explain) cfg.explain = [&err](const std::string& line) { err << line << "\n"; };
  SynthesisResult r = synthesize_parallel(example, registry, specs, cfg);
  if (r.program) {
    out << print_program(*r.program, emit == "r" ? Surface::kR : Surface::kDsl);
  } else {
    err << "no program found (" << outcome_name(r.outcome) << ")\n";
  }
  if (stats) out << r.stats.to_json() << "\n";
  switch (r.outcome) {
    case Outcome::kFound: return kExitFound;
    case Outcome::kNotFound: return kExitNotFound;
    case Outcome::kTimedOut: return kExitTimedOut;
  }
  return kExitError;
}

struct BenchMode {
  const char* name;
  SpecLevel level;
  bool partial_eval;
};

constexpr BenchMode kModes[] = {
    {"none", SpecLevel::kNone, true},        {"none-nope", SpecLevel::kNone, false},
    {"spec1", SpecLevel::kSpec1, true},      {"spec1-nope", SpecLevel::kSpec1, false},
    {"spec2", SpecLevel::kSpec2, true},      {"spec2-nope", SpecLevel::kSpec2, false},
};

int bench(const std::string& dir, const CommonOptions& o, const std::string& report,
          std::ostream& out, std::ostream& err) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::ofstream file;
  if (!report.empty()) {
    file.open(report);
    if (!file) throw Error(ErrorCode::kMalformedInput, "cannot write " + report);
  }
  std::ostream& csv = report.empty() ? out : file;
  csv << "problem,mode,solved,time,hypothesesExplored,programsChecked,pruneFraction\n";
  SpecLibrary specs = load_specs(o);
  for (const auto& path : files) {
    std::string name = path.stem().string();
    for (const BenchMode& mode : kModes) {
      try {
        Problem problem = load_problem_file(path.string());
        Example example = problem.example();
        Registry registry = problem.registry();
        SearchConfig cfg = make_config(o, problem);
        cfg.level = mode.level;
        cfg.partial_eval = mode.partial_eval;
        cfg.threads = 1;
        SynthesisResult r = synthesize(example, registry, specs, cfg);
        csv << name << "," << mode.name << ","
            << (r.outcome == Outcome::kFound ? "true" : "false") << "," << std::fixed
            << std::setprecision(3) << r.stats.elapsed_seconds << ","
            << r.stats.hypotheses_explored << "," << r.stats.programs_checked << ","
            << std::setprecision(4) << r.stats.prune_fraction() << "\n";
      } catch (const std::exception& e) {
        err << name << " [" << mode.name << "]: " << e.what() << "\n";
        csv << name << "," << mode.name << ",error,,,,\n";
      }
      csv.flush();
    }
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Example-driven table transformation synthesizer", "tablesynth"};
  app.require_subcommand(1);

  CommonOptions solve_opts;
  std::string problem_path;
  std::string emit = "dsl";
  bool stats = false;
  bool explain = false;
  CLI::App* solve_cmd = app.add_subcommand("solve", "synthesize a program for a problem file");
  solve_cmd->add_option("problem", problem_path, "problem JSON file")->required();
  add_common(solve_cmd, &solve_opts);
  solve_cmd->add_option("--emit", emit, "output syntax")->check(CLI::IsMember({"dsl", "r"}));
  solve_cmd->add_flag("--stats", stats, "print search statistics as JSON");
  solve_cmd->add_flag("--explain", explain, "log rejected hypotheses to stderr");

  CommonOptions bench_opts;
  bench_opts.timeout = 60;
  std::string bench_dir;
  std::string report;
  CLI::App* bench_cmd = app.add_subcommand("bench", "run the ablation modes over a directory");
  bench_cmd->add_option("dir", bench_dir, "directory of problem files")->required();
  bench_cmd->add_option("--out", report, "CSV report path (default stdout)");
  add_common(bench_cmd, &bench_opts);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitError;
  }

  try {
    if (*solve_cmd) {
      return solve(problem_path, solve_opts, emit, stats, explain, out, err);
    }
    return bench(bench_dir, bench_opts, report, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace tablesynth::cli
