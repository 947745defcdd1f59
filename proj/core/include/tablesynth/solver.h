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

#ifndef TABLESYNTH_SOLVER_H_
#define TABLESYNTH_SOLVER_H_

#include <cstddef>
#include <string>

#include "tablesynth/formula.h"

namespace tablesynth {

enum class SatResult { kSat, kUnsat };

struct SolverOptions {
  // Disjunctive case split limit; beyond it the formula is reported Sat.
  size_t case_cap = 4096;
  // Per-case bound on live inequalities during elimination.
  size_t constraint_cap = 20000;
};

struct SolverReport {
  SatResult result = SatResult::kSat;
  size_t cases = 0;
  bool case_blowup = false;
  // Set when the elimination ran out of room or overflowed int64; the
  // verdict is then Sat.
  bool resource_limit = false;
};

// Decides the formula over the nonnegative rationals. Unsat is returned only
// if no nonnegative rational (hence no nonnegative integer) assignment
// exists; integer infeasibility that is rationally feasible stays Sat.
SolverReport check_formula(const Formula& f, const SolverOptions& options = {});

inline SatResult is_satisfiable(const Formula& f,
                                const SolverOptions& options = {}) {
  return check_formula(f, options).result;
}

// SMT-LIB 2 rendering for cross-checking with an external solver.
std::string to_smtlib(const Formula& f);

}  // namespace tablesynth

#endif  // TABLESYNTH_SOLVER_H_
