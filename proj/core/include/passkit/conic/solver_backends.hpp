// SPDX-License-Identifier: Apache-2.0
//
// passkit: pinching-antenna system design toolkit
// Copyright (C) 2026 passkit contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "passkit/conic/problem.hpp"

namespace passkit::conic {

/// Nesterov-Todd interior-point backend; free/nonneg/SOC segments only.
ConicSolution solve_interior_point(const ConicProblem& problem, const SolveOptions& options);

/// Operator-splitting backend on the homogeneous embedding; all cone kinds,
/// moderate accuracy, supports warm starts.
ConicSolution solve_splitting(const ConicProblem& problem, const SolveOptions& options);

} // namespace passkit::conic
