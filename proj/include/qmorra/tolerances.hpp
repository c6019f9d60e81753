// Copyright 2026 The qmorra Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

namespace qmorra {

// Every numerical threshold used by the library lives here.
struct Tolerances {
  double unitarity = 1e-12;      // entrywise |U^dag U - I|
  double normalization = 1e-9;   // accepted |sum p - 1| on inputs
  double mix_sum = 1e-12;        // strategy mixes must sum to one
  double grid = 1e-9;            // 1/step must be an integer within this
  double nash = 1e-9;            // max unilateral gain of an exact fixed point
  double tie = 1e-12;            // payoffs closer than this are tied
  double two_cnot = 1e-9;        // |Im gamma| below this counts as real
  double synthesis = 1e-8;       // phase-invariant circuit distance target
  double fixed_circuit = 1e-9;   // distance for the transcribed circuits
  double waveplate_fit = 1e-6;   // waveplate cost target
};

inline constexpr Tolerances kTolerances{};

}  // namespace qmorra
