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

#include "qmorra/circuit.hpp"
#include "qmorra/errors.hpp"
#include "qmorra/game.hpp"
#include "qmorra/harness.hpp"
#include "qmorra/optics.hpp"
#include "qmorra/optimize.hpp"
#include "qmorra/qubit_map.hpp"
#include "qmorra/qudit.hpp"
#include "qmorra/rng.hpp"
#include "qmorra/serialize.hpp"
#include "qmorra/strategy.hpp"
#include "qmorra/tolerances.hpp"
