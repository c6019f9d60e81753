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

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace qmorra {

// Input that fails a precondition (dimension, range, normalization, grid).
// `field` names the offending parameter when there is one.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& message,
                           std::optional<std::string> field = std::nullopt)
      : std::invalid_argument(message), field_(std::move(field)) {}

  const std::optional<std::string>& field() const { return field_; }

 private:
  std::optional<std::string> field_;
};

// A move that breaks a game rule, e.g. a later player repeating a guess.
class RuleError : public std::runtime_error {
 public:
  RuleError(const std::string& message, int player)
      : std::runtime_error(message), player_(player) {}

  int player() const { return player_; }

 private:
  int player_;
};

class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qmorra
