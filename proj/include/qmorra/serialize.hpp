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

// JSON encodings of the public records and a small locale-free CSV table.

#include <charconv>
#include <cstdint>
#include <ostream>
#include <string>
#include <system_error>
#include <type_traits>
#include <variant>
#include <vector>

#include "json.hpp"
#include "qmorra/circuit.hpp"
#include "qmorra/game.hpp"
#include "qmorra/optics.hpp"
#include "qmorra/strategy.hpp"

namespace qmorra {

using Json = nlohmann::json;

// Shortest form with at most `digits` significant digits, '.' decimal.
inline std::string format_number(double v, int digits = 12) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

inline Json to_json(const GameConfig& c) {
  return {{"players", c.players}, {"coins_per_player", c.coins_per_player}, {"theta", c.theta}};
}

inline Json to_json(const Move& m) {
  return {{"player", m.player}, {"coins", m.coins}, {"guess", m.guess}};
}

// Seeds are decimal strings so 64-bit values survive JSON number parsers.
inline Json to_json(const RoundRecord& r) {
  Json moves = Json::array();
  for (const Move& m : r.moves) moves.push_back(to_json(m));
  return {{"config", to_json(r.config)},
          {"moves", moves},
          {"sampled_total", r.sampled_total},
          {"winner", r.winner ? Json(*r.winner) : Json(nullptr)},
          {"draw", r.is_draw()},
          {"rng_seed", std::to_string(r.rng_seed)}};
}

inline Json to_json(const AliceStrategy& a) { return {{"mix", a.mix}, {"guess", a.guess}}; }
inline Json to_json(const BobStrategy& b) { return {{"mix", b.mix}, {"guesses", b.guesses}}; }

inline Json to_json(const EquilibriumResult& e) {
  return {{"theta", e.theta},
          {"alice", to_json(e.alice)},
          {"bob", to_json(e.bob)},
          {"p_alice", e.p_alice},
          {"p_bob", e.p_bob},
          {"p_draw", e.p_draw},
          {"purity", to_string(e.purity)},
          {"grid_step", e.grid_step},
          {"exact", e.exact},
          {"max_gain", e.max_gain},
          {"fixed_points", e.fixed_points}};
}

inline Json to_json(const Gate& g) {
  switch (g.kind) {
    case GateKind::kU: return {{"kind", "U"}, {"angles", g.angles}};
    case GateKind::kRx: return {{"kind", "RX"}, {"angles", {g.angles[0]}}};
    case GateKind::kRz: return {{"kind", "RZ"}, {"angles", {g.angles[0]}}};
    case GateKind::kId: break;
  }
  return {{"kind", "I"}, {"angles", Json::array()}};
}

inline Json to_json(const CircuitTemplate& c) {
  Json layers = Json::array();
  for (const auto& layer : c.layers) {
    if (const auto* cx = std::get_if<CnotLayer>(&layer)) {
      layers.push_back({{"type", "cnot"}, {"control", cx->control}, {"target", cx->target}});
    } else {
      const auto& l = std::get<LocalLayer>(layer);
      layers.push_back({{"type", "local"}, {"q0", to_json(l.q0)}, {"q1", to_json(l.q1)}});
    }
  }
  return {{"cnot_count", c.cnot_count()}, {"layers", layers}};
}

inline Json to_json(const SynthesisReport& r) {
  Json j = {{"theta", r.theta},
            {"cnot_count", r.cnot_count},
            {"parameters", r.parameters},
            {"residual", r.residual},
            {"iterations", r.iterations},
            {"restarts_used", r.restarts_used},
            {"verified", r.verified},
            {"convention", r.convention},
            {"circuit", to_json(r.circuit)}};
  j["two_cnot_feasible"] = r.two_cnot_feasible ? Json(*r.two_cnot_feasible) : Json(nullptr);
  return j;
}

inline Json to_json(const FitResult& f) {
  return {{"theta", f.theta},
          {"j", f.j},
          {"alpha", {f.alpha_opt.alpha1, f.alpha_opt.alpha2, f.alpha_opt.alpha3}},
          {"cost", f.cost},
          {"fidelity", f.fidelity},
          {"entropy_gap", f.entropy_gap},
          {"evaluations", f.evaluations},
          {"restarts", f.restarts},
          {"success", f.success}};
}

// Column-typed table emitted as CSV or as a JSON array of row objects.
class Table {
 public:
  // monostate is a missing value: empty in CSV, null in JSON.
  using Cell = std::variant<std::monostate, double, long long, std::string>;

  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size()) throw std::logic_error("row width mismatch");
    rows_.push_back(std::move(row));
  }

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }

  void write_csv(std::ostream& os) const {
    for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
    os << '\n';
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
      os << '\n';
    }
  }

  Json to_json() const {
    Json out = Json::array();
    for (const auto& row : rows_) {
      Json obj = Json::object();
      for (std::size_t i = 0; i < row.size(); ++i) {
        std::visit(
            [&](const auto& v) {
              if constexpr (std::is_same_v<std::decay_t<decltype(v)>, std::monostate>) {
                obj[columns_[i]] = nullptr;
              } else {
                obj[columns_[i]] = v;
              }
            },
            row[i]);
      }
      out.push_back(std::move(obj));
    }
    return out;
  }

 private:
  static std::string cell_text(const Cell& c) {
    if (std::holds_alternative<std::monostate>(c)) return {};
    if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
    if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    return std::get<std::string>(c);
  }

  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

}  // namespace qmorra
