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


// qmorra: datasets for the deformed quantum Morra game, and the play server.
//
//   qmorra sweep --points 34 --rounds 150000 --seed 7 --out sweep.csv
//   qmorra table1
//   qmorra strategies --scenario equilibrium --grid-step 0.01
//   qmorra synth --points 34
//   qmorra fit --points 34 --format json
//   qmorra serve --port 8080 --cors-origin http://localhost:5173

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qmorra/harness.hpp"
#include "qmorra/http.hpp"
#include "qmorra/service.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitTolerance = 3;

struct CommonFlags {
  double theta_min = 0.0;
  double theta_max = qmorra::kTwoPi;
  int points = 34;
  long long rounds = 150000;
  std::uint64_t seed = 2024;
  double grid_step = 0.01;
  std::string out;
  std::string format = "csv";
  bool no_timestamp = false;

  qmorra::SweepSpec spec() const {
    qmorra::SweepSpec s;
    s.theta_min = theta_min;
    s.theta_max = theta_max;
    s.points = points;
    s.rounds = rounds;
    s.seed = seed;
    s.validate();
    return s;
  }
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--theta-min", f.theta_min, "first theta of the grid (rad)");
  cmd->add_option("--theta-max", f.theta_max, "last theta of the grid (rad)");
  cmd->add_option("--points", f.points, "grid points, endpoints included");
  cmd->add_option("--rounds", f.rounds, "Monte-Carlo rounds per (theta, coins)");
  cmd->add_option("--seed", f.seed, "64-bit seed");
  cmd->add_option("--grid-step", f.grid_step, "probability resolution of strategy mixes");
  cmd->add_option("--out", f.out, "output file (default stdout)");
  cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--no-header-timestamp", f.no_timestamp, "omit the generated-at line");
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void emit(const qmorra::Table& table, const CommonFlags& f, const qmorra::Json& extra = {}) {
  std::ofstream file;
  if (!f.out.empty()) {
    file.open(f.out);
    if (!file) throw qmorra::ValidationError("cannot write " + f.out, "out");
  }
  std::ostream& os = f.out.empty() ? std::cout : file;
  if (f.format == "json") {
    qmorra::Json doc = {{"rows", table.to_json()}};
    if (!f.no_timestamp) doc["generated"] = timestamp();
    if (!extra.is_null()) doc["details"] = extra;
    os << doc.dump(2) << '\n';
  } else {
    if (!f.no_timestamp) os << "# generated " << timestamp() << '\n';
    table.write_csv(os);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deformed quantum Morra: sweeps, strategies, circuits, optics fits, play server"};
  app.require_subcommand(1);

  CommonFlags sweep_f, table_f, strat_f, synth_f, fit_f;
  auto* sweep = app.add_subcommand("sweep", "P_a(n) versus theta, exact and Monte-Carlo");
  add_common(sweep, sweep_f);

  auto* table1 = app.add_subcommand("table1", "reference table at theta = 0, 2pi/3, pi, 4pi/3");
  add_common(table1, table_f);

  std::vector<std::string> scenarios;
  bool purity = false;
  auto* strategies = app.add_subcommand("strategies", "winning and draw probabilities per scenario");
  add_common(strategies, strat_f);
  strategies->add_option("--scenario", scenarios,
                         "random-vs-random, alice-best, bob-best, equilibrium (repeatable)");
  strategies->add_flag("--purity", purity, "emit the pure/mixed scan with boundaries instead");

  int restarts = 50;
  std::string netlist_dir;
  auto* synth = app.add_subcommand("synth", "two-qubit circuits for the embedded coin operator");
  add_common(synth, synth_f);
  synth->add_option("--restarts", restarts, "max template-fit restarts");
  synth->add_option("--netlist-dir", netlist_dir, "write one netlist per theta here");

  int fit_restarts = 32;
  auto* fit = app.add_subcommand("fit", "waveplate angles reproducing |1_theta> and |2_theta>");
  add_common(fit, fit_f);
  fit->add_option("--restarts", fit_restarts, "max restarts per target");

  qmorra::HttpOptions http;
  std::string persist_dir;
  auto* serve = app.add_subcommand("serve", "HTTP/JSON play service");
  serve->add_option("--host", http.host, "bind address");
  serve->add_option("--port", http.port, "port");
  serve->add_option("--cors-origin", http.cors_origin, "allowed browser origin");
  serve->add_option("--persist-dir", persist_dir, "append-only session logs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*sweep) {
      const auto rows = qmorra::cmd_sweep(sweep_f.spec());
      emit(qmorra::sweep_table(rows), sweep_f);
    } else if (*table1) {
      emit(qmorra::table1_table(qmorra::cmd_table1()), table_f);
    } else if (*strategies) {
      const auto grid = strat_f.spec().grid();
      if (purity) {
        const auto scan = qmorra::purity_region_scan(grid, strat_f.grid_step);
        emit(qmorra::purity_table(scan), strat_f, {{"boundaries", scan.boundaries}});
        for (double b : scan.boundaries) std::cerr << "boundary " << b << '\n';
      } else {
        std::vector<qmorra::Scenario> list;
        for (const auto& s : scenarios) list.push_back(qmorra::parse_scenario(s));
        if (list.empty()) {
          list = {qmorra::Scenario::kRandomVsRandom, qmorra::Scenario::kAliceBest,
                  qmorra::Scenario::kBobBest, qmorra::Scenario::kEquilibrium};
        }
        emit(qmorra::strategies_table(qmorra::cmd_strategies(grid, list, strat_f.grid_step)), strat_f);
      }
    } else if (*synth) {
      qmorra::FitOptions opt;
      opt.restarts = restarts;
      opt.seed = synth_f.seed;
      const auto reports = qmorra::cmd_synth(synth_f.spec().grid(), opt);
      qmorra::Json details = qmorra::Json::array();
      for (const auto& r : reports) details.push_back(qmorra::to_json(r));
      emit(qmorra::synth_table(reports), synth_f, details);
      if (!netlist_dir.empty()) {
        std::filesystem::create_directories(netlist_dir);
        for (std::size_t i = 0; i < reports.size(); ++i) {
          std::ofstream(std::filesystem::path(netlist_dir) / ("theta_" + std::to_string(i) + ".net"))
              << "# theta " << qmorra::format_angle(reports[i].theta) << '\n'
              << qmorra::to_netlist(reports[i].circuit);
        }
      }
      for (const auto& r : reports) {
        if (!r.verified) return kExitTolerance;
      }
    } else if (*fit) {
      qmorra::WaveplateFitOptions opt;
      opt.restarts = fit_restarts;
      opt.seed = fit_f.seed;
      const auto fits = qmorra::cmd_fit(fit_f.spec().grid(), opt);
      emit(qmorra::fit_table(fits), fit_f);
      for (const auto& f : fits) {
        if (!f.success) return kExitTolerance;
      }
    } else if (*serve) {
      qmorra::ServiceOptions opt;
      if (!persist_dir.empty()) opt.persist_dir = persist_dir;
      qmorra::PlayService service(opt);
      std::cerr << "listening on " << http.host << ':' << http.port << '\n';
      if (!qmorra::serve(service, http)) {
        std::cerr << "could not bind " << http.host << ':' << http.port << '\n';
        return 1;
      }
    }
  } catch (const qmorra::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return 0;
}
