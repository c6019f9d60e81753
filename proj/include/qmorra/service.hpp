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

// Play sessions against strategy bots, plus the JSON request dispatcher used
// by the HTTP front end. Transport-free so it can be driven directly.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <vector>

#include "qmorra/errors.hpp"
#include "qmorra/game.hpp"
#include "qmorra/harness.hpp"
#include "qmorra/qubit_map.hpp"
#include "qmorra/rng.hpp"
#include "qmorra/serialize.hpp"
#include "qmorra/strategy.hpp"

namespace qmorra {

enum class Role { kAlice, kBob };
enum class BotPreset { kRandomRational, kStable, kNash };

inline const char* to_string(Role r) { return r == Role::kAlice ? "alice" : "bob"; }

inline Role parse_role(const std::string& s) {
  if (s == "alice") return Role::kAlice;
  if (s == "bob") return Role::kBob;
  throw ValidationError("human_role must be 'alice' or 'bob'", "human_role");
}

inline const char* to_string(BotPreset b) {
  switch (b) {
    case BotPreset::kRandomRational: return "random-rational";
    case BotPreset::kStable: return "stable";
    case BotPreset::kNash: return "nash";
  }
  return "?";
}

inline BotPreset parse_bot(const std::string& s) {
  for (BotPreset b : {BotPreset::kRandomRational, BotPreset::kStable, BotPreset::kNash}) {
    if (s == to_string(b)) return b;
  }
  throw ValidationError("bot must be one of random-rational, stable, nash", "bot");
}

// What a bot does in either seat.
//   random-rational: coins uniformly at random, best guess assuming the other
//                    player is random too.
//   stable:          the best strategy against a random opponent.
//   nash:            the equilibrium strategy at theta.
// A bot in Bob's seat picks its guess after seeing the human's, for the coin
// count it drew, against its model of Alice's mix.
class BotPolicy {
 public:
  BotPolicy(double theta, BotPreset preset, double grid_step = 0.01)
      : table_(theta, 1), preset_(preset) {
    const StrategyPair random = random_play(table_);
    switch (preset) {
      case BotPreset::kRandomRational:
        alice_ = random.alice;
        bob_mix_ = random.bob.mix;
        alice_model_ = random.alice.mix;
        break;
      case BotPreset::kStable:
        alice_ = alice_best_vs_random(table_, grid_step).alice;
        bob_mix_ = bob_best_vs_random(table_, grid_step).bob.mix;
        alice_model_ = random.alice.mix;
        break;
      case BotPreset::kNash: {
        const EquilibriumResult e = find_equilibrium(table_, grid_step);
        alice_ = e.alice;
        bob_mix_ = e.bob.mix;
        alice_model_ = e.alice.mix;
        break;
      }
    }
  }

  const PayoffTable& table() const { return table_; }
  BotPreset preset() const { return preset_; }
  const AliceStrategy& as_alice() const { return alice_; }
  const std::vector<double>& bob_mix() const { return bob_mix_; }

  // The bot's complete Bob strategy once Alice's guess is known.
  BobStrategy as_bob(int alice_guess) const {
    return {bob_mix_, best_bob_guesses(table_, alice_model_, alice_guess)};
  }

 private:
  PayoffTable table_;
  BotPreset preset_;
  AliceStrategy alice_;
  std::vector<double> bob_mix_;
  std::vector<double> alice_model_;
};

struct Score {
  long long human = 0;
  long long bot = 0;
  long long draws = 0;
};

struct HumanMove {
  int coins = 0;
  int guess = 0;
};

struct SessionSpec {
  double theta = 2 * kPi / 3;
  Role human_role = Role::kAlice;
  BotPreset bot = BotPreset::kNash;
  std::uint64_t seed = 0;
};

struct PlayedRound {
  RoundRecord record;
  int bot_coins = 0;
  int bot_guess = 0;
  std::optional<Role> winner;  // nullopt: draw
};

// Deterministic game state of one session: everything after round k depends
// only on the spec and the first k human moves.
class SessionState {
 public:
  explicit SessionState(const SessionSpec& spec, double grid_step = 0.01)
      : spec_(spec), config_{2, 1, spec.theta}, policy_(spec.theta, spec.bot, grid_step) {
    if (!std::isfinite(spec.theta) || spec.theta < 0.0 || spec.theta > kTwoPi + 1e-12) {
      throw ValidationError("theta must lie in [0, 2pi]", "theta");
    }
  }

  const SessionSpec& spec() const { return spec_; }
  const GameConfig& config() const { return config_; }
  const BotPolicy& policy() const { return policy_; }
  const Score& score() const { return score_; }
  const std::vector<PlayedRound>& history() const { return history_; }
  const std::vector<HumanMove>& moves() const { return moves_; }

  // Alice's guess is public before Bob moves; it is known ahead of the round
  // only when the bot sits in Alice's seat.
  std::optional<int> next_alice_guess() const {
    if (spec_.human_role == Role::kBob) return policy_.as_alice().guess;
    return std::nullopt;
  }

  PlayedRound play(const HumanMove& human) {
    const std::uint64_t k = history_.size();
    const int bot_coins =
        sample_index(spec_.human_role == Role::kAlice ? std::span<const double>(policy_.bob_mix())
                                                      : std::span<const double>(policy_.as_alice().mix),
                     CounterRng(CounterRng::derive(spec_.seed, 2 * k)).uniform());
    const std::uint64_t round_seed = CounterRng::derive(spec_.seed, 2 * k + 1);

    if (human.coins < 0 || human.coins > 1) throw ValidationError("coins must be 0 or 1", "coins");
    if (human.guess < 0 || human.guess > 2) throw ValidationError("guess must be 0, 1 or 2", "guess");

    std::vector<Move> moves;
    int bot_guess = 0;
    if (spec_.human_role == Role::kAlice) {
      bot_guess = policy_.as_bob(human.guess).guesses[bot_coins];
      moves = {{0, human.coins, human.guess}, {1, bot_coins, bot_guess}};
    } else {
      bot_guess = policy_.as_alice().guess;
      moves = {{0, bot_coins, bot_guess}, {1, human.coins, human.guess}};
    }
    PlayedRound played;
    played.record = play_round(config_, moves, round_seed);
    played.bot_coins = bot_coins;
    played.bot_guess = bot_guess;
    if (played.record.winner) {
      played.winner = *played.record.winner == 0 ? Role::kAlice : Role::kBob;
      (*played.winner == spec_.human_role ? score_.human : score_.bot) += 1;
    } else {
      score_.draws += 1;
    }
    history_.push_back(played);
    moves_.push_back(human);
    return played;
  }

  struct WhatIf {
    double p_win = 0.0;
    double p_lose = 0.0;
    double p_draw = 0.0;
  };

  // Exact outcome probabilities of a human strategy against this bot. For a
  // human Alice pass her mix and guess; for a human Bob, his mix and guesses.
  WhatIf whatif(const std::vector<double>& mix, std::optional<int> guess,
                const std::optional<std::vector<int>>& guesses) const {
    const PayoffTable& t = policy_.table();
    WhatIf w;
    if (spec_.human_role == Role::kAlice) {
      if (!guess) throw ValidationError("a human Alice needs 'guess'", "guess");
      const AliceStrategy alice{mix, *guess};
      detail::validate_alice(t, alice);
      const BobStrategy bob = policy_.as_bob(*guess);
      w.p_win = alice_win_prob(t, alice, bob);
      w.p_lose = bob_win_prob(t, alice, bob);
    } else {
      if (!guesses) throw ValidationError("a human Bob needs 'guesses'", "guesses");
      const BobStrategy bob{mix, *guesses};
      w.p_win = bob_win_prob(t, policy_.as_alice(), bob);
      w.p_lose = alice_win_prob(t, policy_.as_alice(), bob);
    }
    w.p_draw = std::max(0.0, 1.0 - w.p_win - w.p_lose);
    return w;
  }

 private:
  SessionSpec spec_;
  GameConfig config_;
  BotPolicy policy_;
  Score score_;
  std::vector<PlayedRound> history_;
  std::vector<HumanMove> moves_;
};

// Rebuilds a session from its spec and move log.
inline SessionState replay_session(const SessionSpec& spec, const std::vector<HumanMove>& log,
                                   double grid_step = 0.01) {
  SessionState s(spec, grid_step);
  for (const HumanMove& m : log) s.play(m);
  return s;
}

inline Json to_json(const PlayedRound& p, Role human_role) {
  Json j = to_json(p.record);
  j["bot_coins"] = p.bot_coins;
  j["bot_guess"] = p.bot_guess;
  j["winner_role"] = p.winner ? Json(to_string(*p.winner)) : Json(nullptr);
  j["outcome"] = !p.winner ? "draw" : (*p.winner == human_role ? "human" : "bot");
  return j;
}

inline Json to_json(const Score& s) { return {{"human", s.human}, {"bot", s.bot}, {"draws", s.draws}}; }

struct HttpRequest {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct HttpResponse {
  int status = 200;
  Json body;
};

struct ServiceOptions {
  std::optional<std::filesystem::path> persist_dir{};  // JSON-lines log per session
  double grid_step = 0.01;
  std::uint64_t id_key = 0;  // 0: drawn from std::random_device
};

class PlayService {
 public:
  explicit PlayService(ServiceOptions options = {}) : options_(std::move(options)) {
    id_key_ = options_.id_key;
    if (id_key_ == 0) {
      std::random_device rd;
      id_key_ = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }
    if (options_.persist_dir) std::filesystem::create_directories(*options_.persist_dir);
  }

  HttpResponse handle(const HttpRequest& req) {
    try {
      return route(req);
    } catch (const ValidationError& e) {
      Json body = {{"code", "validation_error"}, {"message", e.what()}};
      if (e.field()) body["field"] = *e.field();
      return {400, body};
    } catch (const RuleError& e) {
      return {422, {{"code", "rule_violation"}, {"message", e.what()}, {"field", "guess"}}};
    } catch (const NotFoundError& e) {
      return {404, {{"code", "not_found"}, {"message", e.what()}}};
    } catch (const Json::exception& e) {
      return {400, {{"code", "invalid_json"}, {"message", e.what()}}};
    }
  }

  std::string create_session(const SessionSpec& spec) {
    auto entry = std::make_shared<Entry>(spec, options_.grid_step);
    const std::string id = next_id();
    {
      std::unique_lock lock(sessions_mutex_);
      sessions_.emplace(id, entry);
    }
    persist(id, {{"type", "session"},
                 {"theta", spec.theta},
                 {"human_role", to_string(spec.human_role)},
                 {"bot", to_string(spec.bot)},
                 {"seed", std::to_string(spec.seed)}});
    return id;
  }

  PlayedRound play(const std::string& id, const HumanMove& move) {
    auto entry = find(id);
    std::lock_guard lock(entry->mutex);
    return play_locked(id, *entry, move);
  }

  Json summary(const std::string& id, bool with_history) {
    auto entry = find(id);
    std::lock_guard lock(entry->mutex);
    return summary_json(id, entry->state, with_history);
  }

  // Restores a session from a JSON-lines log written with persistence on.
  std::string load_log(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw NotFoundError("cannot open " + path.string());
    std::string line;
    std::optional<SessionSpec> spec;
    std::vector<HumanMove> log;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const Json j = Json::parse(line);
      if (j.at("type") == "session") {
        spec = SessionSpec{j.at("theta").get<double>(), parse_role(j.at("human_role")),
                           parse_bot(j.at("bot")), parse_seed(j.at("seed"))};
      } else if (j.at("type") == "round") {
        log.push_back({j.at("coins").get<int>(), j.at("guess").get<int>()});
      }
    }
    if (!spec) throw ValidationError("log has no session header", "log");
    auto entry = std::make_shared<Entry>(*spec, options_.grid_step);
    for (const HumanMove& m : log) entry->state.play(m);
    const std::string id = next_id();
    std::unique_lock lock(sessions_mutex_);
    sessions_.emplace(id, entry);
    return id;
  }

  static std::uint64_t parse_seed(const Json& j) {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_number_integer()) {
      const auto v = j.get<std::int64_t>();
      if (v < 0) throw ValidationError("seed must be non-negative", "seed");
      return static_cast<std::uint64_t>(v);
    }
    if (j.is_string()) {
      const std::string s = j.get<std::string>();
      std::uint64_t v = 0;
      const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
      if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty()) {
        throw ValidationError("seed must be a decimal 64-bit integer", "seed");
      }
      return v;
    }
    throw ValidationError("seed must be a decimal string or integer", "seed");
  }

 private:
  struct Entry {
    Entry(const SessionSpec& spec, double grid_step) : state(spec, grid_step) {}
    std::mutex mutex;
    SessionState state;
  };

  PlayedRound play_locked(const std::string& id, Entry& entry, const HumanMove& move) {
    PlayedRound played = entry.state.play(move);
    persist(id, {{"type", "round"},
                 {"coins", move.coins},
                 {"guess", move.guess},
                 {"sampled_total", played.record.sampled_total}});
    return played;
  }

  std::string next_id() {
    const std::uint64_t v = CounterRng::derive(id_key_, counter_++);
    char buf[24];
    std::snprintf(buf, sizeof buf, "s%016llx", static_cast<unsigned long long>(v));
    return buf;
  }

  std::shared_ptr<Entry> find(const std::string& id) {
    std::shared_lock lock(sessions_mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw NotFoundError("no session '" + id + "'");
    return it->second;
  }

  void persist(const std::string& id, const Json& line) {
    if (!options_.persist_dir) return;
    std::lock_guard lock(persist_mutex_);
    std::ofstream out(*options_.persist_dir / (id + ".jsonl"), std::ios::app);
    out << line.dump() << '\n';
  }

  static Json summary_json(const std::string& id, const SessionState& s, bool with_history) {
    const auto next = s.next_alice_guess();
    Json j = {{"id", id},
              {"theta", s.spec().theta},
              {"human_role", to_string(s.spec().human_role)},
              {"bot", to_string(s.spec().bot)},
              {"seed", std::to_string(s.spec().seed)},
              {"config", to_json(s.config())},
              {"score", to_json(s.score())},
              {"rounds_played", s.history().size()},
              {"next_alice_guess", next ? Json(*next) : Json(nullptr)}};
    if (with_history) {
      Json h = Json::array();
      for (const auto& p : s.history()) h.push_back(to_json(p, s.spec().human_role));
      j["history"] = h;
    }
    return j;
  }

  static Json parse_body(const HttpRequest& req) {
    if (req.body.empty()) return Json::object();
    Json j = Json::parse(req.body);
    if (!j.is_object()) throw ValidationError("request body must be a JSON object", "body");
    return j;
  }

  static double query_double(const HttpRequest& req, const std::string& key,
                             std::optional<double> fallback = std::nullopt) {
    auto it = req.query.find(key);
    if (it == req.query.end()) {
      if (fallback) return *fallback;
      throw ValidationError("missing query parameter '" + key + "'", key);
    }
    double v = 0.0;
    const auto& s = it->second;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
      throw ValidationError("query parameter '" + key + "' must be a number", key);
    }
    return v;
  }

  static long long query_int(const HttpRequest& req, const std::string& key, long long fallback) {
    auto it = req.query.find(key);
    if (it == req.query.end()) return fallback;
    long long v = 0;
    const auto& s = it->second;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
      throw ValidationError("query parameter '" + key + "' must be an integer", key);
    }
    return v;
  }

  template <typename T>
  static T body_field(const Json& body, const char* key) {
    if (!body.contains(key)) throw ValidationError(std::string("missing field '") + key + "'", key);
    try {
      return body.at(key).get<T>();
    } catch (const Json::exception&) {
      throw ValidationError(std::string("field '") + key + "' has the wrong type", key);
    }
  }

  HttpResponse route(const HttpRequest& req) {
    std::vector<std::string> parts;
    {
      std::istringstream ss(req.path);
      std::string part;
      while (std::getline(ss, part, '/')) {
        if (!part.empty()) parts.push_back(part);
      }
    }
    if (parts.size() < 2 || parts[0] != "api") throw NotFoundError("no route " + req.path);
    const std::string& m = req.method;

    if (parts[1] == "sessions") {
      if (parts.size() == 2 && m == "POST") return post_session(req);
      if (parts.size() == 3 && m == "GET") return {200, summary(parts[2], true)};
      if (parts.size() == 4 && m == "POST" && parts[3] == "rounds") return post_round(parts[2], req);
      if (parts.size() == 4 && m == "POST" && parts[3] == "whatif") return post_whatif(parts[2], req);
    } else if (parts.size() == 2 && m == "GET") {
      if (parts[1] == "theta-sweep") return get_sweep(req);
      if (parts[1] == "equilibrium") return get_equilibrium(req);
      if (parts[1] == "distribution") return get_distribution(req);
    }
    throw NotFoundError("no route " + m + " " + req.path);
  }

  HttpResponse post_session(const HttpRequest& req) {
    const Json body = parse_body(req);
    SessionSpec spec;
    spec.theta = body_field<double>(body, "theta");
    spec.human_role = parse_role(body.value("human_role", std::string("alice")));
    spec.bot = parse_bot(body.value("bot", std::string("nash")));
    if (body.contains("seed") && !body["seed"].is_null()) {
      spec.seed = parse_seed(body["seed"]);
    } else {
      std::random_device rd;
      spec.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }
    const std::string id = create_session(spec);
    return {201, summary(id, false)};
  }

  HttpResponse post_round(const std::string& id, const HttpRequest& req) {
    const Json body = parse_body(req);
    const HumanMove move{body_field<int>(body, "coins"), body_field<int>(body, "guess")};
    auto entry = find(id);
    std::lock_guard lock(entry->mutex);
    const PlayedRound played = play_locked(id, *entry, move);
    const auto next = entry->state.next_alice_guess();
    return {200,
            {{"round", to_json(played, entry->state.spec().human_role)},
             {"score", to_json(entry->state.score())},
             {"rounds_played", entry->state.history().size()},
             {"next_alice_guess", next ? Json(*next) : Json(nullptr)}}};
  }

  HttpResponse post_whatif(const std::string& id, const HttpRequest& req) {
    const Json body = parse_body(req);
    auto entry = find(id);
    // Config and bot policy never change after creation; no lock needed.
    const SessionState& s = entry->state;
    const auto mix = body_field<std::vector<double>>(body, "mix");
    std::optional<int> guess;
    std::optional<std::vector<int>> guesses;
    if (body.contains("guess")) guess = body_field<int>(body, "guess");
    if (body.contains("guesses")) guesses = body_field<std::vector<int>>(body, "guesses");
    const auto w = s.whatif(mix, guess, guesses);
    return {200, {{"p_win", w.p_win}, {"p_lose", w.p_lose}, {"p_draw", w.p_draw}}};
  }

  HttpResponse get_sweep(const HttpRequest& req) {
    SweepSpec spec;
    spec.points = static_cast<int>(query_int(req, "points", 34));
    spec.theta_min = query_double(req, "theta_min", 0.0);
    spec.theta_max = query_double(req, "theta_max", kTwoPi);
    const long long rounds = query_int(req, "rounds", 0);
    if (spec.points > 2000) throw ValidationError("points must be <= 2000", "points");
    if (rounds < 0 || rounds > 1000000) throw ValidationError("rounds must lie in [0, 1e6]", "rounds");
    spec.rounds = std::max(1LL, rounds);
    spec.seed = static_cast<std::uint64_t>(query_int(req, "seed", static_cast<long long>(spec.seed)));
    const auto rows = cmd_sweep(spec, rounds > 0);
    Json out = Json::array();
    for (const auto& r : rows) {
      out.push_back({{"theta", r.theta},
                     {"a", r.a},
                     {"n", r.n},
                     {"exact", r.exact},
                     {"empirical", r.empirical ? Json(*r.empirical) : Json(nullptr)}});
    }
    return {200, {{"points", spec.points}, {"rounds", rounds}, {"rows", out}}};
  }

  HttpResponse get_equilibrium(const HttpRequest& req) {
    const double theta = query_double(req, "theta");
    if (theta < 0.0 || theta > kTwoPi + 1e-12) throw ValidationError("theta must lie in [0, 2pi]", "theta");
    const double step = query_double(req, "grid_step", options_.grid_step);
    return {200, to_json(find_equilibrium(theta, step))};
  }

  // Read-only distributions for the n-player, m-coin generalization.
  HttpResponse get_distribution(const HttpRequest& req) {
    GameConfig config;
    config.players = static_cast<int>(query_int(req, "players", 2));
    config.coins_per_player = static_cast<int>(query_int(req, "coins_per_player", 1));
    config.theta = query_double(req, "theta");
    if (config.players > 16 || config.coins_per_player > 16) {
      throw ValidationError("players and coins_per_player are limited to 16", "players");
    }
    std::vector<int> coins;
    auto it = req.query.find("coins");
    if (it == req.query.end()) throw ValidationError("missing query parameter 'coins'", "coins");
    std::istringstream ss(it->second);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      int v = 0;
      const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
        throw ValidationError("coins must be a comma-separated integer list", "coins");
      }
      coins.push_back(v);
    }
    const ProbabilityVector dist = round_distribution(config, coins);
    return {200,
            {{"config", to_json(config)},
             {"coins", coins},
             {"distribution", dist},
             {"qubits", qubit_count(config.total_coins())}}};
  }

  ServiceOptions options_;
  std::uint64_t id_key_ = 0;
  std::atomic<std::uint64_t> counter_{0};
  std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::mutex persist_mutex_;
};

}  // namespace qmorra
