#include "ews/bench.hpp"

#include <chrono>
#include <ctime>
#include <ostream>
#include <sstream>

#include "ews/solve.hpp"

#ifndef EWS_BUILD_ID
#define EWS_BUILD_ID "dev"
#endif

namespace ews {
namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string outcome_label(const SolveReport& r) {
  const auto w = r.winner();
  if (!w) return "unknown";
  return *w == Player::First ? "first_player_win" : "second_player_win";
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void fill_common(ReportRecord& rec, const BenchCell& cell) {
  rec.game = cell.game;
  rec.size = cell.size_label();
  rec.komi = cell.komi;
  rec.algo = std::string(to_string(cell.config.algorithm));
  rec.seed = cell.config.seed;
  rec.node_limit = cell.config.node_limit;
  rec.time_limit_s = cell.config.time_limit_s;
  rec.tt = cell.config.transpositions && cell.game == "hex";
  rec.symmetry = cell.config.symmetry;
  if (cell.config.conjecture) rec.conjecture = *cell.config.conjecture == Player::First ? "first" : "second";
  const int cap = cell.config.rollout_cap > 0 ? cell.config.rollout_cap : 4 * cell.width * cell.height;
  rec.rollout_cap = cell.game == "go" ? cap : 0;
  rec.ruleset = cell.game == "go" ? "positional-superko;suicide-illegal;tromp-taylor-area;two-pass-end"
                                  : "hex;no-swap";
  rec.timestamp = utc_timestamp();
  rec.build = build_id();
}

}  // namespace

std::string build_id() { return EWS_BUILD_ID; }

std::string BenchCell::size_label() const {
  return width == height ? std::to_string(width) : std::to_string(width) + "x" + std::to_string(height);
}

AnyState BenchCell::initial_state() const {
  if (game == "hex") {
    if (komi) throw std::invalid_argument("komi does not apply to hex");
    if (width != height) throw std::invalid_argument("hex boards are square");
    return HexState(width);
  }
  if (game == "go") {
    if (!komi) throw std::invalid_argument("go needs a komi");
    return GoState(width, height, Komi::from_points(*komi));
  }
  throw std::invalid_argument("unknown game '" + game + "'");
}

BenchSpec parse_bench_spec(const nlohmann::json& spec) {
  if (!spec.is_array()) throw std::invalid_argument("bench spec must be a JSON list of cells");
  BenchSpec out;
  for (const auto& j : spec) {
    if (!j.is_object()) throw std::invalid_argument("bench cell must be an object");
    BenchCell c;
    try {
      c.game = j.at("game").get<std::string>();
      const auto& size = j.at("size");
      if (size.is_string()) {
        const std::string s = size.get<std::string>();
        const auto x = s.find('x');
        if (x == std::string::npos) throw std::invalid_argument("bad size " + s);
        c.width = std::stoi(s.substr(0, x));
        c.height = std::stoi(s.substr(x + 1));
      } else {
        c.width = c.height = size.get<int>();
      }
      if (j.contains("komi")) c.komi = j.at("komi").get<double>();
      const auto algo = parse_algorithm(j.at("algo").get<std::string>());
      if (!algo) throw std::invalid_argument("unknown algo " + j.at("algo").get<std::string>());
      c.config.algorithm = *algo;
      c.config.seed = j.at("seed").get<std::uint64_t>();
      c.config.node_limit = j.value("node_limit", c.config.node_limit);
      c.config.time_limit_s = j.value("time_limit", c.config.time_limit_s);
      c.config.transpositions = j.value("tt", true);
      c.config.symmetry = j.value("symmetry", true);
      c.config.rollout_cap = j.value("rollout_cap", 0);
      c.config.uct_c = j.value("uct_c", c.config.uct_c);
      c.config.tt_log2_capacity = j.value("tt_log2", c.config.tt_log2_capacity);
      if (j.contains("conjecture")) {
        const std::string who = j.at("conjecture").get<std::string>();
        if (who != "first" && who != "second") throw std::invalid_argument("conjecture must be first or second");
        c.config.conjecture = who == "first" ? Player::First : Player::Second;
      }
      c.repeat = j.value("repeat", 1);
      if (c.repeat < 1) throw std::invalid_argument("repeat must be positive");
      c.config.validate();
      c.initial_state();
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(std::string("bench cell: ") + e.what());
    }
    out.cells.push_back(std::move(c));
  }
  return out;
}

int exit_code(const SolveReport& r) { return r.solved() ? 0 : 2; }

ReportRecord make_record(const BenchCell& cell, const SolveReport& report) {
  ReportRecord rec;
  fill_common(rec, cell);
  rec.outcome = outcome_label(report);
  rec.to_move = std::string(to_string(report.root_to_move));
  rec.nodes = report.nodes;
  rec.rollouts = report.rollouts;
  rec.elapsed_ms = report.elapsed_s * 1000.0;
  rec.tt_hits = report.tt_hits;
  rec.tt_stores = report.tt_stores;
  for (Move m : report.principal_variation) rec.pv.push_back(move_name(m, cell.width));
  rec.exit = exit_code(report);
  return rec;
}

ReportRecord make_error_record(const BenchCell& cell, const std::string& message) {
  ReportRecord rec;
  fill_common(rec, cell);
  rec.outcome = "error";
  rec.exit = 1;
  rec.error = message;
  return rec;
}

nlohmann::ordered_json to_json(const ReportRecord& r) {
  nlohmann::ordered_json j = non_timing_fields(r);
  j["elapsed_ms"] = r.elapsed_ms;
  j["timestamp"] = r.timestamp;
  return j;
}

nlohmann::ordered_json non_timing_fields(const ReportRecord& r) {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["game"] = r.game;
  j["size"] = r.size;
  j["komi"] = r.komi ? nlohmann::ordered_json(*r.komi) : nlohmann::ordered_json(nullptr);
  j["algo"] = r.algo;
  j["seed"] = r.seed;
  j["outcome"] = r.outcome;
  j["to_move"] = r.to_move;
  j["nodes"] = r.nodes;
  j["rollouts"] = r.rollouts;
  j["tt_hits"] = r.tt_hits;
  j["tt_stores"] = r.tt_stores;
  j["node_limit"] = r.node_limit;
  j["time_limit_s"] = r.time_limit_s;
  j["tt"] = r.tt;
  j["symmetry"] = r.symmetry;
  j["conjecture"] = r.conjecture.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(r.conjecture);
  j["rollout_cap"] = r.rollout_cap;
  j["zobrist_seed"] = Zobrist::kSeed;
  j["ruleset"] = r.ruleset;
  j["pv"] = r.pv;
  j["exit"] = r.exit;
  if (!r.error.empty()) j["error"] = r.error;
  j["build"] = r.build;
  return j;
}

std::string csv_header() { return "game,size,komi,algo,seed,outcome,nodes,rollouts,elapsed_ms,tt_hits,exit"; }

std::string to_csv(const ReportRecord& r) {
  std::ostringstream out;
  out << csv_escape(r.game) << ',' << csv_escape(r.size) << ',';
  if (r.komi) out << *r.komi;
  out << ',' << csv_escape(r.algo) << ',' << r.seed << ',' << r.outcome << ',' << r.nodes << ','
      << r.rollouts << ',' << nlohmann::json(r.elapsed_ms).dump() << ',' << r.tt_hits << ',' << r.exit;
  return out.str();
}

int run_bench(const BenchSpec& spec, std::ostream& out) {
  if (spec.format == ReportFormat::Csv) out << csv_header() << '\n' << std::flush;
  int written = 0;
  for (const BenchCell& cell : spec.cells) {
    const int runs = cell.repeat * spec.repetitions;
    for (int rep = 0; rep < runs; ++rep) {
      ReportRecord rec;
      try {
        rec = make_record(cell, solve(cell.initial_state(), cell.config));
      } catch (const std::exception& e) {
        rec = make_error_record(cell, e.what());
      }
      if (spec.format == ReportFormat::Csv)
        out << to_csv(rec) << '\n';
      else
        out << to_json(rec).dump() << '\n';
      out.flush();
      ++written;
    }
  }
  return written;
}

}  // namespace ews
