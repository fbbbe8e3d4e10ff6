#pragma once

// Report records and benchmark sweeps.
//
// A bench spec is a flat JSON list of cells:
//   [{"game":"hex","size":5,"algo":"ews","seed":1},
//    {"game":"go","size":3,"komi":8.5,"algo":"ews-ps","seed":7,"node_limit":100000}]
// Optional per-cell keys: komi, node_limit, time_limit, repeat, tt, symmetry,
// conjecture ("first"/"second"), rollout_cap, uct_c, tt_log2.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ews/config.hpp"
#include "ews/position.hpp"
#include "json.hpp"

namespace ews {

inline constexpr int kReportSchema = 1;

enum class ReportFormat { Json, Csv };

/// What to solve: an empty board of the given game and size.
struct BenchCell {
  std::string game = "hex";
  int width = 4;
  int height = 4;
  std::optional<double> komi;
  SolverConfig config;
  int repeat = 1;

  std::string size_label() const;
  /// Throws std::invalid_argument for unknown games, sizes, or komi misuse.
  AnyState initial_state() const;
};

struct BenchSpec {
  std::vector<BenchCell> cells;
  int repetitions = 1;
  ReportFormat format = ReportFormat::Json;
};

/// Throws std::invalid_argument on malformed specs.
BenchSpec parse_bench_spec(const nlohmann::json& spec);

struct ReportRecord {
  std::string game;
  std::string size;
  std::optional<double> komi;
  std::string algo;
  std::uint64_t seed = 0;
  /// first_player_win, second_player_win, unknown or error.
  std::string outcome;
  std::string to_move;
  std::uint64_t nodes = 0;
  std::uint64_t rollouts = 0;
  double elapsed_ms = 0.0;
  std::uint64_t tt_hits = 0;
  std::uint64_t tt_stores = 0;
  std::uint64_t node_limit = 0;
  double time_limit_s = 0.0;
  bool tt = true;
  bool symmetry = true;
  std::string conjecture;
  int rollout_cap = 0;
  std::string ruleset;
  std::vector<std::string> pv;
  int exit = 0;
  std::string error;
  std::string timestamp;
  std::string build;
};

/// 0 solved, 2 limit exceeded.
int exit_code(const SolveReport& r);
ReportRecord make_record(const BenchCell& cell, const SolveReport& report);
ReportRecord make_error_record(const BenchCell& cell, const std::string& message);

nlohmann::ordered_json to_json(const ReportRecord& r);
/// Drops timing and host fields (elapsed_ms, timestamp).
nlohmann::ordered_json non_timing_fields(const ReportRecord& r);
std::string csv_header();
std::string to_csv(const ReportRecord& r);

/// Runs every cell in order, writing and flushing one record per run.
/// Returns the number of records written.
int run_bench(const BenchSpec& spec, std::ostream& out);

std::string build_id();

}  // namespace ews
