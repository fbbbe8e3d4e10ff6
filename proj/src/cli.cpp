#include "ews/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "CLI11.hpp"
#include "ews/bench.hpp"
#include "ews/solve.hpp"

namespace ews {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// CLI11 consumes its argument vector back to front.
std::vector<std::string> reversed(std::vector<std::string> args) {
  std::reverse(args.begin(), args.end());
  return args;
}

int parse_or_report(CLI::App& app, const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                    bool& done) {
  done = false;
  try {
    auto rev = reversed(args);
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    done = true;
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    done = true;
    return 1;
  }
  return 0;
}

std::pair<int, int> parse_size(const std::string& s) {
  try {
    if (const auto x = s.find('x'); x != std::string::npos) {
      std::size_t a = 0;
      std::size_t b = 0;
      const int w = std::stoi(s.substr(0, x), &a);
      const int h = std::stoi(s.substr(x + 1), &b);
      if (a == x && b == s.size() - x - 1) return {w, h};
    } else {
      std::size_t used = 0;
      const int n = std::stoi(s, &used);
      if (used == s.size()) return {n, n};
    }
  } catch (const std::exception&) {
  }
  throw UsageError("bad --size '" + s + "'");
}

void print_summary(std::ostream& out, const ReportRecord& rec, const SolveReport& report) {
  out << "game:     " << rec.game << ' ' << rec.size;
  if (rec.komi) out << " (komi " << *rec.komi << ')';
  out << "\nalgo:     " << rec.algo << " (seed " << rec.seed << ")\n";
  out << "result:   ";
  if (const auto w = report.winner())
    out << (*w == Player::First ? "first player (B) wins" : "second player (W) wins") << " ["
        << to_string(report.outcome) << " for " << to_string(report.root_to_move) << " to move]\n";
  else
    out << "unknown (limit reached)\n";
  out << "nodes:    " << rec.nodes << "\nrollouts: " << rec.rollouts << "\ntt:       " << rec.tt_hits
      << " hits, " << rec.tt_stores << " stores\n";
  out << "elapsed:  " << std::fixed << std::setprecision(3) << report.elapsed_s << " s\n";
  if (!rec.pv.empty()) {
    out << "pv:      ";
    for (const auto& m : rec.pv) out << ' ' << m;
    out << '\n';
  }
}

}  // namespace

int cmd_solve(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Solve a Hex or Go position", "ews solve"};
  std::string game;
  std::string size;
  std::optional<double> komi;
  std::string position;
  std::string algo = "ews";
  SolverConfig cfg;
  bool no_tt = false;
  bool no_symmetry = false;
  std::string conjecture;
  bool json = false;

  app.add_option("--game", game, "hex or go")->check(CLI::IsMember({"hex", "go"}));
  app.add_option("--size", size, "board size N (go also accepts WxH)");
  app.add_option("--komi", komi, "komi for go, a half-integer such as 8.5");
  app.add_option("--position", position, "position file")->check(CLI::ExistingFile);
  app.add_option("--algo", algo, "ews, ews-wr, ews-ps, ab or oracle")
      ->check(CLI::IsMember({"ews", "ews-wr", "ews-ps", "ab", "oracle"}));
  app.add_option("--seed", cfg.seed, "rollout seed");
  app.add_option("--node-limit", cfg.node_limit, "maximum expansions");
  app.add_option("--time-limit", cfg.time_limit_s, "wall-clock limit in seconds");
  app.add_option("--tt-log2", cfg.tt_log2_capacity, "log2 of the transposition table capacity");
  app.add_option("--rollout-cap", cfg.rollout_cap, "maximum rollout length (0: 4 x cells)");
  app.add_option("--uct-c", cfg.uct_c, "exploration constant for ews-ps");
  app.add_flag("--no-tt", no_tt, "disable the transposition table");
  app.add_flag("--no-symmetry", no_symmetry, "disable symmetry reduction");
  app.add_option("--conjecture", conjecture, "conjectured winner: first or second")
      ->check(CLI::IsMember({"first", "second"}));
  app.add_flag("--audit", cfg.audit, "recheck the EW recursion after every update");
  app.add_flag("--json", json, "emit a single-line JSON report");

  bool done = false;
  if (const int code = parse_or_report(app, args, out, err, done); done) return code;

  try {
    cfg.algorithm = *parse_algorithm(algo);
    cfg.transpositions = !no_tt;
    cfg.symmetry = !no_symmetry;
    if (!conjecture.empty()) cfg.conjecture = conjecture == "first" ? Player::First : Player::Second;
    try {
      cfg.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }

    BenchCell cell;
    cell.config = cfg;
    AnyState state = HexState(1);
    if (!position.empty()) {
      if (komi) throw UsageError("--komi cannot be combined with --position (the file carries komi)");
      try {
        state = load_position(position);
      } catch (const PositionError& e) {
        throw UsageError(std::string("malformed position file: ") + e.what());
      }
      std::visit(
          [&](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            cell.game = std::is_same_v<S, HexState> ? "hex" : "go";
            cell.width = s.width();
            cell.height = s.cells() / s.width();
            if constexpr (std::is_same_v<S, GoState>) cell.komi = s.komi().points();
          },
          state);
      if (!game.empty() && game != cell.game) throw UsageError("--game disagrees with the position file");
      if (!size.empty() && parse_size(size) != std::pair{cell.width, cell.height})
        throw UsageError("--size disagrees with the position file");
    } else {
      if (game.empty() || size.empty()) throw UsageError("--game and --size are required without --position");
      cell.game = game;
      std::tie(cell.width, cell.height) = parse_size(size);
      if (game == "hex" && komi) throw UsageError("--komi does not apply to hex");
      if (game == "go" && !komi) throw UsageError("go needs --komi");
      cell.komi = komi;
      try {
        state = cell.initial_state();
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }

    SolveReport report;
    try {
      report = solve(state, cfg);
    } catch (const OracleRefused& e) {
      throw UsageError(e.what());
    } catch (const ContractViolation& e) {
      throw UsageError(e.what());
    }
    const ReportRecord rec = make_record(cell, report);
    if (json)
      out << to_json(rec).dump() << '\n';
    else
      print_summary(out, rec, report);
    return exit_code(report);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int cmd_bench(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Run a benchmark sweep", "ews bench"};
  std::string spec_file;
  std::string format = "json";
  int repetitions = 1;
  app.add_option("spec", spec_file, "bench spec (JSON list of cells)")->required()->check(CLI::ExistingFile);
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--repeat", repetitions, "repetitions of every cell")->check(CLI::PositiveNumber);

  bool done = false;
  if (const int code = parse_or_report(app, args, out, err, done); done) return code;

  BenchSpec spec;
  try {
    std::ifstream in(spec_file);
    spec = parse_bench_spec(nlohmann::json::parse(in));
  } catch (const std::exception& e) {
    err << "error: invalid bench spec: " << e.what() << '\n';
    return 1;
  }
  spec.repetitions = repetitions;
  spec.format = format == "csv" ? ReportFormat::Csv : ReportFormat::Json;
  run_bench(spec, out);
  return 0;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  static constexpr const char* kUsage =
      "usage: ews <command> [options]\n"
      "commands:\n"
      "  solve   solve an empty board or a position file\n"
      "  bench   run a JSON bench spec\n"
      "run 'ews <command> --help' for options\n";
  if (args.empty() || args[0] == "--help" || args[0] == "-h") {
    (args.empty() ? err : out) << kUsage;
    return args.empty() ? 1 : 0;
  }
  const std::vector<std::string> rest(args.begin() + 1, args.end());
  if (args[0] == "solve") return cmd_solve(rest, out, err);
  if (args[0] == "bench") return cmd_bench(rest, out, err);
  err << "error: unknown command '" << args[0] << "'\n" << kUsage;
  return 1;
}

}  // namespace ews
