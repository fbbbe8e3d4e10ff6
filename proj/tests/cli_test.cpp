#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "ews/bench.hpp"
#include "ews/cli.hpp"
#include "ews/position.hpp"

using namespace ews;
using nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string data(const std::string& name) { return std::string(EWS_TEST_DATA) + "/" + name; }

std::vector<json> lines(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(json::parse(line));
  return out;
}

}  // namespace

TEST_CASE("solve prints a json report") {
  const Run r = cli({"solve", "--game", "hex", "--size", "3", "--json"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["outcome"] == "first_player_win");
  CHECK(j["algo"] == "ews");
  CHECK(j["seed"] == 1);
  CHECK(j["komi"].is_null());
  CHECK(j["nodes"].get<int>() > 0);
  CHECK(j["exit"] == 0);
  CHECK(j.contains("elapsed_ms"));
  CHECK(j["zobrist_seed"] == Zobrist::kSeed);
}

TEST_CASE("solve prints a readable summary") {
  const Run r = cli({"solve", "--game", "go", "--size", "2", "--komi", "0.5", "--algo", "ews-wr"});
  CHECK(r.code == 0);
  CHECK(r.out.find("result:") != std::string::npos);
  CHECK(r.out.find("komi 0.5") != std::string::npos);
}

TEST_CASE("every algorithm runs from the command line") {
  for (const char* algo : {"ews", "ews-wr", "ews-ps", "ab", "oracle"}) {
    const Run r = cli({"solve", "--game", "hex", "--size", "3", "--algo", algo, "--json"});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["outcome"] == "first_player_win");
  }
}

TEST_CASE("limits give exit code 2") {
  const Run r = cli({"solve", "--game", "hex", "--size", "4", "--node-limit", "5", "--json"});
  CHECK(r.code == 2);
  CHECK(json::parse(r.out)["outcome"] == "unknown");
}

TEST_CASE("usage errors give exit code 1") {
  CHECK(cli({}).code == 1);
  CHECK(cli({"frobnicate"}).code == 1);
  CHECK(cli({"solve"}).code == 1);
  CHECK(cli({"solve", "--game", "chess", "--size", "3"}).code == 1);
  CHECK(cli({"solve", "--game", "hex", "--size", "9"}).code == 1);
  CHECK(cli({"solve", "--game", "hex", "--size", "three"}).code == 1);
  CHECK(cli({"solve", "--game", "hex", "--size", "3", "--komi", "0.5"}).code == 1);
  CHECK(cli({"solve", "--game", "go", "--size", "3"}).code == 1);
  CHECK(cli({"solve", "--game", "go", "--size", "3", "--komi", "1"}).code == 1);
  CHECK(cli({"solve", "--game", "hex", "--size", "3", "--algo", "pns"}).code == 1);
  CHECK(cli({"solve", "--game", "hex", "--size", "3", "--node-limit", "0"}).code == 1);
  CHECK(cli({"solve", "--game", "hex", "--size", "5", "--algo", "oracle"}).code == 1);
  CHECK(cli({"solve", "--position", data("missing.pos")}).code == 1);
  CHECK(cli({"solve", "--position", data("bad_rows.pos")}).code == 1);
  CHECK(cli({"solve", "--position", data("bad_turn.pos")}).code == 1);
  CHECK(cli({"bench"}).code == 1);
  const Run r = cli({"solve", "--game", "hex"});
  CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("help exits cleanly") {
  CHECK(cli({"--help"}).code == 0);
  const Run r = cli({"solve", "--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("--algo") != std::string::npos);
}

TEST_CASE("position files") {
  const Run hex = cli({"solve", "--position", data("hex3_after_center.pos"), "--json"});
  CHECK(hex.code == 0);
  const json h = json::parse(hex.out);
  CHECK(h["to_move"] == "W");
  CHECK(h["outcome"] == "first_player_win");

  const Run go = cli({"solve", "--position", data("go2x3_history.pos"), "--algo", "oracle", "--json"});
  CHECK(go.code == 0);
  CHECK(json::parse(go.out)["size"] == "2x3");

  CHECK(cli({"solve", "--position", data("hex3_after_center.pos"), "--game", "go"}).code == 1);
  CHECK(cli({"solve", "--position", data("hex3_after_center.pos"), "--size", "4"}).code == 1);
}

TEST_CASE("position text round trip") {
  const AnyState s = load_position(data("go3_cross.pos"));
  const auto& go = std::get<GoState>(s);
  CHECK(go.komi().points() == 8.5);
  CHECK(std::popcount(go.stones(Player::First)) == 4);
  const AnyState again = parse_position(format_position(go));
  CHECK(std::get<GoState>(again).stones(Player::First) == go.stones(Player::First));

  HexState h(4);
  h.play(Move(5));
  h.play(Move(6));
  CHECK(std::get<HexState>(parse_position(format_position(h))).canonical_form().payload ==
        h.canonical_form().payload);

  CHECK_THROWS_AS(parse_position("game=hex\nsize=2\n..\n.."), PositionError);
  CHECK_THROWS_AS(parse_position("game=hex\nsize=2\nto_move=B\n.X\n.."), PositionError);
  CHECK_THROWS_AS(parse_position("game=go\nsize=2\nto_move=B\nkomi=0.5\nhistory=a1 zz\nB.\n.."), PositionError);
  CHECK_THROWS_AS(parse_position("game=go\nsize=2\nto_move=B\nkomi=0.5\nhistory=a1\n..\n.."), PositionError);
  CHECK_THROWS_AS(parse_position("game=go\nsize=2\nto_move=B\nkomi=0.5\nBB\nBB"), PositionError);
  CHECK_THROWS_AS(parse_position("game=hex\nsize=2\nto_move=B\nkomi=0.5\n..\n.."), PositionError);
}

TEST_CASE("bench sweep writes one record per run") {
  const Run r = cli({"bench", data("sweep.json")});
  CHECK(r.code == 0);
  const auto records = lines(r.out);
  REQUIRE(records.size() == 12);
  for (const auto& j : records) {
    CHECK(j["schema"] == 1);
    CHECK(j.contains("elapsed_ms"));
    CHECK(j.contains("build"));
  }
  CHECK(records[6]["game"] == "go");
  CHECK(records[6]["size"] == "2");
  CHECK(records[6]["tt"] == false);
  CHECK(records[4]["tt"] == false);
  CHECK(records[10]["outcome"] == "unknown");
  CHECK(records[10]["exit"] == 2);
  CHECK(records[11]["algo"] == "oracle");
}

TEST_CASE("bench records are deterministic apart from timing") {
  const auto a = lines(cli({"bench", data("sweep.json")}).out);
  const auto b = lines(cli({"bench", data("sweep.json")}).out);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    json x = a[i];
    json y = b[i];
    x.erase("elapsed_ms");
    x.erase("timestamp");
    y.erase("elapsed_ms");
    y.erase("timestamp");
    CHECK(x == y);
  }
}

TEST_CASE("bench csv and repetitions") {
  const Run r = cli({"bench", data("sweep.json"), "--format", "csv", "--repeat", "2"});
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == csv_header());
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 10);
  }
  CHECK(rows == 24);
}

TEST_CASE("bench spec validation") {
  CHECK_THROWS_AS(parse_bench_spec(json::object()), std::invalid_argument);
  CHECK_THROWS_AS(parse_bench_spec(json::parse(R"([{"game":"hex","size":3}])")), std::invalid_argument);
  CHECK_THROWS_AS(parse_bench_spec(json::parse(R"([{"game":"hex","size":3,"algo":"x","seed":1}])")),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_bench_spec(json::parse(R"([{"game":"go","size":3,"algo":"ews","seed":1}])")),
                  std::invalid_argument);
  const BenchSpec ok = parse_bench_spec(json::parse(
      R"([{"game":"go","size":"2x3","komi":0.5,"algo":"ews-ps","seed":9,"repeat":3,"conjecture":"first"}])"));
  REQUIRE(ok.cells.size() == 1);
  CHECK(ok.cells[0].width == 2);
  CHECK(ok.cells[0].height == 3);
  CHECK(ok.cells[0].repeat == 3);
  CHECK(ok.cells[0].config.conjecture == Player::First);
}

TEST_CASE("records serialise every field") {
  BenchCell cell;
  cell.game = "go";
  cell.width = 2;
  cell.height = 3;
  cell.komi = 0.5;
  SolveReport report;
  report.outcome = Outcome::Loss;
  report.root_to_move = Player::First;
  report.nodes = 12;
  report.principal_variation = {Move(1), Move::pass()};
  const ReportRecord rec = make_record(cell, report);
  const auto j = to_json(rec);
  CHECK(j["outcome"] == "second_player_win");
  CHECK(j["size"] == "2x3");
  CHECK(j["pv"] == json::array({"b1", "pass"}));
  CHECK(j["rollout_cap"] == 24);
  CHECK_FALSE(non_timing_fields(rec).contains("elapsed_ms"));
  CHECK_FALSE(non_timing_fields(rec).contains("timestamp"));
  const ReportRecord err = make_error_record(cell, "boom");
  CHECK(to_json(err)["error"] == "boom");
  CHECK(to_json(err)["exit"] == 1);
  CHECK(to_csv(rec).rfind("go,2x3,0.5,ews,1,second_player_win,12,", 0) == 0);
}
