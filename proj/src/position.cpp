#include "ews/position.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace ews {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s, const char* what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw PositionError(std::string("bad ") + what + ": " + std::string(s));
  return v;
}

struct Board {
  Bitboard black = 0;
  Bitboard white = 0;
};

Board read_rows(const std::vector<std::string_view>& rows, int width, int height) {
  if (static_cast<int>(rows.size()) != height)
    throw PositionError("expected " + std::to_string(height) + " board rows, got " + std::to_string(rows.size()));
  Board b;
  for (int y = 0; y < height; ++y) {
    if (static_cast<int>(rows[y].size()) != width)
      throw PositionError("row " + std::to_string(y + 1) + " must have " + std::to_string(width) + " cells");
    for (int x = 0; x < width; ++x) {
      const Bitboard bit = Bitboard{1} << (y * width + x);
      switch (rows[y][x]) {
        case '.': break;
        case 'B': b.black |= bit; break;
        case 'W': b.white |= bit; break;
        default: throw PositionError(std::string("unexpected board character '") + rows[y][x] + "'");
      }
    }
  }
  return b;
}

void write_rows(std::ostringstream& out, Bitboard black, Bitboard white, int width, int height) {
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const int c = y * width + x;
      out << (((black >> c) & 1) ? 'B' : ((white >> c) & 1) ? 'W' : '.');
    }
    out << '\n';
  }
}

}  // namespace

AnyState parse_position(std::string_view text) {
  std::map<std::string, std::string, std::less<>> fields;
  std::vector<std::string_view> rows;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty() || line.front() == '#') continue;
    if (const auto eq = line.find('='); eq != std::string_view::npos) {
      if (!rows.empty()) throw PositionError("header line after board rows: " + std::string(line));
      fields.emplace(std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))));
    } else {
      rows.push_back(line);
    }
  }
  auto field = [&](std::string_view key) -> const std::string& {
    const auto it = fields.find(key);
    if (it == fields.end()) throw PositionError("missing '" + std::string(key) + "=' line");
    return it->second;
  };

  const std::string& game = field("game");
  const std::string& size = field("size");
  const std::string& mover = field("to_move");
  if (mover != "B" && mover != "W") throw PositionError("to_move must be B or W");
  const Player to_move = mover == "B" ? Player::First : Player::Second;

  int width = 0;
  int height = 0;
  if (const auto x = size.find('x'); x != std::string::npos) {
    width = parse_int(std::string_view(size).substr(0, x), "size");
    height = parse_int(std::string_view(size).substr(x + 1), "size");
  } else {
    width = height = parse_int(size, "size");
  }
  const Board board = read_rows(rows, width, height);

  if (game == "hex") {
    if (width != height) throw PositionError("hex boards are square");
    if (fields.contains("komi") || fields.contains("history")) throw PositionError("komi/history apply to go only");
    try {
      HexState s = HexState::from_stones(width, board.black, board.white);
      if (s.to_move() != to_move) throw PositionError("to_move disagrees with the stone counts");
      return s;
    } catch (const std::invalid_argument& e) {
      throw PositionError(e.what());
    }
  }
  if (game != "go") throw PositionError("game must be hex or go");

  Komi komi;
  try {
    komi = Komi::from_points(std::stod(field("komi")));
    if (fields.contains("history")) {
      GoState s(width, height, komi);
      std::istringstream moves(fields.find("history")->second);
      std::string token;
      while (moves >> token) {
        const auto m = parse_move(token, width, height);
        if (!m) throw PositionError("bad history move: " + token);
        s.play(*m);
      }
      if (s.stones(Player::First) != board.black || s.stones(Player::Second) != board.white)
        throw PositionError("history does not reproduce the board rows");
      if (s.to_move() != to_move) throw PositionError("to_move disagrees with the history");
      return s;
    }
    return GoState::from_stones(width, height, komi, board.black, board.white, to_move);
  } catch (const PositionError&) {
    throw;
  } catch (const std::exception& e) {
    throw PositionError(e.what());
  }
}

AnyState load_position(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PositionError("cannot open position file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_position(ss.str());
}

std::string format_position(const HexState& s) {
  std::ostringstream out;
  out << "game=hex\nsize=" << s.size() << "\nto_move=" << to_string(s.to_move()) << '\n';
  write_rows(out, s.stones(Player::First), s.stones(Player::Second), s.size(), s.size());
  return out.str();
}

std::string format_position(const GoState& s) {
  std::ostringstream out;
  out << "game=go\nsize=";
  if (s.width() == s.height())
    out << s.width();
  else
    out << s.width() << 'x' << s.height();
  out << "\nto_move=" << to_string(s.to_move()) << "\nkomi=" << s.komi().points() << '\n';
  write_rows(out, s.stones(Player::First), s.stones(Player::Second), s.width(), s.height());
  return out.str();
}

}  // namespace ews
