#pragma once

// Text position format:
//
//   game=hex|go
//   size=N            (go also accepts WxH)
//   to_move=B|W
//   komi=8.5          (go only)
//   history=c2 b2 pass  (go only, optional: moves from the empty board)
//   .B.
//   ..W
//   ...
//
// Board rows list the top row first with '.', 'B', 'W'.

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "ews/go.hpp"
#include "ews/hex.hpp"

namespace ews {

class PositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using AnyState = std::variant<HexState, GoState>;

/// Throws PositionError describing the first problem found.
AnyState parse_position(std::string_view text);
AnyState load_position(const std::string& path);

std::string format_position(const HexState& s);
/// The history line is omitted; superko context is not round-tripped.
std::string format_position(const GoState& s);

}  // namespace ews
