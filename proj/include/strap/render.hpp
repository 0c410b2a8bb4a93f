#pragma once

#include <optional>
#include <string>

#include "strap/model.hpp"

namespace strap {

struct RenderSpec {
  bool show_start = true;
  bool show_goals = true;
  bool show_path = true;
  bool show_buffers = true;
  double scale = 60.0;  // pixels per workspace unit
};

// Deterministic SVG: start disks solid, goal outlines dashed, numbered
// arrows per action, buffer placements highlighted. Byte-stable for fixed
// inputs (golden-file friendly).
std::string render_svg(const Instance& inst, const std::optional<Plan>& plan,
                       const RenderSpec& spec = {});

}  // namespace strap
