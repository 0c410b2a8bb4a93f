#pragma once

#include <algorithm>
#include <cmath>

namespace strap {

struct Pose {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Pose&, const Pose&) = default;
};

inline double euclidean(const Pose& a, const Pose& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

inline bool pose_close(const Pose& a, const Pose& b, double tol) {
  return euclidean(a, b) <= tol;
}

// Axis-aligned rectangle anchored at the origin.
struct Workspace {
  double width = 0.0;
  double height = 0.0;

  double perimeter() const { return 2.0 * (width + height); }
};

struct DiskShape {
  double radius = 0.0;
};

enum class Embodiment { Stationary, Mobile };

// Strict inequality: tangent disks do not collide.
inline bool disks_collide(const Pose& pa, double ra, const Pose& pb, double rb) {
  const double dx = pa.x - pb.x;
  const double dy = pa.y - pb.y;
  const double sum = ra + rb;
  return dx * dx + dy * dy < sum * sum;
}

// Whole disk inside the rectangle; touching a wall is allowed.
inline bool in_bounds(const Pose& p, double r, const Workspace& w) {
  return p.x >= r && p.x <= w.width - r && p.y >= r && p.y <= w.height - r;
}

// Nearest boundary point plus its 1-D arc-length parameter, measured
// counterclockwise from the origin corner: bottom, right, top, left.
struct PerimeterPoint {
  Pose point;
  double arc = 0.0;
};

inline PerimeterPoint perimeter_project(const Pose& p, const Workspace& w) {
  const double x = std::clamp(p.x, 0.0, w.width);
  const double y = std::clamp(p.y, 0.0, w.height);

  // Side order breaks ties deterministically: bottom, right, top, left.
  const double d_bottom = y;
  const double d_right = w.width - x;
  const double d_top = w.height - y;
  const double d_left = x;

  double best = d_bottom;
  int side = 0;
  if (d_right < best) { best = d_right; side = 1; }
  if (d_top < best) { best = d_top; side = 2; }
  if (d_left < best) { best = d_left; side = 3; }

  switch (side) {
    case 0: return {{x, 0.0}, x};
    case 1: return {{w.width, y}, w.width + y};
    case 2: return {{x, w.height}, w.width + w.height + (w.width - x)};
    default: return {{0.0, y}, 2.0 * w.width + w.height + (w.height - y)};
  }
}

// Shortest distance along the rectangle boundary between two arc parameters.
inline double arc_distance(double arc_a, double arc_b, double perimeter) {
  const double d = std::abs(arc_a - arc_b);
  return std::min(d, perimeter - d);
}

// Stationary: end-effector Euclidean distance. Mobile: shortest travel of the
// base along the table side between the perimeter projections of the two
// manipulation points.
inline double travel_cost(const Pose& p1, const Pose& p2, Embodiment embodiment,
                          const Workspace& w) {
  if (embodiment == Embodiment::Stationary) {
    return euclidean(p1, p2);
  }
  const double a1 = perimeter_project(p1, w).arc;
  const double a2 = perimeter_project(p2, w).arc;
  return arc_distance(a1, a2, w.perimeter());
}

}  // namespace strap
