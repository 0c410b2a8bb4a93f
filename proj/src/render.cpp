#include "strap/render.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace strap {

namespace {

const char* kPalette[] = {"#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4",
                          "#46f0f0", "#f032e6", "#bcf60c", "#008080", "#9a6324",
                          "#800000", "#808000", "#000075", "#fabebe", "#ffd8b1",
                          "#aaffc3", "#e6beff", "#fffac8", "#a9a9a9", "#469990"};

const char* color_of(ObjectId id) {
  return kPalette[static_cast<std::size_t>(id - 1) % (sizeof kPalette / sizeof kPalette[0])];
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::string render_svg(const Instance& inst, const std::optional<Plan>& plan,
                       const RenderSpec& spec) {
  const double s = spec.scale;
  const double margin = 0.5 * s;
  const double w = inst.workspace.width * s;
  const double h = inst.workspace.height * s;
  // Table frame is y-up; SVG is y-down.
  auto X = [&](double x) { return margin + x * s; };
  auto Y = [&](double y) { return margin + h - y * s; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w + 2 * margin)
      << "\" height=\"" << num(h + 2 * margin) << "\" viewBox=\"0 0 " << num(w + 2 * margin)
      << " " << num(h + 2 * margin) << "\">\n";
  out << "  <defs><marker id=\"arrow\" markerWidth=\"8\" markerHeight=\"8\" refX=\"6\" "
         "refY=\"3\" orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\" fill=\"#333333\"/>"
         "</marker></defs>\n";
  out << "  <rect x=\"" << num(margin) << "\" y=\"" << num(margin) << "\" width=\"" << num(w)
      << "\" height=\"" << num(h)
      << "\" fill=\"#fbfbf8\" stroke=\"#222222\" stroke-width=\"2\"/>\n";

  if (spec.show_goals) {
    for (ObjectId id = 1; id <= inst.object_count(); ++id) {
      const Pose& g = inst.goal.of(id);
      out << "  <circle cx=\"" << num(X(g.x)) << "\" cy=\"" << num(Y(g.y)) << "\" r=\""
          << num(inst.radius(id) * s) << "\" fill=\"none\" stroke=\"" << color_of(id)
          << "\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
    }
  }

  if (spec.show_start) {
    for (ObjectId id = 1; id <= inst.object_count(); ++id) {
      const Pose& p = inst.start.of(id);
      out << "  <circle cx=\"" << num(X(p.x)) << "\" cy=\"" << num(Y(p.y)) << "\" r=\""
          << num(inst.radius(id) * s) << "\" fill=\"" << color_of(id)
          << "\" fill-opacity=\"0.55\" stroke=\"" << color_of(id) << "\" stroke-width=\"1.5\"/>\n";
      out << "  <text x=\"" << num(X(p.x)) << "\" y=\"" << num(Y(p.y) + 4)
          << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" "
             "fill=\"#111111\">"
          << id << "</text>\n";
    }
  }

  if (plan) {
    if (spec.show_buffers) {
      for (const Action& a : plan->actions) {
        if (at_goal(a.place, a.object, inst)) continue;
        out << "  <circle cx=\"" << num(X(a.place.x)) << "\" cy=\"" << num(Y(a.place.y))
            << "\" r=\"" << num(inst.radius(a.object) * s) << "\" fill=\"none\" stroke=\""
            << color_of(a.object) << "\" stroke-width=\"1\" stroke-dasharray=\"2 3\"/>\n";
        out << "  <circle cx=\"" << num(X(a.place.x)) << "\" cy=\"" << num(Y(a.place.y))
            << "\" r=\"3\" fill=\"" << color_of(a.object) << "\"/>\n";
      }
    }
    if (spec.show_path) {
      int step = 1;
      for (const Action& a : plan->actions) {
        const double mx = (X(a.pick.x) + X(a.place.x)) / 2.0;
        const double my = (Y(a.pick.y) + Y(a.place.y)) / 2.0;
        out << "  <line x1=\"" << num(X(a.pick.x)) << "\" y1=\"" << num(Y(a.pick.y))
            << "\" x2=\"" << num(X(a.place.x)) << "\" y2=\"" << num(Y(a.place.y))
            << "\" stroke=\"#333333\" stroke-width=\"1.5\" marker-end=\"url(#arrow)\"/>\n";
        out << "  <text x=\"" << num(mx) << "\" y=\"" << num(my - 4)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\" "
               "fill=\"#333333\">"
            << step++ << "</text>\n";
      }
    }
  }

  out << "</svg>\n";
  return out.str();
}

}  // namespace strap
