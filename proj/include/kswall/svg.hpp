#pragma once

// Static SVG figures of diagrams and discs. Coordinates are converted to
// doubles only here, and printed with fixed precision so output is stable.

#include "kswall/engine.hpp"
#include "kswall/tropical.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

namespace kswall {

struct SvgOptions {
  double scale{60.0};  // pixels per lattice unit
  double margin{1.0};  // lattice units added around an automatic viewport
};

namespace detail {

struct Box {
  double x0, y0, x1, y1;
};

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v == 0.0 ? 0.0 : v);
  return buf;
}

inline const char* generation_color(int g) {
  static constexpr std::array<const char*, 8> palette{"#1f4e79", "#c0392b", "#27ae60", "#8e44ad",
                                                      "#d68910", "#17a589", "#7f8c8d", "#2c3e50"};
  return palette[static_cast<std::size_t>(g) % palette.size()];
}

inline Box view_box(const Scene& scene, const std::vector<Point>& extra, const SvgOptions& opt) {
  if (scene.viewport)
    return {to_double(scene.viewport->lower.x), to_double(scene.viewport->lower.y), to_double(scene.viewport->upper.x),
            to_double(scene.viewport->upper.y)};
  std::vector<Point> pts = extra;
  for (const auto& s : scene.singularities) pts.push_back(s.pos);
  if (pts.empty()) return {-1, -1, 1, 1};
  Box b{to_double(pts[0].x), to_double(pts[0].y), to_double(pts[0].x), to_double(pts[0].y)};
  for (const auto& p : pts) {
    b.x0 = std::min(b.x0, to_double(p.x));
    b.y0 = std::min(b.y0, to_double(p.y));
    b.x1 = std::max(b.x1, to_double(p.x));
    b.y1 = std::max(b.y1, to_double(p.y));
  }
  return {b.x0 - opt.margin, b.y0 - opt.margin, b.x1 + opt.margin, b.y1 + opt.margin};
}

// Clip the ray o + s d (s >= 0) to the box; Liang-Barsky.
inline std::optional<std::array<double, 4>> clip_ray(double ox, double oy, double dx, double dy, const Box& b) {
  double lo = 0.0;
  double hi = 1e12;
  const std::array<std::array<double, 2>, 4> tests{{{-dx, ox - b.x0}, {dx, b.x1 - ox}, {-dy, oy - b.y0}, {dy, b.y1 - oy}}};
  for (const auto& [p, q] : tests) {
    if (p == 0.0) {
      if (q < 0.0) return std::nullopt;
      continue;
    }
    const double r = q / p;
    if (p < 0.0)
      lo = std::max(lo, r);
    else
      hi = std::min(hi, r);
    if (lo > hi) return std::nullopt;
  }
  return std::array<double, 4>{ox + lo * dx, oy + lo * dy, ox + hi * dx, oy + hi * dy};
}

class SvgWriter {
 public:
  SvgWriter(const Box& box, double scale) : box_(box), scale_(scale) {
    out_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(px(box.x1)) + "\" height=\"" + fmt(py(box.y0)) +
            "\" viewBox=\"0 0 " + fmt(px(box.x1)) + " " + fmt(py(box.y0)) + "\">\n";
    out_ += "<rect x=\"0\" y=\"0\" width=\"" + fmt(px(box.x1)) + "\" height=\"" + fmt(py(box.y0)) + "\" fill=\"white\"/>\n";
  }

  double px(double x) const { return (x - box_.x0) * scale_; }
  double py(double y) const { return (box_.y1 - y) * scale_; }

  void line(double x0, double y0, double x1, double y1, const std::string& color, double width) {
    out_ += "<line x1=\"" + fmt(px(x0)) + "\" y1=\"" + fmt(py(y0)) + "\" x2=\"" + fmt(px(x1)) + "\" y2=\"" + fmt(py(y1)) +
            "\" stroke=\"" + color + "\" stroke-width=\"" + fmt(width) + "\"/>\n";
  }
  void cross(double x, double y, double r) {
    line(x - r, y - r, x + r, y + r, "black", 2);
    line(x - r, y + r, x + r, y - r, "black", 2);
  }
  void circle(double x, double y, double r, const std::string& fill) {
    out_ += "<circle cx=\"" + fmt(px(x)) + "\" cy=\"" + fmt(py(y)) + "\" r=\"" + fmt(r) + "\" fill=\"" + fill +
            "\" stroke=\"black\"/>\n";
  }
  void text(double x, double y, const std::string& s) {
    out_ += "<text x=\"" + fmt(px(x) + 4) + "\" y=\"" + fmt(py(y) - 4) + "\" font-family=\"monospace\" font-size=\"10\">" +
            s + "</text>\n";
  }
  std::string finish() { return out_ + "</svg>\n"; }

 private:
  Box box_;
  double scale_;
  std::string out_;
};

}  // namespace detail

/// Rays clipped to the viewport, colored by generation; singularities as crosses.
inline std::string render_diagram_svg(const Diagram& d, const SvgOptions& opt = {}) {
  std::vector<Point> origins;
  for (const auto& r : d.rays) origins.push_back(r.origin);
  const auto box = detail::view_box(d.scene, origins, opt);
  detail::SvgWriter w(box, opt.scale);
  for (const auto& r : d.rays) {
    const auto seg = detail::clip_ray(to_double(r.origin.x), to_double(r.origin.y), static_cast<double>(r.direction.a),
                                      static_cast<double>(r.direction.b), box);
    if (!seg) continue;
    w.line((*seg)[0], (*seg)[1], (*seg)[2], (*seg)[3], detail::generation_color(r.generation), r.generation == 0 ? 2.0 : 1.5);
  }
  for (std::size_t i = 0; i < d.scene.singularities.size(); ++i) {
    const auto& s = d.scene.singularities[i];
    w.cross(to_double(s.pos.x), to_double(s.pos.y), 4.0 / opt.scale);
    w.text(to_double(s.pos.x), to_double(s.pos.y), "s" + std::to_string(i));
  }
  return w.finish();
}

/// The disc drawn over the singularities of its scene; the stop is a hollow dot.
inline std::string render_disc_svg(const TropicalDisc& disc, const Scene& scene, const SvgOptions& opt = {}) {
  std::vector<Point> pts;
  for (const auto& v : disc.vertices)
    if (auto p = detail::image(v, scene)) pts.push_back(*p);
  const auto box = detail::view_box(scene, pts, opt);
  detail::SvgWriter w(box, opt.scale);
  const auto ix = detail::index_disc(disc);
  for (const auto& e : disc.edges) {
    const auto p = detail::image(disc.vertices[ix.vertex.at(e.from)], scene);
    const auto q = detail::image(disc.vertices[ix.vertex.at(e.to)], scene);
    if (!p || !q) continue;
    w.line(to_double(p->x), to_double(p->y), to_double(q->x), to_double(q->y), "#27ae60", 1.0 + static_cast<double>(e.weight));
  }
  for (std::size_t i = 0; i < scene.singularities.size(); ++i) {
    const auto& s = scene.singularities[i];
    w.cross(to_double(s.pos.x), to_double(s.pos.y), 4.0 / opt.scale);
    w.text(to_double(s.pos.x), to_double(s.pos.y), "s" + std::to_string(i));
  }
  for (const auto& v : disc.vertices) {
    if (v.singularity) continue;
    const auto p = detail::image(v, scene);
    if (!p) continue;
    w.circle(to_double(p->x), to_double(p->y), v.id == disc.root ? 4.0 : 2.5, v.id == disc.root ? "white" : "black");
  }
  return w.finish();
}

}  // namespace kswall
