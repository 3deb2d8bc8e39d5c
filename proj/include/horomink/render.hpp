#pragma once

// SVG drawing of a planar (n = 1) polytope in the Poincare disk.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>

#include "horomink/geometry.hpp"
#include "horomink/polytope.hpp"

namespace horomink {

struct SvgOptions {
  int size = 512;             // width = height in pixels
  std::size_t samples = 720;  // boundary polyline vertices
};

namespace detail {
inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}
}  // namespace detail

/// Unit circle, the closed boundary path, and one horocycle per nonempty facet.
/// The horocycle of (e, u) is tangent to the unit circle at e with Euclidean
/// radius e^u / (1 + e^u).
inline std::string render_svg(const HConvexPolytope& p, const SvgOptions& opt = {}) {
  if (p.dim() != 1) throw SpecError("rendering is only available for n = 1");
  if (p.degenerate()) throw DegenerateBody("cannot render the point body");
  const double half = 0.5 * opt.size, scale = 0.45 * opt.size;
  auto px = [&](double x) { return detail::fmt(half + scale * x); };
  auto py = [&](double y) { return detail::fmt(half - scale * y); };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << opt.size << "\" height=\""
      << opt.size << "\" viewBox=\"0 0 " << opt.size << ' ' << opt.size << "\">\n";
  out << "  <circle class=\"disk\" cx=\"" << px(0) << "\" cy=\"" << py(0) << "\" r=\"" << detail::fmt(scale)
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

  const PolytopeSpec& spec = p.spec();
  const auto& u = p.canonical_support();
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (!p.facet_nonempty()[i]) continue;
    const double r = 1.0 / (1.0 + std::exp(-u[i]));
    const Vec c = (1.0 - r) * spec.horoballs[i].center.vec();
    out << "  <circle class=\"horocycle\" cx=\"" << px(c[0]) << "\" cy=\"" << py(c[1]) << "\" r=\""
        << detail::fmt(scale * r) << "\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"0.75\"/>\n";
  }

  out << "  <path class=\"boundary\" d=\"";
  for (std::size_t k = 0; k < opt.samples; ++k) {
    const double phi = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(opt.samples);
    const Direction th = Direction::from_angle(phi);
    const BallPoint b = to_ball(polar_point(radial(p, th), th));
    out << (k == 0 ? "M " : " L ") << px(b.vec()[0]) << ' ' << py(b.vec()[1]);
  }
  out << " Z\" fill=\"rgba(200,80,60,0.25)\" stroke=\"firebrick\" stroke-width=\"1.5\"/>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace horomink
