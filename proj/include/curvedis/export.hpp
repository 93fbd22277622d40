#pragma once

#include <string>

#include "curvedis/curve.hpp"

namespace curvedis {

// tan(alpha/4) r for the rotation by alpha about r
Vec3 so3_ball_point(const Point& x);

struct GrassGlyph {
    Vec3 z_plus, z_minus;       // u + v and -(u + v)
    Vec3 rgb_plus, rgb_minus;   // (1 - u_i)/2 and (1 + u_i)/2
};
GrassGlyph grass_glyph(const Point& x);

// closed polyline over the unit square, split where it wraps; y grows downwards like image rows
std::string torus_svg(const DiscreteCurve& c, double size_px = 512.0);
// one row per point: T^3 and S^2 coordinates, SO(3) ball points, Grassmannian glyphs
std::string visualization_csv(const DiscreteCurve& c);

// "svg" (T^2 only) or "csv" (T^3, S^2, SO(3), G(2,4)); other pairs are unsupported
std::string export_visualization(const DiscreteCurve& c, const std::string& format);

} // namespace curvedis
