#pragma once

// Deterministic SVG rendering of patches: one closed path per placement,
// colored by corona index (corona palette) or by placement index (class
// palette, for periodic certificates).  The y axis keeps the lattice
// orientation (up), so renders are mirror images of screen-down conventions.

#include <string>

#include "tessella/corona.hpp"

namespace tessella {

struct RenderSpec {
    Patch patch;
    bool class_palette = false;  // placement-indexed colors instead of corona-indexed
    double scale = 40.0;         // pixels per cell unit
    double stroke_width = 1.0;   // in output pixels
};

// Byte-identical output for identical specs; viewBox fits the drawing with a
// 5% margin per axis.  Throws std::invalid_argument on an empty patch or
// when the corona palette is requested without corona indices.
std::string render_svg(const RenderSpec& spec);

}  // namespace tessella
