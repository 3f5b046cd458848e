#include "tessella/render.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <limits>
#include <stdexcept>

#include "tessella/lattice.hpp"
#include "tessella/polyform.hpp"

namespace tessella {

namespace {

constexpr std::array<const char*, 10> kPalette = {
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1",
    "#76b7b2", "#edc948", "#ff9da7", "#9c755f", "#bab0ac",
};

// locale-independent fixed formatting so output bytes never vary
void append_number(std::string& out, double v) {
    std::array<char, 64> buf;
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, 6);
    out.append(buf.data(), res.ptr);
}

}  // namespace

std::string render_svg(const RenderSpec& spec) {
    const Patch& p = spec.patch;
    if (p.placements.empty()) throw std::invalid_argument("cannot render an empty patch");
    if (!spec.class_palette && p.corona.size() != p.placements.size())
        throw std::invalid_argument("corona palette requested but corona indices are missing");
    if (!(spec.scale > 0)) throw std::invalid_argument("scale must be positive");

    GridKind g = p.shape.grid;
    std::vector<std::string> paths;
    paths.reserve(p.placements.size());
    double min_x = std::numeric_limits<double>::infinity(), min_y = min_x;
    double max_x = -min_x, max_y = -min_y;

    for (std::size_t i = 0; i < p.placements.size(); ++i) {
        std::vector<Cell> cells = realize(g, p.shape.cells, p.placements[i]);
        std::string d;
        for (const std::vector<IVec2>& loop : boundary_loops(g, cells)) {
            for (std::size_t k = 0; k < loop.size(); ++k) {
                auto [x, y] = vertex_xy(g, loop[k]);
                x *= spec.scale;
                y *= spec.scale;
                min_x = std::min(min_x, x);
                min_y = std::min(min_y, y);
                max_x = std::max(max_x, x);
                max_y = std::max(max_y, y);
                d += k == 0 ? 'M' : 'L';
                append_number(d, x);
                d += ' ';
                append_number(d, y);
            }
            d += 'Z';
        }
        paths.push_back(std::move(d));
    }

    const double pad_x = 0.05 * (max_x - min_x);
    const double pad_y = 0.05 * (max_y - min_y);

    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"";
    append_number(out, min_x - pad_x);
    out += ' ';
    append_number(out, min_y - pad_y);
    out += ' ';
    append_number(out, (max_x - min_x) + 2 * pad_x);
    out += ' ';
    append_number(out, (max_y - min_y) + 2 * pad_y);
    out += "\">\n";
    for (std::size_t i = 0; i < paths.size(); ++i) {
        std::size_t color = spec.class_palette ? i : (std::size_t)p.corona[i];
        out += "<path d=\"";
        out += paths[i];
        out += "\" fill=\"";
        out += kPalette[color % kPalette.size()];
        out += "\" fill-rule=\"evenodd\" stroke=\"#000000\" stroke-width=\"";
        append_number(out, spec.stroke_width);
        out += "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace tessella
