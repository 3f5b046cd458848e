#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "doctest.h"
#include "tessella/render.hpp"
#include "tessella/shape_io.hpp"

using namespace tessella;

namespace {

Polyform squares(const std::vector<std::pair<int, int>>& xy) {
    std::vector<Cell> cells;
    for (auto [x, y] : xy) {
        std::array<int, 2> t{x, y};
        cells.push_back(cell_pack(GridKind::Square, t));
    }
    return make_polyform(GridKind::Square, std::move(cells));
}

Patch surround_patch_of(const Polyform& s) {
    SurroundProblem prob = make_surround_problem(s, s.cells, AdjacencyMode::Vertex);
    SurroundOutcome so = find_surround(prob, SurroundEngine::Backtrack, CoronaOptions{});
    REQUIRE(so.status == SearchStatus::Found);
    Patch p;
    p.shape = s;
    p.placements.push_back(Isometry{0, {0, 0}});
    p.corona.push_back(0);
    for (const Isometry& iso : so.surround) {
        p.placements.push_back(iso);
        p.corona.push_back(1);
    }
    return p;
}

std::size_t count_occurrences(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t at = hay.find(needle); at != std::string::npos;
         at = hay.find(needle, at + needle.size()))
        ++n;
    return n;
}

std::string attr_of(const std::string& tag, const std::string& name) {
    std::size_t at = tag.find(name + "=\"");
    REQUIRE(at != std::string::npos);
    at += name.size() + 2;
    return tag.substr(at, tag.find('"', at) - at);
}

std::vector<std::string> path_tags(const std::string& svg) {
    std::vector<std::string> tags;
    for (std::size_t at = svg.find("<path "); at != std::string::npos;
         at = svg.find("<path ", at + 1))
        tags.push_back(svg.substr(at, svg.find("/>", at) - at));
    return tags;
}

// minimal well-formedness scan: tags balance and attributes stay quoted
bool well_formed_xml(const std::string& text) {
    std::size_t at = text.find("?>");
    if (at == std::string::npos) return false;
    std::vector<std::string> stack;
    for (at = text.find('<', at); at != std::string::npos; at = text.find('<', at + 1)) {
        std::size_t end = at + 1;
        bool quoted = false;
        while (end < text.size() && (quoted || text[end] != '>')) {
            if (text[end] == '"') quoted = !quoted;
            ++end;
        }
        if (end == text.size()) return false;
        std::string body = text.substr(at + 1, end - at - 1);
        if (body.empty()) return false;
        if (body[0] == '/') {
            if (stack.empty() || stack.back() != body.substr(1)) return false;
            stack.pop_back();
        } else if (body.back() != '/') {
            stack.push_back(body.substr(0, body.find_first_of(" \t\n")));
        }
        at = end;
    }
    return stack.empty();
}

}  // namespace

TEST_CASE("a monomino surround renders nine paths with a distinct center") {
    Patch p = surround_patch_of(squares({{0, 0}}));
    REQUIRE(p.placements.size() == 9);  // center plus eight vertex neighbors
    RenderSpec spec;
    spec.patch = p;
    std::string svg = render_svg(spec);
    auto tags = path_tags(svg);
    CHECK(tags.size() == 9);
    CHECK(count_occurrences(svg, "<path ") == p.placements.size());
    std::string center_fill = attr_of(tags[0], "fill");
    for (std::size_t i = 1; i < tags.size(); ++i) CHECK(attr_of(tags[i], "fill") != center_fill);
    CHECK(well_formed_xml(svg));
}

TEST_CASE("rendering is byte-identical across calls") {
    RenderSpec spec;
    spec.patch = surround_patch_of(squares({{0, 0}, {0, 1}}));
    std::string a = render_svg(spec);
    std::string b = render_svg(spec);
    CHECK(a == b);
}

TEST_CASE("a hat one-patch renders as well-formed XML") {
    RenderSpec spec;
    spec.patch = surround_patch_of(builtin_shape("hat"));
    std::string svg = render_svg(spec);
    CHECK(well_formed_xml(svg));
    CHECK(count_occurrences(svg, "<path ") == spec.patch.placements.size());
}

TEST_CASE("path coordinates reproduce the realized cells") {
    Patch p = surround_patch_of(squares({{0, 0}}));
    RenderSpec spec;
    spec.patch = p;
    spec.scale = 40.0;
    std::string svg = render_svg(spec);
    auto tags = path_tags(svg);
    REQUIRE(tags.size() == p.placements.size());
    for (std::size_t i = 0; i < tags.size(); ++i) {
        // parse "Mx y Lx y Lx y Lx y Z" into vertices
        std::string d = attr_of(tags[i], "d");
        std::vector<std::pair<double, double>> got;
        const char* c = d.c_str();
        while (*c) {
            if (*c == 'M' || *c == 'L') {
                char* next = nullptr;
                double x = std::strtod(c + 1, &next);
                double y = std::strtod(next, &next);
                got.emplace_back(x / spec.scale, y / spec.scale);
                c = next;
            } else {
                ++c;
            }
        }
        std::vector<Cell> cells = realize(p.shape.grid, p.shape.cells, p.placements[i]);
        REQUIRE(cells.size() == 1);
        auto want = cell_polygon(p.shape.grid, cells[0]);
        REQUIRE(got.size() == want.size());
        // the loop may start at a different corner; align by rotation
        std::size_t shift = 0;
        for (; shift < want.size(); ++shift)
            if (std::abs(want[shift].first - got[0].first) < 1e-6 &&
                std::abs(want[shift].second - got[0].second) < 1e-6)
                break;
        REQUIRE(shift < want.size());
        for (std::size_t k = 0; k < got.size(); ++k) {
            auto [wx, wy] = want[(shift + k) % want.size()];
            CHECK(std::abs(got[k].first - wx) < 1e-6);
            CHECK(std::abs(got[k].second - wy) < 1e-6);
        }
    }
}

TEST_CASE("the viewBox pads the drawing by five percent") {
    Patch p;
    p.shape = squares({{0, 0}});
    p.placements = {Isometry{0, {0, 0}}};
    p.corona = {0};
    RenderSpec spec;
    spec.patch = p;
    spec.scale = 40.0;
    std::string svg = render_svg(spec);
    std::string vb = attr_of(svg.substr(svg.find("<svg ")), "viewBox");
    char* c = nullptr;
    double x0 = std::strtod(vb.c_str(), &c);
    double y0 = std::strtod(c, &c);
    double w = std::strtod(c, &c);
    double h = std::strtod(c, &c);
    CHECK(x0 == doctest::Approx(-2.0));
    CHECK(y0 == doctest::Approx(-2.0));
    CHECK(w == doctest::Approx(44.0));
    CHECK(h == doctest::Approx(44.0));
}

TEST_CASE("render validation rejects bad specs") {
    RenderSpec empty;
    CHECK_THROWS_AS((void)render_svg(empty), std::invalid_argument);

    Patch no_corona;
    no_corona.shape = squares({{0, 0}});
    no_corona.placements = {Isometry{0, {0, 0}}};
    RenderSpec spec;
    spec.patch = no_corona;
    CHECK_THROWS_AS((void)render_svg(spec), std::invalid_argument);
    spec.class_palette = true;  // placement-indexed colors need no corona data
    CHECK(count_occurrences(render_svg(spec), "<path ") == 1);
}

TEST_CASE("holed placements render as evenodd subpaths") {
    Patch p;
    p.shape = squares({{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}, {2, 2}});
    p.placements = {Isometry{0, {0, 0}}};
    p.corona = {0};
    RenderSpec spec;
    spec.patch = p;
    std::string svg = render_svg(spec);
    auto tags = path_tags(svg);
    REQUIRE(tags.size() == 1);
    CHECK(count_occurrences(attr_of(tags[0], "d"), "M") == 2);  // outer loop plus hole
    CHECK(count_occurrences(attr_of(tags[0], "d"), "Z") == 2);
}
