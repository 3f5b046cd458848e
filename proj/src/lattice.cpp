#include "tessella/lattice.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tessella {

namespace {

struct GroupTables {
    int order = 0;
    int nrot = 0;
    std::array<Mat2, 12> mat{};
    int comp[12][12] = {};
    int inv[12] = {};

    GroupTables(Mat2 rot, Mat2 mirror, int rotations) {
        nrot = rotations;
        order = 2 * rotations;
        Mat2 r{};
        for (int i = 0; i < nrot; ++i) {
            mat[i] = r;
            mat[nrot + i] = r * mirror;
            r = rot * r;
        }
        for (int p = 0; p < order; ++p) {
            for (int q = 0; q < order; ++q) {
                Mat2 m = mat[p] * mat[q];
                for (int k = 0; k < order; ++k)
                    if (mat[k] == m) { comp[p][q] = k; break; }
            }
            for (int k = 0; k < order; ++k)
                if (comp[p][k] == 0) { inv[p] = k; break; }
        }
    }
};

const GroupTables& tables(GridKind g) {
    // square: D4 fixing the centre of cell (0,0); action on cell coords is linear
    static const GroupTables square({0, -1, 1, 0}, {1, 0, 0, -1}, 4);
    // hex family: D6 in the (q,r) basis about a hexagon centre
    // (triangle lattice vertex for the triangle grid)
    static const GroupTables hexfam({0, -1, 1, 1}, {1, 1, 0, -1}, 6);
    return g == GridKind::Square ? square : hexfam;
}

// directions to the six hexagon neighbours, axial, counterclockwise from east
constexpr IVec2 kHexDir[6] = {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}};

// hexagon corner V_k at angle 30 + 60k degrees, in sixths of the centre basis
constexpr IVec2 kHexCorner[6] = {{2, 2}, {-2, 4}, {-4, 2}, {-2, -2}, {2, -4}, {4, -2}};

// key offset of kite k within its hexagon: six times the corner sum of the kite
constexpr IVec2 kKiteOff[6] = {{5, 5}, {-5, 10}, {-10, 5}, {-5, -5}, {5, -10}, {10, -5}};

int kite_index(Cell c) {
    int rx = ((c.x % 24) + 24) % 24, ry = ((c.y % 24) + 24) % 24;
    for (int k = 0; k < 6; ++k) {
        if (((kKiteOff[k].x % 24) + 24) % 24 == rx &&
            ((kKiteOff[k].y % 24) + 24) % 24 == ry)
            return k;
    }
    throw std::invalid_argument("invalid kite cell key");
}

bool tri_up(Cell c) {
    int r = ((c.x % 3) + 3) % 3;
    if (r == 0 || r != ((c.y % 3) + 3) % 3)
        throw std::invalid_argument("invalid triangle cell key");
    return r == 1;
}

}  // namespace

int point_group_order(GridKind g) { return tables(g).order; }
int rotation_count(GridKind g) { return tables(g).nrot; }
bool is_reflection(GridKind g, int p) { return p >= tables(g).nrot; }

std::vector<int> point_group(GridKind g, bool one_sided) {
    int n = one_sided ? tables(g).nrot : tables(g).order;
    std::vector<int> out(n);
    for (int i = 0; i < n; ++i) out[i] = i;
    return out;
}

const Mat2& point_matrix(GridKind g, int p) { return tables(g).mat[p]; }
int compose_points(GridKind g, int p, int q) { return tables(g).comp[p][q]; }
int invert_point(GridKind g, int p) { return tables(g).inv[p]; }

int translation_scale(GridKind g) {
    switch (g) {
        case GridKind::Square:
        case GridKind::Hexagon: return 1;
        case GridKind::Triangle: return 3;
        case GridKind::Kite: return 24;
    }
    return 1;
}

int species_count(GridKind g) {
    switch (g) {
        case GridKind::Square:
        case GridKind::Hexagon: return 1;
        case GridKind::Triangle: return 2;
        case GridKind::Kite: return 6;
    }
    return 1;
}

Isometry compose(GridKind g, const Isometry& a, const Isometry& b) {
    return {compose_points(g, a.point, b.point),
            a.t + tables(g).mat[a.point].apply(b.t)};
}

Isometry invert(GridKind g, const Isometry& a) {
    int ip = invert_point(g, a.point);
    return {ip, -tables(g).mat[ip].apply(a.t)};
}

Cell apply_isometry(GridKind g, const Isometry& iso, Cell c) {
    return tables(g).mat[iso.point].apply(c) + translation_scale(g) * iso.t;
}

std::optional<IVec2> translation_between(GridKind g, Cell from, Cell to) {
    IVec2 d = to - from;
    int s = translation_scale(g);
    if (d.x % s || d.y % s) return std::nullopt;
    return IVec2{d.x / s, d.y / s};
}

int coord_arity(GridKind g) {
    return (g == GridKind::Triangle || g == GridKind::Kite) ? 3 : 2;
}

Cell cell_pack(GridKind g, std::span<const int> coords) {
    if ((int)coords.size() != coord_arity(g))
        throw std::invalid_argument("cell needs " + std::to_string(coord_arity(g)) +
                                    " coordinates on grid '" + std::string(grid_name(g)) + "'");
    switch (g) {
        case GridKind::Square:
        case GridKind::Hexagon:
            return {coords[0], coords[1]};
        case GridKind::Triangle: {
            int o = coords[2];
            if (o != 0 && o != 1)
                throw std::invalid_argument("triangle orientation must be 0 (up) or 1 (down)");
            return {3 * coords[0] + 1 + o, 3 * coords[1] + 1 + o};
        }
        case GridKind::Kite: {
            int k = coords[2];
            if (k < 0 || k > 5)
                throw std::invalid_argument("kite index must be in 0..5");
            return IVec2{24 * coords[0], 24 * coords[1]} + kKiteOff[k];
        }
    }
    throw std::invalid_argument("unknown grid");
}

std::array<int, 3> cell_unpack(GridKind g, Cell c) {
    switch (g) {
        case GridKind::Square:
        case GridKind::Hexagon:
            return {c.x, c.y, 0};
        case GridKind::Triangle: {
            int o = tri_up(c) ? 0 : 1;
            return {(c.x - 1 - o) / 3, (c.y - 1 - o) / 3, o};
        }
        case GridKind::Kite: {
            int k = kite_index(c);
            return {(c.x - kKiteOff[k].x) / 24, (c.y - kKiteOff[k].y) / 24, k};
        }
    }
    return {0, 0, 0};
}

void cell_neighbors(GridKind g, Cell c, AdjacencyMode mode, std::vector<Cell>& out) {
    switch (g) {
        case GridKind::Square: {
            static constexpr IVec2 edge[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
            static constexpr IVec2 diag[4] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
            for (auto d : edge) out.push_back(c + d);
            if (mode == AdjacencyMode::Vertex)
                for (auto d : diag) out.push_back(c + d);
            return;
        }
        case GridKind::Hexagon: {
            // three hexagons meet at every corner, so vertex contact implies edge contact
            for (auto d : kHexDir) out.push_back(c + d);
            return;
        }
        case GridKind::Triangle: {
            static constexpr IVec2 edge[3] = {{1, 1}, {-2, 1}, {1, -2}};
            static constexpr IVec2 vert[9] = {{-3, 0}, {0, -3}, {3, 0},  {3, -3}, {0, 3},
                                              {-3, 3}, {-2, -2}, {4, -2}, {-2, 4}};
            int sgn = tri_up(c) ? 1 : -1;
            for (auto d : edge) out.push_back(c + sgn * d);
            if (mode == AdjacencyMode::Vertex)
                for (auto d : vert) out.push_back(c + sgn * d);
            return;
        }
        case GridKind::Kite: {
            int k = kite_index(c);
            Cell hex = c - kKiteOff[k];
            auto at = [&](IVec2 dhex, int kk) {
                out.push_back(hex + 24 * dhex + kKiteOff[(kk % 6 + 6) % 6]);
            };
            // around the shared hexagon centre
            at({0, 0}, k + 1);
            at({0, 0}, k + 5);
            // across the two boundary half-edges
            at(kHexDir[k], k + 2);
            at(kHexDir[(k + 1) % 6], k + 4);
            if (mode == AdjacencyMode::Vertex) {
                at({0, 0}, k + 2);
                at({0, 0}, k + 3);
                at({0, 0}, k + 4);
                // diagonal partners across the two edge midpoints
                at(kHexDir[k], k + 3);
                at(kHexDir[(k + 1) % 6], k + 3);
            }
            return;
        }
    }
}

std::vector<Cell> cell_neighbors(GridKind g, Cell c, AdjacencyMode mode) {
    std::vector<Cell> out;
    cell_neighbors(g, c, mode, out);
    return out;
}

void cell_vertices(GridKind g, Cell c, std::vector<IVec2>& out) {
    switch (g) {
        case GridKind::Square:
            out.push_back({c.x, c.y});
            out.push_back({c.x + 1, c.y});
            out.push_back({c.x + 1, c.y + 1});
            out.push_back({c.x, c.y + 1});
            return;
        case GridKind::Hexagon: {
            IVec2 ctr = 6 * c;
            for (auto v : kHexCorner) out.push_back(ctr + v);
            return;
        }
        case GridKind::Triangle: {
            auto [x, y, o] = cell_unpack(g, c);
            if (o == 0) {
                out.push_back({x, y});
                out.push_back({x + 1, y});
                out.push_back({x, y + 1});
            } else {
                out.push_back({x + 1, y});
                out.push_back({x + 1, y + 1});
                out.push_back({x, y + 1});
            }
            return;
        }
        case GridKind::Kite: {
            int k = kite_index(c);
            Cell hex = c - kKiteOff[k];
            IVec2 ctr = {hex.x / 4, hex.y / 4};  // 24 -> sixths
            out.push_back(ctr);
            out.push_back(ctr + 3 * kHexDir[k]);
            out.push_back(ctr + kHexCorner[k]);
            out.push_back(ctr + 3 * kHexDir[(k + 1) % 6]);
            return;
        }
    }
}

std::pair<double, double> vertex_xy(GridKind g, IVec2 v) {
    static const double r3 = std::sqrt(3.0);
    switch (g) {
        case GridKind::Square:
            return {double(v.x), double(v.y)};
        case GridKind::Triangle:
            return {v.x + 0.5 * v.y, 0.5 * r3 * v.y};
        case GridKind::Hexagon:
        case GridKind::Kite:
            return {r3 * (2.0 * v.x + v.y) / 12.0, v.y / 4.0};
    }
    return {0, 0};
}

std::vector<std::pair<double, double>> cell_polygon(GridKind g, Cell c) {
    std::vector<IVec2> verts;
    cell_vertices(g, c, verts);
    std::vector<std::pair<double, double>> out;
    out.reserve(verts.size());
    for (auto v : verts) out.push_back(vertex_xy(g, v));
    return out;
}

std::string_view grid_name(GridKind g) {
    switch (g) {
        case GridKind::Square: return "square";
        case GridKind::Hexagon: return "hex";
        case GridKind::Triangle: return "tri";
        case GridKind::Kite: return "kite";
    }
    return "?";
}

std::optional<GridKind> grid_from_name(std::string_view name) {
    if (name == "square") return GridKind::Square;
    if (name == "hex") return GridKind::Hexagon;
    if (name == "tri") return GridKind::Triangle;
    if (name == "kite") return GridKind::Kite;
    return std::nullopt;
}

}  // namespace tessella
