#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tessella/geom.hpp"

namespace tessella {

enum class GridKind { Square, Hexagon, Triangle, Kite };

enum class AdjacencyMode { Edge, Vertex };

// A cell is a packed integer key: the cell centroid in lattice basis, scaled
// so that every lattice-preserving isometry acts on keys by an integer 2x2
// matrix and translations act by adding scale * (lattice vector).
//   Square   key (x, y)                    scale 1
//   Hexagon  key (q, r)                    scale 1
//   Triangle key (3x+1+o, 3y+1+o), o=0 up  scale 3
//   Kite     key 24*(q, r) + kite_offset   scale 24
using Cell = IVec2;

// point-group index plus lattice translation; acts on keys as M_p * key + scale * t
struct Isometry {
    int point = 0;
    IVec2 t{0, 0};

    friend bool operator==(const Isometry& a, const Isometry& b) {
        return a.point == b.point && a.t == b.t;
    }
    friend bool operator<(const Isometry& a, const Isometry& b) {
        return a.point != b.point ? a.point < b.point : a.t < b.t;
    }
};

int point_group_order(GridKind g);   // 8 square, 12 otherwise
int rotation_count(GridKind g);      // 4 square, 6 otherwise
bool is_reflection(GridKind g, int p);

// point indices usable for placements: rotations first, reflections after;
// one_sided restricts to rotations
std::vector<int> point_group(GridKind g, bool one_sided);

const Mat2& point_matrix(GridKind g, int p);
int compose_points(GridKind g, int p, int q);  // index of M_p * M_q
int invert_point(GridKind g, int p);

int translation_scale(GridKind g);

// number of cells inside one unit cell of the translation lattice
// (square 1, hex 1, tri 2, kite 6)
int species_count(GridKind g);

Isometry compose(GridKind g, const Isometry& a, const Isometry& b);  // a after b
Isometry invert(GridKind g, const Isometry& a);
Cell apply_isometry(GridKind g, const Isometry& iso, Cell c);

// translation t with from + scale*t == to, if the cells are translates
std::optional<IVec2> translation_between(GridKind g, Cell from, Cell to);

// user-facing coordinates: square [x,y], hex [q,r], tri [x,y,o], kite [q,r,k]
int coord_arity(GridKind g);  // 2 or 3
Cell cell_pack(GridKind g, std::span<const int> coords);  // throws std::invalid_argument
std::array<int, 3> cell_unpack(GridKind g, Cell c);

void cell_neighbors(GridKind g, Cell c, AdjacencyMode mode, std::vector<Cell>& out);
std::vector<Cell> cell_neighbors(GridKind g, Cell c, AdjacencyMode mode);

// exact cell corners, counterclockwise, in per-grid vertex units
// (square: unit grid; triangle: lattice points; hex/kite: sixths of the hex-center basis)
void cell_vertices(GridKind g, Cell c, std::vector<IVec2>& out);
std::pair<double, double> vertex_xy(GridKind g, IVec2 v);
std::vector<std::pair<double, double>> cell_polygon(GridKind g, Cell c);

std::string_view grid_name(GridKind g);  // "square" | "hex" | "tri" | "kite"
std::optional<GridKind> grid_from_name(std::string_view name);

}  // namespace tessella
