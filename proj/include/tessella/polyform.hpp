#pragma once

#include <span>
#include <string>
#include <vector>

#include "tessella/lattice.hpp"

namespace tessella {

// cells are kept sorted and unique; one_sided restricts congruence to rotations
struct Polyform {
    GridKind grid = GridKind::Square;
    std::vector<Cell> cells;
    bool one_sided = false;

    int size() const { return (int)cells.size(); }
    friend bool operator==(const Polyform& a, const Polyform& b) {
        return a.grid == b.grid && a.one_sided == b.one_sided && a.cells == b.cells;
    }
};

// validates: non-empty, duplicate-free, edge-connected
Polyform make_polyform(GridKind g, std::vector<Cell> cells, bool one_sided = false);

// sorted-unique transforms
std::vector<Cell> translate_cells(GridKind g, std::span<const Cell> cells, IVec2 t);
std::vector<Cell> transform_cells(GridKind g, int point, std::span<const Cell> cells);
std::vector<Cell> realize(GridKind g, std::span<const Cell> base, const Isometry& iso);

bool cells_connected(GridKind g, std::span<const Cell> cells, AdjacencyMode mode);

// translation-normalized, lexicographically least over the applicable point group;
// idempotent and constant on congruence classes
Polyform canonicalize(const Polyform& p);

// all canonical n-cell polyforms, sorted; grown cell-by-cell with canonical dedup
std::vector<Polyform> enumerate_polyforms(GridKind g, int n, bool one_sided);

// placements of s touching s without overlap, deduplicated by realized cell set,
// sorted by realized cells; includes reflected placements unless s.one_sided
std::vector<Isometry> neighbor_placements(const Polyform& s, AdjacencyMode mode);

// single edge-connected piece, no enclosed holes, no pinch vertices
bool is_topological_disk(GridKind g, std::span<const Cell> cells);

// isometries mapping the cell set to itself
std::vector<Isometry> set_stabilizer(GridKind g, std::span<const Cell> cells);

// counterclockwise boundary word over N/E/S/W from the lexicographically least
// boundary vertex; square grid, topological disks only
std::string boundary_word(const Polyform& p);

// boundary loops of the cell union in exact vertex units, collinear runs
// merged so each loop lists polygon corners only; outer loops run
// counterclockwise, hole loops clockwise; every loop starts at its least
// vertex and loops are sorted by that vertex
std::vector<std::vector<IVec2>> boundary_loops(GridKind g, std::span<const Cell> cells);

// the single boundary loop of a disk-like union; throws std::invalid_argument
// when the boundary has several loops (holes or pinches)
std::vector<IVec2> outline(GridKind g, std::span<const Cell> cells);

int cells_diameter_key(std::span<const Cell> cells);  // Chebyshev, key units

// fixed shapes on the kite grid
Polyform builtin_shape(std::string_view name);  // "hat" | "turtle"
std::vector<std::string_view> builtin_names();

}  // namespace tessella
