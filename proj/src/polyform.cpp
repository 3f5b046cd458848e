#include "tessella/polyform.hpp"

#include <algorithm>
#include <stdexcept>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace tessella {

namespace {

struct CellsHash {
    size_t operator()(const std::vector<Cell>& v) const {
        uint64_t h = 1469598103934665603ULL;
        for (const Cell& c : v) {
            h = (h ^ uint64_t(uint32_t(c.x))) * 1099511628211ULL;
            h = (h ^ uint64_t(uint32_t(c.y))) * 1099511628211ULL;
        }
        return size_t(h);
    }
};

uint64_t pack_vertex(IVec2 v) {
    return (uint64_t(uint32_t(v.x)) << 32) | uint32_t(v.y);
}

struct U64PairHash {
    size_t operator()(const std::pair<uint64_t, uint64_t>& p) const {
        uint64_t h = p.first * 0x9e3779b97f4a7c15ULL ^ (p.second + 0x7f4a7c15ULL);
        h ^= h >> 31;
        return size_t(h * 0xbf58476d1ce4e5b9ULL);
    }
};

using VertexEdge = std::pair<uint64_t, uint64_t>;

VertexEdge make_edge(IVec2 a, IVec2 b) {
    uint64_t pa = pack_vertex(a), pb = pack_vertex(b);
    return pa < pb ? VertexEdge{pa, pb} : VertexEdge{pb, pa};
}

std::vector<Cell> normalized(GridKind g, std::vector<Cell> cells) {
    std::sort(cells.begin(), cells.end());
    int s = translation_scale(g);
    IVec2 k0 = cells.front();
    IVec2 off = {k0.x - (((k0.x % s) + s) % s), k0.y - (((k0.y % s) + s) % s)};
    for (Cell& c : cells) c = c - off;
    return cells;
}

uint64_t pack_iso(const Isometry& iso) {
    return (uint64_t(uint8_t(iso.point)) << 60) |
           (uint64_t(uint32_t(iso.t.x) & 0x3fffffff) << 30) |
           uint64_t(uint32_t(iso.t.y) & 0x3fffffff);
}

}  // namespace

Polyform make_polyform(GridKind g, std::vector<Cell> cells, bool one_sided) {
    if (cells.empty()) throw std::invalid_argument("polyform needs at least one cell");
    for (Cell c : cells) (void)cell_unpack(g, c);  // validates keys
    std::sort(cells.begin(), cells.end());
    if (std::adjacent_find(cells.begin(), cells.end()) != cells.end())
        throw std::invalid_argument("polyform has duplicate cells");
    if (!cells_connected(g, cells, AdjacencyMode::Edge))
        throw std::invalid_argument("polyform cells are not edge-connected");
    return {g, std::move(cells), one_sided};
}

std::vector<Cell> translate_cells(GridKind g, std::span<const Cell> cells, IVec2 t) {
    IVec2 off = translation_scale(g) * t;
    std::vector<Cell> out;
    out.reserve(cells.size());
    for (Cell c : cells) out.push_back(c + off);
    return out;  // translation preserves order
}

std::vector<Cell> transform_cells(GridKind g, int point, std::span<const Cell> cells) {
    const Mat2& m = point_matrix(g, point);
    std::vector<Cell> out;
    out.reserve(cells.size());
    for (Cell c : cells) out.push_back(m.apply(c));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Cell> realize(GridKind g, std::span<const Cell> base, const Isometry& iso) {
    IVec2 off = translation_scale(g) * iso.t;
    const Mat2& m = point_matrix(g, iso.point);
    std::vector<Cell> out;
    out.reserve(base.size());
    for (Cell c : base) out.push_back(m.apply(c) + off);
    std::sort(out.begin(), out.end());
    return out;
}

bool cells_connected(GridKind g, std::span<const Cell> cells, AdjacencyMode mode) {
    if (cells.empty()) return false;
    std::unordered_set<Cell, IVec2Hash> left(cells.begin(), cells.end());
    std::vector<Cell> stack = {cells[0]}, nbrs;
    left.erase(cells[0]);
    while (!stack.empty()) {
        Cell c = stack.back();
        stack.pop_back();
        nbrs.clear();
        cell_neighbors(g, c, mode, nbrs);
        for (Cell n : nbrs) {
            auto it = left.find(n);
            if (it != left.end()) {
                left.erase(it);
                stack.push_back(n);
            }
        }
    }
    return left.empty();
}

Polyform canonicalize(const Polyform& p) {
    std::vector<Cell> best;
    for (int point : point_group(p.grid, p.one_sided)) {
        std::vector<Cell> img = normalized(p.grid, transform_cells(p.grid, point, p.cells));
        if (best.empty() || img < best) best = std::move(img);
    }
    return {p.grid, std::move(best), p.one_sided};
}

std::vector<Polyform> enumerate_polyforms(GridKind g, int n, bool one_sided) {
    if (n < 1) throw std::invalid_argument("polyform size must be positive");
    std::unordered_set<std::vector<Cell>, CellsHash> level;
    int species = coord_arity(g) == 2 ? 1 : (g == GridKind::Triangle ? 2 : 6);
    for (int k = 0; k < species; ++k) {
        int co[3] = {0, 0, k};
        Cell c = cell_pack(g, std::span<const int>(co, coord_arity(g)));
        level.insert(canonicalize({g, {c}, one_sided}).cells);
    }
    std::vector<Cell> nbrs;
    for (int size = 2; size <= n; ++size) {
        std::unordered_set<std::vector<Cell>, CellsHash> next;
        for (const auto& cells : level) {
            std::unordered_set<Cell, IVec2Hash> inset(cells.begin(), cells.end());
            std::unordered_set<Cell, IVec2Hash> tried;
            for (Cell c : cells) {
                nbrs.clear();
                cell_neighbors(g, c, AdjacencyMode::Edge, nbrs);
                for (Cell b : nbrs) {
                    if (inset.count(b) || !tried.insert(b).second) continue;
                    std::vector<Cell> grown = cells;
                    grown.insert(std::lower_bound(grown.begin(), grown.end(), b), b);
                    next.insert(canonicalize({g, std::move(grown), one_sided}).cells);
                }
            }
        }
        level = std::move(next);
    }
    std::vector<std::vector<Cell>> sorted(level.begin(), level.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<Polyform> out;
    out.reserve(sorted.size());
    for (auto& cells : sorted) out.push_back({g, std::move(cells), one_sided});
    return out;
}

std::vector<Isometry> neighbor_placements(const Polyform& s, AdjacencyMode mode) {
    GridKind g = s.grid;
    std::vector<int> points = point_group(g, s.one_sided);
    std::vector<std::vector<Cell>> images;
    for (int p : points) images.push_back(transform_cells(g, p, s.cells));

    std::unordered_set<Cell, IVec2Hash> center(s.cells.begin(), s.cells.end());
    std::unordered_set<uint64_t> seen_iso;
    std::unordered_map<std::vector<Cell>, Isometry, CellsHash> by_cells;

    std::vector<Cell> nbrs;
    for (Cell c : s.cells) {
        nbrs.clear();
        cell_neighbors(g, c, mode, nbrs);
        for (Cell nb : nbrs) {
            if (center.count(nb)) continue;
            for (size_t pi = 0; pi < points.size(); ++pi) {
                for (Cell b : images[pi]) {
                    auto t = translation_between(g, b, nb);
                    if (!t) continue;
                    Isometry iso{points[pi], *t};
                    if (!seen_iso.insert(pack_iso(iso)).second) continue;
                    std::vector<Cell> cells = translate_cells(g, images[pi], *t);
                    bool overlap = false;
                    for (Cell x : cells)
                        if (center.count(x)) { overlap = true; break; }
                    if (overlap) continue;
                    auto [it, fresh] = by_cells.try_emplace(std::move(cells), iso);
                    if (!fresh && iso < it->second) it->second = iso;
                }
            }
        }
    }

    std::vector<std::pair<std::vector<Cell>, Isometry>> entries;
    entries.reserve(by_cells.size());
    for (auto& [cells, iso] : by_cells) entries.emplace_back(cells, iso);
    std::sort(entries.begin(), entries.end());
    std::vector<Isometry> out;
    out.reserve(entries.size());
    for (auto& e : entries) out.push_back(e.second);
    return out;
}

bool is_topological_disk(GridKind g, std::span<const Cell> cells) {
    if (cells.empty()) return false;
    if (!cells_connected(g, cells, AdjacencyMode::Edge)) return false;

    std::unordered_map<VertexEdge, int, U64PairHash> edge_count;
    std::vector<IVec2> verts;
    for (Cell c : cells) {
        verts.clear();
        cell_vertices(g, c, verts);
        for (size_t i = 0; i < verts.size(); ++i)
            ++edge_count[make_edge(verts[i], verts[(i + 1) % verts.size()])];
    }

    // boundary = edges used once; a disk has every boundary vertex of degree 2
    // and a single boundary cycle
    std::unordered_map<uint64_t, int> vdeg;
    std::vector<VertexEdge> boundary;
    for (const auto& [e, n] : edge_count) {
        if (n > 2) return false;
        if (n == 1) {
            boundary.push_back(e);
            ++vdeg[e.first];
            ++vdeg[e.second];
        }
    }
    for (const auto& [v, d] : vdeg)
        if (d != 2) return false;

    // count boundary cycles with union-find over vertices
    std::unordered_map<uint64_t, uint64_t> parent;
    std::function<uint64_t(uint64_t)> find = [&](uint64_t x) {
        auto it = parent.find(x);
        if (it == parent.end() || it->second == x) return x;
        return it->second = find(it->second);
    };
    int merges = 0;
    for (const auto& [a, b] : boundary) {
        uint64_t ra = find(a), rb = find(b);
        if (ra != rb) {
            parent[ra] = rb;
            ++merges;
        }
    }
    // one cycle over V vertices has V edges and V-1 merges
    return merges + 1 == (int)boundary.size() && (int)vdeg.size() == (int)boundary.size();
}

std::vector<Isometry> set_stabilizer(GridKind g, std::span<const Cell> cells) {
    std::vector<Cell> base(cells.begin(), cells.end());
    std::sort(base.begin(), base.end());
    std::vector<Isometry> out;
    for (int p = 0; p < point_group_order(g); ++p) {
        std::vector<Cell> img = transform_cells(g, p, base);
        auto t = translation_between(g, img.front(), base.front());
        if (!t) continue;
        if (translate_cells(g, img, *t) == base) out.push_back({p, *t});
    }
    return out;
}

std::string boundary_word(const Polyform& p) {
    if (p.grid != GridKind::Square)
        throw std::invalid_argument("boundary words are defined on the square grid only");
    if (!is_topological_disk(p.grid, p.cells))
        throw std::invalid_argument("boundary word needs a topological disk");

    std::unordered_set<VertexEdge, U64PairHash> undirected_twice;
    std::unordered_map<VertexEdge, int, U64PairHash> seen;
    auto ring = [&](Cell c) {
        std::array<IVec2, 4> v = {IVec2{c.x, c.y}, {c.x + 1, c.y}, {c.x + 1, c.y + 1},
                                  {c.x, c.y + 1}};
        return v;
    };
    for (Cell c : p.cells) {
        auto v = ring(c);
        for (int i = 0; i < 4; ++i) ++seen[make_edge(v[i], v[(i + 1) % 4])];
    }

    std::unordered_map<uint64_t, IVec2> next;
    IVec2 start{INT32_MAX, INT32_MAX};
    for (Cell c : p.cells) {
        auto v = ring(c);
        for (int i = 0; i < 4; ++i) {
            IVec2 a = v[i], b = v[(i + 1) % 4];
            if (seen[make_edge(a, b)] != 1) continue;
            next[pack_vertex(a)] = b;
            if (a < start) start = a;
            if (b < start) start = b;
        }
    }

    std::string word;
    IVec2 at = start;
    do {
        IVec2 to = next.at(pack_vertex(at));
        IVec2 d = to - at;
        word += d == IVec2{1, 0} ? 'E' : d == IVec2{0, 1} ? 'N' : d == IVec2{-1, 0} ? 'W' : 'S';
        at = to;
    } while (!(at == start));
    return word;
}

std::vector<std::vector<IVec2>> boundary_loops(GridKind g, std::span<const Cell> cells) {
    // boundary edges are the directed cell edges whose reverse never occurs
    std::unordered_map<VertexEdge, int, U64PairHash> seen;
    std::vector<IVec2> verts;
    for (Cell c : cells) {
        verts.clear();
        cell_vertices(g, c, verts);
        for (std::size_t i = 0; i < verts.size(); ++i)
            ++seen[make_edge(verts[i], verts[(i + 1) % verts.size()])];
    }

    std::map<IVec2, std::vector<IVec2>> out_edges;
    for (Cell c : cells) {
        verts.clear();
        cell_vertices(g, c, verts);
        for (std::size_t i = 0; i < verts.size(); ++i) {
            IVec2 a = verts[i], b = verts[(i + 1) % verts.size()];
            if (seen[make_edge(a, b)] == 1) out_edges[a].push_back(b);
        }
    }
    for (auto& [a, outs] : out_edges) std::sort(outs.begin(), outs.end());

    std::vector<std::vector<IVec2>> loops;
    std::set<std::pair<IVec2, IVec2>> used;
    for (const auto& [start, outs] : out_edges) {
        for (IVec2 first : outs) {
            if (used.count({start, first})) continue;
            std::vector<IVec2> raw{start};
            IVec2 at = start, to = first;
            while (true) {
                used.insert({at, to});
                if (to == start) break;
                raw.push_back(to);
                const auto& nexts = out_edges.at(to);
                IVec2 chosen{0, 0};
                bool got = false;
                for (IVec2 nb : nexts) {
                    if (!used.count({to, nb})) {
                        chosen = nb;
                        got = true;
                        break;
                    }
                }
                if (!got) throw std::logic_error("open boundary chain");
                at = to;
                to = chosen;
            }

            // keep corners only: drop vertices where the walk does not turn
            std::vector<IVec2> loop;
            const std::size_t m = raw.size();
            for (std::size_t i = 0; i < m; ++i) {
                IVec2 prev = raw[(i + m - 1) % m], cur = raw[i], nxt = raw[(i + 1) % m];
                IVec2 d1 = cur - prev, d2 = nxt - cur;
                if (static_cast<std::int64_t>(d1.x) * d2.y !=
                    static_cast<std::int64_t>(d1.y) * d2.x)
                    loop.push_back(cur);
            }
            std::rotate(loop.begin(), std::min_element(loop.begin(), loop.end()), loop.end());
            loops.push_back(std::move(loop));
        }
    }
    std::sort(loops.begin(), loops.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return loops;
}

std::vector<IVec2> outline(GridKind g, std::span<const Cell> cells) {
    std::vector<std::vector<IVec2>> loops = boundary_loops(g, cells);
    if (loops.size() != 1)
        throw std::invalid_argument("cell union has " + std::to_string(loops.size()) +
                                    " boundary loops, not one");
    return std::move(loops.front());
}

int cells_diameter_key(std::span<const Cell> cells) {
    int32_t minx = INT32_MAX, maxx = INT32_MIN, miny = INT32_MAX, maxy = INT32_MIN;
    for (Cell c : cells) {
        minx = std::min(minx, c.x);
        maxx = std::max(maxx, c.x);
        miny = std::min(miny, c.y);
        maxy = std::max(maxy, c.y);
    }
    return std::max(maxx - minx, maxy - miny);
}

}  // namespace tessella
