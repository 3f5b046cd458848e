#include "tessella/corona.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace tessella {

namespace {

std::uint64_t pack_cell(Cell c) {
    return (std::uint64_t(std::uint32_t(c.x)) << 32) | std::uint32_t(c.y);
}

struct U64Hash {
    std::size_t operator()(std::uint64_t v) const {
        v ^= v >> 33;
        v *= 0xff51afd7ed558ccdULL;
        v ^= v >> 33;
        return (std::size_t)v;
    }
};

struct CellsHash {
    std::size_t operator()(const std::vector<Cell>& v) const {
        std::uint64_t h = 1469598103934665603ULL;
        for (Cell c : v) {
            h ^= pack_cell(c);
            h *= 1099511628211ULL;
        }
        return (std::size_t)h;
    }
};

using CellSet = std::unordered_set<std::uint64_t, U64Hash>;

bool sorted_contains(const std::vector<Cell>& v, Cell c) {
    return std::binary_search(v.begin(), v.end(), c);
}

// cells vertex-adjacent to the set and outside it: the strict-interior ring
std::vector<Cell> vertex_ring(GridKind g, const std::vector<Cell>& center) {
    std::vector<Cell> halo;
    for (Cell c : center) cell_neighbors(g, c, AdjacencyMode::Vertex, halo);
    std::sort(halo.begin(), halo.end());
    halo.erase(std::unique(halo.begin(), halo.end()), halo.end());
    std::vector<Cell> ring;
    for (Cell c : halo)
        if (!sorted_contains(center, c)) ring.push_back(c);
    return ring;
}

std::uint64_t pack_iso(const Isometry& iso) {
    return (std::uint64_t(iso.point) << 60) |
           ((std::uint64_t(std::uint32_t(iso.t.x)) & 0x3fffffff) << 30) |
           (std::uint64_t(std::uint32_t(iso.t.y)) & 0x3fffffff);
}

}  // namespace

std::vector<Cell> patch_cells(const Polyform& s, const std::vector<Isometry>& placements) {
    std::vector<Cell> out;
    out.reserve(placements.size() * s.cells.size());
    for (const Isometry& iso : placements) {
        auto cells = realize(s.grid, s.cells, iso);
        out.insert(out.end(), cells.begin(), cells.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Isometry> placements_touching(const Polyform& s, const std::vector<Cell>& target,
                                          AdjacencyMode mode) {
    GridKind g = s.grid;
    CellSet target_set;
    for (Cell c : target) target_set.insert(pack_cell(c));

    std::unordered_set<std::uint64_t, U64Hash> seen_iso;
    std::unordered_map<std::vector<Cell>, Isometry, CellsHash> by_cells;
    std::vector<Cell> nbrs;
    for (int pt : point_group(g, s.one_sided)) {
        std::vector<Cell> img = transform_cells(g, pt, s.cells);
        for (Cell tc : target) {
            nbrs.clear();
            cell_neighbors(g, tc, mode, nbrs);
            for (Cell nb : nbrs) {
                if (target_set.count(pack_cell(nb))) continue;
                for (Cell base : img) {
                    auto t = translation_between(g, base, nb);
                    if (!t) continue;
                    Isometry iso{pt, *t};
                    if (!seen_iso.insert(pack_iso(iso)).second) continue;
                    std::vector<Cell> cells = translate_cells(g, img, iso.t);
                    std::sort(cells.begin(), cells.end());
                    bool overlap = false;
                    for (Cell c : cells)
                        if (target_set.count(pack_cell(c))) {
                            overlap = true;
                            break;
                        }
                    if (overlap) continue;
                    auto it = by_cells.find(cells);
                    if (it == by_cells.end())
                        by_cells.emplace(std::move(cells), iso);
                    else if (iso < it->second)
                        it->second = iso;
                }
            }
        }
    }
    std::vector<std::pair<std::vector<Cell>, Isometry>> items;
    items.reserve(by_cells.size());
    for (auto& kv : by_cells) items.emplace_back(kv.first, kv.second);
    std::sort(items.begin(), items.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Isometry> out;
    out.reserve(items.size());
    for (auto& kv : items) out.push_back(kv.second);
    return out;
}

SurroundProblem make_surround_problem(const Polyform& s, const std::vector<Cell>& center,
                                      AdjacencyMode mode) {
    SurroundProblem p;
    p.shape = s;
    p.center = center;
    std::sort(p.center.begin(), p.center.end());
    p.ring = vertex_ring(s.grid, p.center);
    p.candidates = placements_touching(s, p.center, mode);
    p.mode = mode;
    return p;
}

namespace {

// exact-cover enumeration of the strict-interior ring: every surround member
// must own at least one ring cell, and disjointness makes ownership unique,
// so branching on the first uncovered ring cell visits each surround once
struct SurroundSearch {
    GridKind grid;
    const SurroundProblem& prob;
    const CoronaOptions& opt;
    const std::function<bool(const std::vector<Isometry>&)>& emit;

    std::vector<int> order;                        // candidate indices, search order
    std::vector<std::vector<Cell>> cand_cells;     // per candidate, sorted
    std::vector<std::vector<int>> covers;          // per candidate, ring indices
    std::vector<std::vector<int>> by_ring;         // ring index -> candidates in order
    CellSet used;
    std::vector<char> covered;
    std::vector<int> chosen;
    std::int64_t nodes = 0;
    bool stop = false;
    SearchStatus status = SearchStatus::None;

    SurroundSearch(const SurroundProblem& p, const CoronaOptions& o,
                   const std::function<bool(const std::vector<Isometry>&)>& e)
        : grid(p.shape.grid), prob(p), opt(o), emit(e) {}

    bool prepare() {
        std::unordered_map<std::uint64_t, int, U64Hash> ring_index;
        for (std::size_t i = 0; i < prob.ring.size(); ++i)
            ring_index.emplace(pack_cell(prob.ring[i]), (int)i);
        int m = (int)prob.candidates.size();
        cand_cells.resize(m);
        covers.resize(m);
        for (int i = 0; i < m; ++i) {
            cand_cells[i] = realize(grid, prob.shape.cells, prob.candidates[i]);
            std::sort(cand_cells[i].begin(), cand_cells[i].end());
            for (Cell c : cand_cells[i]) {
                auto it = ring_index.find(pack_cell(c));
                if (it != ring_index.end()) covers[i].push_back(it->second);
            }
        }
        order.resize(m);
        for (int i = 0; i < m; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (covers[a].size() != covers[b].size()) return covers[a].size() > covers[b].size();
            return cand_cells[a] < cand_cells[b];
        });
        by_ring.resize(prob.ring.size());
        for (int oi : order)
            for (int r : covers[oi]) by_ring[r].push_back(oi);
        for (const auto& list : by_ring)
            if (list.empty()) return false;  // some ring cell is uncoverable
        covered.assign(prob.ring.size(), 0);
        for (Cell c : prob.center) used.insert(pack_cell(c));
        return true;
    }

    void dfs() {
        if (stop) return;
        if (opt.node_budget >= 0 && ++nodes > opt.node_budget) {
            status = SearchStatus::Budget;
            stop = true;
            return;
        }
        int r = -1;
        for (std::size_t i = 0; i < covered.size(); ++i)
            if (!covered[i]) {
                r = (int)i;
                break;
            }
        if (r < 0) {
            std::vector<Cell> all(prob.center);
            for (int ci : chosen)
                all.insert(all.end(), cand_cells[ci].begin(), cand_cells[ci].end());
            std::sort(all.begin(), all.end());
            if (!opt.allow_holes && !is_topological_disk(grid, all)) return;
            std::vector<Isometry> w;
            w.reserve(chosen.size());
            for (int ci : chosen) w.push_back(prob.candidates[ci]);
            if (!emit(w)) {
                status = SearchStatus::Found;
                stop = true;
            }
            return;
        }
        for (int ci : by_ring[r]) {
            bool clash = false;
            for (Cell c : cand_cells[ci])
                if (used.count(pack_cell(c))) {
                    clash = true;
                    break;
                }
            if (clash) continue;
            for (Cell c : cand_cells[ci]) used.insert(pack_cell(c));
            for (int rr : covers[ci]) covered[rr] = 1;
            chosen.push_back(ci);
            dfs();
            chosen.pop_back();
            for (int rr : covers[ci]) covered[rr] = 0;
            for (Cell c : cand_cells[ci]) used.erase(pack_cell(c));
            if (stop) return;
        }
    }
};

}  // namespace

SearchStatus enumerate_surrounds(const SurroundProblem& p, const CoronaOptions& opt,
                                 const std::function<bool(const std::vector<Isometry>&)>& emit,
                                 std::int64_t* nodes_used) {
    SurroundSearch search(p, opt, emit);
    if (search.prepare()) search.dfs();
    if (nodes_used) *nodes_used = search.nodes;
    return search.status;
}

namespace {

SurroundOutcome sat_surround(const SurroundProblem& p, const CoronaOptions& opt) {
    SurroundOutcome out;
    GridKind g = p.shape.grid;
    int m = (int)p.candidates.size();
    std::vector<std::vector<Cell>> cand_cells(m);
    std::unordered_map<std::uint64_t, std::vector<int>, U64Hash> at_cell;
    for (int i = 0; i < m; ++i) {
        cand_cells[i] = realize(g, p.shape.cells, p.candidates[i]);
        std::sort(cand_cells[i].begin(), cand_cells[i].end());
        for (Cell c : cand_cells[i]) at_cell[pack_cell(c)].push_back(i);
    }

    sat::Cnf f;
    f.num_vars = m;
    std::unordered_set<std::uint64_t, U64Hash> pair_seen;
    for (int i = 0; i < m; ++i) {
        for (Cell c : cand_cells[i]) {
            for (int j : at_cell[pack_cell(c)]) {
                if (j <= i) continue;
                if (pair_seen.insert((std::uint64_t(i) << 32) | std::uint32_t(j)).second)
                    f.add({-(i + 1), -(j + 1)});
            }
        }
    }
    for (Cell r : p.ring) {
        auto it = at_cell.find(pack_cell(r));
        if (it == at_cell.end()) {
            out.status = SearchStatus::None;  // uncoverable ring cell
            return out;
        }
        sat::Clause c;
        for (int i : it->second) c.push_back(i + 1);
        f.add(c);
    }

    for (int round = 0; round < opt.max_refinements; ++round) {
        auto r = sat::solve_with_env(f, opt.conflict_budget);
        out.nodes += r.stats.conflicts;
        if (r.status == sat::Status::Budget) {
            out.status = SearchStatus::Budget;
            return out;
        }
        if (r.status == sat::Status::Unsat) {
            out.status = SearchStatus::None;
            return out;
        }
        std::vector<int> used;
        for (int i = 0; i < m; ++i)
            if (r.model[i + 1]) used.push_back(i);
        std::vector<Cell> all(p.center);
        for (int i : used) all.insert(all.end(), cand_cells[i].begin(), cand_cells[i].end());
        std::sort(all.begin(), all.end());
        if (opt.allow_holes || is_topological_disk(g, all)) {
            out.status = SearchStatus::Found;
            for (int i : used) out.surround.push_back(p.candidates[i]);
            return out;
        }
        std::vector<int> lits;
        for (int i : used) lits.push_back(i + 1);
        sat::add_blocking_clause(f, lits);
    }
    out.status = SearchStatus::Budget;
    return out;
}

}  // namespace

SurroundOutcome find_surround(const SurroundProblem& p, SurroundEngine engine,
                              const CoronaOptions& opt) {
    if (engine == SurroundEngine::Sat) return sat_surround(p, opt);
    SurroundOutcome out;
    SearchStatus st = enumerate_surrounds(
        p, opt,
        [&](const std::vector<Isometry>& w) {
            out.surround = w;
            return false;
        },
        &out.nodes);
    out.status = st;
    return out;
}

NPatchEncoding encode_n_patch(const Polyform& s, int n, const CoronaOptions& opt) {
    if (n < 1) throw std::invalid_argument("corona count must be at least 1");
    GridKind g = s.grid;
    NPatchEncoding enc;
    enc.n = n;

    const std::vector<Cell>& center = s.cells;
    CellSet center_set;
    for (Cell c : center) center_set.insert(pack_cell(c));

    // candidate closure: ring 1 touches the center, ring k touches some ring
    // k-1 placement; complete for every placement usable at corona <= n
    std::unordered_map<std::vector<Cell>, int, CellsHash> index_of;
    std::vector<std::vector<Cell>> cand_cells;
    std::vector<int> prev_ring;
    {
        auto first = placements_touching(s, center, opt.mode);
        for (const Isometry& iso : first) {
            auto cells = realize(g, s.cells, iso);
            std::sort(cells.begin(), cells.end());
            int id = (int)enc.candidates.size();
            index_of.emplace(cells, id);
            cand_cells.push_back(std::move(cells));
            enc.candidates.push_back(iso);
            prev_ring.push_back(id);
        }
    }
    for (int ring = 2; ring <= n; ++ring) {
        std::map<std::vector<Cell>, Isometry> pending;
        for (int qi : prev_ring) {
            auto more = placements_touching(s, cand_cells[qi], opt.mode);
            for (const Isometry& iso : more) {
                auto cells = realize(g, s.cells, iso);
                std::sort(cells.begin(), cells.end());
                if (index_of.count(cells)) continue;
                bool hits_center = false;
                for (Cell c : cells)
                    if (center_set.count(pack_cell(c))) {
                        hits_center = true;
                        break;
                    }
                if (hits_center) continue;
                pending.emplace(std::move(cells), iso);
            }
        }
        prev_ring.clear();
        for (auto& kv : pending) {
            int id = (int)enc.candidates.size();
            index_of.emplace(kv.first, id);
            cand_cells.push_back(kv.first);
            enc.candidates.push_back(kv.second);
            prev_ring.push_back(id);
        }
    }

    int m = (int)enc.candidates.size();
    if ((std::int64_t)m * (n + 1) > 4'000'000)
        throw std::runtime_error("n-patch encoding too large: " + std::to_string(m) +
                                 " candidates for " + std::to_string(n) + " coronas");
    enc.cnf.num_vars = m * (n + 1);

    std::unordered_map<std::uint64_t, std::vector<int>, U64Hash> at_cell;
    for (int i = 0; i < m; ++i)
        for (Cell c : cand_cells[i]) at_cell[pack_cell(c)].push_back(i);

    // mode halo of the center: which candidates touch corona 0
    CellSet center_halo;
    {
        std::vector<Cell> h;
        for (Cell c : center) cell_neighbors(g, c, opt.mode, h);
        for (Cell c : h) center_halo.insert(pack_cell(c));
    }
    std::vector<char> touches_center(m, 0);
    for (int i = 0; i < m; ++i)
        for (Cell c : cand_cells[i])
            if (center_halo.count(pack_cell(c))) {
                touches_center[i] = 1;
                break;
            }

    // pairwise overlap exclusion on the used variables
    std::unordered_set<std::uint64_t, U64Hash> pair_seen;
    for (int i = 0; i < m; ++i)
        for (Cell c : cand_cells[i])
            for (int j : at_cell[pack_cell(c)]) {
                if (j <= i) continue;
                if (pair_seen.insert((std::uint64_t(i) << 32) | std::uint32_t(j)).second)
                    enc.cnf.add({-enc.u(i), -enc.u(j)});
            }

    // used iff exactly one corona level
    for (int i = 0; i < m; ++i) {
        sat::Clause some{-enc.u(i)};
        for (int k = 1; k <= n; ++k) {
            enc.cnf.add({-enc.level(i, k), enc.u(i)});
            some.push_back(enc.level(i, k));
        }
        enc.cnf.add(some);
        std::vector<int> lvars;
        for (int k = 1; k <= n; ++k) lvars.push_back(enc.level(i, k));
        int before = enc.cnf.num_vars;
        for (auto& c : sat::at_most_one_auto(lvars, enc.cnf.num_vars)) enc.cnf.add(c);
        enc.aux_vars += enc.cnf.num_vars - before;
    }

    // candidates touching each other in the adjacency mode, without overlap
    std::vector<std::vector<int>> touch(m);
    {
        std::vector<Cell> h;
        for (int i = 0; i < m; ++i) {
            h.clear();
            for (Cell c : cand_cells[i]) cell_neighbors(g, c, opt.mode, h);
            std::vector<int> js;
            for (Cell c : h) {
                auto it = at_cell.find(pack_cell(c));
                if (it == at_cell.end()) continue;
                for (int j : it->second) {
                    if (j == i) continue;
                    std::uint64_t key = i < j ? (std::uint64_t(i) << 32) | std::uint32_t(j)
                                              : (std::uint64_t(j) << 32) | std::uint32_t(i);
                    if (pair_seen.count(key)) continue;  // overlapping, not touching
                    js.push_back(j);
                }
            }
            std::sort(js.begin(), js.end());
            js.erase(std::unique(js.begin(), js.end()), js.end());
            touch[i] = std::move(js);
        }
    }

    // corona adjacency: level k touches level k-1 and nothing at level <= k-2
    for (int i = 0; i < m; ++i) {
        if (!touches_center[i]) enc.cnf.add({-enc.level(i, 1)});
        for (int k = 2; k <= n; ++k) {
            if (touches_center[i]) {
                enc.cnf.add({-enc.level(i, k)});
                continue;
            }
            sat::Clause c{-enc.level(i, k)};
            for (int j : touch[i]) c.push_back(enc.level(j, k - 1));
            enc.cnf.add(c);
            for (int j : touch[i])
                for (int lev = 1; lev <= k - 2; ++lev)
                    enc.cnf.add({-enc.level(i, k), -enc.level(j, lev)});
        }
    }

    // surround coverage; the vertex ring of the center must be corona 1
    bool impossible = false;
    for (Cell r : vertex_ring(g, center)) {
        auto it = at_cell.find(pack_cell(r));
        if (it == at_cell.end()) {
            impossible = true;
            break;
        }
        sat::Clause c;
        for (int j : it->second) c.push_back(enc.level(j, 1));
        enc.cnf.add(c);
    }
    if (impossible) {
        // an uncoverable cell next to the center: no surround exists. Emit a
        // contradiction rather than an empty clause.
        enc.cnf.add({enc.u(0)});
        enc.cnf.add({-enc.u(0)});
        return enc;
    }

    // a copy at corona k-1 < n has its whole vertex ring inside corona <= k
    std::vector<Cell> h;
    for (int i = 0; i < m; ++i) {
        h.clear();
        for (Cell c : cand_cells[i]) cell_neighbors(g, c, AdjacencyMode::Vertex, h);
        std::sort(h.begin(), h.end());
        h.erase(std::unique(h.begin(), h.end()), h.end());
        for (int lev = 1; lev <= n - 1; ++lev) {
            for (Cell c : h) {
                if (sorted_contains(cand_cells[i], c)) continue;
                if (center_set.count(pack_cell(c))) continue;
                sat::Clause cl{-enc.level(i, lev)};
                auto it = at_cell.find(pack_cell(c));
                if (it != at_cell.end())
                    for (int j : it->second)
                        for (int jp = 1; jp <= lev + 1; ++jp) cl.push_back(enc.level(j, jp));
                enc.cnf.add(cl);
            }
        }
    }
    return enc;
}

NPatchOutcome solve_n_patch(const Polyform& s, int n, const CoronaOptions& opt) {
    NPatchOutcome out;
    if (!opt.allow_holes && !is_topological_disk(s.grid, s.cells)) {
        out.status = SearchStatus::None;  // a 0-patch must already be a disk
        return out;
    }
    NPatchEncoding enc = encode_n_patch(s, n, opt);
    int m = (int)enc.candidates.size();

    for (int round = 0; round < opt.max_refinements; ++round) {
        out.refinements = round;
        auto r = sat::solve_with_env(enc.cnf, opt.conflict_budget);
        out.work += r.stats.conflicts;
        if (r.status == sat::Status::Budget) {
            out.status = SearchStatus::Budget;
            return out;
        }
        if (r.status == sat::Status::Unsat) {
            out.status = SearchStatus::None;
            return out;
        }
        Patch patch;
        patch.shape = s;
        patch.placements.push_back({0, {0, 0}});
        patch.corona.push_back(0);
        for (int i = 0; i < m; ++i) {
            if (!r.model[enc.u(i)]) continue;
            int lev = 0;
            for (int k = 1; k <= n; ++k)
                if (r.model[enc.level(i, k)]) lev = k;
            patch.placements.push_back(enc.candidates[i]);
            patch.corona.push_back(lev);
        }
        VerifyReport rep = verify_patch(patch, opt.mode, opt.allow_holes);
        if (rep.ok) {
            out.status = SearchStatus::Found;
            out.patch = std::move(patch);
            return out;
        }
        if (!rep.hole_failure)
            throw std::logic_error("n-patch encoding produced an invalid patch: " + rep.error);
        // block the labeled prefix up to the failing level; every valid patch
        // has disk prefixes, so no solution is lost
        std::vector<int> lits;
        for (std::size_t pi = 1; pi < patch.placements.size(); ++pi) {
            if (patch.corona[pi] > rep.fail_level) continue;
            auto it = std::find(enc.candidates.begin(), enc.candidates.end(),
                                patch.placements[pi]);
            int idx = (int)(it - enc.candidates.begin());
            lits.push_back(enc.level(idx, patch.corona[pi]));
        }
        sat::add_blocking_clause(enc.cnf, lits);
    }
    out.status = SearchStatus::Budget;
    return out;
}

NPatchOutcome backtrack_n_patch(const Polyform& s, int n, const CoronaOptions& opt) {
    if (n < 1) throw std::invalid_argument("corona count must be at least 1");
    NPatchOutcome out;
    if (!opt.allow_holes && !is_topological_disk(s.grid, s.cells)) {
        out.status = SearchStatus::None;  // a 0-patch must already be a disk
        return out;
    }
    Patch patch;
    patch.shape = s;
    patch.placements.push_back({0, {0, 0}});
    patch.corona.push_back(0);

    std::int64_t remaining = opt.node_budget;
    bool budget_hit = false;

    std::function<bool(int)> grow = [&](int depth) -> bool {
        if (depth == n) return true;
        SurroundProblem prob =
            make_surround_problem(s, patch_cells(s, patch.placements), opt.mode);
        CoronaOptions sub = opt;
        sub.node_budget = remaining;
        std::int64_t used = 0;
        bool found = false;
        SearchStatus st = enumerate_surrounds(
            prob, sub,
            [&](const std::vector<Isometry>& w) {
                std::size_t base = patch.placements.size();
                for (const Isometry& iso : w) {
                    patch.placements.push_back(iso);
                    patch.corona.push_back(depth + 1);
                }
                if (grow(depth + 1)) {
                    found = true;
                    return false;
                }
                patch.placements.resize(base);
                patch.corona.resize(base);
                return !budget_hit;
            },
            &used);
        out.work += used;
        if (remaining >= 0) remaining = std::max<std::int64_t>(0, remaining - used);
        if (st == SearchStatus::Budget) budget_hit = true;
        return found;
    };

    bool ok = grow(0);
    if (ok) {
        out.status = SearchStatus::Found;
        out.patch = std::move(patch);
    } else {
        out.status = budget_hit ? SearchStatus::Budget : SearchStatus::None;
    }
    return out;
}

HeeschResult heesch_number(const Polyform& s, int max_corona, SurroundEngine engine,
                           const CoronaOptions& opt) {
    if (max_corona < 1) throw std::invalid_argument("max_corona must be at least 1");
    if (!opt.allow_holes && !is_topological_disk(s.grid, s.cells))
        throw std::invalid_argument("shape is not a topological disk");
    HeeschResult res;
    res.shape = s;
    res.certificate.shape = s;
    res.certificate.placements.push_back({0, {0, 0}});
    res.certificate.corona.push_back(0);

    for (int n = 1; n <= max_corona; ++n) {
        NPatchOutcome o = engine == SurroundEngine::Sat ? solve_n_patch(s, n, opt)
                                                        : backtrack_n_patch(s, n, opt);
        if (o.status == SearchStatus::Found) {
            res.certificate = std::move(o.patch);
            res.heesch_number = n;
            continue;
        }
        res.heesch_number = n - 1;
        res.status =
            o.status == SearchStatus::None ? HeeschStatus::NonTiler : HeeschStatus::Budget;
        return res;
    }
    res.status = HeeschStatus::Budget;
    res.heesch_number = max_corona;
    return res;
}

namespace {

// verifier-local topology: a finite union of grid cells is a disk iff it is
// edge-connected and its closed-complex Euler characteristic V - E + F is 1
bool verifier_disk(GridKind g, const std::vector<Cell>& cells) {
    if (cells.empty()) return false;
    CellSet in;
    for (Cell c : cells) in.insert(pack_cell(c));
    std::vector<Cell> stack{cells[0]};
    CellSet seen{pack_cell(cells[0])};
    std::vector<Cell> nbrs;
    while (!stack.empty()) {
        Cell c = stack.back();
        stack.pop_back();
        nbrs.clear();
        cell_neighbors(g, c, AdjacencyMode::Edge, nbrs);
        for (Cell nb : nbrs) {
            if (!in.count(pack_cell(nb)) || seen.count(pack_cell(nb))) continue;
            seen.insert(pack_cell(nb));
            stack.push_back(nb);
        }
    }
    if (seen.size() != in.size()) return false;

    std::vector<std::uint64_t> verts;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;
    std::vector<IVec2> poly;
    for (Cell c : cells) {
        poly.clear();
        cell_vertices(g, c, poly);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            IVec2 a = poly[i];
            IVec2 b = poly[(i + 1) % poly.size()];
            std::uint64_t pa = pack_cell(a), pb = pack_cell(b);
            verts.push_back(pa);
            edges.emplace_back(std::min(pa, pb), std::max(pa, pb));
        }
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    std::int64_t chi =
        (std::int64_t)verts.size() - (std::int64_t)edges.size() + (std::int64_t)cells.size();
    return chi == 1;
}

VerifyReport verify_fail(const std::string& msg, int level = -1, bool hole = false) {
    VerifyReport r;
    r.ok = false;
    r.error = msg;
    r.fail_level = level;
    r.hole_failure = hole;
    return r;
}

}  // namespace

VerifyReport verify_patch(const Patch& p, AdjacencyMode mode, bool allow_holes) {
    const Polyform& s = p.shape;
    GridKind g = s.grid;
    if (p.placements.empty()) return verify_fail("patch has no placements");
    if (p.corona.size() != p.placements.size())
        return verify_fail("corona indices missing or mismatched");

    int n = 0;
    for (int k : p.corona) {
        if (k < 0) return verify_fail("negative corona index");
        n = std::max(n, k);
    }
    std::vector<std::vector<std::size_t>> by_level(n + 1);
    for (std::size_t i = 0; i < p.placements.size(); ++i)
        by_level[p.corona[i]].push_back(i);
    if (by_level[0].size() != 1) return verify_fail("corona 0 must be a single copy");
    for (int k = 0; k <= n; ++k)
        if (by_level[k].empty())
            return verify_fail("corona " + std::to_string(k) + " is empty", k);

    std::vector<std::vector<Cell>> realized(p.placements.size());
    CellSet taken;
    for (std::size_t i = 0; i < p.placements.size(); ++i) {
        realized[i] = realize(g, s.cells, p.placements[i]);
        std::sort(realized[i].begin(), realized[i].end());
        for (Cell c : realized[i])
            if (!taken.insert(pack_cell(c)).second)
                return verify_fail("placements overlap", p.corona[i]);
    }

    // candidate bound: every copy stays well inside the search window
    {
        int diam = cells_diameter_key(s.cells);
        std::int64_t bound = (std::int64_t)(n + 1) * (diam + 2 * translation_scale(g));
        const std::vector<Cell>& c0 = realized[by_level[0][0]];
        for (std::size_t i = 0; i < realized.size(); ++i) {
            for (Cell c : realized[i]) {
                std::int64_t best = -1;
                for (Cell z : c0) {
                    std::int64_t d = chebyshev(c, z);
                    if (best < 0 || d < best) best = d;
                }
                if (best > bound)
                    return verify_fail("placement outside the candidate bound", p.corona[i]);
            }
        }
    }

    std::vector<Cell> prev;  // P_{k-1} cells, sorted
    CellSet prev_set;
    std::vector<Cell> nbrs;
    for (int k = 0; k <= n; ++k) {
        std::vector<Cell> level_cells = prev;
        for (std::size_t i : by_level[k])
            level_cells.insert(level_cells.end(), realized[i].begin(), realized[i].end());
        std::sort(level_cells.begin(), level_cells.end());

        if (k > 0) {
            for (std::size_t i : by_level[k]) {
                bool touches = false;
                for (Cell c : realized[i]) {
                    nbrs.clear();
                    cell_neighbors(g, c, mode, nbrs);
                    for (Cell nb : nbrs)
                        if (prev_set.count(pack_cell(nb))) {
                            touches = true;
                            break;
                        }
                    if (touches) break;
                }
                if (!touches)
                    return verify_fail("corona " + std::to_string(k) +
                                           " copy does not touch the patch below",
                                       k);
            }
            CellSet level_set;
            for (Cell c : level_cells) level_set.insert(pack_cell(c));
            for (Cell c : prev) {
                nbrs.clear();
                cell_neighbors(g, c, AdjacencyMode::Vertex, nbrs);
                for (Cell nb : nbrs)
                    if (!level_set.count(pack_cell(nb)))
                        return verify_fail(
                            "corona " + std::to_string(k) + " leaves the patch below exposed", k);
            }
        }

        if (!allow_holes && !verifier_disk(g, level_cells))
            return verify_fail("patch through corona " + std::to_string(k) +
                                   " is not a topological disk",
                               k, true);

        prev = std::move(level_cells);
        prev_set.clear();
        for (Cell c : prev) prev_set.insert(pack_cell(c));
    }

    VerifyReport r;
    r.ok = true;
    return r;
}

}  // namespace tessella
