#include "tessella/isohedral.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "tessella/geom.hpp"

namespace tessella {
namespace {

std::uint64_t pack_cell(Cell c) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.x)) << 32) |
           static_cast<std::uint32_t>(c.y);
}

IVec2 step_vec(char d) {
    switch (d) {
        case 'E': return {1, 0};
        case 'N': return {0, 1};
        case 'W': return {-1, 0};
        case 'S': return {0, -1};
    }
    throw std::logic_error("bad boundary letter");
}

char complement_letter(char d) {
    switch (d) {
        case 'E': return 'W';
        case 'W': return 'E';
        case 'N': return 'S';
        case 'S': return 'N';
    }
    throw std::logic_error("bad boundary letter");
}

IVec2 word_displacement(const std::string& w) {
    IVec2 v{0, 0};
    for (char d : w) v = v + step_vec(d);
    return v;
}

// floor division that rounds toward -inf for any sign of den
std::int64_t floordiv(std::int64_t num, std::int64_t den) {
    std::int64_t q = num / den, r = num % den;
    if (r != 0 && ((r < 0) != (den < 0))) --q;
    return q;
}

std::int64_t cross64(IVec2 a, IVec2 b) {
    return static_cast<std::int64_t>(a.x) * b.y - static_cast<std::int64_t>(a.y) * b.x;
}

// canonical representative of v modulo the lattice spanned by t1, t2
IVec2 lattice_residue(IVec2 v, IVec2 t1, IVec2 t2, std::int64_t det) {
    std::int64_t a = floordiv(cross64(v, t2), det);
    std::int64_t b = floordiv(cross64(t1, v), det);
    return {static_cast<std::int32_t>(v.x - a * t1.x - b * t2.x),
            static_cast<std::int32_t>(v.y - a * t1.y - b * t2.y)};
}

bool isometry_less(const Isometry& a, const Isometry& b) {
    if (a.point != b.point) return a.point < b.point;
    return a.t < b.t;
}

}  // namespace

std::optional<BoundaryFactorization> translation_criterion(const Polyform& s) {
    if (s.grid != GridKind::Square)
        throw std::invalid_argument("translation criterion is defined on the square grid only");
    if (!is_topological_disk(s.grid, s.cells)) return std::nullopt;

    const std::string w = boundary_word(s);
    const int len = static_cast<int>(w.size());
    if (len % 2 != 0) return std::nullopt;
    const int half = len / 2;
    const std::string doubled = w + w;

    // X-hat (reverse complement) sits half a turn later in the cyclic word:
    // matches(off, la) checks doubled[base+off+half .. ) == hat of the factor
    // starting at base+off with length la
    for (int rot = 0; rot < len; ++rot) {
        auto mirror_ok = [&](int off, int flen) {
            for (int j = 0; j < flen; ++j)
                if (doubled[rot + half + off + j] !=
                    complement_letter(doubled[rot + off + flen - 1 - j]))
                    return false;
            return true;
        };
        for (int la = 0; la <= half; ++la) {
            for (int lb = 0; lb + la <= half; ++lb) {
                int lc = half - la - lb;
                if ((la == 0) + (lb == 0) + (lc == 0) > 1) continue;
                if (!mirror_ok(0, la) || !mirror_ok(la, lb) || !mirror_ok(la + lb, lc)) continue;
                BoundaryFactorization f;
                f.a = doubled.substr(rot, la);
                f.b = doubled.substr(rot + la, lb);
                f.c = doubled.substr(rot + la + lb, lc);
                f.t1 = word_displacement(f.a) + word_displacement(f.b);
                f.t2 = word_displacement(f.b) + word_displacement(f.c);
                if (cross64(f.t1, f.t2) == 0) continue;
                return f;
            }
        }
    }
    return std::nullopt;
}

PeriodicCheck verify_periodic(const PeriodicCertificate& cert) {
    const Polyform& s = cert.patch.shape;
    const GridKind g = s.grid;
    PeriodicCheck out;
    if (cert.patch.placements.empty()) {
        out.diagnostic = "certificate has no placements";
        return out;
    }
    const std::int64_t det = cross64(cert.t1, cert.t2);
    if (det == 0) {
        out.diagnostic = "translations are linearly dependent";
        return out;
    }
    const std::int64_t expected = std::llabs(det) * species_count(g);
    const std::int64_t total =
        static_cast<std::int64_t>(cert.patch.placements.size()) * static_cast<std::int64_t>(s.cells.size());
    if (total != expected) {
        out.diagnostic = "patch covers " + std::to_string(total) + " cells but a fundamental domain has " +
                         std::to_string(expected);
        return out;
    }

    const int scale = translation_scale(g);
    const IVec2 kt1{cert.t1.x * scale, cert.t1.y * scale};
    const IVec2 kt2{cert.t2.x * scale, cert.t2.y * scale};
    const std::int64_t kdet = cross64(kt1, kt2);

    std::unordered_map<std::uint64_t, Cell> seen;
    seen.reserve(static_cast<std::size_t>(total) * 2);
    for (const Isometry& pl : cert.patch.placements) {
        for (Cell c : realize(g, s.cells, pl)) {
            IVec2 rep = lattice_residue({c.x, c.y}, kt1, kt2, kdet);
            auto [it, fresh] = seen.emplace(pack_cell({rep.x, rep.y}), c);
            if (!fresh) {
                out.diagnostic = "cells (" + std::to_string(it->second.x) + "," +
                                 std::to_string(it->second.y) + ") and (" + std::to_string(c.x) + "," +
                                 std::to_string(c.y) + ") coincide modulo the lattice";
                return out;
            }
        }
    }
    out.ok = true;
    return out;
}

namespace {

// propagation of a fixed (possibly partial) surround rule: every copy must be
// surrounded the way the center is.  Labels of symmetric shapes are ambiguous
// (any stabilizer variant realizes the same cells but propagates differently),
// so copy creation is a choice point searched depth-first.  In feasibility
// mode the first conflict-free assignment wins; in extraction mode it must
// also yield a verified translation lattice.
struct Propagation {
    bool extract = true;
    GridKind g{};
    const Polyform* s = nullptr;
    const std::vector<Isometry>* surround = nullptr;
    std::vector<Isometry> stab;
    int depth = 0;
    std::int64_t node_cap = 0;
    const IsoOptions* opt = nullptr;

    struct CopyRec {
        Isometry label;
        int dist;
        std::vector<Cell> cells;
    };
    std::vector<CopyRec> copies;
    std::unordered_map<std::uint64_t, int> occ;
    std::int64_t nodes = 0;
    int finishes = 0;
    bool truncated = false;
    bool conflict_free_seen = false;
    std::optional<PeriodicCertificate> found;

    // Labels that differ by a stabilizer element permuting the surround's
    // cell-set family grow identical geometry, so only coset representatives
    // are worth branching on.
    std::vector<Isometry> label_reps;

    void compute_label_reps() {
        std::set<std::vector<Cell>> family;
        for (const Isometry& gi : *surround) {
            std::vector<Cell> cells = realize(g, s->cells, gi);
            std::sort(cells.begin(), cells.end());
            family.insert(std::move(cells));
        }
        std::vector<Isometry> keeps;
        for (const Isometry& sigma : stab) {
            bool preserves = true;
            for (const Isometry& gi : *surround) {
                std::vector<Cell> cells = realize(g, s->cells, compose(g, sigma, gi));
                std::sort(cells.begin(), cells.end());
                if (!family.count(cells)) {
                    preserves = false;
                    break;
                }
            }
            if (preserves) keeps.push_back(sigma);
        }
        std::set<std::pair<int, std::pair<int, int>>> covered;
        auto key = [](const Isometry& i) {
            return std::make_pair(i.point, std::make_pair(i.t.x, i.t.y));
        };
        for (const Isometry& sigma : stab) {
            if (covered.count(key(sigma))) continue;
            label_reps.push_back(sigma);
            for (const Isometry& tau : keeps) covered.insert(key(compose(g, sigma, tau)));
        }
    }

    bool run() {
        compute_label_reps();
        copies.push_back({Isometry{0, {0, 0}}, 0, s->cells});
        for (Cell c : s->cells) occ.emplace(pack_cell(c), 0);
        return expand(0);
    }

    bool expand(std::size_t qi) {
        if (truncated) return false;
        if (qi == copies.size()) return finish();
        if (copies[qi].dist >= depth) return expand(qi + 1);
        return expand_step(qi, 0);
    }

    bool expand_step(std::size_t qi, std::size_t gi) {
        if (gi == surround->size()) return expand(qi + 1);
        const Isometry target = compose(g, copies[qi].label, (*surround)[gi]);
        std::vector<Cell> cells = realize(g, s->cells, target);

        int hit = -1;
        std::size_t hits = 0;
        for (Cell c : cells) {
            auto it = occ.find(pack_cell(c));
            if (it == occ.end()) continue;
            ++hits;
            if (hit == -1) hit = it->second;
            else if (hit != it->second) return false;  // straddles two copies
        }
        if (hits == cells.size()) {
            // cell count matches and every cell lands in one copy: same set
            return copies[hit].cells.size() == cells.size() && expand_step(qi, gi + 1);
        }
        if (hits != 0) return false;  // partial overlap

        if (truncated) return false;
        if (static_cast<int>(copies.size()) >= opt->max_copies) {
            truncated = true;
            return false;
        }
        const int dist = copies[qi].dist + 1;
        for (const Isometry& sigma : label_reps) {
            if (++nodes > node_cap) {
                truncated = true;
                return false;
            }
            copies.push_back({compose(g, target, sigma), dist, cells});
            for (Cell c : cells) occ.emplace(pack_cell(c), static_cast<int>(copies.size()) - 1);
            if (expand_step(qi, gi + 1)) return true;
            for (Cell c : cells) occ.erase(pack_cell(c));
            copies.pop_back();
        }
        return false;
    }

    // conflict-free out to the requested depth: hunt for two independent
    // translations among equal-point-index copies and verify the domain
    bool finish() {
        conflict_free_seen = true;
        if (!extract) return true;
        if (++finishes > opt->max_labelings) {
            truncated = true;  // stop rather than thrash through relabelings
            return false;
        }

        std::map<int, std::vector<IVec2>> by_point;
        for (const CopyRec& c : copies) by_point[c.label.point].push_back(c.label.t);
        std::vector<IVec2> cands;
        for (auto& [p, ts] : by_point) {
            if (ts.size() < 2) continue;
            std::sort(ts.begin(), ts.end());
            for (std::size_t i = 1; i < ts.size(); ++i) {
                IVec2 d = ts[i] - ts[0];
                if (!(d == IVec2{0, 0})) cands.push_back(d);
            }
        }
        std::sort(cands.begin(), cands.end(), [](IVec2 a, IVec2 b) {
            int ca = std::max(std::abs(a.x), std::abs(a.y));
            int cb = std::max(std::abs(b.x), std::abs(b.y));
            if (ca != cb) return ca < cb;
            return a < b;
        });
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

        int tried = 0;
        for (std::size_t i = 0; i < cands.size(); ++i) {
            for (std::size_t j = i + 1; j < cands.size(); ++j) {
                const IVec2 t1 = cands[i], t2 = cands[j];
                const std::int64_t det = cross64(t1, t2);
                if (det == 0) continue;
                if (++tried > opt->max_translation_pairs) return false;
                if (auto cert = assemble(t1, t2, det)) {
                    found = std::move(cert);
                    return true;
                }
            }
        }
        return false;
    }

    std::optional<PeriodicCertificate> assemble(IVec2 t1, IVec2 t2, std::int64_t det) {
        const std::int64_t domain_cells = std::llabs(det) * species_count(g);
        if (domain_cells % static_cast<std::int64_t>(s->cells.size()) != 0) return std::nullopt;

        const int scale = translation_scale(g);
        const IVec2 kt1{t1.x * scale, t1.y * scale};
        const IVec2 kt2{t2.x * scale, t2.y * scale};
        const std::int64_t kdet = cross64(kt1, kt2);

        std::vector<const CopyRec*> ordered;
        ordered.reserve(copies.size());
        for (const CopyRec& c : copies) ordered.push_back(&c);
        std::sort(ordered.begin(), ordered.end(), [](const CopyRec* a, const CopyRec* b) {
            return isometry_less(a->label, b->label);
        });

        // translation classes are classes of placements, i.e. of cell sets:
        // slide each copy into the fundamental parallelogram and dedup
        std::map<std::vector<Cell>, Isometry> reps;
        for (const CopyRec* c : ordered) {
            IVec2 anchor{INT32_MAX, INT32_MAX};
            for (Cell cc : c->cells)
                if (IVec2{cc.x, cc.y} < anchor) anchor = {cc.x, cc.y};
            IVec2 rep = lattice_residue(anchor, kt1, kt2, kdet);
            IVec2 dkey = rep - anchor;  // a key-space lattice vector
            std::vector<Cell> norm;
            norm.reserve(c->cells.size());
            for (Cell cc : c->cells) norm.push_back({cc.x + dkey.x, cc.y + dkey.y});
            std::sort(norm.begin(), norm.end());
            Isometry pl{c->label.point, c->label.t + IVec2{dkey.x / scale, dkey.y / scale}};
            reps.emplace(std::move(norm), pl);
        }
        if (static_cast<std::int64_t>(reps.size()) * static_cast<std::int64_t>(s->cells.size()) !=
            domain_cells)
            return std::nullopt;

        PeriodicCertificate cert;
        cert.patch.shape = *s;
        for (auto& [key, iso] : reps) cert.patch.placements.push_back(iso);
        cert.patch.corona.assign(cert.patch.placements.size(), 0);
        cert.t1 = t1;
        cert.t2 = t2;
        cert.classes = 1;
        if (!verify_periodic(cert).ok) return std::nullopt;
        return cert;
    }
};

struct CertPass {
    bool found = false;
    bool unresolved = false;
    PeriodicCertificate cert;
};

// Builds the center's surround cell by cell (exact cover of the ring) and
// prunes each partial surround with a shallow feasibility propagation: a
// conflict under a partial rule persists under any completion, so pruning is
// sound and NONE stays definitive.  Complete surrounds run the full-depth
// propagation with translation extraction.
struct UniformSearch {
    const Polyform* s = nullptr;
    GridKind g{};
    int depth = 0;
    const IsoOptions* opt = nullptr;

    SurroundProblem prob;
    std::vector<Isometry> stab;
    std::vector<std::vector<Cell>> cand_cells;
    std::vector<std::vector<int>> covers;  // ring position -> candidate indices
    std::unordered_map<std::uint64_t, int> ring_pos;

    std::vector<Isometry> chosen;
    std::set<std::uint64_t> used;  // cells of center + chosen
    std::int64_t nodes = 0;
    int leaves = 0;
    std::int64_t leaf_budget = 0;  // label-node allowance per completed surround
    bool stopped = false;
    bool unresolved = false;
    bool leaf_truncated = false;
    std::optional<PeriodicCertificate> found;

    void prepare() {
        stab = set_stabilizer(g, s->cells);
        std::sort(stab.begin(), stab.end(), isometry_less);
        // translation-built surrounds certify far more often than mixed ones,
        // so try placements in point-group order (pure translations first)
        std::sort(prob.candidates.begin(), prob.candidates.end(), isometry_less);
        for (std::size_t i = 0; i < prob.ring.size(); ++i)
            ring_pos.emplace(pack_cell(prob.ring[i]), static_cast<int>(i));
        covers.resize(prob.ring.size());
        cand_cells.reserve(prob.candidates.size());
        for (std::size_t ci = 0; ci < prob.candidates.size(); ++ci) {
            cand_cells.push_back(realize(g, s->cells, prob.candidates[ci]));
            for (Cell c : cand_cells.back()) {
                auto it = ring_pos.find(pack_cell(c));
                if (it != ring_pos.end()) covers[it->second].push_back(static_cast<int>(ci));
            }
        }
        for (Cell c : prob.center) used.insert(pack_cell(c));
    }

    Propagation make_prop(int prop_depth, bool extract_mode) const {
        Propagation p;
        p.extract = extract_mode;
        p.g = g;
        p.s = s;
        p.surround = &chosen;
        p.stab = stab;
        p.depth = prop_depth;
        p.node_cap = extract_mode ? leaf_budget : opt->feasibility_nodes;
        p.opt = opt;
        return p;
    }

    bool dfs() {
        if (stopped) return false;
        if (++nodes > opt->surround_node_budget) {
            unresolved = true;
            stopped = true;
            return false;
        }

        int cell = -1;
        for (std::size_t i = 0; i < prob.ring.size(); ++i) {
            if (!used.count(pack_cell(prob.ring[i]))) {
                cell = static_cast<int>(i);
                break;
            }
        }
        if (cell < 0) return complete_surround();

        for (int ci : covers[cell]) {
            bool clash = false;
            for (Cell c : cand_cells[ci]) {
                if (used.count(pack_cell(c))) {
                    clash = true;
                    break;
                }
            }
            if (clash) continue;

            chosen.push_back(prob.candidates[ci]);
            for (Cell c : cand_cells[ci]) used.insert(pack_cell(c));

            Propagation feas = make_prop(std::min(depth, 2), false);
            bool alive = feas.run();
            // a truncated conflict proof cannot prune; exploring anyway keeps
            // the final verdict driven by leaf outcomes alone
            if (!alive && feas.truncated) alive = true;
            if (alive && dfs()) return true;

            for (Cell c : cand_cells[ci]) used.erase(pack_cell(c));
            chosen.pop_back();
            if (stopped) return false;
        }
        return false;
    }

    bool complete_surround() {
        if (++leaves > opt->max_surrounds) {
            unresolved = true;
            stopped = true;
            return false;
        }
        std::vector<Cell> patch(prob.center);
        for (const Isometry& iso : chosen)
            for (Cell c : realize(g, s->cells, iso)) patch.push_back(c);
        std::sort(patch.begin(), patch.end());
        if (!is_topological_disk(g, patch)) return false;

        Propagation prop = make_prop(depth, true);
        if (prop.run()) {
            found = std::move(prop.found);
            return true;
        }
        if (prop.truncated) leaf_truncated = true;
        if (prop.truncated || prop.conflict_free_seen) unresolved = true;
        return false;
    }
};

CertPass certificate_pass(const Polyform& s, int depth, const IsoOptions& opt) {
    // most completed surrounds disprove themselves within a few thousand label
    // nodes, and certifying ones tend to resolve even faster; start cheap and
    // only rerun with a bigger leaf allowance when a truncation hid the verdict
    std::int64_t budget = std::min(opt.max_label_nodes, std::max<std::int64_t>(4 * opt.feasibility_nodes, 1000));
    for (;;) {
        UniformSearch search;
        search.s = &s;
        search.g = s.grid;
        search.depth = depth;
        search.opt = &opt;
        search.leaf_budget = budget;
        search.prob = make_surround_problem(s, s.cells, opt.mode);
        search.prepare();
        CertPass pass;
        if (search.dfs()) {
            pass.found = true;
            pass.cert = std::move(*search.found);
            return pass;
        }
        pass.unresolved = search.unresolved;
        if (!search.leaf_truncated || budget >= opt.max_label_nodes) return pass;
        budget = std::min(budget * 8, opt.max_label_nodes);
    }
}

}  // namespace

CertOutcome isohedral_certificate(const Polyform& s, int depth, const IsoOptions& opt) {
    if (depth < 2) throw std::invalid_argument("propagation depth must be at least 2");
    CertOutcome out;
    int d = std::min(depth, 12);
    for (;;) {
        CertPass pass = certificate_pass(s, d, opt);
        out.depth_used = d;
        if (pass.found) {
            out.status = CertStatus::Found;
            out.certificate = std::move(pass.cert);
            return out;
        }
        if (!pass.unresolved) {
            out.status = CertStatus::None;
            return out;
        }
        if (d >= 12) break;
        d = std::min(d * 2, 12);
    }
    out.status = CertStatus::Inconclusive;
    return out;
}

namespace {

struct CompositePatch {
    std::vector<Cell> cells;  // sorted union
    std::vector<Isometry> parts;
};

// certificate for the composite rewritten as placements of the base shape
std::optional<PeriodicCertificate> recertify(const Polyform& s, const CompositePatch& patch,
                                             const PeriodicCertificate& comp_cert, GridKind g,
                                             int k) {
    PeriodicCertificate cert;
    cert.patch.shape = s;
    for (const Isometry& gamma : comp_cert.patch.placements)
        for (const Isometry& part : patch.parts)
            cert.patch.placements.push_back(compose(g, gamma, part));
    cert.patch.corona.assign(cert.patch.placements.size(), 0);
    cert.t1 = comp_cert.t1;
    cert.t2 = comp_cert.t2;
    cert.classes = k;
    if (!verify_periodic(cert).ok) return std::nullopt;
    return cert;
}

}  // namespace

struct IsoLadder::Impl {
    Polyform shape;
    int depth = 3;
    IsoOptions opt;
    int k_next = 1;
    bool frontier_partial = false;  // growth cap hit at some earlier round
    std::map<std::vector<Cell>, CompositePatch> level;

    void grow() {
        std::map<std::vector<Cell>, CompositePatch> next;
        for (const auto& [key, patch] : level) {
            for (const Isometry& ext :
                 placements_touching(shape, patch.cells, AdjacencyMode::Edge)) {
                if (static_cast<int>(next.size()) >= opt.max_patches_per_k) {
                    frontier_partial = true;
                    break;
                }
                std::vector<Cell> cells = patch.cells;
                for (Cell c : realize(shape.grid, shape.cells, ext)) cells.push_back(c);
                std::sort(cells.begin(), cells.end());
                std::vector<Cell> canon =
                    canonicalize(make_polyform(shape.grid, cells, shape.one_sided)).cells;
                if (next.count(canon)) continue;
                CompositePatch np{std::move(cells), patch.parts};
                np.parts.push_back(ext);
                next.emplace(std::move(canon), std::move(np));
            }
            if (static_cast<int>(next.size()) >= opt.max_patches_per_k) break;
        }
        level = std::move(next);
    }

    Round run_round() {
        Round out;
        const int k = k_next;
        if (k > 1) grow();
        out.incomplete = frontier_partial;
        for (const auto& [key, patch] : level) {
            if (!is_topological_disk(shape.grid, patch.cells)) continue;
            Polyform composite = make_polyform(shape.grid, patch.cells, shape.one_sided);

            if (shape.grid == GridKind::Square) {
                if (auto f = translation_criterion(composite)) {
                    PeriodicCertificate cert;
                    cert.patch.shape = shape;
                    cert.patch.placements = patch.parts;
                    cert.patch.corona.assign(patch.parts.size(), 0);
                    cert.t1 = f->t1;
                    cert.t2 = f->t2;
                    cert.classes = k;
                    if (verify_periodic(cert).ok) {
                        out.found = true;
                        out.certificate = std::move(cert);
                        break;
                    }
                }
            }

            CertOutcome co = isohedral_certificate(composite, depth, opt);
            if (co.status == CertStatus::Found) {
                if (auto cert = recertify(shape, patch, co.certificate, shape.grid, k)) {
                    out.found = true;
                    out.certificate = std::move(*cert);
                    break;
                }
                out.incomplete = true;  // composite tiles but rewrite failed
            } else if (co.status == CertStatus::Inconclusive) {
                out.incomplete = true;
            }
        }
        ++k_next;
        return out;
    }
};

IsoLadder::IsoLadder(Polyform s, int depth, IsoOptions opt) : impl_(std::make_unique<Impl>()) {
    impl_->shape = std::move(s);
    impl_->depth = depth;
    impl_->opt = opt;
    impl_->level.emplace(canonicalize(impl_->shape).cells,
                         CompositePatch{impl_->shape.cells, {Isometry{0, {0, 0}}}});
}

IsoLadder::~IsoLadder() = default;
IsoLadder::IsoLadder(IsoLadder&&) noexcept = default;
IsoLadder& IsoLadder::operator=(IsoLadder&&) noexcept = default;

int IsoLadder::next_k() const { return impl_->k_next; }

IsoLadder::Round IsoLadder::step() { return impl_->run_round(); }

IsohedralResult isohedral_number_upper(const Polyform& s, int max_k, int depth,
                                       const IsoOptions& opt) {
    if (max_k < 1) throw std::invalid_argument("max_k must be at least 1");
    IsohedralResult res;
    res.shape = s;

    IsoLadder ladder(s, depth, opt);
    for (int k = 1; k <= max_k; ++k) {
        IsoLadder::Round round = ladder.step();
        if (round.incomplete) res.complete = false;
        if (round.found) {
            res.status = k == 1 ? IsoStatus::Isohedral : IsoStatus::KIsohedral;
            res.k = k;
            res.certificate = std::move(round.certificate);
            return res;
        }
    }

    res.status = IsoStatus::NoneUpToBudget;
    res.k = max_k;
    return res;
}

}  // namespace tessella
