#include "tessella/classifier.hpp"

#include <atomic>
#include <exception>
#include <stdexcept>
#include <thread>
#include <utility>

namespace tessella {

namespace {

Patch bare_patch(const Polyform& s) {
    Patch p;
    p.shape = s;
    p.placements = {Isometry{0, {0, 0}}};
    p.corona = {0};
    return p;
}

Patch surround_patch(const Polyform& s, const std::vector<Isometry>& surround) {
    Patch p = bare_patch(s);
    for (const Isometry& iso : surround) {
        p.placements.push_back(iso);
        p.corona.push_back(1);
    }
    return p;
}

NPatchOutcome n_patch_step(const Polyform& s, int n, SurroundEngine engine,
                           const CoronaOptions& opt) {
    return engine == SurroundEngine::Sat ? solve_n_patch(s, n, opt)
                                         : backtrack_n_patch(s, n, opt);
}

}  // namespace

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::NonTiler: return "non-tiler";
        case Verdict::Periodic: return "periodic";
        case Verdict::Candidate: return "candidate";
    }
    return "?";
}

std::string verdict_text(const Classification& c) {
    if (!c.error.empty()) return "error: " + c.error;
    switch (c.verdict) {
        case Verdict::NonTiler:
            return "non-tiler (Heesch number " + std::to_string(c.heesch) + ")";
        case Verdict::Periodic:
            return "periodic (isohedral number <= " + std::to_string(c.iso_upper.value_or(0)) +
                   ")";
        case Verdict::Candidate:
            return c.incomplete ? "aperiodic candidate (budgets exhausted; some step truncated)"
                                : "aperiodic candidate (budgets exhausted)";
    }
    return "?";
}

Classification classify(const Polyform& s_in, const ClassifyOptions& opt) {
    if (opt.heesch_budget < 1) throw std::invalid_argument("heesch budget must be at least 1");
    if (opt.iso_budget < 1) throw std::invalid_argument("iso budget must be at least 1");
    if (opt.depth < 2) throw std::invalid_argument("propagation depth must be at least 2");

    Classification out;
    out.shape = canonicalize(s_in);
    const Polyform& s = out.shape;

    // Heesch-0 fast path: one surround search settles unsurroundable shapes
    // before any periodic machinery runs, and its surround doubles as the
    // 1-patch step of the Heesch ladder.
    bool heesch_alive = true;
    std::optional<Patch> best_patch;
    {
        SurroundProblem prob = make_surround_problem(s, s.cells, opt.corona.mode);
        SurroundOutcome first = find_surround(prob, opt.engine, opt.corona);
        ++out.budgets_used.heesch_steps;
        if (first.status == SearchStatus::None) {
            out.verdict = Verdict::NonTiler;
            out.heesch = 0;
            out.heesch_exact = true;
            out.corona_certificate = bare_patch(s);
            return out;
        }
        if (first.status == SearchStatus::Budget) {
            heesch_alive = false;
            out.incomplete = true;
        } else {
            best_patch = surround_patch(s, first.surround);
            out.heesch = 1;
        }
    }

    IsoLadder ladder(s, opt.depth, opt.iso);
    bool iso_exhaustive = true;  // NONE rounds are still definitive
    const int last_n = std::max(opt.heesch_budget, opt.iso_budget);
    for (int n = 1; n <= last_n; ++n) {
        if (n <= opt.iso_budget) {
            IsoLadder::Round round = ladder.step();
            ++out.budgets_used.iso_rounds;
            if (round.found) {
                out.verdict = Verdict::Periodic;
                out.iso_upper = round.certificate.classes;
                out.periodic_certificate = std::move(round.certificate);
                out.corona_certificate = std::move(best_patch);
                return out;
            }
            if (round.incomplete) {
                out.incomplete = true;
                iso_exhaustive = false;
            } else if (iso_exhaustive) {
                out.iso_examined = n;
            }
        }
        if (n <= opt.heesch_budget && n >= 2 && heesch_alive) {
            NPatchOutcome np = n_patch_step(s, n, opt.engine, opt.corona);
            ++out.budgets_used.heesch_steps;
            if (np.status == SearchStatus::None) {
                out.verdict = Verdict::NonTiler;
                out.heesch = n - 1;
                out.heesch_exact = true;
                out.corona_certificate = std::move(best_patch);
                return out;
            }
            if (np.status == SearchStatus::Budget) {
                heesch_alive = false;
                out.incomplete = true;
            } else {
                best_patch = std::move(np.patch);
                out.heesch = n;
            }
        }
    }

    out.verdict = Verdict::Candidate;
    out.corona_certificate = std::move(best_patch);
    return out;
}

BatchResult batch_classify(GridKind grid, int n, bool one_sided, const ClassifyOptions& opt,
                           int jobs) {
    std::vector<Polyform> shapes = enumerate_polyforms(grid, n, one_sided);
    BatchResult out;
    out.results.resize(shapes.size());

    auto run_one = [&](std::size_t i) {
        try {
            out.results[i] = classify(shapes[i], opt);
        } catch (const std::exception& e) {
            Classification failed;
            failed.shape = shapes[i];
            failed.incomplete = true;
            failed.error = e.what();
            out.results[i] = std::move(failed);
        }
    };

    if (jobs <= 1 || shapes.size() <= 1) {
        for (std::size_t i = 0; i < shapes.size(); ++i) run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= shapes.size()) return;
                run_one(i);
            }
        };
        std::vector<std::thread> pool;
        int width = std::min<int>(jobs, (int)shapes.size());
        pool.reserve(width);
        for (int w = 0; w < width; ++w) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    BatchSummary& sum = out.summary;
    sum.shapes = (int)out.results.size();
    for (const Classification& c : out.results) {
        if (!c.error.empty()) {
            ++sum.errors;
            continue;
        }
        ++sum.verdicts[std::string(verdict_name(c.verdict))];
        if (c.incomplete) ++sum.incomplete;
        if (c.verdict == Verdict::NonTiler) ++sum.heesch_histogram[c.heesch];
        if (c.verdict == Verdict::Periodic && c.iso_upper) ++sum.iso_histogram[*c.iso_upper];
    }
    return out;
}

}  // namespace tessella
