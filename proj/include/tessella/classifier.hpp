#pragma once

// Master classification: interleave the Heesch ladder (n-patch construction)
// with the isohedral ladder (k-copy periodic certificates) under budgets, so
// every shape lands in exactly one of three verdicts — proven non-tiler,
// proven periodic tiler, or aperiodic candidate with both budgets exhausted.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tessella/corona.hpp"
#include "tessella/isohedral.hpp"
#include "tessella/polyform.hpp"

namespace tessella {

enum class Verdict { NonTiler, Periodic, Candidate };

struct ClassifyOptions {
    int heesch_budget = 2;  // deepest corona count attempted
    int iso_budget = 4;     // deepest composite patch size attempted
    int depth = 3;          // propagation depth for periodic certificates
    SurroundEngine engine = SurroundEngine::Backtrack;
    CoronaOptions corona;
    IsoOptions iso;
};

struct LadderCounters {
    int heesch_steps = 0;  // surround / n-patch constructions attempted
    int iso_rounds = 0;    // composite rounds stepped
};

struct Classification {
    Polyform shape;
    Verdict verdict = Verdict::Candidate;

    // exact Heesch number when heesch_exact, otherwise a proven lower bound
    // (coronas actually built)
    int heesch = 0;
    bool heesch_exact = false;

    // proven isohedral-number upper bound; set exactly on Periodic
    std::optional<int> iso_upper;
    // largest patch size whose periodic round ran exhaustively; NONE answers
    // are definitive only up to this k
    int iso_examined = 0;

    std::optional<Patch> corona_certificate;  // maximal patch found
    std::optional<PeriodicCertificate> periodic_certificate;

    // an engine budget truncated some ladder step; decisive-looking fields
    // past the truncation point are not claimed
    bool incomplete = false;
    LadderCounters budgets_used;

    // batch runs record per-shape failures here instead of aborting
    std::string error;
};

std::string_view verdict_name(Verdict v);  // "non-tiler" | "periodic" | "candidate"

// one-line human report; the Candidate wording is fixed:
// "aperiodic candidate (budgets exhausted)"
std::string verdict_text(const Classification& c);

// For n = 1, 2, ...: run the isohedral round at size n (translation criterion,
// then surround propagation, over n-copy composites), then the Heesch step
// (n-patch construction), stopping at the first decisive outcome.  The
// unsurroundability fast path (Heesch 0) runs before everything.  Throws
// std::invalid_argument unless both budgets are >= 1 and depth >= 2.
Classification classify(const Polyform& s, const ClassifyOptions& opt = {});

struct BatchSummary {
    int shapes = 0;
    int errors = 0;
    int incomplete = 0;
    std::map<std::string, int> verdicts;   // verdict_name -> count
    std::map<int, int> heesch_histogram;   // exact Heesch values (non-tilers)
    std::map<int, int> iso_histogram;      // proven upper bounds (periodic)
};

struct BatchResult {
    std::vector<Classification> results;  // canonical enumeration order
    BatchSummary summary;
};

// Classify every canonical polyform of the family.  Results sit in canonical
// enumeration order and are identical for every jobs value; per-shape
// failures land in Classification::error and never abort the batch.
BatchResult batch_classify(GridKind grid, int n, bool one_sided,
                           const ClassifyOptions& opt = {}, int jobs = 1);

}  // namespace tessella
