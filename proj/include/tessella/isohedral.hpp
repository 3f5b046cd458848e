#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "tessella/corona.hpp"
#include "tessella/polyform.hpp"

namespace tessella {

// Certificate that translates of `patch` by the lattice {a*t1 + b*t2} tile the
// plane: the patch cells hit every translation class exactly once.  `classes`
// is the claimed bound on the number of transitivity classes of the underlying
// shape (1 when the patch realizes a single-shape isohedral tiling, k when the
// patch was produced from a k-copy composite).
struct PeriodicCertificate {
    Patch patch;
    IVec2 t1{0, 0};
    IVec2 t2{0, 0};
    int classes = 1;
};

// boundary-word factorization W = A.B.C.rev(comp(A)).rev(comp(B)).rev(comp(C))
struct BoundaryFactorization {
    std::string a, b, c;
    IVec2 t1{0, 0};  // displacement of A.B
    IVec2 t2{0, 0};  // displacement of B.C
};

// Square grid only (throws std::invalid_argument otherwise).  Returns the
// first factorization of the cyclic boundary word proving the shape tiles by
// translations, or nullopt.  Naive rotation x split scan; fine for the short
// boundaries we handle.
std::optional<BoundaryFactorization> translation_criterion(const Polyform& s);

struct IsoOptions {
    int max_surrounds = 2048;          // first-corona configurations tried
    int max_copies = 4000;             // copies grown per propagation
    std::int64_t max_label_nodes = 200000;  // label-choice nodes, full propagation
    std::int64_t feasibility_nodes = 2000;  // label-choice nodes per pruning probe
    int max_labelings = 16;            // conflict-free labelings tried per surround
    int max_translation_pairs = 64;    // (t1,t2) candidates per propagation
    int max_patches_per_k = 2048;      // composite patches enumerated per k
    std::int64_t surround_node_budget = 200'000;
    AdjacencyMode mode = AdjacencyMode::Vertex;
};

enum class CertStatus {
    Found,         // verified certificate attached
    None,          // every surround provably fails to propagate
    Inconclusive,  // conflict-free propagation but no verified lattice,
                   // or a budget truncated the search
};

struct CertOutcome {
    CertStatus status = CertStatus::Inconclusive;
    PeriodicCertificate certificate;
    int depth_used = 0;
};

// Search for an isohedral tiling: pick a surround of s, demand every copy be
// surrounded the same way, grow copies out to `depth` surround-steps, then
// extract two independent translations from same-point-index copy pairs and
// verify the induced fundamental domain.  On Inconclusive the search retries
// with doubled depth up to depth 12 before giving up.
CertOutcome isohedral_certificate(const Polyform& s, int depth = 3,
                                  const IsoOptions& opt = {});

struct PeriodicCheck {
    bool ok = false;
    std::string diagnostic;  // first violation, empty when ok
};

// Exact integer re-check of a certificate: t1, t2 independent, patch cell
// count matches |det| * species_count, and patch cells hit pairwise distinct
// residues modulo the key-space lattice.  Shares no code with the searches.
PeriodicCheck verify_periodic(const PeriodicCertificate& cert);

enum class IsoStatus {
    Isohedral,       // k == 1
    KIsohedral,      // certificate via a k-copy composite, k >= 2
    NoneUpToBudget,  // no certificate found for any k <= max_k
};

struct IsohedralResult {
    Polyform shape;
    IsoStatus status = IsoStatus::NoneUpToBudget;
    int k = 0;  // bound proved, or last k fully examined
    PeriodicCertificate certificate;
    bool complete = true;  // false when a budget truncated some k
};

// Upper bound on the isohedral number: for k = 1..max_k enumerate connected
// k-copy patches of s (canonical dedup, holes discarded), and test each
// composite with translation_criterion and isohedral_certificate.  First
// verified composite wins; its certificate is rewritten in terms of s with
// classes = k.
IsohedralResult isohedral_number_upper(const Polyform& s, int max_k = 4,
                                       int depth = 3, const IsoOptions& opt = {});

// One patch-size round at a time, for callers that interleave this ladder
// with other work.  Round k tests every canonical k-copy patch; the frontier
// of patches persists between rounds, so k rounds cost the same as one
// isohedral_number_upper call with max_k = k.
class IsoLadder {
public:
    explicit IsoLadder(Polyform s, int depth = 3, IsoOptions opt = {});
    ~IsoLadder();
    IsoLadder(IsoLadder&&) noexcept;
    IsoLadder& operator=(IsoLadder&&) noexcept;

    struct Round {
        bool found = false;               // verified certificate came out of this round
        bool incomplete = false;          // truncated growth or an inconclusive patch
        PeriodicCertificate certificate;  // set when found
    };

    int next_k() const;  // the k that step() will run, starting at 1
    Round step();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace tessella
