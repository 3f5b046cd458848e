#pragma once

// Surrounds, k-patches and Heesch numbers, with two independent engines
// (backtracking search and SAT with lazy hole refinement) plus a
// certificate verifier that shares no logic with either engine.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tessella/polyform.hpp"
#include "tessella/satcore.hpp"

namespace tessella {

// a set of placements of one shape; corona[i] is the ring index of
// placements[i] (0 = the central copy) when populated
struct Patch {
    Polyform shape;
    std::vector<Isometry> placements;
    std::vector<int> corona;
};

// sorted union of the realized cells
std::vector<Cell> patch_cells(const Polyform& s, const std::vector<Isometry>& placements);

enum class SurroundEngine { Backtrack, Sat };
enum class SearchStatus { Found, None, Budget };

struct CoronaOptions {
    AdjacencyMode mode = AdjacencyMode::Vertex;
    bool allow_holes = false;                    // relaxes the disk condition
    std::int64_t node_budget = 50'000'000;       // backtracking nodes
    std::int64_t conflict_budget = 4'000'000;    // solver conflicts per call
    int max_refinements = 20000;                 // blocking-clause rounds
};

struct SurroundProblem {
    Polyform shape;
    std::vector<Cell> center;          // sorted cells of the patch to surround
    std::vector<Cell> ring;            // cells vertex-adjacent to center, outside it
    std::vector<Isometry> candidates;  // disjoint from center, touching it in mode
    AdjacencyMode mode;
};

SurroundProblem make_surround_problem(const Polyform& s, const std::vector<Cell>& center,
                                      AdjacencyMode mode);

// placements of s disjoint from target and touching it in the given mode,
// deduplicated by realized cell set, sorted
std::vector<Isometry> placements_touching(const Polyform& s, const std::vector<Cell>& target,
                                          AdjacencyMode mode);

struct SurroundOutcome {
    SearchStatus status = SearchStatus::None;
    std::vector<Isometry> surround;  // populated when Found
    std::int64_t nodes = 0;
};

SurroundOutcome find_surround(const SurroundProblem& p, SurroundEngine engine,
                              const CoronaOptions& opt);

// streams every valid surround in deterministic order until emit returns
// false; returns Found if stopped by emit, None when exhausted, Budget on
// node exhaustion
SearchStatus enumerate_surrounds(const SurroundProblem& p, const CoronaOptions& opt,
                                 const std::function<bool(const std::vector<Isometry>&)>& emit,
                                 std::int64_t* nodes_used = nullptr);

// propositional encoding of "s has an n-patch"
struct NPatchEncoding {
    sat::Cnf cnf;
    std::vector<Isometry> candidates;
    int n = 0;
    int aux_vars = 0;  // beyond the placement and level variables

    // variable ids: u(i) true iff candidate i is used, level(i,k) true iff
    // candidate i sits in corona k (1-based coronas)
    int u(int cand) const { return cand + 1; }
    int level(int cand, int corona) const {
        return (int)candidates.size() + cand * n + corona;
    }
};

NPatchEncoding encode_n_patch(const Polyform& s, int n, const CoronaOptions& opt);

struct NPatchOutcome {
    SearchStatus status = SearchStatus::None;
    Patch patch;          // populated when Found, corona indices set
    std::int64_t work = 0;
    int refinements = 0;  // hole-blocking rounds used (sat engine)
};

// SAT route: encode, solve, decode, verify, block hole prefixes, repeat
NPatchOutcome solve_n_patch(const Polyform& s, int n, const CoronaOptions& opt);

// direct route: recursively surround the growing patch
NPatchOutcome backtrack_n_patch(const Polyform& s, int n, const CoronaOptions& opt);

enum class HeeschStatus { NonTiler, Budget };

struct HeeschResult {
    Polyform shape;
    HeeschStatus status = HeeschStatus::Budget;
    int heesch_number = 0;  // exact when NonTiler, a lower bound when Budget
    Patch certificate;      // maximal patch found, corona indices populated
};

// iterative deepening on the corona count; NonTiler means corona
// heesch_number+1 was exhaustively refuted
HeeschResult heesch_number(const Polyform& s, int max_corona, SurroundEngine engine,
                           const CoronaOptions& opt);

struct VerifyReport {
    bool ok = false;
    std::string error;
    int fail_level = -1;      // corona index of the first failing level
    bool hole_failure = false;  // failure is a disk-condition violation
};

// independent recursive-definition check of a certificate patch
VerifyReport verify_patch(const Patch& p, AdjacencyMode mode, bool allow_holes);

}  // namespace tessella
