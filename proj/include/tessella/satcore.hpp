#pragma once

// CNF construction, a small deterministic CDCL solver, blocking-clause
// refinement, and bit-exact DIMACS plumbing for external solvers.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tessella::sat {

using Clause = std::vector<int>;  // nonzero literals, 1-indexed variables

struct Cnf {
    int num_vars = 0;
    std::vector<Clause> clauses;

    int new_var() { return ++num_vars; }
    void add(Clause c) { clauses.push_back(std::move(c)); }
};

enum class Status { Sat, Unsat, Budget };

struct SolveStats {
    std::int64_t decisions = 0;
    std::int64_t conflicts = 0;
    std::int64_t propagations = 0;
};

struct SolveResult {
    Status status = Status::Budget;
    std::vector<bool> model;  // 1-indexed by variable when Sat, index 0 unused
    SolveStats stats;
};

// conflict-driven solver: two-watched-literal propagation, static variable
// order with phase saving, no restarts. budget < 0 means unlimited; the
// result is Budget once the conflict count exceeds it. Budget means unknown,
// never unsatisfiable. Identical input and budget give identical output.
SolveResult solve(const Cnf& f, std::int64_t conflict_budget = -1);

// independent clause-satisfaction check used to vet every Sat result
bool model_satisfies(const Cnf& f, const std::vector<bool>& model);

// appends the clause forbidding this exact set of true literals
void add_blocking_clause(Cnf& f, const std::vector<int>& true_literals);

std::string export_dimacs(const Cnf& f);

struct SatParseError : std::runtime_error {
    int line;
    SatParseError(const std::string& what, int line_no);
};

// parses solver "v" lines into a 1-indexed assignment; unlisted variables
// default to false
std::vector<bool> import_dimacs_model(const std::string& text, int num_vars);

enum class AmoMethod { Pairwise, Sequential };

// clauses allowing at most one of vars to be true. The sequential method
// allocates auxiliary variables by bumping num_vars; projecting its models
// onto vars gives exactly the at-most-one assignments.
std::vector<Clause> at_most_one(const std::vector<int>& vars, AmoMethod method, int& num_vars);

// pairwise for small sets, sequential above 8 variables
std::vector<Clause> at_most_one_auto(const std::vector<int>& vars, int& num_vars);

// runs an external DIMACS solver executable and verifies any model it returns
SolveResult solve_external(const Cnf& f, const std::string& solver_path);

// external solver named by TESSELLA_SAT when set, built-in otherwise
SolveResult solve_with_env(const Cnf& f, std::int64_t conflict_budget = -1);

}  // namespace tessella::sat
