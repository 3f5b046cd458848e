#include "tessella/satcore.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace tessella::sat {

namespace {

void validate(const Cnf& f) {
    if (f.num_vars < 0) throw std::invalid_argument("negative variable count");
    for (const Clause& c : f.clauses)
        for (int l : c)
            if (l == 0 || l > f.num_vars || l < -f.num_vars)
                throw std::invalid_argument("literal out of range: " + std::to_string(l));
}

// internal literal encoding: variable v (0-based) gives lits 2v and 2v+1
constexpr int kUndef = -1;

struct Engine {
    int nv;
    std::vector<std::vector<int>> cls;      // clause id -> internal lits, [0] and [1] watched
    std::vector<std::vector<int>> watches;  // internal lit -> clause ids watching it
    std::vector<signed char> value;         // per var: -1 unassigned, 0 false, 1 true
    std::vector<signed char> phase;
    std::vector<int> level;
    std::vector<int> reason;  // clause id or -1
    std::vector<int> trail;
    std::vector<int> trail_lim;
    std::size_t qhead = 0;
    SolveStats stats;

    explicit Engine(int num_vars)
        : nv(num_vars),
          watches(2 * num_vars),
          value(num_vars, -1),
          phase(num_vars, 0),
          level(num_vars, 0),
          reason(num_vars, -1) {}

    static int var_of(int lit) { return lit >> 1; }
    static int neg(int lit) { return lit ^ 1; }
    int lit_value(int lit) const {  // -1 unassigned, 0 false, 1 true
        signed char v = value[var_of(lit)];
        return v < 0 ? -1 : (v ^ (lit & 1));
    }
    int decision_level() const { return (int)trail_lim.size(); }

    void enqueue(int lit, int why) {
        int v = var_of(lit);
        value[v] = (signed char)(1 - (lit & 1));
        level[v] = decision_level();
        reason[v] = why;
        trail.push_back(lit);
    }

    // returns a conflicting clause id or -1
    int propagate() {
        while (qhead < trail.size()) {
            int p = trail[qhead++];  // p is now true, so neg(p) is false
            ++stats.propagations;
            int fl = neg(p);
            std::vector<int>& ws = watches[fl];
            std::size_t keep = 0;
            for (std::size_t i = 0; i < ws.size(); ++i) {
                int ci = ws[i];
                std::vector<int>& c = cls[ci];
                if (c[0] == fl) std::swap(c[0], c[1]);
                if (lit_value(c[0]) == 1) {
                    ws[keep++] = ci;
                    continue;
                }
                bool moved = false;
                for (std::size_t k = 2; k < c.size(); ++k) {
                    if (lit_value(c[k]) != 0) {
                        std::swap(c[1], c[k]);
                        watches[c[1]].push_back(ci);
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                ws[keep++] = ci;  // stays watched here
                if (lit_value(c[0]) == 0) {
                    for (std::size_t j = i + 1; j < ws.size(); ++j) ws[keep++] = ws[j];
                    ws.resize(keep);
                    return ci;
                }
                enqueue(c[0], ci);
            }
            ws.resize(keep);
        }
        return -1;
    }

    void backtrack(int to_level) {
        while ((int)trail.size() > trail_lim[to_level]) {
            int v = var_of(trail.back());
            phase[v] = value[v];
            value[v] = -1;
            trail.pop_back();
        }
        trail_lim.resize(to_level);
        qhead = trail.size();
    }

    // first-UIP conflict analysis; fills learnt with the asserting clause
    // (UIP literal first) and returns the backjump level
    int analyze(int confl, std::vector<int>& learnt) {
        learnt.clear();
        std::vector<signed char> seen(nv, 0);
        int counter = 0, p = -1;
        int index = (int)trail.size() - 1;
        for (;;) {
            const std::vector<int>& c = cls[confl];
            for (std::size_t j = (p == -1 ? 0 : 1); j < c.size(); ++j) {
                int q = c[j];
                int v = var_of(q);
                if (!seen[v] && level[v] > 0) {
                    seen[v] = 1;
                    if (level[v] == decision_level())
                        ++counter;
                    else
                        learnt.push_back(q);
                }
            }
            while (!seen[var_of(trail[index])]) --index;
            p = trail[index];
            seen[var_of(p)] = 0;
            --counter;
            --index;
            if (counter == 0) break;
            confl = reason[var_of(p)];
        }
        learnt.insert(learnt.begin(), neg(p));
        int bj = 0;
        for (std::size_t j = 1; j < learnt.size(); ++j) bj = std::max(bj, level[var_of(learnt[j])]);
        if (learnt.size() > 1) {
            std::size_t best = 1;
            for (std::size_t j = 2; j < learnt.size(); ++j)
                if (level[var_of(learnt[j])] > level[var_of(learnt[best])]) best = j;
            std::swap(learnt[1], learnt[best]);
        }
        return bj;
    }

    int attach(std::vector<int> c) {
        int id = (int)cls.size();
        watches[c[0]].push_back(id);
        watches[c[1]].push_back(id);
        cls.push_back(std::move(c));
        return id;
    }
};

std::atomic<int> g_tmp_counter{0};

}  // namespace

SolveResult solve(const Cnf& f, std::int64_t conflict_budget) {
    validate(f);
    SolveResult res;
    Engine e(f.num_vars);

    for (const Clause& in : f.clauses) {
        std::vector<int> c;
        c.reserve(in.size());
        for (int l : in) c.push_back(2 * (std::abs(l) - 1) + (l < 0));
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        bool taut = false;
        for (std::size_t j = 0; j + 1 < c.size(); ++j)
            if (c[j + 1] == Engine::neg(c[j])) taut = true;
        if (taut) continue;
        if (c.empty()) {
            res.status = Status::Unsat;
            res.stats = e.stats;
            return res;
        }
        if (c.size() == 1) {
            int v = e.lit_value(c[0]);
            if (v == 0) {
                res.status = Status::Unsat;
                res.stats = e.stats;
                return res;
            }
            if (v == -1) e.enqueue(c[0], -1);
            continue;
        }
        e.attach(std::move(c));
    }

    std::vector<int> learnt;
    int next_var = 0;
    for (;;) {
        int confl = e.propagate();
        if (confl >= 0) {
            ++e.stats.conflicts;
            if (e.decision_level() == 0) {
                res.status = Status::Unsat;
                res.stats = e.stats;
                return res;
            }
            if (conflict_budget >= 0 && e.stats.conflicts > conflict_budget) {
                res.status = Status::Budget;
                res.stats = e.stats;
                return res;
            }
            int bj = e.analyze(confl, learnt);
            e.backtrack(bj);
            next_var = 0;
            if (learnt.size() == 1) {
                if (e.lit_value(learnt[0]) == 0) {
                    res.status = Status::Unsat;
                    res.stats = e.stats;
                    return res;
                }
                if (e.lit_value(learnt[0]) == -1) e.enqueue(learnt[0], -1);
            } else {
                int id = e.attach(learnt);
                e.enqueue(learnt[0], id);
            }
        } else {
            while (next_var < e.nv && e.value[next_var] >= 0) ++next_var;
            if (next_var == e.nv) {
                res.status = Status::Sat;
                res.model.assign(f.num_vars + 1, false);
                for (int v = 0; v < e.nv; ++v) res.model[v + 1] = e.value[v] == 1;
                res.stats = e.stats;
                if (!model_satisfies(f, res.model))
                    throw std::logic_error("solver produced a non-model");
                return res;
            }
            ++e.stats.decisions;
            e.trail_lim.push_back((int)e.trail.size());
            e.enqueue(2 * next_var + (e.phase[next_var] ? 0 : 1), -1);
        }
    }
}

bool model_satisfies(const Cnf& f, const std::vector<bool>& model) {
    if ((int)model.size() != f.num_vars + 1) return false;
    for (const Clause& c : f.clauses) {
        bool ok = false;
        for (int l : c) {
            if (l == 0 || std::abs(l) > f.num_vars) return false;
            if ((l > 0) == model[std::abs(l)]) {
                ok = true;
                break;
            }
        }
        if (!ok) return false;
    }
    return true;
}

void add_blocking_clause(Cnf& f, const std::vector<int>& true_literals) {
    if (true_literals.empty()) throw std::invalid_argument("empty blocking set");
    Clause c;
    for (int l : true_literals) {
        if (l == 0 || std::abs(l) > f.num_vars)
            throw std::invalid_argument("blocking literal out of range");
        c.push_back(-l);
    }
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    f.clauses.push_back(std::move(c));
}

std::string export_dimacs(const Cnf& f) {
    validate(f);
    std::string out = "p cnf " + std::to_string(f.num_vars) + " " +
                      std::to_string(f.clauses.size()) + "\n";
    for (const Clause& c : f.clauses) {
        for (int l : c) {
            out += std::to_string(l);
            out += ' ';
        }
        out += "0\n";
    }
    return out;
}

SatParseError::SatParseError(const std::string& what, int line_no)
    : std::runtime_error(what + " (line " + std::to_string(line_no) + ")"), line(line_no) {}

std::vector<bool> import_dimacs_model(const std::string& text, int num_vars) {
    std::vector<bool> model(num_vars + 1, false);
    bool any = false;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] != 'v') continue;
        if (line.size() > 1 && line[1] != ' ' && line[1] != '\t') continue;
        std::istringstream ls(line.substr(1));
        std::string tok;
        while (ls >> tok) {
            std::size_t pos = 0;
            long l;
            try {
                l = std::stol(tok, &pos);
            } catch (const std::exception&) {
                throw SatParseError("bad literal '" + tok + "'", line_no);
            }
            if (pos != tok.size()) throw SatParseError("bad literal '" + tok + "'", line_no);
            if (l == 0) continue;
            if (std::abs(l) > num_vars)
                throw SatParseError("variable " + std::to_string(std::abs(l)) + " out of range",
                                    line_no);
            model[std::abs(l)] = l > 0;
            any = true;
        }
    }
    if (!any && num_vars > 0) throw SatParseError("no model values found", line_no);
    return model;
}

std::vector<Clause> at_most_one(const std::vector<int>& vars, AmoMethod method, int& num_vars) {
    for (int v : vars)
        if (v <= 0 || v > num_vars) throw std::invalid_argument("at_most_one variable out of range");
    std::vector<Clause> out;
    if (vars.size() <= 1) return out;
    if (method == AmoMethod::Pairwise) {
        for (std::size_t i = 0; i < vars.size(); ++i)
            for (std::size_t j = i + 1; j < vars.size(); ++j) out.push_back({-vars[i], -vars[j]});
        return out;
    }
    // sequential counter: s_i means "some of vars[0..i] is true"
    int n = (int)vars.size();
    std::vector<int> s(n - 1);
    for (int i = 0; i < n - 1; ++i) s[i] = ++num_vars;
    out.push_back({-vars[0], s[0]});
    for (int i = 1; i < n - 1; ++i) {
        out.push_back({-vars[i], s[i]});
        out.push_back({-s[i - 1], s[i]});
        out.push_back({-vars[i], -s[i - 1]});
    }
    out.push_back({-vars[n - 1], -s[n - 2]});
    return out;
}

std::vector<Clause> at_most_one_auto(const std::vector<int>& vars, int& num_vars) {
    return at_most_one(vars, vars.size() <= 8 ? AmoMethod::Pairwise : AmoMethod::Sequential,
                       num_vars);
}

SolveResult solve_external(const Cnf& f, const std::string& solver_path) {
    namespace fs = std::filesystem;
    fs::path tmp = fs::temp_directory_path() /
                   ("tessella_sat_" + std::to_string(::getpid()) + "_" +
                    std::to_string(g_tmp_counter.fetch_add(1)) + ".cnf");
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << export_dimacs(f);
    }
    std::string cmd = "\"" + solver_path + "\" \"" + tmp.string() + "\" 2>/dev/null";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) {
        fs::remove(tmp);
        throw std::runtime_error("cannot run external solver: " + solver_path);
    }
    std::string text;
    char buf[4096];
    std::size_t got;
    while ((got = ::fread(buf, 1, sizeof buf, pipe)) > 0) text.append(buf, got);
    ::pclose(pipe);
    fs::remove(tmp);

    SolveResult res;
    std::istringstream in(text);
    std::string line;
    bool have_status = false;
    while (std::getline(in, line)) {
        if (line.rfind("s SATISFIABLE", 0) == 0) {
            res.status = Status::Sat;
            have_status = true;
        } else if (line.rfind("s UNSATISFIABLE", 0) == 0) {
            res.status = Status::Unsat;
            have_status = true;
        }
    }
    if (!have_status) throw SatParseError("external solver printed no status line", 0);
    if (res.status == Status::Sat) {
        res.model = import_dimacs_model(text, f.num_vars);
        if (!model_satisfies(f, res.model))
            throw std::runtime_error("external solver model fails verification");
    }
    return res;
}

SolveResult solve_with_env(const Cnf& f, std::int64_t conflict_budget) {
    const char* ext = std::getenv("TESSELLA_SAT");
    if (ext && *ext) return solve_external(f, ext);
    return solve(f, conflict_budget);
}

}  // namespace tessella::sat
