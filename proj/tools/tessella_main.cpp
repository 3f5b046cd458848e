// Command-line surface: enumeration, Heesch/isohedral ladders, batch
// classification, SVG rendering, and DIMACS export/import.  Exit codes are
// uniform across subcommands and documented per subcommand: 0 success,
// 1 decisive negative, 2 usage or input error, 3 engine budget exhausted.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "tessella/classifier.hpp"
#include "tessella/render.hpp"
#include "tessella/shape_io.hpp"

namespace {

using namespace tessella;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

void write_text(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open output file '" + path + "'");
    out << bytes;
    if (!out) throw ParseError("cannot write output file '" + path + "'");
}

GridKind parse_grid(const std::string& name) {
    auto g = grid_from_name(name);
    if (!g) throw ParseError("unknown grid '" + name + "' (square|hex|tri|kite)");
    return *g;
}

bool parse_mode(const std::string& mode) {
    if (mode == "free") return false;
    if (mode == "one-sided") return true;
    throw ParseError("unknown mode '" + mode + "' (free|one-sided)");
}

SurroundEngine parse_engine(const std::string& name) {
    if (name == "backtrack") return SurroundEngine::Backtrack;
    if (name == "sat") return SurroundEngine::Sat;
    throw ParseError("unknown engine '" + name + "' (backtrack|sat)");
}

Patch heesch_patch(const HeeschResult& hr) {
    Patch p = hr.certificate;
    if (p.placements.empty()) {
        p.shape = hr.shape;
        p.placements = {Isometry{0, {0, 0}}};
        p.corona = {0};
    }
    return p;
}

// ---- subcommand bodies ----

struct EnumerateArgs {
    std::string grid;
    int size = 0;
    std::string mode = "free";
    std::string out;
};

int run_enumerate(const EnumerateArgs& a) {
    auto shapes = enumerate_polyforms(parse_grid(a.grid), a.size, parse_mode(a.mode));
    std::ostringstream buf;
    write_shape_lines(buf, shapes);
    if (a.out.empty())
        std::cout << buf.str();
    else
        write_text(a.out, buf.str());
    std::cerr << shapes.size() << " shapes\n";
    return kOk;
}

struct HeeschArgs {
    std::string shape;
    std::string engine = "backtrack";
    int max_corona = 2;
    bool allow_holes = false;
    std::string cert;
};

int run_heesch(const HeeschArgs& a) {
    Polyform s = load_shape_ref(a.shape);
    CoronaOptions opt;
    opt.allow_holes = a.allow_holes;
    HeeschResult hr = heesch_number(s, a.max_corona, parse_engine(a.engine), opt);
    if (!a.cert.empty()) write_text(a.cert, write_patch(heesch_patch(hr)) + "\n");
    if (hr.status == HeeschStatus::NonTiler) {
        std::cout << "non-tiler: Heesch number " << hr.heesch_number << " (corona "
                  << hr.heesch_number + 1 << " refuted)\n";
        return kNegative;
    }
    if (hr.heesch_number >= a.max_corona) {
        std::cout << "built " << hr.heesch_number << " coronas (Heesch number >= "
                  << hr.heesch_number << ")\n";
        return kOk;
    }
    std::cout << "engine budget exhausted after " << hr.heesch_number << " coronas\n";
    return kBudget;
}

struct IsoArgs {
    std::string shape;
    int max_k = 4;
    int depth = 3;
    std::string cert;
};

int run_iso(const IsoArgs& a) {
    Polyform s = load_shape_ref(a.shape);
    IsohedralResult ir = isohedral_number_upper(s, a.max_k, a.depth);
    if (ir.status != IsoStatus::NoneUpToBudget) {
        if (!a.cert.empty()) write_text(a.cert, write_periodic(ir.certificate) + "\n");
        std::cout << "periodic: isohedral number <= " << ir.k << "\n";
        return kOk;
    }
    if (ir.complete) {
        std::cout << "no periodic certificate for any k <= " << a.max_k << " (exhaustive)\n";
        return kNegative;
    }
    std::cout << "no periodic certificate found for k <= " << a.max_k << " (search truncated)\n";
    return kBudget;
}

struct ClassifyArgs {
    std::string grid;
    int size = 0;
    std::string mode = "free";
    int heesch_budget = 2;
    int iso_budget = 4;
    int depth = 3;
    int jobs = 1;
    std::string out;
    std::string summary;
};

int run_classify(const ClassifyArgs& a) {
    ClassifyOptions opt;
    opt.heesch_budget = a.heesch_budget;
    opt.iso_budget = a.iso_budget;
    opt.depth = a.depth;
    BatchResult br = batch_classify(parse_grid(a.grid), a.size, parse_mode(a.mode), opt, a.jobs);
    std::ostringstream buf;
    for (const Classification& c : br.results) buf << write_classification(c) << '\n';
    if (a.out.empty())
        std::cout << buf.str();
    else
        write_text(a.out, buf.str());
    std::string summary = write_batch_summary(br.summary) + "\n";
    if (a.summary.empty())
        std::cout << summary;
    else
        write_text(a.summary, summary);
    return kOk;
}

struct RenderArgs {
    std::string in;
    std::string out;
    double scale = 40.0;
    double stroke = 1.0;
};

int run_render(const RenderArgs& a) {
    std::ifstream in(a.in, std::ios::binary);
    if (!in) throw ParseError("cannot open input file '" + a.in + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    RenderSpec spec;
    spec.scale = a.scale;
    spec.stroke_width = a.stroke;
    if (text.find("\"format\":\"tessella-periodic/1\"") != std::string::npos) {
        PeriodicCertificate cert = read_periodic(text);
        spec.patch = cert.patch;
        spec.class_palette = true;  // class-indexed colors for periodic patches
    } else {
        spec.patch = read_patch(text);
        spec.class_palette = false;  // corona-indexed colors for Heesch patches
    }
    write_text(a.out, render_svg(spec));
    return kOk;
}

struct SatExportArgs {
    std::string shape;
    int coronas = 1;
    std::string out;
};

int run_sat_export(const SatExportArgs& a) {
    Polyform s = load_shape_ref(a.shape);
    NPatchEncoding enc = encode_n_patch(s, a.coronas, CoronaOptions{});
    std::string dimacs = sat::export_dimacs(enc.cnf);
    if (a.out.empty())
        std::cout << dimacs;
    else
        write_text(a.out, dimacs);
    std::cerr << enc.candidates.size() << " candidate placements, " << enc.cnf.num_vars
              << " variables, " << enc.cnf.clauses.size() << " clauses\n";
    return kOk;
}

struct SatImportArgs {
    std::string model;
    std::string shape;
    int coronas = 1;
    std::string cert;
};

int run_sat_import(const SatImportArgs& a) {
    Polyform s = load_shape_ref(a.shape);
    NPatchEncoding enc = encode_n_patch(s, a.coronas, CoronaOptions{});

    std::ifstream in(a.model, std::ios::binary);
    if (!in) throw ParseError("cannot open model file '" + a.model + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    std::vector<bool> model;
    try {
        model = sat::import_dimacs_model(buf.str(), enc.cnf.num_vars);
    } catch (const sat::SatParseError& e) {
        throw ParseError("model file '" + a.model + "' line " + std::to_string(e.line) + ": " +
                         e.what());
    }

    Patch p;
    p.shape = s;
    p.placements = {Isometry{0, {0, 0}}};
    p.corona = {0};
    for (std::size_t i = 0; i < enc.candidates.size(); ++i) {
        if (!model[(std::size_t)enc.u((int)i)]) continue;
        int corona = 0;
        for (int k = 1; k <= enc.n; ++k)
            if (model[(std::size_t)enc.level((int)i, k)]) {
                if (corona != 0) {
                    std::cout << "invalid model: placement in two coronas\n";
                    return kNegative;
                }
                corona = k;
            }
        if (corona == 0) {
            std::cout << "invalid model: used placement has no corona level\n";
            return kNegative;
        }
        p.placements.push_back(enc.candidates[i]);
        p.corona.push_back(corona);
    }

    VerifyReport rep = verify_patch(p, AdjacencyMode::Vertex, false);
    if (!rep.ok) {
        std::cout << "model decodes to an invalid patch: " << rep.error << "\n";
        return kNegative;
    }
    if (!a.cert.empty()) write_text(a.cert, write_patch(p) + "\n");
    std::cout << "verified " << a.coronas << "-patch with " << p.placements.size()
              << " placements\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tessella: polyform tiling classification toolkit"};
    app.require_subcommand(1);

    EnumerateArgs en;
    CLI::App* c_en = app.add_subcommand("enumerate",
                                        "Write canonical polyforms as shape JSONL (exit 0)");
    c_en->add_option("--grid", en.grid, "square|hex|tri|kite")->required();
    c_en->add_option("--size", en.size, "cell count")->required()->check(CLI::PositiveNumber);
    c_en->add_option("--mode", en.mode, "free|one-sided (default free)");
    c_en->add_option("--out", en.out, "output path (default stdout)");

    HeeschArgs he;
    CLI::App* c_he = app.add_subcommand(
        "heesch",
        "Climb coronas up to --max-corona (exit 0: built them all; 1: non-tiler "
        "refuted below the cap; 3: engine budget ran out)");
    c_he->add_option("--shape", he.shape, "builtin name, file, or file#index")->required();
    c_he->add_option("--engine", he.engine, "backtrack|sat (default backtrack)");
    c_he->add_option("--max-corona", he.max_corona, "corona cap (default 2)")
        ->check(CLI::PositiveNumber);
    c_he->add_flag("--allow-holes", he.allow_holes,
                   "permit holes in patches (required for holed shapes)");
    c_he->add_option("--cert", he.cert, "write the maximal patch certificate here");

    IsoArgs is;
    CLI::App* c_is = app.add_subcommand(
        "iso",
        "Search periodic certificates for k <= --max-k (exit 0: certificate found; "
        "1: exhaustively none; 3: truncated none)");
    c_is->add_option("--shape", is.shape, "builtin name, file, or file#index")->required();
    c_is->add_option("--max-k", is.max_k, "composite size cap (default 4)")
        ->check(CLI::PositiveNumber);
    c_is->add_option("--depth", is.depth, "propagation depth (default 3)")
        ->check(CLI::Range(2, 12));
    c_is->add_option("--cert", is.cert, "write the periodic certificate here");

    ClassifyArgs cl;
    CLI::App* c_cl = app.add_subcommand(
        "classify",
        "Classify every polyform of a family under budgets (exit 0; per-shape "
        "failures land inline in the JSONL)");
    c_cl->add_option("--grid", cl.grid, "square|hex|tri|kite")->required();
    c_cl->add_option("--size", cl.size, "cell count")->required()->check(CLI::PositiveNumber);
    c_cl->add_option("--mode", cl.mode, "free|one-sided (default free)");
    c_cl->add_option("--heesch-budget", cl.heesch_budget, "corona cap (default 2)")
        ->check(CLI::PositiveNumber);
    c_cl->add_option("--iso-budget", cl.iso_budget, "composite size cap (default 4)")
        ->check(CLI::PositiveNumber);
    c_cl->add_option("--depth", cl.depth, "propagation depth (default 3)")->check(CLI::Range(2, 12));
    c_cl->add_option("--jobs", cl.jobs, "worker threads (default 1)")->check(CLI::PositiveNumber);
    c_cl->add_option("--out", cl.out, "results JSONL path (default stdout)");
    c_cl->add_option("--summary", cl.summary, "summary JSON path (default stdout)");

    RenderArgs re;
    CLI::App* c_re = app.add_subcommand(
        "render", "Render a patch or periodic certificate file to SVG (exit 0)");
    c_re->add_option("--in", re.in, "patch or periodic certificate JSON")->required();
    c_re->add_option("--out", re.out, "SVG output path")->required();
    c_re->add_option("--scale", re.scale, "pixels per cell unit (default 40)")
        ->check(CLI::PositiveNumber);
    c_re->add_option("--stroke", re.stroke, "stroke width in pixels (default 1)")
        ->check(CLI::PositiveNumber);

    SatExportArgs se;
    CLI::App* c_se = app.add_subcommand(
        "sat-export", "Write the n-patch CNF encoding as DIMACS (exit 0)");
    c_se->add_option("--shape", se.shape, "builtin name, file, or file#index")->required();
    c_se->add_option("--coronas", se.coronas, "patch depth n (default 1)")
        ->check(CLI::PositiveNumber);
    c_se->add_option("--out", se.out, "output path (default stdout)");

    SatImportArgs si;
    CLI::App* c_si = app.add_subcommand(
        "sat-import",
        "Decode a DIMACS model against the matching encoding and verify the patch "
        "(exit 0: verified; 1: model invalid)");
    c_si->add_option("--model", si.model, "solver output with v-lines")->required();
    c_si->add_option("--shape", si.shape, "builtin name, file, or file#index")->required();
    c_si->add_option("--coronas", si.coronas, "patch depth n used at export time (default 1)")
        ->check(CLI::PositiveNumber);
    c_si->add_option("--cert", si.cert, "write the verified patch certificate here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (app.got_subcommand(c_en)) return run_enumerate(en);
        if (app.got_subcommand(c_he)) return run_heesch(he);
        if (app.got_subcommand(c_is)) return run_iso(is);
        if (app.got_subcommand(c_cl)) return run_classify(cl);
        if (app.got_subcommand(c_re)) return run_render(re);
        if (app.got_subcommand(c_se)) return run_sat_export(se);
        if (app.got_subcommand(c_si)) return run_sat_import(si);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
