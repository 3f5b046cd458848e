#include "tessella/shape_io.hpp"

#include <array>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace tessella {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ParseError(where + ": " + what);
}

Json parse_document(std::string_view text, const std::string& where) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(where, std::string("invalid JSON (") + e.what() + ")");
    }
}

const Json& field(const Json& obj, const char* name, const std::string& where) {
    if (!obj.is_object()) fail(where, "expected a JSON object");
    auto it = obj.find(name);
    if (it == obj.end()) fail(where, std::string("missing field '") + name + "'");
    return *it;
}

void expect_format(const Json& obj, const char* version, const std::string& where) {
    const Json& f = field(obj, "format", where);
    if (!f.is_string() || f.get<std::string>() != version)
        fail(where, std::string("field 'format': unknown version ") + f.dump() + ", expected \"" +
                        version + "\"");
}

int int_field(const Json& obj, const char* name, const std::string& where) {
    const Json& v = field(obj, name, where);
    if (!v.is_number_integer()) fail(where, std::string("field '") + name + "' must be an integer");
    return v.get<int>();
}

IVec2 ivec_field(const Json& obj, const char* name, const std::string& where) {
    const Json& v = field(obj, name, where);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer())
        fail(where, std::string("field '") + name + "' must be a pair of integers");
    return {v[0].get<int>(), v[1].get<int>()};
}

Json shape_json(const Polyform& s) {
    Json j;
    j["format"] = "tessella-shape/1";
    j["grid"] = std::string(grid_name(s.grid));
    int arity = coord_arity(s.grid);
    Json cells = Json::array();
    for (Cell c : s.cells) {
        std::array<int, 3> u = cell_unpack(s.grid, c);
        Json cell = Json::array();
        for (int i = 0; i < arity; ++i) cell.push_back(u[i]);
        cells.push_back(std::move(cell));
    }
    j["cells"] = std::move(cells);
    return j;
}

Polyform shape_from_json(const Json& j, const std::string& where) {
    expect_format(j, "tessella-shape/1", where);
    const Json& gname = field(j, "grid", where);
    if (!gname.is_string()) fail(where, "field 'grid' must be a string");
    auto grid = grid_from_name(gname.get<std::string>());
    if (!grid) fail(where, "field 'grid': unknown grid " + gname.dump());
    int arity = coord_arity(*grid);

    const Json& cells = field(j, "cells", where);
    if (!cells.is_array()) fail(where, "field 'cells' must be an array");
    std::vector<Cell> packed;
    packed.reserve(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const Json& cell = cells[i];
        std::string ctx = where + ", field 'cells[" + std::to_string(i) + "]'";
        if (!cell.is_array() || (int)cell.size() != arity)
            fail(ctx, "must be an array of " + std::to_string(arity) + " integers");
        std::array<int, 3> coords{0, 0, 0};
        for (int k = 0; k < arity; ++k) {
            if (!cell[k].is_number_integer()) fail(ctx, "must hold integers only");
            coords[k] = cell[k].get<int>();
        }
        try {
            packed.push_back(cell_pack(*grid, std::span<const int>(coords.data(), arity)));
        } catch (const std::invalid_argument& e) {
            fail(ctx, e.what());
        }
    }
    try {
        return make_polyform(*grid, std::move(packed));
    } catch (const std::invalid_argument& e) {
        fail(where + ", field 'cells'", e.what());
    }
}

Json patch_json(const Patch& p) {
    if (p.corona.size() != p.placements.size())
        throw std::invalid_argument("patch corona indices must be populated for writing");
    Json j;
    j["format"] = "tessella-patch/1";
    j["shape"] = shape_json(p.shape);
    Json pls = Json::array();
    for (std::size_t i = 0; i < p.placements.size(); ++i) {
        Json pl;
        pl["point"] = p.placements[i].point;
        pl["t"] = Json::array({p.placements[i].t.x, p.placements[i].t.y});
        pl["corona"] = p.corona[i];
        pls.push_back(std::move(pl));
    }
    j["placements"] = std::move(pls);
    return j;
}

Patch patch_from_json(const Json& j, const std::string& where) {
    expect_format(j, "tessella-patch/1", where);
    Patch p;
    p.shape = shape_from_json(field(j, "shape", where), where + ", field 'shape'");
    const Json& pls = field(j, "placements", where);
    if (!pls.is_array()) fail(where, "field 'placements' must be an array");
    int order = point_group_order(p.shape.grid);
    for (std::size_t i = 0; i < pls.size(); ++i) {
        std::string ctx = where + ", field 'placements[" + std::to_string(i) + "]'";
        Isometry iso;
        iso.point = int_field(pls[i], "point", ctx);
        if (iso.point < 0 || iso.point >= order)
            fail(ctx, "field 'point' out of range for the grid's point group");
        iso.t = ivec_field(pls[i], "t", ctx);
        int corona = int_field(pls[i], "corona", ctx);
        if (corona < 0) fail(ctx, "field 'corona' must be non-negative");
        p.placements.push_back(iso);
        p.corona.push_back(corona);
    }
    return p;
}

Json periodic_json(const PeriodicCertificate& c) {
    Json j;
    j["format"] = "tessella-periodic/1";
    j["patch"] = patch_json(c.patch);
    j["t1"] = Json::array({c.t1.x, c.t1.y});
    j["t2"] = Json::array({c.t2.x, c.t2.y});
    j["classes"] = c.classes;
    return j;
}

PeriodicCertificate periodic_from_json(const Json& j, const std::string& where) {
    expect_format(j, "tessella-periodic/1", where);
    PeriodicCertificate c;
    c.patch = patch_from_json(field(j, "patch", where), where + ", field 'patch'");
    c.t1 = ivec_field(j, "t1", where);
    c.t2 = ivec_field(j, "t2", where);
    c.classes = int_field(j, "classes", where);
    if (c.classes < 1) fail(where, "field 'classes' must be positive");
    return c;
}

}  // namespace

std::string write_shape(const Polyform& s) { return shape_json(s).dump(); }

Polyform read_shape(std::string_view text) {
    const std::string where = "shape";
    return shape_from_json(parse_document(text, where), where);
}

std::string write_patch(const Patch& p) { return patch_json(p).dump(); }

Patch read_patch(std::string_view text) {
    const std::string where = "patch";
    return patch_from_json(parse_document(text, where), where);
}

std::string write_periodic(const PeriodicCertificate& c) { return periodic_json(c).dump(); }

PeriodicCertificate read_periodic(std::string_view text) {
    const std::string where = "periodic certificate";
    return periodic_from_json(parse_document(text, where), where);
}

std::string write_classification(const Classification& c) {
    Json j;
    j["format"] = "tessella-classification/1";
    j["shape"] = shape_json(c.shape);
    if (!c.error.empty()) {
        j["error"] = c.error;
        return j.dump();
    }
    j["verdict"] = std::string(verdict_name(c.verdict));
    j["text"] = verdict_text(c);
    j["heesch"] = c.heesch;
    j["heesch_exact"] = c.heesch_exact;
    if (c.iso_upper) j["iso_upper"] = *c.iso_upper;
    j["iso_examined"] = c.iso_examined;
    j["incomplete"] = c.incomplete;
    j["budgets_used"] = Json{{"heesch_steps", c.budgets_used.heesch_steps},
                             {"iso_rounds", c.budgets_used.iso_rounds}};
    if (c.corona_certificate) j["corona_certificate"] = patch_json(*c.corona_certificate);
    if (c.periodic_certificate) j["periodic_certificate"] = periodic_json(*c.periodic_certificate);
    return j.dump();
}

std::string write_batch_summary(const BatchSummary& s) {
    Json j;
    j["format"] = "tessella-classification-summary/1";
    j["shapes"] = s.shapes;
    j["errors"] = s.errors;
    j["incomplete"] = s.incomplete;
    Json verdicts = Json::object();
    for (const auto& [name, count] : s.verdicts) verdicts[name] = count;
    j["verdicts"] = std::move(verdicts);
    Json hh = Json::object();
    for (const auto& [value, count] : s.heesch_histogram) hh[std::to_string(value)] = count;
    j["heesch_histogram"] = std::move(hh);
    Json ih = Json::object();
    for (const auto& [value, count] : s.iso_histogram) ih[std::to_string(value)] = count;
    j["iso_histogram"] = std::move(ih);
    return j.dump();
}

void write_shape_lines(std::ostream& out, std::span<const Polyform> shapes) {
    for (const Polyform& s : shapes) out << write_shape(s) << '\n';
}

std::vector<Polyform> read_shape_lines(std::istream& in) {
    std::vector<Polyform> shapes;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const std::string where = "line " + std::to_string(lineno);
        shapes.push_back(shape_from_json(parse_document(line, where), where));
    }
    return shapes;
}

Polyform load_shape_ref(const std::string& ref) {
    for (std::string_view name : builtin_names())
        if (ref == name) return builtin_shape(ref);

    std::string path = ref;
    long index = -1;
    if (auto hash = ref.find_last_of('#'); hash != std::string::npos) {
        const std::string suffix = ref.substr(hash + 1);
        if (!suffix.empty() && suffix.find_first_not_of("0123456789") == std::string::npos) {
            path = ref.substr(0, hash);
            index = std::strtol(suffix.c_str(), nullptr, 10);
        }
    }

    std::ifstream in(path);
    if (!in) throw ParseError("cannot open shape file '" + path + "'");
    std::vector<Polyform> shapes = read_shape_lines(in);
    if (shapes.empty()) throw ParseError("shape file '" + path + "' holds no shapes");
    if (index < 0) {
        if (shapes.size() > 1)
            throw ParseError("shape file '" + path + "' holds " + std::to_string(shapes.size()) +
                             " shapes; pick one with '#index'");
        index = 0;
    }
    if (index >= (long)shapes.size())
        throw ParseError("shape index " + std::to_string(index) + " out of range; file '" + path +
                         "' holds " + std::to_string(shapes.size()) + " shapes");
    return shapes[(std::size_t)index];
}

}  // namespace tessella
