#include "json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cqm/error.hpp"

namespace cqm::io {
namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::invalid_input, msg); }

const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) bad(where + ": missing \"" + key + "\"");
    return j.at(key);
}

Obj obj_from_json(const Json& j, const std::string& where) {
    if (!j.is_array()) bad(where + ": expected an array of dimensions");
    std::vector<std::size_t> dims;
    for (const Json& d : j) {
        if (!d.is_number_integer() || d.get<long long>() < 1) bad(where + ": dimensions must be positive integers");
        dims.push_back(d.get<std::size_t>());
    }
    return Obj(std::move(dims));
}

Json obj_to_json(const Obj& o) { return Json(o.factors()); }

Scalar entry_from_json(const Json& e, SemiringKind kind) {
    if (kind == SemiringKind::boolean) {
        if (e.is_boolean()) return e.get<bool>() ? 1.0 : 0.0;
        if (e.is_number_integer() && (e.get<int>() == 0 || e.get<int>() == 1)) return e.get<int>();
        bad("boolean entries must be 0 or 1");
    }
    if (e.is_number()) return e.get<double>();
    if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        return {e[0].get<double>(), e[1].get<double>()};
    }
    bad("complex entries must be [re, im]");
}

std::size_t index_from_json(const Json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<long long>() < 0) bad(where + ": expected a non-negative integer");
    return j.get<std::size_t>();
}

}  // namespace

double round12(double v) {
    if (!std::isfinite(v)) return v;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    const double r = std::strtod(buf, nullptr);
    return r == 0.0 ? 0.0 : r;
}

SemiringKind semiring_from_string(const std::string& s) {
    if (s == "complex") return SemiringKind::complex;
    if (s == "boolean") return SemiringKind::boolean;
    bad("unknown semiring \"" + s + "\"");
}

Mor mor_from_json(const Json& j, SemiringKind fallback) {
    if (!j.is_object()) bad("morphism: expected an object");
    const SemiringKind kind =
        j.contains("semiring") ? semiring_from_string(j.at("semiring").get<std::string>()) : fallback;
    const Obj dom = obj_from_json(field(j, "dom", "morphism"), "morphism dom");
    const Obj cod = obj_from_json(field(j, "cod", "morphism"), "morphism cod");
    const Json& rows = field(j, "entries", "morphism");
    const auto nr = static_cast<Eigen::Index>(cod.dim());
    const auto nc = static_cast<Eigen::Index>(dom.dim());
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != nr) {
        throw Error(ErrorCode::dim_mismatch, "morphism: expected " + std::to_string(nr) + " rows");
    }
    Matrix m(nr, nc);
    for (Eigen::Index r = 0; r < nr; ++r) {
        const Json& row = rows[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != nc) {
            throw Error(ErrorCode::dim_mismatch, "morphism: expected " + std::to_string(nc) + " columns per row");
        }
        for (Eigen::Index c = 0; c < nc; ++c) m(r, c) = entry_from_json(row[static_cast<std::size_t>(c)], kind);
    }
    return Mor(dom, cod, m, kind);
}

Json mor_to_json(const Mor& f) {
    Json rows = Json::array();
    const Matrix& m = f.matrix();
    const bool boolean = f.kind() == SemiringKind::boolean;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (boolean) {
                row.push_back(m(r, c).real() != 0.0 ? 1 : 0);
            } else {
                row.push_back(Json::array({round12(m(r, c).real()), round12(m(r, c).imag())}));
            }
        }
        rows.push_back(std::move(row));
    }
    return Json{{"semiring", std::string(to_string(f.kind()))},
                {"dom", obj_to_json(f.dom())},
                {"cod", obj_to_json(f.cod())},
                {"entries", std::move(rows)}};
}

ClassicalStructure structure_from_json(const Json& j, SemiringKind fallback) {
    if (!j.is_object()) bad("structure: expected an object");
    const SemiringKind kind =
        j.contains("semiring") ? semiring_from_string(j.at("semiring").get<std::string>()) : fallback;
    if (j.contains("standard")) return ClassicalStructure::standard(obj_from_json(j.at("standard"), "standard"), kind);
    if (j.contains("blocks")) {
        std::vector<GroupBlock> blocks;
        for (const Json& b : j.at("blocks")) {
            GroupBlock g;
            for (const Json& e : field(b, "elements", "group block")) g.elements.push_back(index_from_json(e, "elements"));
            for (const Json& row : field(b, "table", "group block")) {
                std::vector<std::size_t> r;
                for (const Json& e : row) r.push_back(index_from_json(e, "table"));
                g.table.push_back(std::move(r));
            }
            g.unit = index_from_json(field(b, "unit", "group block"), "unit");
            blocks.push_back(std::move(g));
        }
        return frel_structure_from_groups(blocks);
    }
    const Obj x = obj_from_json(field(j, "object", "structure"), "structure object");
    return ClassicalStructure(x, mor_from_json(field(j, "delta", "structure"), kind),
                              mor_from_json(field(j, "top", "structure"), kind));
}

Json structure_to_json(const ClassicalStructure& cs) {
    return Json{{"object", obj_to_json(cs.object())}, {"delta", mor_to_json(cs.delta())}, {"top", mor_to_json(cs.top())}};
}

SCMor sc_from_json(const Json& j, double tol) {
    const auto sc_obj = [](const Json& o) {
        return SCObj{structure_from_json(field(o, "x", "SC object")), obj_from_json(field(o, "a", "SC object"), "a")};
    };
    return SCMor(sc_obj(field(j, "dom", "SC morphism")), sc_obj(field(j, "cod", "SC morphism")),
                 mor_from_json(field(j, "phi", "SC morphism")), mor_from_json(field(j, "g", "SC morphism")), tol);
}

Json sc_to_json(const SCMor& m) {
    const auto sc_obj = [](const SCObj& o) { return Json{{"x", structure_to_json(o.x)}, {"a", obj_to_json(o.a)}}; };
    return Json{{"dom", sc_obj(m.dom())}, {"cod", sc_obj(m.cod())}, {"phi", mor_to_json(m.phi())}, {"g", mor_to_json(m.g())}};
}

Json report_to_json(const AxiomReport& r) {
    Json out = Json::object();
    for (const AxiomCheck& c : r.checks()) out[c.name] = Json{{"passed", c.passed}, {"deviation", round12(c.deviation)}};
    return out;
}

Json normal_form_to_json(const NormalForm& nf) {
    Json comps = Json::array(), wiring = Json::array();
    for (const SpiderComponent& c : nf.components) {
        comps.push_back(Json{{"in", c.n}, {"out", c.m}});
        wiring.push_back(Json{{"inputs", c.inputs}, {"outputs", c.outputs}});
    }
    return Json{{"inputs", nf.inputs}, {"outputs", nf.outputs}, {"components", comps}, {"wiring", wiring}};
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return Json::parse(buf.str());
    } catch (const Json::parse_error& e) {
        bad(path + ": malformed JSON: " + e.what());
    }
}

}  // namespace cqm::io
