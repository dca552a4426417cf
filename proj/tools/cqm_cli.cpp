// Command-line front end. Every subcommand prints one JSON report on
// standard output and exits 0 when its checks pass, 1 when they fail and 2
// on malformed input.

#include <CLI11.hpp>
#include <cmath>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "cqm/channels.hpp"
#include "cqm/classify.hpp"
#include "cqm/error.hpp"
#include "cqm/protocols.hpp"
#include "cqm/relalg.hpp"
#include "cqm/spider.hpp"
#include "json_io.hpp"

using namespace cqm;
using cqm::io::Json;

namespace {

struct Options {
    double tol = kDefaultTol;
    std::string semiring;
};

SemiringKind fallback_kind(const Options& o) {
    return o.semiring.empty() ? SemiringKind::complex : io::semiring_from_string(o.semiring);
}

Mor load_mor(const std::string& path, const Options& o) {
    return io::mor_from_json(io::read_json_file(path), fallback_kind(o));
}

ClassicalStructure load_structure(const std::string& path, const Options& o) {
    return io::structure_from_json(io::read_json_file(path), fallback_kind(o));
}

Json report(const std::string& command, bool pass) { return Json{{"command", command}, {"pass", pass}}; }

// Failures of a check, as opposed to malformed input.
bool is_check_failure(ErrorCode c) {
    switch (c) {
        case ErrorCode::not_a_relation:
        case ErrorCode::not_classical:
        case ErrorCode::classification_failure:
        case ErrorCode::axiom_failure:
        case ErrorCode::not_unitary:
        case ErrorCode::not_stochastic:
            return true;
        default:
            return false;
    }
}

// Evaluates one predicate, recording null when it does not apply.
void predicate(Json& out, const std::string& name, const std::function<bool()>& f) {
    try {
        out[name] = f();
    } catch (const Error&) {
        out[name] = nullptr;
    }
}

Json check_structure(const std::string& path, const Options& o) {
    const ClassicalStructure cs = load_structure(path, o);
    const AxiomReport r = verify_classical(cs, o.tol);
    Json j = report("check-structure", r.all_pass());
    j["object"] = cs.object().factors();
    j["semiring"] = std::string(to_string(cs.kind()));
    j["checks"] = io::report_to_json(r);
    return j;
}

Json classify(const std::string& mor, const std::string& xs, const std::string& ys, const Options& o) {
    const Mor f = load_mor(mor, o);
    const ClassicalStructure x = load_structure(xs, o);
    const ClassicalStructure y = load_structure(ys, o);
    if (f.dom() != x.object() || f.cod() != y.object()) {
        throw Error(ErrorCode::dim_mismatch, "morphism type " + f.dom().str() + " -> " + f.cod().str() +
                                                 " does not match the structures");
    }
    const double tol = o.tol;
    Json p = Json::object();
    predicate(p, "is_classical", [&] { return is_classical_map(f, x, y, tol); });
    const RelationFlags rf = relation_flags(f, x, y, tol);
    p["is_relation"] = rf.is_relation;
    p["is_single_valued"] = rf.is_single_valued;
    p["is_total"] = rf.is_total;
    p["is_function"] = rf.is_function;
    p["is_lax_comonoid_hom"] = rf.is_lax_comonoid_hom;
    predicate(p, "is_stochastic", [&] { return stochastic_flags(f, x, y, tol).is_stochastic; });
    predicate(p, "is_doubly_stochastic", [&] { return stochastic_flags(f, x, y, tol).is_doubly_stochastic; });
    if (x.object().dim() == y.object().dim() && rf.is_relation) {
        predicate(p, "is_permutation", [&] { return is_permutation(f, x, y, tol); });
    } else {
        p["is_permutation"] = false;
    }
    if (f.dom() == f.cod()) {
        predicate(p, "is_positive", [&] { return is_positive(f, tol); });
    } else {
        p["is_positive"] = nullptr;
    }
    if (f.kind() == SemiringKind::complex) {
        predicate(p, "is_real", [&] {
            return is_real(f, bell_from_classical(x, tol), bell_from_classical(y, tol), tol);
        });
    } else {
        p["is_real"] = nullptr;
    }
    Json j = report("classify", true);
    j["predicates"] = std::move(p);
    return j;
}

Json enumerate_frel(std::size_t n) {
    const auto all = enumerate_frel_structures(n);
    Json list = Json::array();
    for (const ClassicalStructure& cs : all) list.push_back(io::structure_to_json(cs));
    Json j = report("enumerate-frel", true);
    j["n"] = n;
    j["count"] = all.size();
    j["structures"] = std::move(list);
    return j;
}

Json relcompose(const std::vector<std::string>& files, const Options& o) {
    const Mor r = load_mor(files[0], o);
    const Mor s = load_mor(files[1], o);
    const ClassicalStructure x = load_structure(files[2], o);
    const ClassicalStructure y = load_structure(files[3], o);
    const ClassicalStructure z = load_structure(files[4], o);
    const Mor plain = compose(r, s);
    Json j = report("relcompose", true);
    j["result"] = io::mor_to_json(rel_compose(r, s, x, y, z, o.tol));
    j["composite"] = io::mor_to_json(plain);
    j["composite_is_relation"] = is_relation(plain, x, z, o.tol);
    return j;
}

Json measure_check(const std::string& pi, const std::string& xs, const Options& o) {
    const AxiomReport r = measurement_report(load_mor(pi, o), load_structure(xs, o), o.tol);
    Json j = report("measure-check", r.all_pass());
    j["checks"] = io::report_to_json(r);
    return j;
}

// f : A* X A -> B* Y B with standard dualities; A and B are read off the total dimensions.
Json cq_check(const std::string& fs, const std::string& xs, const std::string& ys, const Options& o) {
    const Mor f = load_mor(fs, o);
    const ClassicalStructure x = load_structure(xs, o);
    const ClassicalStructure y = load_structure(ys, o);
    const auto side = [](std::size_t total, std::size_t classical, const char* what) {
        if (classical == 0 || total % classical != 0) {
            throw Error(ErrorCode::dim_mismatch, std::string(what) + " is not divisible by its classical part");
        }
        const std::size_t sq = total / classical;
        auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(sq))));
        if (r * r != sq) throw Error(ErrorCode::dim_mismatch, std::string(what) + " quantum part is not a square");
        return r;
    };
    const std::size_t da = side(f.dom().dim(), x.object().dim(), "domain");
    const std::size_t db = side(f.cod().dim(), y.object().dim(), "codomain");
    const Obj a{da}, b{db};
    const Mor typed = f.retyped(a * x.object() * a, b * y.object() * b);
    const bool ok = is_cq(typed, x, y, CompactStructure::standard(a), CompactStructure::standard(b), o.tol);
    Json j = report("cq-check", ok);
    j["a"] = da;
    j["b"] = db;
    j["is_cq"] = ok;
    return j;
}

Json sc_compose_cmd(const std::string& ms, const std::string& ns, const Options& o) {
    const SCMor m = io::sc_from_json(io::read_json_file(ms), o.tol);
    const SCMor n = io::sc_from_json(io::read_json_file(ns), o.tol);
    const SCMor c = sc_compose(n, m);
    Json j = report("sc-compose", true);
    j["result"] = io::sc_to_json(c);
    return j;
}

Json spider_normalize(const std::string& expr) {
    const Term t = parse(expr);
    const NormalForm nf = normalize(t);
    Json j = report("spider normalize", true);
    j.update(io::normal_form_to_json(nf));
    j["canonical"] = to_text(to_term(nf));
    return j;
}

Json spider_eval(const std::string& expr, const std::string& structure, const Options& o) {
    const Term t = parse(expr);
    const ClassicalStructure cs = load_structure(structure, o);
    const Mor value = eval(t, cs);
    const NormalForm nf = normalize(t);
    const double dev = deviation(value, eval(to_term(nf), cs));
    const bool ok = dev <= o.tol;
    Json j = report("spider eval", ok);
    j.update(io::normal_form_to_json(nf));
    j["matrix"] = io::mor_to_json(value);
    j["normal_form_deviation"] = io::round12(dev);
    return j;
}

Json teleport(std::size_t d, const Options& o) {
    const TeleportationReport r = teleport_verify(default_teleportation(d), o.tol);
    Json j = report("teleport", r.pass);
    j["dim"] = d;
    j["deviation"] = io::round12(r.deviation);
    Json branches = Json::array();
    for (double b : r.branch_deviations) branches.push_back(io::round12(b));
    j["branch_deviations"] = std::move(branches);
    j["checks"] = io::report_to_json(r.checks);
    return j;
}

Json demo(const std::string& which, const Options& o) {
    const bool mbqc = which == "mbqc";
    const DemoReport r = mbqc ? mbqc_demo(o.tol) : coin_toss_demo(o.tol);
    Json j = report("demo " + which, r.pass);
    j["classical_dim"] = r.classical_dim;
    j["checks"] = io::report_to_json(r.checks);
    j["composite"] = io::mor_to_json(r.composite);
    if (mbqc) j["measured"] = io::mor_to_json(r.measured);
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Checks for classical structures, controlled quantum channels and spider terms"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_option("--tol", opt.tol, "Numerical tolerance")->capture_default_str();
    app.add_option("--semiring", opt.semiring, "Semiring for JSON inputs that do not name one")
        ->check(CLI::IsMember({"complex", "boolean"}));

    std::function<Json()> run;

    std::string file1, file2, file3;
    auto* cs = app.add_subcommand("check-structure", "Verify the classical structure axioms");
    cs->add_option("structure", file1)->required();
    cs->callback([&] { run = [&] { return check_structure(file1, opt); }; });

    auto* cl = app.add_subcommand("classify", "Report the classical-morphism predicates of f : X -> Y");
    cl->add_option("morphism", file1)->required();
    cl->add_option("x", file2)->required();
    cl->add_option("y", file3)->required();
    cl->callback([&] { run = [&] { return classify(file1, file2, file3, opt); }; });

    std::size_t n = 0;
    auto* en = app.add_subcommand("enumerate-frel", "List the boolean classical structures on n elements");
    en->add_option("--n", n)->required();
    en->callback([&] { run = [&] { return enumerate_frel(n); }; });

    std::vector<std::string> rel_files;
    auto* rc = app.add_subcommand("relcompose", "Relational composite r o~ s of r : Y -> Z and s : X -> Y");
    rc->add_option("files", rel_files, "r s x y z")->required()->expected(5);
    rc->callback([&] { run = [&] { return relcompose(rel_files, opt); }; });

    auto* mc = app.add_subcommand("measure-check", "Check pi : A -> X (x) A against the measurement equations");
    mc->add_option("pi", file1)->required();
    mc->add_option("x", file2)->required();
    mc->callback([&] { run = [&] { return measure_check(file1, file2, opt); }; });

    auto* cq = app.add_subcommand("cq-check", "Check f : A* X A -> B* Y B for classical-quantum membership");
    cq->add_option("f", file1)->required();
    cq->add_option("x", file2)->required();
    cq->add_option("y", file3)->required();
    cq->callback([&] { run = [&] { return cq_check(file1, file2, file3, opt); }; });

    auto* sc = app.add_subcommand("sc-compose", "Compose SC morphisms: n o m");
    sc->add_option("m", file1)->required();
    sc->add_option("n", file2)->required();
    sc->callback([&] { run = [&] { return sc_compose_cmd(file1, file2, opt); }; });

    std::string expr;
    auto* sp = app.add_subcommand("spider", "Spider terms");
    sp->require_subcommand(1);
    auto* spn = sp->add_subcommand("normalize", "Normalise a term");
    spn->add_option("--expr", expr)->required();
    spn->callback([&] { run = [&] { return spider_normalize(expr); }; });
    auto* spe = sp->add_subcommand("eval", "Evaluate a term over a structure");
    spe->add_option("--expr", expr)->required();
    spe->add_option("--structure", file1)->required();
    spe->callback([&] { run = [&] { return spider_eval(expr, file1, opt); }; });

    std::size_t dim = 2;
    auto* tp = app.add_subcommand("teleport", "Verify teleportation with generalized Pauli corrections");
    tp->add_option("--dim", dim)->capture_default_str();
    tp->callback([&] { run = [&] { return teleport(dim, opt); }; });

    std::string which;
    auto* dm = app.add_subcommand("demo", "Run a protocol demo");
    dm->add_option("name", which)->required()->check(CLI::IsMember({"mbqc", "qkd"}));
    dm->callback([&] { run = [&] { return demo(which, opt); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const Json out = run();
        std::cout << out.dump(2) << '\n';
        return out.at("pass").get<bool>() ? 0 : 1;
    } catch (const Error& e) {
        if (is_check_failure(e.code())) {
            Json j{{"pass", false}, {"error", e.what()}};
            std::cout << j.dump(2) << '\n';
            return 1;
        }
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const Json::exception& e) {
        std::cerr << "error: malformed input: " << e.what() << '\n';
        return 2;
    }
}
