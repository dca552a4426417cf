#include <doctest.h>

#include "cqm/spider.hpp"
#include "support.hpp"

using namespace cqm;
using namespace cqm::testing;

namespace {

SpiderComponent comp(std::size_t n, std::size_t m, std::vector<std::size_t> in, std::vector<std::size_t> out) {
    return SpiderComponent{n, m, std::move(in), std::move(out)};
}

Mor eval_text(const std::string& s, const ClassicalStructure& cs) { return eval(parse(s), cs); }

std::vector<ClassicalStructure> sample_structures(Rng& rng) {
    return {ClassicalStructure::standard(Obj{2}), ClassicalStructure::standard(Obj{3}),
            classical_from_basis(random_unitary(rng, Obj{2})), classical_from_basis(random_unitary(rng, Obj{3}))};
}

// Widths between consecutive layers of a composite chain.
std::size_t max_width(const Term& t) {
    const auto [n, m] = typecheck(t);
    std::size_t w = std::max(n, m);
    if (t.kind() == Term::Kind::compose) w = std::max({w, max_width(t.left()), max_width(t.right())});
    return w;
}

}  // namespace

TEST_CASE("parsing") {
    CHECK(to_ast_string(parse("DELTA ; NABLA")) == "COMPOSE(NABLA, DELTA)");
    CHECK(to_ast_string(parse("DELTA ; (ID * DELTA)")) == "COMPOSE(TENSOR(ID, DELTA), DELTA)");
    CHECK(to_ast_string(parse("DELTA ; ID * TOP")) == "COMPOSE(TENSOR(ID, TOP), DELTA)");
    CHECK(to_ast_string(parse("BOT ; DELTA ; NABLA")) == "COMPOSE(NABLA, COMPOSE(DELTA, BOT))");
    CHECK(to_ast_string(parse("ID * ID * SIGMA")) == "TENSOR(TENSOR(ID, ID), SIGMA)");
    CHECK(parse("((DELTA))") == parse("DELTA"));
    CHECK(parse("DELTA\n ;\tNABLA") == parse("DELTA;NABLA"));
}

TEST_CASE("syntax errors carry positions") {
    const auto expect = [](const std::string& text, std::size_t line, std::size_t col) {
        CAPTURE(text);
        try {
            parse(text);
            FAIL("expected SyntaxError");
        } catch (const TermError& e) {
            CHECK(e.code() == ErrorCode::syntax_error);
            CHECK(e.line() == line);
            CHECK(e.column() == col);
        }
    };
    expect("DELTA ;", 1, 8);
    expect("DELTA ; NABLAA", 1, 9);
    expect("(DELTA ; NABLA", 1, 15);
    expect("DELTA ; NABLA)", 1, 14);
    expect("DELTA\n  ; ?", 2, 5);
    expect("", 1, 1);
    expect("DELTA NABLA", 1, 7);
}

TEST_CASE("typing") {
    CHECK(typecheck(parse("DELTA")) == std::pair<std::size_t, std::size_t>{1, 2});
    CHECK(typecheck(parse("DELTA ; NABLA")) == std::pair<std::size_t, std::size_t>{1, 1});
    CHECK(typecheck(parse("SIGMA * BOT")) == std::pair<std::size_t, std::size_t>{2, 3});
    CHECK(typecheck(parse("BOT ; TOP")) == std::pair<std::size_t, std::size_t>{0, 0});
    try {
        typecheck(parse("TOP ; DELTA"));
        FAIL("expected TypeError");
    } catch (const TermError& e) {
        CHECK(e.code() == ErrorCode::type_error);
        CHECK(e.line() == 1);
        CHECK(e.column() == 5);
    }
    // The innermost offending composite is reported.
    try {
        typecheck(parse("DELTA ; (NABLA ; NABLA)"));
        FAIL("expected TypeError");
    } catch (const TermError& e) {
        CHECK(e.column() == 16);
    }
    const auto cs = ClassicalStructure::standard(Obj{2});
    CHECK_THROWS_AS(eval_text("TOP ; DELTA", cs), TermError);
    CHECK_THROWS_AS(normalize(parse("TOP ; DELTA")), TermError);
}

TEST_CASE("evaluation") {
    auto rng = make_rng(81);
    for (const ClassicalStructure& cs : sample_structures(rng)) {
        const Obj& x = cs.object();
        CHECK(approx_eq(eval_text("DELTA ; NABLA", cs), identity(x), 1e-9));
        // Frobenius: (nabla x id)(id x delta) = delta nabla = (id x nabla)(delta x id).
        const Mor lhs = eval_text("(ID * DELTA) ; (NABLA * ID)", cs);
        const Mor mid = eval_text("NABLA ; DELTA", cs);
        const Mor rhs = eval_text("(DELTA * ID) ; (ID * NABLA)", cs);
        CHECK(approx_eq(lhs, mid, 1e-9));
        CHECK(approx_eq(rhs, mid, 1e-9));
        CHECK(approx_eq(eval_text("SIGMA ; NABLA", cs), eval_text("NABLA", cs), 1e-9));
        CHECK(approx_eq(eval_text("DELTA ; SIGMA", cs), cs.delta(), 1e-9));
        CHECK(approx_eq(eval_text("SIGMA", cs), symmetry(x, x), 1e-12));
        CHECK(approx_eq(eval_text("BOT ; TOP", cs), Mor::scalar(static_cast<double>(x.dim())), 1e-9));
    }
    const ClassicalStructure fx = frel_copy_x();
    CHECK(approx_eq(eval_text("DELTA ; NABLA", fx), identity(fx.object(), SemiringKind::boolean)));
    CHECK(eval_text("BOT ; TOP", fx).kind() == SemiringKind::boolean);
}

TEST_CASE("components") {
    CHECK(connected_components(parse("DELTA")).components == std::vector{comp(1, 2, {0}, {0, 1})});
    const NormalForm two = connected_components(parse("DELTA * DELTA"));
    CHECK(two.components == std::vector{comp(1, 2, {0}, {0, 1}), comp(1, 2, {1}, {2, 3})});
    CHECK(connected_components(parse("(DELTA * ID) ; (ID * NABLA)")).components.size() == 1);
    const NormalForm crossed = connected_components(parse("SIGMA"));
    CHECK(crossed.components == std::vector{comp(1, 1, {0}, {1}), comp(1, 1, {1}, {0})});
    // A component touching only outputs sorts after those with inputs.
    const NormalForm mixed = connected_components(parse("BOT * TOP"));
    CHECK(mixed.components == std::vector{comp(1, 0, {0}, {}), comp(0, 1, {}, {0})});
    // Closed pieces go last.
    const NormalForm closed = connected_components(parse("(BOT ; TOP) * ID"));
    CHECK(closed.components == std::vector{comp(1, 1, {0}, {0}), comp(0, 0, {}, {})});
}

TEST_CASE("normal forms") {
    CHECK(normalize(parse("DELTA ; NABLA")).components == std::vector{comp(1, 1, {0}, {0})});
    const NormalForm frob = normalize(parse("(ID * DELTA) ; (NABLA * ID)"));
    CHECK(frob.components == std::vector{comp(2, 2, {0, 1}, {0, 1})});
    const NormalForm pieces = normalize(parse("DELTA * TOP"));
    CHECK(pieces.components == std::vector{comp(1, 2, {0}, {0, 1}), comp(1, 0, {1}, {})});
    CHECK(pieces.inputs == 2);
    CHECK(pieces.outputs == 2);
    const NormalForm scalar = normalize(parse("BOT ; TOP"));
    CHECK(scalar.components == std::vector{comp(0, 0, {}, {})});
    CHECK(to_text(to_term(scalar)) == "(BOT ; TOP)");
    CHECK(to_text(to_term(normalize(parse("ID")))) == "ID");
}

TEST_CASE("text round trip") {
    auto rng = make_rng(82);
    for (int k = 0; k < 200; ++k) {
        const Term t = random_term(rng);
        CHECK(parse(to_text(t)) == t);
    }
}

TEST_CASE("random terms respect their bounds") {
    auto rng = make_rng(83);
    for (int k = 0; k < 500; ++k) {
        const Term t = random_term(rng, 8, 4);
        CHECK(generator_count(t) <= 8);
        CHECK(max_width(t) <= 4);
        CHECK_NOTHROW(typecheck(t));
    }
    for (int k = 0; k < 100; ++k) CHECK(normalize(random_connected_term(rng)).components.size() == 1);
}

TEST_CASE("property: normalisation is sound") {
    auto rng = make_rng(84);
    const auto structures = sample_structures(rng);
    const ClassicalStructure fz = frel_copy_z(), fx = frel_copy_x();
    for (int k = 0; k < 1000; ++k) {
        const Term t = random_term(rng);
        const NormalForm nf = normalize(t);
        const Term canon = to_term(nf);
        CAPTURE(to_text(t));
        CHECK(typecheck(canon) == typecheck(t));
        std::size_t n_sum = 0, m_sum = 0;
        for (const SpiderComponent& c : nf.components) {
            n_sum += c.n;
            m_sum += c.m;
        }
        CHECK(n_sum == nf.inputs);
        CHECK(m_sum == nf.outputs);
        const ClassicalStructure& cs = structures[static_cast<std::size_t>(k) % structures.size()];
        CHECK(approx_eq(eval(t, cs), eval(canon, cs), 1e-9));
        if (k % 10 == 0) {
            CHECK(approx_eq(eval(t, fz), eval(canon, fz)));
            CHECK(approx_eq(eval(t, fx), eval(canon, fx)));
        }
        // Idempotence.
        CHECK(normalize(canon) == nf);
    }
}

TEST_CASE("property: connected terms are spiders") {
    auto rng = make_rng(85);
    const auto structures = sample_structures(rng);
    for (int k = 0; k < 300; ++k) {
        const Term t = random_connected_term(rng);
        const auto [n, m] = typecheck(t);
        const NormalForm nf = normalize(t);
        REQUIRE(nf.components.size() == 1);
        CHECK(nf.components[0].n == n);
        CHECK(nf.components[0].m == m);
        const ClassicalStructure& cs = structures[static_cast<std::size_t>(k) % structures.size()];
        CHECK(approx_eq(eval(t, cs), spider_matrix(cs, n, m), 1e-9));
    }
}
