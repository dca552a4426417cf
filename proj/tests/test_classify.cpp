#include <doctest.h>

#include "cqm/classify.hpp"
#include "support.hpp"

using namespace cqm;
using namespace cqm::testing;

namespace {

const SemiringKind B = SemiringKind::boolean;

ClassicalStructure std_cs(std::size_t n) { return ClassicalStructure::standard(Obj{n}); }
CompactStructure std_cc(std::size_t n) { return CompactStructure::standard(Obj{n}); }

Mor pauli_x() { return matrix_mor(Obj{2}, Obj{2}, {{0, 1}, {1, 0}}); }

// The channel rho -> K rho K^dagger in the vectorised (A*, A) layout.
Mor pure_channel(const Mor& k) {
    return tensor(Mor(k.dom(), k.cod(), k.matrix().conjugate()), k);
}

// The literal composite (A (x) B* (x) eps_B) o (A (x) f (x) B*) o (eta_{A*} (x) A (x) B*).
Mor literal_cp_transpose(const Mor& f, const CompactStructure& ca, const CompactStructure& cb) {
    const SemiringKind k = f.kind();
    const CompactStructure da = dual(ca);
    const Mor step1 = tensor(da.eta, identity(ca.a * cb.astar, k));
    const Mor step2 = tensor({identity(ca.a, k), f, identity(cb.astar, k)});
    const Mor step3 = tensor(identity(ca.a * cb.astar, k), cb.eps);
    return compose(step3, compose(step2, step1));
}

bool entrywise_classical(const Mor& f, double tol = 1e-9) {
    for (Eigen::Index j = 0; j < f.matrix().cols(); ++j) {
        for (Eigen::Index i = 0; i < f.matrix().rows(); ++i) {
            const Scalar v = f.matrix()(i, j);
            if (std::abs(v.imag()) > tol || v.real() < -tol) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("is_positive") {
    CHECK(is_positive(identity(Obj{3})));
    CHECK_FALSE(is_positive(Mor::scalar(-1.0)));
    CHECK(is_positive(Mor::scalar(0.0)));
    const Mor off = matrix_mor(Obj{2}, Obj{2}, {{0, 1}, {1, 0}}, B);
    CHECK_FALSE(is_positive(off));
    CHECK(is_positive(matrix_mor(Obj{2}, Obj{2}, {{1, 1}, {1, 1}}, B)));
    CHECK_FALSE(is_positive(matrix_mor(Obj{2}, Obj{2}, {{1, Scalar(0, 1)}, {0, 1}})));
    try {
        is_positive(Mor::zero(Obj{2}, Obj{3}));
        FAIL("expected NotEndo");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::not_endo);
    }
}

TEST_CASE("property: boolean positivity agrees with exhaustive factor search, dims <= 3") {
    std::size_t positives = 0;
    for (std::size_t n = 1; n <= 3; ++n) {
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << (n * n)); ++code) {
            const Mor e = boolean_from_bits(Obj{n}, Obj{n}, code);
            const bool oracle = boolean_positive_oracle(e);
            REQUIRE(is_positive(e) == oracle);
            positives += oracle ? 1 : 0;
        }
    }
    CHECK(positives > 10);
}

TEST_CASE("completely positive maps") {
    const CompactStructure c2 = std_cc(2);
    CHECK(is_completely_positive(identity(Obj{2, 2}), c2, c2));
    // The transpose map swaps the two vectorisation indices.
    const Mor transpose_map = symmetry(Obj{2}, Obj{2});
    CHECK_FALSE(is_completely_positive(transpose_map, c2, c2));
    CHECK_FALSE(choi_oracle_psd(transpose_map, 2, 2));

    auto rng = make_rng(21);
    const ClassicalStructure rotated = classical_from_basis(random_unitary(rng, Obj{3}));
    for (const ClassicalStructure& cs : {std_cs(2), std_cs(3), rotated}) {
        const CompactStructure b = bell_from_classical(cs);
        CHECK(is_completely_positive(decoherence(cs), b, b));
    }
    const ClassicalStructure fz = ClassicalStructure::standard(Obj{2}, B);
    const CompactStructure bz = bell_from_classical(fz);
    CHECK(is_completely_positive(decoherence(fz), bz, bz));

    CHECK_THROWS_AS(is_completely_positive(identity(Obj{2}), c2, c2), Error);
}

TEST_CASE("contraction agrees with the literal composite") {
    auto rng = make_rng(22);
    for (int k = 0; k < 10; ++k) {
        const std::size_t a = pick(rng, 1, 3), b = pick(rng, 1, 3);
        const Mor u = random_unitary(rng, Obj{a});
        const CompactStructure ca = bell_from_classical(classical_from_basis(u));
        const CompactStructure cb = compact_tensor(std_cc(2), std_cc(b));
        const Mor f = random_mor(rng, ca.astar * ca.a, cb.astar * cb.a);
        CHECK(approx_eq(cp_transpose(f, ca, cb), literal_cp_transpose(f, ca, cb), 1e-10));
    }
    const CompactStructure bz = CompactStructure::standard(Obj{2}, B);
    for (int k = 0; k < 10; ++k) {
        const Mor f = random_boolean_mor(rng, Obj{2, 2}, Obj{2, 2});
        CHECK(cp_transpose(f, bz, bz).matrix() == literal_cp_transpose(f, bz, bz).matrix());
    }
}

TEST_CASE("property: complete positivity agrees with the Choi oracle on 200 maps") {
    auto rng = make_rng(23);
    std::size_t cp_count = 0;
    for (int k = 0; k < 200; ++k) {
        const std::size_t a = pick(rng, 1, 3), b = pick(rng, 1, 3);
        const Obj oa{a}, ob{b};
        Mor f = Mor::zero(oa * oa, ob * ob);
        const std::size_t kraus = pick(rng, 1, 3);
        for (std::size_t i = 0; i < kraus; ++i) f = add(f, pure_channel(random_mor(rng, oa, ob)));
        switch (k % 4) {
            case 0: break;  // completely positive by construction
            case 1: f = add(f, scaled(random_mor(rng, oa * oa, ob * ob), 0.3)); break;
            case 2: f = compose(symmetry(ob, ob), f); break;  // followed by transpose
            default: f = add(f, scaled(pure_channel(random_mor(rng, oa, ob)), -0.05)); break;
        }
        const bool ours = is_completely_positive(f, std_cc(a), std_cc(b));
        REQUIRE(ours == choi_oracle_psd(f, a, b));
        cp_count += ours ? 1 : 0;
    }
    CHECK(cp_count >= 50);
    CHECK(cp_count < 200);
}

TEST_CASE("classical maps") {
    const ClassicalStructure s2 = std_cs(2);
    CHECK(is_classical_map(matrix_mor(Obj{2}, Obj{2}, {{1, 2}, {0, 1}}), s2, s2));
    CHECK_FALSE(is_classical_map(Mor::scalar(-1.0), ClassicalStructure::trivial(),
                                 ClassicalStructure::trivial()));
    auto rng = make_rng(24);
    for (const ClassicalStructure& cs :
         {s2, std_cs(3), classical_from_basis(random_unitary(rng, Obj{2}))}) {
        CHECK(is_classical_map(cs.delta(), cs, product_structure(cs, cs)));
        CHECK(is_classical_map(cs.top(), cs, ClassicalStructure::trivial()));
    }
    CHECK_THROWS_AS(is_classical_map(identity(Obj{3}), s2, s2), Error);
}

TEST_CASE("property: classical maps in standard bases are the nonnegative matrices, dims <= 4") {
    auto rng = make_rng(25);
    for (int k = 0; k < 120; ++k) {
        const std::size_t n = pick(rng, 1, 4), m = pick(rng, 1, 4);
        Mor f = random_nonneg_mor(rng, Obj{n}, Obj{m});
        if (k % 3 == 1) {
            Matrix e = f.matrix();
            e(static_cast<Eigen::Index>(pick(rng, 0, m - 1)), static_cast<Eigen::Index>(pick(rng, 0, n - 1))) = -0.5;
            f = Mor(f.dom(), f.cod(), e);
        } else if (k % 3 == 2) {
            Matrix e = f.matrix();
            e(0, 0) += Scalar(0, 0.2);
            f = Mor(f.dom(), f.cod(), e);
        }
        REQUIRE(is_classical_map(f, std_cs(n), std_cs(m)) == entrywise_classical(f));
    }
}

TEST_CASE("decoherence") {
    const Mor xi = decoherence(std_cs(2));
    Matrix diag = Matrix::Zero(4, 4);
    diag(0, 0) = diag(3, 3) = 1.0;
    CHECK(xi.matrix() == diag);
    auto rng = make_rng(26);
    const ClassicalStructure cs = classical_from_basis(random_unitary(rng, Obj{3}));
    const Mor x3 = decoherence(cs);
    CHECK(approx_eq(compose(x3, x3), x3, 1e-10));
    CHECK(approx_eq(dagger(x3), x3, 1e-10));

    // A dense state on X (x) X keeps only its (i, i) entries.
    const Mor rho = random_mor(rng, Obj{}, Obj{3, 3});
    const Mor kept = compose(decoherence(std_cs(3)), rho);
    for (Eigen::Index i = 0; i < 3; ++i) {
        for (Eigen::Index j = 0; j < 3; ++j) {
            CHECK(kept.matrix()(i * 3 + j, 0) == (i == j ? rho.matrix()(i * 3 + j, 0) : Scalar(0.0)));
        }
    }
}

TEST_CASE("decoherent maps and the translation to classical maps") {
    auto rng = make_rng(27);
    const ClassicalStructure s2 = std_cs(2), s3 = std_cs(3);
    const Mor f = random_nonneg_mor(rng, Obj{2}, Obj{3});
    const Mor g = to_decoherent(f, s2, s3);
    CHECK(approx_eq(g, compose(s3.delta(), compose(f, s2.nabla()))));
    CHECK(is_decoherent(g, s2, s3));
    CHECK(approx_eq(to_classical(g, s2, s3), f, 1e-12));
    CHECK_FALSE(is_decoherent(identity(Obj{2, 2}), s2, s2));
    CHECK(is_decoherent(decoherence(s2), s2, s2));
    CHECK(approx_eq(to_decoherent(identity(Obj{2}), s2, s2), decoherence(s2)));

    // A positive column vector becomes the diagonal matrix of its entries.
    const Mor v = matrix_mor(Obj{}, Obj{3}, {{0.5}, {2.0}, {0.0}});
    const Mor dv = to_decoherent(v, ClassicalStructure::trivial(), s3);
    Matrix expected = Matrix::Zero(9, 1);
    expected(0, 0) = 0.5;
    expected(4, 0) = 2.0;
    CHECK(dv.matrix() == expected);

    try {
        to_decoherent(Mor::scalar(-1.0), ClassicalStructure::trivial(), ClassicalStructure::trivial());
        FAIL("expected ClassificationFailure");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::classification_failure);
    }
    CHECK_THROWS_AS(to_classical(identity(Obj{2, 2}), s2, s2), Error);
}

TEST_CASE("property: classical iff decoherent image is completely positive, dims <= 4") {
    auto rng = make_rng(28);
    for (int k = 0; k < 60; ++k) {
        const std::size_t n = pick(rng, 1, 4), m = pick(rng, 1, 4);
        const ClassicalStructure x = k % 2 ? std_cs(n) : classical_from_basis(random_unitary(rng, Obj{n}));
        const ClassicalStructure y = std_cs(m);
        // Entries drawn in the copyable bases, sometimes negative or complex.
        Matrix coords = random_nonneg_mor(rng, Obj{n}, Obj{m}).matrix();
        if (k % 3 == 0) coords(0, 0) = -0.7;
        if (k % 5 == 0) coords(0, 0) = Scalar(0.3, 0.4);
        const Matrix bx = copyable_basis(x);
        const Mor f(Obj{n}, Obj{m}, coords * bx.adjoint());
        const bool classical = is_classical_map(f, x, y);
        const Mor fxi = compose(y.delta(), compose(f, x.nabla()));
        const bool cp = is_completely_positive(fxi, bell_from_classical(x), bell_from_classical(y));
        REQUIRE(classical == cp);
        if (classical) {
            CHECK(approx_eq(to_classical(to_decoherent(f, x, y), x, y), f, 1e-9));
        }
    }
}

TEST_CASE("property: classical maps compose and are real") {
    auto rng = make_rng(29);
    for (int k = 0; k < 30; ++k) {
        const std::size_t a = pick(rng, 1, 3), b = pick(rng, 1, 3), c = pick(rng, 1, 3);
        const Mor f = random_nonneg_mor(rng, Obj{a}, Obj{b});
        const Mor g = random_nonneg_mor(rng, Obj{b}, Obj{c});
        REQUIRE(is_classical_map(f, std_cs(a), std_cs(b)));
        CHECK(is_classical_map(compose(g, f), std_cs(a), std_cs(c)));
        CHECK(is_real(f, std_cc(a), std_cc(b)));
    }
}

TEST_CASE("is_real") {
    auto rng = make_rng(30);
    CHECK(is_real(random_real_mor(rng, Obj{2}, Obj{3}), std_cc(2), std_cc(3)));
    const CompactStructure t = CompactStructure::trivial();
    CHECK_FALSE(is_real(Mor::scalar(Scalar(0, 1)), t, t));
}

TEST_CASE("relation flags") {
    const ClassicalStructure s2 = std_cs(2), s3 = std_cs(3);
    const Mor r = matrix_mor(Obj{2}, Obj{3}, {{1, 0}, {1, 1}, {0, 0}});
    const RelationFlags fr = relation_flags(r, s2, s3);
    CHECK(fr.is_relation);
    CHECK_FALSE(fr.is_single_valued);
    CHECK(fr.is_total);
    CHECK(fr.is_lax_comonoid_hom);

    CHECK_FALSE(relation_flags(Mor::scalar(2.0), ClassicalStructure::trivial(),
                               ClassicalStructure::trivial()).is_relation);

    const Mor fn = matrix_mor(Obj{3}, Obj{2}, {{1, 0, 1}, {0, 1, 0}});
    const RelationFlags ff = relation_flags(fn, s3, s2);
    CHECK(ff.is_function);

    const RelationFlags neg = relation_flags(Mor::scalar(-1.0), ClassicalStructure::trivial(),
                                             ClassicalStructure::trivial());
    CHECK(neg.is_lax_comonoid_hom);
    CHECK_FALSE(neg.is_relation);
}

TEST_CASE("property: relation flags match column counts (exhaustive 0/1 up to 3x3)") {
    for (std::size_t n = 1; n <= 3; ++n) {
        for (std::size_t m = 1; m <= 3; ++m) {
            for (std::uint64_t code = 0; code < (std::uint64_t{1} << (n * m)); ++code) {
                const Mor bits = boolean_from_bits(Obj{n}, Obj{m}, code);
                for (const SemiringKind kind : {SemiringKind::complex, B}) {
                    const Mor r(Obj{n}, Obj{m}, bits.matrix(), kind);
                    const RelationFlags f = relation_flags(r, ClassicalStructure::standard(Obj{n}, kind),
                                                           ClassicalStructure::standard(Obj{m}, kind));
                    bool at_most_one = true, at_least_one = true;
                    for (Eigen::Index j = 0; j < r.matrix().cols(); ++j) {
                        const double ones = r.matrix().col(j).real().sum();
                        at_most_one = at_most_one && ones <= 1.0;
                        at_least_one = at_least_one && ones >= 1.0;
                    }
                    REQUIRE(f.is_relation);
                    CHECK(f.is_lax_comonoid_hom);
                    CHECK(f.is_single_valued == at_most_one);
                    CHECK(f.is_total == at_least_one);
                    CHECK(f.is_function == (f.is_single_valued && f.is_total));
                }
            }
        }
    }
}

TEST_CASE("property: on real maps, lax comonoid homomorphism iff r equals its third power") {
    auto rng = make_rng(31);
    const double values[] = {-1.0, 0.0, 1.0, 0.5, 2.0};
    for (int k = 0; k < 200; ++k) {
        const std::size_t n = pick(rng, 1, 2), m = pick(rng, 1, 2);
        Matrix e(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
        for (Eigen::Index j = 0; j < e.cols(); ++j) {
            for (Eigen::Index i = 0; i < e.rows(); ++i) {
                // Bias towards {-1, 0, 1} so both outcomes occur often.
                e(i, j) = values[pick(rng, 0, k % 4 == 0 ? 4 : 2)];
            }
        }
        const Mor r(Obj{n}, Obj{m}, e);
        const Matrix cube = e.cwiseProduct(e).cwiseProduct(e);
        const bool oracle = (cube - e).cwiseAbs().maxCoeff() < 1e-12;
        REQUIRE(relation_flags(r, std_cs(n), std_cs(m)).is_lax_comonoid_hom == oracle);
    }
}

TEST_CASE("permutations") {
    const ClassicalStructure s2 = std_cs(2), s3 = std_cs(3);
    CHECK(is_permutation(symmetry(Obj{2}, Obj{2}).retyped(Obj{4}, Obj{4}), std_cs(4), std_cs(4)));
    const Mor collapse = matrix_mor(Obj{2}, Obj{2}, {{1, 1}, {0, 0}});
    CHECK_FALSE(is_permutation(collapse, s2, s2));
    std::size_t found = 0;
    for (std::uint64_t code = 0; code < 512; ++code) {
        const Mor r = boolean_from_bits(Obj{3}, Obj{3}, code);
        const Mor rc(Obj{3}, Obj{3}, r.matrix());
        if (is_permutation(rc, s3, s3)) {
            ++found;
            CHECK(approx_eq(compose(dagger(rc), rc), identity(Obj{3})));
        }
        CHECK(is_permutation(r, ClassicalStructure::standard(Obj{3}, B),
                             ClassicalStructure::standard(Obj{3}, B)) == is_permutation(rc, s3, s3));
    }
    CHECK(found == 6);
}

TEST_CASE("stochastic maps") {
    const ClassicalStructure s2 = std_cs(2), s3 = std_cs(3);
    const Mor s = matrix_mor(Obj{2}, Obj{3}, {{0.2, 1.0}, {0.3, 0.0}, {0.5, 0.0}});
    const StochasticFlags fs = stochastic_flags(s, s2, s3);
    CHECK(fs.is_stochastic);
    CHECK_FALSE(fs.is_doubly_stochastic);
    const Mor half = matrix_mor(Obj{2}, Obj{2}, {{0.5, 0.5}, {0.5, 0.5}});
    CHECK(stochastic_flags(half, s2, s2).is_doubly_stochastic);
    CHECK_FALSE(stochastic_flags(matrix_mor(Obj{2}, Obj{2}, {{0.5, 0.5}, {0.6, 0.5}}), s2, s2)
                    .is_stochastic);
    // A stochastic map between sets of different sizes is never doubly stochastic.
    auto rng = make_rng(32);
    for (int k = 0; k < 30; ++k) {
        const std::size_t n = pick(rng, 1, 4), m = pick(rng, 1, 4);
        Matrix e = random_nonneg_mor(rng, Obj{n}, Obj{m}, 0.0).matrix();
        for (Eigen::Index j = 0; j < e.cols(); ++j) e.col(j) /= e.col(j).sum();
        const StochasticFlags f = stochastic_flags(Mor(Obj{n}, Obj{m}, e), std_cs(n), std_cs(m));
        CHECK(f.is_stochastic);
        if (f.is_doubly_stochastic) CHECK(n == m);
        if (n != m) CHECK_FALSE(f.is_doubly_stochastic);
    }
}

TEST_CASE("majorization witnesses") {
    const ClassicalStructure s2 = std_cs(2), s3 = std_cs(3);
    const Mor f = matrix_mor(Obj{2}, Obj{3}, {{0.2, 1.0}, {0.3, 0.0}, {0.5, 0.0}});
    CHECK(majorizes_witness(f, f, identity(Obj{2}), identity(Obj{3}), s2, s3, s2, s3));
    const Mor p2 = matrix_mor(Obj{2}, Obj{2}, {{0, 1}, {1, 0}});
    const Mor p3 = matrix_mor(Obj{3}, Obj{3}, {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
    const Mor g = compose(p3, compose(f, dagger(p2)));
    CHECK(majorizes_witness(f, g, p2, p3, s2, s3, s2, s3));
    CHECK_FALSE(majorizes_witness(f, f, p2, p3, s2, s3, s2, s3));
    const Mor not_ds = matrix_mor(Obj{2}, Obj{2}, {{1, 1}, {0, 0}});
    CHECK_FALSE(majorizes_witness(f, compose(f, dagger(not_ds)), not_ds, identity(Obj{3}), s2, s3, s2, s3));
}

TEST_CASE("purity") {
    auto rng = make_rng(33);
    const CompactStructure c2 = std_cc(2), c3 = std_cc(3);
    for (int k = 0; k < 10; ++k) {
        CHECK(is_pure(pure_channel(random_mor(rng, Obj{2}, Obj{3})), c2, c3));
    }
    const Mor mixed = scaled(add(pure_channel(identity(Obj{2})), pure_channel(pauli_x())), 0.5);
    CHECK_FALSE(is_pure(mixed, c2, c2));
    CHECK(is_completely_positive(mixed, c2, c2));
    const PurityReport zero = purity(Mor::zero(Obj{2, 2}, Obj{2, 2}), c2, c2);
    CHECK(zero.pure);
    CHECK(zero.degenerate);
    CHECK_FALSE(purity(identity(Obj{2, 2}), c2, c2).degenerate);
    const CompactStructure bz = CompactStructure::standard(Obj{2}, B);
    try {
        is_pure(identity(Obj{2, 2}, B), bz, bz);
        FAIL("expected BooleanUnsupported");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::boolean_unsupported);
    }
}
