#include "cqm/structures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace cqm {

// ------------------------------------------------------------ AxiomReport

void AxiomReport::add(std::string name, bool passed, double deviation) {
    for (auto& c : checks_) {
        if (c.name == name) {
            c.passed = c.passed && passed;
            c.deviation = std::max(c.deviation, deviation);
            return;
        }
    }
    checks_.push_back(AxiomCheck{std::move(name), passed, deviation});
}

void AxiomReport::add_equation(std::string name, const Mor& lhs, const Mor& rhs, double tol) {
    const double d = deviation(lhs, rhs);
    const bool ok = lhs.kind() == SemiringKind::boolean ? d == 0.0 : d <= tol;
    add(std::move(name), ok, d);
}

void AxiomReport::merge(const AxiomReport& other) {
    for (const auto& c : other.checks_) add(c.name, c.passed, c.deviation);
}

bool AxiomReport::all_pass() const {
    return std::all_of(checks_.begin(), checks_.end(), [](const AxiomCheck& c) { return c.passed; });
}

const AxiomCheck& AxiomReport::at(const std::string& name) const {
    for (const auto& c : checks_) {
        if (c.name == name) return c;
    }
    throw std::out_of_range("no axiom check named " + name);
}

// ------------------------------------------------------- compact structures

CompactStructure CompactStructure::bell(const Obj& a, const Obj& astar, const Mor& eta) {
    if (!eta.dom().is_unit() || !(eta.cod() == astar * a)) {
        throw Error(ErrorCode::dim_mismatch, "eta must have type I -> " + (astar * a).str());
    }
    Mor eps = compose(dagger(eta), symmetry(a, astar, eta.kind()));
    return CompactStructure{a, astar, eta, std::move(eps)};
}

CompactStructure CompactStructure::standard(const Obj& a, SemiringKind kind) {
    const std::size_t n = a.dim();
    Mor eta = Mor::zero(Obj(), a * a, kind);
    Matrix m = eta.matrix();
    for (std::size_t i = 0; i < n; ++i) m(static_cast<Eigen::Index>(i * n + i), 0) = 1.0;
    return bell(a, a, Mor(Obj(), a * a, std::move(m), kind));
}

CompactStructure CompactStructure::trivial(SemiringKind kind) {
    return standard(Obj(), kind);
}

CompactStructure dual(const CompactStructure& c) {
    const SemiringKind k = c.eta.kind();
    return CompactStructure{c.astar, c.a, compose(symmetry(c.astar, c.a, k), c.eta),
                            compose(c.eps, symmetry(c.astar, c.a, k))};
}

CompactStructure compact_tensor(const CompactStructure& ca, const CompactStructure& cb) {
    require_same_semiring(ca.eta, cb.eta);
    // eta_AB = (B* (x) eta_A (x) B) o eta_B
    Mor eta = compose_at(ca.eta, cb.eta, cb.astar.size());
    // eps_AB = eps_A o (A (x) eps_B (x) A*)
    Mor eps = precompose_at(ca.eps, cb.eps, ca.a.size());
    return CompactStructure{ca.a * cb.a, cb.astar * ca.astar, std::move(eta), std::move(eps)};
}

AxiomReport verify_compact(const CompactStructure& c, double tol) {
    const SemiringKind k = c.eta.kind();
    if (!c.eta.dom().is_unit() || !(c.eta.cod() == c.astar * c.a) || !c.eps.cod().is_unit() ||
        !(c.eps.dom() == c.a * c.astar)) {
        throw Error(ErrorCode::dim_mismatch, "compact structure fields are mistyped");
    }
    AxiomReport r;
    const Mor t1 = compose(tensor(c.eps, identity(c.a, k)), tensor(identity(c.a, k), c.eta));
    r.add_equation("triangle_a", t1, identity(c.a, k), tol);
    const Mor t2 = compose(tensor(identity(c.astar, k), c.eps), tensor(c.eta, identity(c.astar, k)));
    r.add_equation("triangle_astar", t2, identity(c.astar, k), tol);
    return r;
}

// ----------------------------------------------------- classical structures

ClassicalStructure::ClassicalStructure(Obj x, Mor delta, Mor top)
    : x_(std::move(x)), delta_(std::move(delta)), top_(std::move(top)) {
    require_same_semiring(delta_, top_);
    if (!(delta_.dom() == x_) || !(delta_.cod() == x_ * x_)) {
        throw Error(ErrorCode::dim_mismatch, "delta must have type X -> X (x) X for X = " + x_.str());
    }
    if (!(top_.dom() == x_) || !top_.cod().is_unit()) {
        throw Error(ErrorCode::dim_mismatch, "top must have type X -> I for X = " + x_.str());
    }
}

ClassicalStructure ClassicalStructure::standard(const Obj& x, SemiringKind kind) {
    const auto n = static_cast<Eigen::Index>(x.dim());
    Matrix d = Matrix::Zero(n * n, n);
    for (Eigen::Index i = 0; i < n; ++i) d(i * n + i, i) = 1.0;
    Matrix t = Matrix::Ones(1, n);
    return ClassicalStructure(x, Mor(x, x * x, std::move(d), kind), Mor(x, Obj(), std::move(t), kind));
}

ClassicalStructure ClassicalStructure::trivial(SemiringKind kind) { return standard(Obj(), kind); }

bool operator==(const ClassicalStructure& a, const ClassicalStructure& b) {
    return a.x_ == b.x_ && a.kind() == b.kind() && a.delta_.matrix() == b.delta_.matrix() &&
           a.top_.matrix() == b.top_.matrix();
}

ClassicalStructure classical_from_basis(const Mor& u, double tol) {
    if (u.kind() != SemiringKind::complex) {
        throw Error(ErrorCode::boolean_unsupported, "classical_from_basis needs complex scalars");
    }
    if (!(u.dom() == u.cod())) throw Error(ErrorCode::dim_mismatch, "basis matrix must be square");
    const Obj& x = u.dom();
    if (!approx_eq(compose(dagger(u), u), identity(x), tol)) {
        throw Error(ErrorCode::not_unitary, "basis columns are not orthonormal");
    }
    const ClassicalStructure std_cs = ClassicalStructure::standard(x);
    Mor delta = compose(tensor(u, u), compose(std_cs.delta(), dagger(u)));
    Mor top = compose(std_cs.top(), dagger(u));
    return ClassicalStructure(x, std::move(delta), std::move(top));
}

AxiomReport verify_classical(const ClassicalStructure& cs, double tol) {
    const Obj& x = cs.object();
    const SemiringKind k = cs.kind();
    const Mor id = identity(x, k);
    const Mor d = cs.delta();
    const Mor n = cs.nabla();
    const Mor t = cs.top();
    const Mor b = cs.bot();

    AxiomReport r;
    r.add_equation("assoc", compose(n, tensor(n, id)), compose(n, tensor(id, n)), tol);
    r.add_equation("unit", compose(n, tensor(b, id)), id, tol);
    r.add_equation("unit", compose(n, tensor(id, b)), id, tol);
    r.add_equation("coassoc", compose(tensor(d, id), d), compose(tensor(id, d), d), tol);
    r.add_equation("counit", compose(tensor(t, id), d), id, tol);
    r.add_equation("counit", compose(tensor(id, t), d), id, tol);
    const Mor middle = compose(d, n);
    r.add_equation("frobenius", compose(tensor(n, id), tensor(id, d)), middle, tol);
    r.add_equation("frobenius", compose(tensor(id, n), tensor(d, id)), middle, tol);
    r.add_equation("special", compose(n, d), id, tol);
    r.add_equation("commutative", compose(symmetry(x, x, k), d), d, tol);
    r.add_equation("dagger_compat", dagger(n), d, tol);
    r.add_equation("dagger_compat", dagger(b), t, tol);
    return r;
}

CompactStructure bell_from_classical(const ClassicalStructure& cs, double tol) {
    const AxiomReport report = verify_classical(cs, tol);
    if (!report.all_pass()) {
        std::string failed;
        for (const auto& c : report.checks()) {
            if (!c.passed) failed += (failed.empty() ? "" : ", ") + c.name;
        }
        throw Error(ErrorCode::axiom_failure, "not a classical structure (" + failed + ")");
    }
    const Mor eta = compose(cs.delta(), cs.bot());
    const Obj& x = cs.object();
    if (!approx_eq(compose(symmetry(x, x, cs.kind()), eta), eta, tol)) {
        throw Error(ErrorCode::axiom_failure, "Bell state is not symmetric");
    }
    return CompactStructure::bell(x, x, eta);
}

ClassicalStructure product_structure(const ClassicalStructure& x, const ClassicalStructure& y) {
    require_same_semiring(x.delta(), y.delta());
    const Obj& ox = x.object();
    const Obj& oy = y.object();
    const std::vector<Obj> blocks{ox, ox, oy, oy};
    const std::vector<std::size_t> order{0, 2, 1, 3};
    const Mor swap_middle = block_permutation(blocks, order, x.kind());
    Mor delta = compose(swap_middle, tensor(x.delta(), y.delta()));
    return ClassicalStructure(ox * oy, std::move(delta), tensor(x.top(), y.top()));
}

Mor transpose_of(const Mor& f, const CompactStructure& ca, const CompactStructure& cb) {
    if (!(f.dom() == ca.a) || !(f.cod() == cb.a)) {
        throw Error(ErrorCode::dim_mismatch, "transpose: " + f.dom().str() + " -> " +
                                                 f.cod().str() + " is not typed " + ca.a.str() +
                                                 " -> " + cb.a.str());
    }
    const SemiringKind k = f.kind();
    Mor t = tensor(ca.eta, identity(cb.astar, k));   // B* -> A* A B*
    t = compose_at(f, t, ca.astar.size());           // B* -> A* B B*
    return compose_at(cb.eps, t, ca.astar.size());   // B* -> A*
}

Mor conjugate_of(const Mor& f, const CompactStructure& ca, const CompactStructure& cb) {
    if (!(f.dom() == ca.a) || !(f.cod() == cb.a)) {
        throw Error(ErrorCode::dim_mismatch, "conjugate: morphism does not match the dualities");
    }
    return transpose_of(dagger(f), cb, ca);
}

Mor dimension(const CompactStructure& c) {
    return compose(c.eps, compose(symmetry(c.astar, c.a, c.eta.kind()), c.eta));
}

Mor comultiplication_power(const ClassicalStructure& cs, std::size_t m) {
    if (m == 0) return cs.top();
    Mor out = identity(cs.object(), cs.kind());
    for (std::size_t k = 1; k < m; ++k) out = compose_at(cs.delta(), out, 0);
    return out;
}

Mor spider_matrix(const ClassicalStructure& cs, std::size_t n, std::size_t m, ScalarConvention conv) {
    if (n == 0 && m == 0 && conv == ScalarConvention::reject) {
        throw Error(ErrorCode::invalid_arity, "spider with no legs");
    }
    return compose(comultiplication_power(cs, m), dagger(comultiplication_power(cs, n)));
}

Matrix copyable_basis(const ClassicalStructure& cs) {
    if (cs.kind() != SemiringKind::complex) {
        throw Error(ErrorCode::boolean_unsupported, "copyable basis needs complex scalars");
    }
    const Obj& x = cs.object();
    const auto n = static_cast<Eigen::Index>(x.dim());
    // Multiplication by a generic vector v is diagonal in the copyable basis
    // with eigenvalues given by v's (almost surely distinct) coordinates.
    Matrix v(n, 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double phase = std::numbers::phi * static_cast<double>(i + 1);
        v(i, 0) = (1.0 + 0.37 * static_cast<double>(i)) * Scalar(std::cos(phase), std::sin(phase));
    }
    const Mor mult = compose(cs.nabla(), tensor(Mor(Obj(), x, v), identity(x)));
    Eigen::ComplexEigenSolver<Matrix> solver(mult.matrix());
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::classification_failure, "eigen-decomposition failed");
    }
    Matrix basis = solver.eigenvectors();
    const Matrix top = cs.top().matrix();
    for (Eigen::Index j = 0; j < n; ++j) {
        const Scalar s = (top * basis.col(j))(0, 0);
        if (std::abs(s) < 1e-12) {
            throw Error(ErrorCode::classification_failure, "eigenvector annihilated by the counit");
        }
        basis.col(j) /= s;
    }
    std::vector<Eigen::Index> cols(static_cast<std::size_t>(n));
    std::vector<Eigen::Index> key(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j) {
        cols[static_cast<std::size_t>(j)] = j;
        Eigen::Index pos = 0;
        basis.col(j).cwiseAbs().maxCoeff(&pos);
        key[static_cast<std::size_t>(j)] = pos;
    }
    std::stable_sort(cols.begin(), cols.end(), [&](Eigen::Index a, Eigen::Index b) {
        return key[static_cast<std::size_t>(a)] < key[static_cast<std::size_t>(b)];
    });
    Matrix sorted(n, n);
    for (Eigen::Index j = 0; j < n; ++j) sorted.col(j) = basis.col(cols[static_cast<std::size_t>(j)]);
    return sorted;
}

ClassicalStructure frel_structure_from_groups(const std::vector<GroupBlock>& blocks) {
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.elements.size();
    std::vector<bool> seen(n, false);
    for (const auto& b : blocks) {
        if (b.elements.empty()) throw Error(ErrorCode::invalid_input, "empty block");
        for (std::size_t e : b.elements) {
            if (e >= n || seen[e]) {
                throw Error(ErrorCode::invalid_input, "blocks do not partition 0..n-1");
            }
            seen[e] = true;
        }
    }

    const auto N = static_cast<Eigen::Index>(n);
    Matrix nabla = Matrix::Zero(N, N * N);
    Matrix bot = Matrix::Zero(N, 1);
    for (const auto& b : blocks) {
        const std::size_t k = b.elements.size();
        const auto& t = b.table;
        if (t.size() != k) throw Error(ErrorCode::not_group, "table has wrong number of rows");
        for (const auto& row : t) {
            if (row.size() != k) throw Error(ErrorCode::not_group, "table has wrong number of columns");
            for (std::size_t v : row) {
                if (v >= k) throw Error(ErrorCode::not_group, "product leaves the block");
            }
        }
        if (b.unit >= k) throw Error(ErrorCode::not_group, "unit is not in the block");
        for (std::size_t i = 0; i < k; ++i) {
            if (t[b.unit][i] != i || t[i][b.unit] != i) {
                throw Error(ErrorCode::not_group, "unit law fails");
            }
            bool has_inverse = false;
            for (std::size_t j = 0; j < k; ++j) has_inverse = has_inverse || t[i][j] == b.unit;
            if (!has_inverse) throw Error(ErrorCode::not_group, "missing inverse");
            for (std::size_t j = 0; j < k; ++j) {
                for (std::size_t l = 0; l < k; ++l) {
                    if (t[t[i][j]][l] != t[i][t[j][l]]) {
                        throw Error(ErrorCode::not_group, "multiplication is not associative");
                    }
                }
            }
        }
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                if (t[i][j] != t[j][i]) throw Error(ErrorCode::not_abelian, "group is not abelian");
            }
        }
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                const auto a = static_cast<Eigen::Index>(b.elements[i]);
                const auto c = static_cast<Eigen::Index>(b.elements[j]);
                nabla(static_cast<Eigen::Index>(b.elements[t[i][j]]), a * N + c) = 1.0;
            }
        }
        bot(static_cast<Eigen::Index>(b.elements[b.unit]), 0) = 1.0;
    }
    const Obj x{n};
    const Mor nb(x * x, x, std::move(nabla), SemiringKind::boolean);
    const Mor bt(Obj(), x, std::move(bot), SemiringKind::boolean);
    return ClassicalStructure(x, dagger(nb), dagger(bt));
}

}  // namespace cqm
