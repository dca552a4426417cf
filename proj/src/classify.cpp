#include "cqm/classify.hpp"

#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "cqm/relalg.hpp"

namespace cqm {

namespace {

void require_endo(const Mor& e) {
    if (!(e.dom() == e.cod())) {
        throw Error(ErrorCode::not_endo, e.dom().str() + " -> " + e.cod().str());
    }
}

void require_type(const Mor& f, const Obj& dom, const Obj& cod, const char* what) {
    if (!(f.dom() == dom) || !(f.cod() == cod)) {
        throw Error(ErrorCode::dim_mismatch, std::string(what) + ": expected " + dom.str() +
                                                 " -> " + cod.str() + ", got " + f.dom().str() +
                                                 " -> " + f.cod().str());
    }
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& e) {
    const Matrix h = (e + e.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::classification_failure, "Hermitian eigen-decomposition failed");
    }
    return solver.eigenvalues();
}

bool is_hermitian(const Matrix& e, double tol) {
    return e.size() == 0 || (e - e.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace

bool is_positive(const Mor& e, double tol) {
    require_endo(e);
    const Matrix& m = e.matrix();
    if (e.kind() == SemiringKind::boolean) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            for (Eigen::Index j = 0; j < m.cols(); ++j) {
                if (m(i, j) != m(j, i)) return false;
                if (m(i, j) != 0.0 && (m(i, i) == 0.0 || m(j, j) == 0.0)) return false;
            }
        }
        return true;
    }
    if (!is_hermitian(m, tol)) return false;
    return hermitian_eigenvalues(m).minCoeff() >= -tol;
}

Mor cp_transpose(const Mor& f, const CompactStructure& ca, const CompactStructure& cb) {
    require_type(f, ca.astar * ca.a, cb.astar * cb.a, "completely positive test");
    const auto dA = static_cast<Eigen::Index>(ca.a.dim());
    const auto dAs = static_cast<Eigen::Index>(ca.astar.dim());
    const auto dB = static_cast<Eigen::Index>(cb.a.dim());
    const auto dBs = static_cast<Eigen::Index>(cb.astar.dim());

    // eta_{A*}(a, x) = eta_A(x, a); eps_B(b, beta).
    Matrix eta(dA, dAs);
    for (Eigen::Index x = 0; x < dAs; ++x) {
        for (Eigen::Index a = 0; a < dA; ++a) eta(a, x) = ca.eta.matrix()(x * dA + a, 0);
    }
    Matrix eps(dB, dBs);
    for (Eigen::Index b = 0; b < dB; ++b) {
        for (Eigen::Index beta = 0; beta < dBs; ++beta) eps(b, beta) = cb.eps.matrix()(0, b * dBs + beta);
    }

    const Matrix& F = f.matrix();
    Matrix out = Matrix::Zero(dA * dBs, dA * dBs);
    Matrix slice(dBs * dB, dAs);
    for (Eigen::Index ap = 0; ap < dA; ++ap) {
        for (Eigen::Index x = 0; x < dAs; ++x) slice.col(x) = F.col(x * dA + ap);
        // h((beta, b), a1) = sum_x f((beta, b), (x, a')) eta(a1, x)
        const Matrix h = slice * eta.transpose();
        for (Eigen::Index beta = 0; beta < dBs; ++beta) {
            // block(a1, beta') = sum_b h((beta, b), a1) eps(b, beta')
            const Matrix block = h.middleRows(beta * dB, dB).transpose() * eps;
            for (Eigen::Index a1 = 0; a1 < dA; ++a1) {
                for (Eigen::Index bp = 0; bp < dBs; ++bp) {
                    out(a1 * dBs + beta, ap * dBs + bp) = block(a1, bp);
                }
            }
        }
    }
    if (f.kind() == SemiringKind::boolean) {
        out = out.unaryExpr([](Scalar s) { return s.real() > 0.5 ? Scalar(1.0) : Scalar(0.0); });
    }
    const Obj t = ca.a * cb.astar;
    return Mor(t, t, std::move(out), f.kind());
}

bool is_completely_positive(const Mor& f, const CompactStructure& ca, const CompactStructure& cb,
                            double tol) {
    return is_positive(cp_transpose(f, ca, cb), tol);
}

Mor classical_test_map(const Mor& f, const ClassicalStructure& x, const ClassicalStructure& y) {
    require_type(f, x.object(), y.object(), "classical test");
    Mor t = tensor(x.delta(), identity(y.object(), f.kind()));  // X Y -> X X Y
    t = compose_at(f, t, x.object().size());                    // -> X Y Y
    return compose_at(y.nabla(), t, x.object().size());         // -> X Y
}

bool is_classical_map(const Mor& f, const ClassicalStructure& x, const ClassicalStructure& y,
                      double tol) {
    return is_positive(classical_test_map(f, x, y), tol);
}

Mor decoherence(const ClassicalStructure& cs) { return compose(cs.delta(), cs.nabla()); }

bool is_decoherent(const Mor& g, const ClassicalStructure& x, const ClassicalStructure& y,
                   double tol) {
    require_type(g, x.object() * x.object(), y.object() * y.object(), "decoherence test");
    if (!approx_eq(compose(decoherence(y), g), g, tol)) return false;
    if (!approx_eq(compose(g, decoherence(x)), g, tol)) return false;
    return is_completely_positive(g, bell_from_classical(x, tol), bell_from_classical(y, tol), tol);
}

Mor to_decoherent(const Mor& f, const ClassicalStructure& x, const ClassicalStructure& y,
                  double tol) {
    if (!is_classical_map(f, x, y, tol)) {
        throw Error(ErrorCode::classification_failure, "map is not classical");
    }
    return compose(y.delta(), compose(f, x.nabla()));
}

Mor to_classical(const Mor& g, const ClassicalStructure& x, const ClassicalStructure& y,
                 double tol) {
    if (!is_decoherent(g, x, y, tol)) {
        throw Error(ErrorCode::classification_failure, "map is not decoherent");
    }
    return compose(y.nabla(), compose(g, x.delta()));
}

bool is_real(const Mor& f, const CompactStructure& ca, const CompactStructure& cb, double tol) {
    return approx_eq(conjugate_of(f, ca, cb), f, tol);
}

bool is_relation(const Mor& r, const ClassicalStructure& x, const ClassicalStructure& y,
                 double tol) {
    require_type(r, x.object(), y.object(), "relation test");
    return approx_eq(convolve(r, r, ConvolutionContext::unchecked(x, y)), r, tol);
}

RelationFlags relation_flags(const Mor& r, const ClassicalStructure& x, const ClassicalStructure& y,
                             double tol) {
    require_type(r, x.object(), y.object(), "relation test");
    const ConvolutionContext pair_ctx = ConvolutionContext::unchecked(x, product_structure(y, y));
    const ConvolutionContext scalar_ctx =
        ConvolutionContext::unchecked(x, ClassicalStructure::trivial(r.kind()));
    RelationFlags out;
    out.is_relation = is_relation(r, x, y, tol);

    const Mor copy_after = compose(y.delta(), r);
    const Mor copy_before = compose(tensor(r, r), x.delta());
    const Mor erase_after = compose(y.top(), r);

    // Single-valuedness and totality are equations between relations, so
    // composites are compared through their supports.
    if (out.is_relation) {
        out.is_single_valued = approx_eq(support_quotient(copy_after, pair_ctx, tol),
                                         support_quotient(copy_before, pair_ctx, tol), tol);
        out.is_total = approx_eq(support_quotient(erase_after, scalar_ctx, tol), x.top(), tol);
    }
    out.is_function = out.is_single_valued && out.is_total;

    // Delta_Y o r <= (r (x) r) o Delta_X and top_Y o r <= top_X, each
    // unfolded as s = s * t.
    out.is_lax_comonoid_hom =
        approx_eq(convolve(copy_after, copy_before, pair_ctx), copy_after, tol) &&
        approx_eq(convolve(erase_after, x.top(), scalar_ctx), erase_after, tol);
    return out;
}

bool is_permutation(const Mor& r, const ClassicalStructure& x, const ClassicalStructure& y,
                    double tol) {
    const RelationFlags fwd = relation_flags(r, x, y, tol);
    const RelationFlags bwd = relation_flags(dagger(r), y, x, tol);
    const bool by_functions = fwd.is_function && bwd.is_function;
    if (fwd.is_relation && bwd.is_relation) {
        bool unitary = x.object().dim() == y.object().dim();
        if (unitary) {
            unitary = approx_eq(compose(dagger(r), r), identity(x.object(), r.kind()), tol) &&
                      approx_eq(compose(r, dagger(r)), identity(y.object(), r.kind()), tol);
        }
        if (unitary != by_functions) {
            throw std::logic_error("permutation characterisations disagree on a relation");
        }
    }
    return by_functions;
}

bool is_total_map(const Mor& s, const ClassicalStructure& x, const ClassicalStructure& y,
                  double tol) {
    require_type(s, x.object(), y.object(), "totality test");
    return approx_eq(compose(y.top(), s), x.top(), tol);
}

StochasticFlags stochastic_flags(const Mor& s, const ClassicalStructure& x,
                                 const ClassicalStructure& y, double tol) {
    StochasticFlags out;
    out.is_stochastic = is_classical_map(s, x, y, tol) && is_total_map(s, x, y, tol);
    if (out.is_stochastic) {
        const Mor sd = dagger(s);
        out.is_doubly_stochastic = is_classical_map(sd, y, x, tol) && is_total_map(sd, y, x, tol);
    }
    return out;
}

bool majorizes_witness(const Mor& f, const Mor& g, const Mor& h1, const Mor& h2,
                       const ClassicalStructure& x1, const ClassicalStructure& x2,
                       const ClassicalStructure& y1, const ClassicalStructure& y2, double tol) {
    require_type(f, x1.object(), x2.object(), "majorized map");
    require_type(g, y1.object(), y2.object(), "majorizing map");
    if (!stochastic_flags(h1, x1, y1, tol).is_doubly_stochastic) return false;
    if (!stochastic_flags(h2, x2, y2, tol).is_doubly_stochastic) return false;
    return approx_eq(g, compose(h2, compose(f, dagger(h1))), tol);
}

PurityReport purity(const Mor& f, const CompactStructure& ca, const CompactStructure& cb,
                    double tol) {
    if (f.kind() != SemiringKind::complex) {
        throw Error(ErrorCode::boolean_unsupported, "purity is defined over complex scalars");
    }
    const Mor t = cp_transpose(f, ca, cb);
    PurityReport out;
    if (!is_hermitian(t.matrix(), tol)) return out;
    const Eigen::VectorXd ev = hermitian_eigenvalues(t.matrix());
    if (ev.size() == 0 || ev.minCoeff() < -tol) return out;
    const auto rank = (ev.array() > tol).count();
    out.pure = rank <= 1;
    out.degenerate = rank == 0;
    return out;
}

bool is_pure(const Mor& f, const CompactStructure& ca, const CompactStructure& cb, double tol) {
    return purity(f, ca, cb, tol).pure;
}

}  // namespace cqm
