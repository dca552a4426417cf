#include "cqm/relalg.hpp"

#include <array>
#include <cstdint>

#include "cqm/classify.hpp"

namespace cqm {

ConvolutionContext ConvolutionContext::make(const ClassicalStructure& x, const ClassicalStructure& y,
                                            double tol) {
    return ConvolutionContext{x, y, bell_from_classical(x, tol), bell_from_classical(y, tol)};
}

ConvolutionContext ConvolutionContext::unchecked(const ClassicalStructure& x,
                                                 const ClassicalStructure& y) {
    const auto bell = [](const ClassicalStructure& cs) {
        return CompactStructure::bell(cs.object(), cs.object(), compose(cs.delta(), cs.bot()));
    };
    return ConvolutionContext{x, y, bell(x), bell(y)};
}

Mor convolve(const Mor& f, const Mor& g, const ConvolutionContext& ctx) {
    const Obj& x = ctx.x.object();
    const Obj& y = ctx.y.object();
    for (const Mor* m : {&f, &g}) {
        if (!(m->dom() == x) || !(m->cod() == y)) {
            throw Error(ErrorCode::dim_mismatch, "convolution operands must have type " + x.str() +
                                                     " -> " + y.str());
        }
    }
    const Mor fc = conjugate_of(f, ctx.cx, ctx.cy);
    Mor t = compose_at(fc, ctx.x.delta(), 0);  // X -> Y X
    t = compose_at(g, t, y.size());            // X -> Y Y
    return compose(ctx.y.nabla(), t);
}

Mor convolution_unit(const ConvolutionContext& ctx) {
    return compose(ctx.y.bot(), ctx.x.top());
}

Mor meet(const Mor& r, const Mor& s, const ConvolutionContext& ctx, double tol) {
    for (const Mor* m : {&r, &s}) {
        if (!is_relation(*m, ctx.x, ctx.y, tol)) {
            throw Error(ErrorCode::not_a_relation, "meet is defined on relations");
        }
    }
    return convolve(r, s, ctx);
}

bool leq(const Mor& r, const Mor& s, const ConvolutionContext& ctx, double tol) {
    return approx_eq(meet(r, s, ctx, tol), r, tol);
}

Mor support_quotient(const Mor& f, const ConvolutionContext& ctx, double tol) {
    if (!is_classical_map(f, ctx.x, ctx.y, tol)) {
        throw Error(ErrorCode::not_classical, "support is defined on classical maps");
    }
    if (f.kind() == SemiringKind::boolean) return f;
    const Matrix bx = copyable_basis(ctx.x);
    const Matrix by = copyable_basis(ctx.y);
    const Matrix coords = by.inverse() * f.matrix() * bx;
    Matrix support = Matrix::Zero(coords.rows(), coords.cols());
    for (Eigen::Index j = 0; j < coords.cols(); ++j) {
        for (Eigen::Index i = 0; i < coords.rows(); ++i) {
            if (std::abs(coords(i, j)) > tol) support(i, j) = 1.0;
        }
    }
    return Mor(f.dom(), f.cod(), by * support * bx.inverse());
}

Mor rel_compose(const Mor& r, const Mor& s, const ClassicalStructure& x,
                const ClassicalStructure& y, const ClassicalStructure& z, double tol) {
    if (!is_relation(s, x, y, tol) || !is_relation(r, y, z, tol)) {
        throw Error(ErrorCode::not_a_relation, "relational composition needs relations");
    }
    return support_quotient(compose(r, s), ConvolutionContext::unchecked(x, z), tol);
}

Mor inner_product_conv(const Mor& x, const Mor& y, const ClassicalStructure& cs) {
    const ConvolutionContext ctx = ConvolutionContext::make(ClassicalStructure::trivial(cs.kind()), cs);
    return compose(cs.top(), convolve(x, y, ctx));
}

AxiomReport check_cartesian_bicategory(const ClassicalStructure& cs,
                                       const std::vector<Mor>& samples, double tol) {
    const SemiringKind k = cs.kind();
    const Obj& x = cs.object();
    const ClassicalStructure pair = product_structure(cs, cs);
    const ClassicalStructure unit = ClassicalStructure::trivial(k);
    const ConvolutionContext on_x = ConvolutionContext::make(cs, cs, tol);
    const ConvolutionContext on_pair = ConvolutionContext::make(pair, pair, tol);
    const ConvolutionContext on_unit = ConvolutionContext::make(unit, unit, tol);

    AxiomReport report;
    const Mor id = identity(x, k);
    // r -| s means id <= s o r and r o s <= id, with p <= q read as p = p * q.
    const Mor nd = compose(cs.nabla(), cs.delta());
    const Mor dn = compose(cs.delta(), cs.nabla());
    report.add_equation("delta_adjoint_unit", convolve(id, nd, on_x), id, tol);
    report.add_equation("delta_adjoint_counit", convolve(dn, identity(x * x, k), on_pair), dn, tol);
    const Mor bt = compose(cs.bot(), cs.top());
    const Mor tb = compose(cs.top(), cs.bot());
    report.add_equation("top_adjoint_unit", convolve(id, bt, on_x), id, tol);
    report.add_equation("top_adjoint_counit", convolve(tb, identity(Obj(), k), on_unit), tb, tol);

    for (const Mor& r : samples) {
        const RelationFlags flags = relation_flags(r, cs, cs, tol);
        report.add("sample_is_relation", flags.is_relation, flags.is_relation ? 0.0 : 1.0);
        report.add("lax_comonoid_hom", flags.is_lax_comonoid_hom,
                   flags.is_lax_comonoid_hom ? 0.0 : 1.0);
    }
    return report;
}

namespace {

// A candidate multiplication on an n-element set: products[a * n + b] is the
// bitmask of elements related to (a, b).
struct Candidate {
    std::size_t n;
    std::uint32_t unit;
    std::array<std::uint32_t, 9> products{};

    std::uint32_t at(std::size_t a, std::size_t b) const { return products[a * n + b]; }

    std::uint32_t times(std::uint32_t s, std::uint32_t t) const {
        std::uint32_t out = 0;
        for (std::size_t a = 0; a < n; ++a) {
            if (!(s >> a & 1u)) continue;
            for (std::size_t b = 0; b < n; ++b) {
                if (t >> b & 1u) out |= at(a, b);
            }
        }
        return out;
    }

    bool unit_law() const {
        for (std::size_t x = 0; x < n; ++x) {
            if (times(unit, 1u << x) != (1u << x)) return false;
        }
        return true;
    }

    bool associative() const {
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                for (std::size_t c = 0; c < n; ++c) {
                    if (times(at(a, b), 1u << c) != times(1u << a, at(b, c))) return false;
                }
            }
        }
        return true;
    }

    // nabla o Delta = id, where Delta relates x to every (a, b) with x in a*b.
    bool special() const {
        for (std::size_t x = 0; x < n; ++x) {
            std::uint32_t image = 0;
            for (std::size_t p = 0; p < n * n; ++p) {
                if (products[p] >> x & 1u) image |= products[p];
            }
            if (image != (1u << x)) return false;
        }
        return true;
    }

    ClassicalStructure structure() const {
        const auto N = static_cast<Eigen::Index>(n);
        Matrix nabla = Matrix::Zero(N, N * N);
        for (std::size_t p = 0; p < n * n; ++p) {
            for (std::size_t x = 0; x < n; ++x) {
                if (products[p] >> x & 1u) {
                    nabla(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(p)) = 1.0;
                }
            }
        }
        Matrix bot = Matrix::Zero(N, 1);
        for (std::size_t x = 0; x < n; ++x) {
            if (unit >> x & 1u) bot(static_cast<Eigen::Index>(x), 0) = 1.0;
        }
        const Obj obj{n};
        const Mor nb(obj * obj, obj, std::move(nabla), SemiringKind::boolean);
        const Mor bt(Obj(), obj, std::move(bot), SemiringKind::boolean);
        return ClassicalStructure(obj, dagger(nb), dagger(bt));
    }
};

}  // namespace

std::vector<ClassicalStructure> enumerate_frel_structures(std::size_t n) {
    if (n == 0) throw Error(ErrorCode::invalid_input, "carrier must be nonempty");
    if (n > 3) throw Error(ErrorCode::budget_exceeded, "exhaustive search is limited to n <= 3");

    // Commutativity lets us choose products only for pairs a <= b.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a; b < n; ++b) pairs.emplace_back(a, b);
    }
    const std::uint32_t subsets = 1u << n;

    std::vector<ClassicalStructure> out;
    for (std::uint32_t unit = 1; unit < subsets; ++unit) {
        Candidate c{n, unit, {}};
        std::vector<std::uint32_t> choice(pairs.size(), 0);
        for (;;) {
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                c.products[pairs[i].first * n + pairs[i].second] = choice[i];
                c.products[pairs[i].second * n + pairs[i].first] = choice[i];
            }
            if (c.unit_law() && c.associative() && c.special()) {
                ClassicalStructure cs = c.structure();
                if (verify_classical(cs).all_pass()) {
                    bool duplicate = false;
                    for (const auto& seen : out) duplicate = duplicate || seen == cs;
                    if (!duplicate) out.push_back(std::move(cs));
                }
            }
            std::size_t i = 0;
            while (i < choice.size() && ++choice[i] == subsets) choice[i++] = 0;
            if (i == choice.size()) break;
        }
    }
    return out;
}

}  // namespace cqm
