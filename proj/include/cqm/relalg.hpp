#pragma once

// The convolution monoid on hom-sets between classical structures, the
// order on relations it induces, relational composition and the exhaustive
// search for classical structures in the boolean model.

#include <vector>

#include "cqm/core.hpp"
#include "cqm/structures.hpp"

namespace cqm {

/// A pair of classical structures together with their Bell dualities.
struct ConvolutionContext {
    ClassicalStructure x;
    ClassicalStructure y;
    CompactStructure cx;
    CompactStructure cy;

    /// Throws AxiomFailure if either structure is invalid.
    static ConvolutionContext make(const ClassicalStructure& x, const ClassicalStructure& y,
                                   double tol = kDefaultTol);
    /// Same, without verifying the axioms; for callers that already did.
    static ConvolutionContext unchecked(const ClassicalStructure& x, const ClassicalStructure& y);
};

/// f * g = nabla_Y o (f_* (x) g) o Delta_X.
Mor convolve(const Mor& f, const Mor& g, const ConvolutionContext& ctx);

/// bot_Y o top_X : X -> Y, a two-sided unit for real f.
Mor convolution_unit(const ConvolutionContext& ctx);

/// r /\ s = r * s for relations r, s. Throws NotARelation.
Mor meet(const Mor& r, const Mor& s, const ConvolutionContext& ctx, double tol = kDefaultTol);
/// r <= s iff r = r /\ s.
bool leq(const Mor& r, const Mor& s, const ConvolutionContext& ctx, double tol = kDefaultTol);

/// The least relation t with f = f * t: the support of f in the copyable
/// bases. Throws NotClassical.
Mor support_quotient(const Mor& f, const ConvolutionContext& ctx, double tol = kDefaultTol);

/// Relational composite of r : Y -> Z after s : X -> Y. Throws NotARelation.
Mor rel_compose(const Mor& r, const Mor& s, const ClassicalStructure& x,
                const ClassicalStructure& y, const ClassicalStructure& z,
                double tol = kDefaultTol);

/// top o (x * y) for states x, y : I -> X.
Mor inner_product_conv(const Mor& x, const Mor& y, const ClassicalStructure& cs);

/// The adjunctions Delta -| nabla and top -| bot as unfolded equalities,
/// plus the lax comonoid homomorphism equalities for each sample relation
/// r : X -> X.
AxiomReport check_cartesian_bicategory(const ClassicalStructure& cs,
                                       const std::vector<Mor>& samples,
                                       double tol = kDefaultTol);

/// Every boolean classical structure on an n-element set, n <= 3, in a fixed
/// deterministic order. Throws BudgetExceeded for n > 3.
std::vector<ClassicalStructure> enumerate_frel_structures(std::size_t n);

}  // namespace cqm
