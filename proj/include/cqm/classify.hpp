#pragma once

// Predicates for the hierarchy of classical morphisms: positive, completely
// positive, classical, decoherent, real, relations and functions,
// permutations, stochastic maps, purity and majorization witnesses.

#include "cqm/core.hpp"
#include "cqm/structures.hpp"

namespace cqm {

struct RelationFlags {
    bool is_relation = false;
    bool is_single_valued = false;
    bool is_total = false;
    bool is_function = false;
    bool is_lax_comonoid_hom = false;
};

struct StochasticFlags {
    bool is_stochastic = false;
    bool is_doubly_stochastic = false;
};

struct PurityReport {
    bool pure = false;
    /// Set when the map is zero, which is counted as pure.
    bool degenerate = false;
};

/// e = g o g^dagger for some g. Complex: Hermitian with eigenvalues >= -tol.
/// Boolean: symmetric, and e_ij = 1 forces e_ii = e_jj = 1. Throws NotEndo.
bool is_positive(const Mor& e, double tol = kDefaultTol);

/// The endomorphism of A (x) B* obtained by bending the A* input and the B
/// output of f : A* (x) A -> B* (x) B around the given dualities.
Mor cp_transpose(const Mor& f, const CompactStructure& ca, const CompactStructure& cb);

bool is_completely_positive(const Mor& f, const CompactStructure& ca, const CompactStructure& cb,
                            double tol = kDefaultTol);

/// (X (x) nabla_Y) o (X (x) f (x) Y) o (Delta_X (x) Y), an endomorphism of X (x) Y.
Mor classical_test_map(const Mor& f, const ClassicalStructure& x, const ClassicalStructure& y);

bool is_classical_map(const Mor& f, const ClassicalStructure& x, const ClassicalStructure& y,
                      double tol = kDefaultTol);

/// Xi = Delta o nabla.
Mor decoherence(const ClassicalStructure& cs);

bool is_decoherent(const Mor& g, const ClassicalStructure& x, const ClassicalStructure& y,
                   double tol = kDefaultTol);

/// f_Xi = Delta_Y o f o nabla_X. Throws ClassificationFailure unless f is classical.
Mor to_decoherent(const Mor& f, const ClassicalStructure& x, const ClassicalStructure& y,
                  double tol = kDefaultTol);
/// g_c = nabla_Y o g o Delta_X. Throws ClassificationFailure unless g is decoherent.
Mor to_classical(const Mor& g, const ClassicalStructure& x, const ClassicalStructure& y,
                 double tol = kDefaultTol);

bool is_real(const Mor& f, const CompactStructure& ca, const CompactStructure& cb,
             double tol = kDefaultTol);

/// r = r * r.
bool is_relation(const Mor& r, const ClassicalStructure& x, const ClassicalStructure& y,
                 double tol = kDefaultTol);

RelationFlags relation_flags(const Mor& r, const ClassicalStructure& x, const ClassicalStructure& y,
                             double tol = kDefaultTol);

/// r and r^dagger are functions. Unitarity is computed as well; on relations
/// the two must agree, and std::logic_error is thrown if they do not.
bool is_permutation(const Mor& r, const ClassicalStructure& x, const ClassicalStructure& y,
                    double tol = kDefaultTol);

/// top_Y o s = top_X.
bool is_total_map(const Mor& s, const ClassicalStructure& x, const ClassicalStructure& y,
                  double tol = kDefaultTol);

StochasticFlags stochastic_flags(const Mor& s, const ClassicalStructure& x,
                                 const ClassicalStructure& y, double tol = kDefaultTol);

/// Types: f : X1 -> X2, h1 : X1 -> Y1, h2 : X2 -> Y2, g : Y1 -> Y2.
/// True iff h1 and h2 are doubly stochastic and g = h2 o f o h1^dagger.
bool majorizes_witness(const Mor& f, const Mor& g, const Mor& h1, const Mor& h2,
                       const ClassicalStructure& x1, const ClassicalStructure& x2,
                       const ClassicalStructure& y1, const ClassicalStructure& y2,
                       double tol = kDefaultTol);

/// Rank of the positive operator cp_transpose(f) is at most one. Throws
/// BooleanUnsupported.
PurityReport purity(const Mor& f, const CompactStructure& ca, const CompactStructure& cb,
                    double tol = kDefaultTol);
bool is_pure(const Mor& f, const CompactStructure& ca, const CompactStructure& cb,
             double tol = kDefaultTol);

}  // namespace cqm
