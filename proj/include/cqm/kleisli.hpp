#pragma once

// The Kleisli category of the comonad X (x) (-) induced by a classical
// structure X, its co-Kleisli twin for the monad X (x) (-), the functors
// relating them to the base category, and the mixing and summing maps back
// into the base.

#include "cqm/core.hpp"
#include "cqm/structures.hpp"

namespace cqm {

/// A Kleisli morphism A -> B over X, carried by f : X (x) A -> B.
class KMor {
public:
    /// Throws DimMismatch unless f : X (x) a -> b.
    KMor(ClassicalStructure cs, Obj a, Obj b, Mor f);
    /// Splits the domain of f after the factors of X.
    KMor(ClassicalStructure cs, Mor f);

    const ClassicalStructure& index() const { return cs_; }
    const Obj& dom() const { return a_; }
    const Obj& cod() const { return b_; }
    const Mor& mor() const { return f_; }

private:
    ClassicalStructure cs_;
    Obj a_;
    Obj b_;
    Mor f_;
};

/// A co-Kleisli morphism A -> B over X, carried by f : A -> X (x) B.
class CoKMor {
public:
    CoKMor(ClassicalStructure cs, Obj a, Obj b, Mor f);

    const ClassicalStructure& index() const { return cs_; }
    const Obj& dom() const { return a_; }
    const Obj& cod() const { return b_; }
    const Mor& mor() const { return f_; }

private:
    ClassicalStructure cs_;
    Obj a_;
    Obj b_;
    Mor f_;
};

/// g o_X f = g o (X (x) f) o (Delta (x) A). Throws IndexMismatch or DimMismatch.
KMor kcompose(const KMor& g, const KMor& f);
/// top (x) id_A.
KMor kid(const ClassicalStructure& cs, const Obj& a);
/// (f (x) h) o (X (x) sigma_{X,A} (x) C) o (Delta (x) A (x) C).
KMor ktensor(const KMor& f, const KMor& h);
/// (eps (x) A) o (X (x) f^dagger), with eps = top o nabla.
KMor kdagger(const KMor& f);

/// (nabla (x) C) o (X (x) g) o f.
CoKMor cocompose(const CoKMor& g, const CoKMor& f);
/// bot (x) id_A.
CoKMor coid(const ClassicalStructure& cs, const Obj& a);

/// (X (x) f) o (eta (x) A), with eta = Delta o bot.
CoKMor to_cokleisli(const KMor& f);
/// (eps (x) B) o (X (x) f).
KMor from_cokleisli(const CoKMor& f);

/// F(f) = f o (top (x) A).
KMor lift_F(const Mor& f, const ClassicalStructure& cs);
/// U(f) = (X (x) f) o (Delta (x) A) : X (x) A -> X (x) B.
Mor apply_U(const KMor& f);

/// <x|y>_X = x^dagger_X o_X y for Kleisli states x, y over the same index,
/// returned as the Kleisli scalar X -> I.
Mor k_inner(const KMor& x, const KMor& y);

/// f o (p (x) A). Throws NotStochastic unless p : I -> X is stochastic.
Mor mix(const Mor& p, const KMor& f, double tol = kDefaultTol);
/// f o (bot (x) A).
Mor ksum(const KMor& f);

}  // namespace cqm
