#pragma once

// Pure and mixed quantum operations, plain and classically controlled;
// measurements as Eilenberg-Moore coalgebras; the total category SC pairing
// functions on classical data with controlled completely positive maps; and
// the category of maps A* X A -> B* Y B that are completely positive once
// decohered in their classical types.
//
// Doubled layouts. A completely positive map A -> B lives on A* (x) A ->
// B* (x) B; an X-controlled one on A* (x) X (x) A -> B* (x) B. With planar
// dualities, A* (x) X is the dual of X (x) A, so the controlled layout is
// the doubled layout of X (x) A with one copy of X merged away.
//
// SC objects and the embeddings below use the standard self-dual duality
// on every quantum object, so A* = A as objects.

#include "cqm/core.hpp"
#include "cqm/structures.hpp"

namespace cqm {

/// conjugate_of(phi) (x) phi : A* (x) A -> B* (x) B for phi : A -> B.
Mor w_pure(const Mor& phi, const CompactStructure& ca, const CompactStructure& cb);
Mor w_pure(const Mor& phi);

/// (phi_* (x) phi) o (A* (x) Delta (x) A) : A* X A -> B* B for phi : X (x) A -> B.
Mor w_pure_controlled(const Mor& phi, const ClassicalStructure& cs, const CompactStructure& ca,
                      const CompactStructure& cb);
Mor w_pure_controlled(const Mor& phi, const ClassicalStructure& cs);

/// For phi : X (x) A -> V (x) B, the controlled purification followed by
/// contracting the ancilla V: A* X A -> B* V* V B -> B* B.
Mor p_controlled(const Mor& phi, const ClassicalStructure& cs, const Obj& ancilla,
                 const CompactStructure& ca, const CompactStructure& cb);
Mor p_controlled(const Mor& phi, const ClassicalStructure& cs, const Obj& ancilla);

/// A pure measurement on A with outcomes in X, given by pi : A -> X (x) A.
struct Measurement {
    ClassicalStructure cs;
    Obj a;
    Mor pi;

    /// Throws AxiomFailure unless pi satisfies the coalgebra equations.
    static Measurement make(ClassicalStructure cs, Mor pi, double tol = kDefaultTol);
};

/// pi = Delta on A = X.
Measurement canonical_measurement(const ClassicalStructure& cs);

/// The three defining equations ("self_adjoint", "coassociative",
/// "counital") and the spectral identities derived from them
/// ("spectral_sum", "spectral_orthogonal", "spectral_self_adjoint").
/// Throws DimMismatch unless pi : A -> X (x) A.
AxiomReport measurement_report(const Mor& pi, const ClassicalStructure& cs, double tol = kDefaultTol);

/// True iff the three defining equations hold.
bool is_measurement(const Mor& pi, const ClassicalStructure& cs, double tol = kDefaultTol);

/// For pi : X (x) A -> Y (x) B, the map A* X A -> B* Y B that applies the
/// Kraus family selected by the control and records the outcome in Y.
/// With X = I and pi a measurement this is the non-destructive measurement
/// channel.
Mor controlled_measurement(const Mor& pi, const ClassicalStructure& x, const ClassicalStructure& y,
                           const CompactStructure& ca, const CompactStructure& cb);

// ---------------------------------------------------------------------------
// Controlled completely positive maps and the total category SC.

/// g o_X f for f : A* X A -> B* B and g : B* X B -> C* C (standard
/// dualities): each copy of the classical input drives one of the two maps.
Mor controlled_compose(const Mor& g, const Mor& f, const ClassicalStructure& cs, const Obj& a,
                       const Obj& b);

/// A* (x) top (x) A.
Mor controlled_identity(const ClassicalStructure& cs, const Obj& a);

/// Membership in the X-controlled completely positive maps A -> B: the
/// decohered form is completely positive.
bool is_controlled_cp(const Mor& g, const ClassicalStructure& cs, const Obj& a, const Obj& b,
                      double tol = kDefaultTol);

/// g o (A* (x) phi (x) A) for phi : X -> Y and g : A* Y A -> B* B. Throws
/// NotClassical unless phi is a classical map.
Mor reindex(const Mor& phi, const Mor& g, const ClassicalStructure& x, const ClassicalStructure& y,
            const Obj& a, double tol = kDefaultTol);

struct SCObj {
    ClassicalStructure x;
    Obj a;

    friend bool operator==(const SCObj& l, const SCObj& r) { return l.x == r.x && l.a == r.a; }
};

/// A pair <phi : X -> Y, g : A* X A -> B* B>.
class SCMor {
public:
    /// Throws DimMismatch on typing errors and ClassificationFailure unless
    /// phi is a function and g is a controlled completely positive map.
    SCMor(SCObj dom, SCObj cod, Mor phi, Mor g, double tol = kDefaultTol);

    /// Skips the membership checks; typing is still checked.
    static SCMor unchecked(SCObj dom, SCObj cod, Mor phi, Mor g);

    const SCObj& dom() const { return dom_; }
    const SCObj& cod() const { return cod_; }
    const Mor& phi() const { return phi_; }
    const Mor& g() const { return g_; }

private:
    SCMor(SCObj dom, SCObj cod, Mor phi, Mor g, bool check, double tol);

    SCObj dom_;
    SCObj cod_;
    Mor phi_;
    Mor g_;
};

SCMor sc_identity(const SCObj& obj);
/// <nu o phi, reindex(phi, g) o_X f> for m = <phi, f> and n = <nu, g>.
/// Throws TypeMismatch unless m.cod() == n.dom().
SCMor sc_compose(const SCMor& n, const SCMor& m);
/// Componentwise tensor, indexed by the product structure.
SCMor sc_tensor(const SCMor& m1, const SCMor& m2);
/// <top_X, A* top A> : <X, A> -> <I, A>.
SCMor sc_erasure(const SCObj& obj);

// ---------------------------------------------------------------------------
// Maps A* X A -> B* Y B.

/// f_Xi = (B* Delta B) o f o (A* nabla A) : A* X X A -> B* Y Y B.
Mor xi_form(const Mor& f, const ClassicalStructure& x, const ClassicalStructure& y, const Obj& astar,
            const Obj& bstar);
/// g_c = (B* nabla B) o g o (A* Delta A) : A* X A -> B* Y B.
Mor copyright_form(const Mor& g, const ClassicalStructure& x, const ClassicalStructure& y,
                   const Obj& astar, const Obj& bstar);

/// f_Xi is completely positive, relative to the dualities of X (x) A and Y (x) B.
bool is_cq(const Mor& f, const ClassicalStructure& x, const ClassicalStructure& y,
           const CompactStructure& ca, const CompactStructure& cb, double tol = kDefaultTol);

/// g is completely positive and fixed by the decoherences of X and Y.
bool is_cq_decoherent(const Mor& g, const ClassicalStructure& x, const ClassicalStructure& y,
                      const CompactStructure& ca, const CompactStructure& cb,
                      double tol = kDefaultTol);

/// f -> f_Xi. Throws ClassificationFailure unless is_cq.
Mor cq_iso_xi(const Mor& f, const ClassicalStructure& x, const ClassicalStructure& y,
              const CompactStructure& ca, const CompactStructure& cb, double tol = kDefaultTol);
/// g -> g_c. Throws ClassificationFailure unless is_cq_decoherent.
Mor cq_iso_copyright(const Mor& g, const ClassicalStructure& x, const ClassicalStructure& y,
                     const CompactStructure& ca, const CompactStructure& cb,
                     double tol = kDefaultTol);

/// The pair <phi : X -> Y, g : A* X A -> B* B> as the map A* X A -> B* Y B
/// in which phi and g each consume one copy of the classical input. No
/// membership checks.
Mor embed_pair(const Mor& phi, const Mor& g, const ClassicalStructure& x, const ClassicalStructure& y,
               const Obj& a, const Obj& b);
Mor embed_sc(const SCMor& m);

}  // namespace cqm
