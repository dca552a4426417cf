#pragma once

// Typed matrices over a dagger semiring: the symmetric monoidal dagger
// category every other module is built on.
//
// Index convention: a basis index of an object with factors (d0, d1, ..., dk)
// is the mixed-radix number with d0 most significant. Kronecker products,
// symmetries and all wire permutations follow this convention.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cqm/error.hpp"

namespace cqm {

using Scalar = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kDefaultTol = 1e-9;

enum class SemiringKind { complex, boolean };

std::string_view to_string(SemiringKind kind);

/// Scalar operations of one of the two supported dagger semirings.
///
/// Boolean scalars are stored as the complex numbers 0 and 1; `add` is OR,
/// `mul` is AND and `conj` is the identity.
class DaggerSemiring {
public:
    explicit constexpr DaggerSemiring(SemiringKind kind) : kind_(kind) {}

    constexpr SemiringKind kind() const { return kind_; }

    Scalar zero() const { return Scalar(0.0); }
    Scalar one() const { return Scalar(1.0); }
    Scalar add(Scalar a, Scalar b) const;
    Scalar mul(Scalar a, Scalar b) const;
    Scalar conj(Scalar a) const;
    /// True iff `a` is an element of the carrier (always for complex).
    bool contains(Scalar a) const;

private:
    SemiringKind kind_;
};

/// An object: an ordered list of atomic dimensions. The unit object has no
/// factors. Factors equal to 1 are dropped on construction, so unit coherence
/// isomorphisms are literally identities.
class Obj {
public:
    Obj() = default;
    Obj(std::initializer_list<std::size_t> factors);
    explicit Obj(std::vector<std::size_t> factors);

    static Obj unit() { return Obj(); }
    /// The n-fold tensor power of `base`.
    static Obj power(const Obj& base, std::size_t n);

    const std::vector<std::size_t>& factors() const { return factors_; }
    std::size_t size() const { return factors_.size(); }
    std::size_t dim() const;
    bool is_unit() const { return factors_.empty(); }

    /// Sub-object made of factors [first, first + count).
    Obj slice(std::size_t first, std::size_t count) const;

    friend Obj operator*(const Obj& a, const Obj& b);
    friend bool operator==(const Obj& a, const Obj& b) = default;

    std::string str() const;

private:
    std::vector<std::size_t> factors_;
};

/// A morphism dom -> cod, stored as a dim(cod) x dim(dom) matrix.
class Mor {
public:
    Mor(Obj dom, Obj cod, Matrix entries, SemiringKind kind = SemiringKind::complex);

    static Mor zero(const Obj& dom, const Obj& cod, SemiringKind kind = SemiringKind::complex);
    /// A scalar I -> I.
    static Mor scalar(Scalar s, SemiringKind kind = SemiringKind::complex);
    /// Basis state |index> : I -> obj.
    static Mor ket(const Obj& obj, std::size_t index, SemiringKind kind = SemiringKind::complex);
    /// Basis effect <index| : obj -> I.
    static Mor bra(const Obj& obj, std::size_t index, SemiringKind kind = SemiringKind::complex);

    const Obj& dom() const { return dom_; }
    const Obj& cod() const { return cod_; }
    const Matrix& matrix() const { return entries_; }
    SemiringKind kind() const { return kind_; }
    DaggerSemiring semiring() const { return DaggerSemiring(kind_); }

    Scalar operator()(std::size_t row, std::size_t col) const { return entries_(row, col); }
    /// The single entry of a scalar morphism.
    Scalar value() const;

    /// Same matrix regarded with a different factorisation of dom/cod. The
    /// total dimensions must agree.
    Mor retyped(const Obj& dom, const Obj& cod) const;

    bool is_scalar() const { return dom_.is_unit() && cod_.is_unit(); }

private:
    Obj dom_;
    Obj cod_;
    Matrix entries_;
    SemiringKind kind_;
};

Mor compose(const Mor& g, const Mor& f);
Mor tensor(const Mor& f, const Mor& g);
Mor tensor(std::initializer_list<Mor> factors);
Mor dagger(const Mor& f);
Mor identity(const Obj& a, SemiringKind kind = SemiringKind::complex);
/// sigma : A (x) B -> B (x) A.
Mor symmetry(const Obj& a, const Obj& b, SemiringKind kind = SemiringKind::complex);

/// Wire permutation: the codomain's k-th factor is the domain's factor
/// `order[k]`, and basis vectors are carried along accordingly.
Mor wire_permutation(const Obj& dom, std::span<const std::size_t> order,
                     SemiringKind kind = SemiringKind::complex);

/// Permutation of whole blocks: the domain is blocks[0] (x) ... (x)
/// blocks[k-1]; the codomain lists blocks[order[0]], blocks[order[1]], ...
Mor block_permutation(std::span<const Obj> blocks, std::span<const std::size_t> order,
                      SemiringKind kind = SemiringKind::complex);

/// (id_L (x) f (x) id_R) o g, where f acts on the codomain factors of g
/// starting at factor position `pos`. Computed without forming the whiskered
/// matrix.
Mor compose_at(const Mor& f, const Mor& g, std::size_t pos);

/// g o (id_L (x) f (x) id_R), where f's codomain occupies the domain
/// factors of g starting at factor position `pos`.
Mor precompose_at(const Mor& g, const Mor& f, std::size_t pos);

/// Scalar multiple (complex only; boolean multiplication by 0/1 allowed).
Mor scaled(const Mor& f, Scalar s);
/// Entrywise sum in the semiring. Types must agree.
Mor add(const Mor& f, const Mor& g);

/// Max entrywise absolute difference (complex), or 0/1 for inequality
/// (boolean). Throws DimMismatch if the types differ.
double deviation(const Mor& f, const Mor& g);

bool approx_eq(const Mor& f, const Mor& g, double tol = kDefaultTol);

/// Throws SemiringMismatch unless both morphisms share a semiring.
void require_same_semiring(const Mor& f, const Mor& g);

}  // namespace cqm
