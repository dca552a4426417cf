#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cqm/core.hpp"

namespace cqm {

/// One named check in an axiom report.
struct AxiomCheck {
    std::string name;
    bool passed = false;
    double deviation = 0.0;
};

/// Ordered list of named axiom checks.
class AxiomReport {
public:
    void add(std::string name, bool passed, double deviation);
    /// Records approx_eq(lhs, rhs, tol) under `name`.
    void add_equation(std::string name, const Mor& lhs, const Mor& rhs, double tol);
    /// Merges another report's checks, folding them under the same names
    /// (a name that fails anywhere fails overall; deviations take the max).
    void merge(const AxiomReport& other);

    bool all_pass() const;
    const std::vector<AxiomCheck>& checks() const { return checks_; }
    /// Throws std::out_of_range if no check carries `name`.
    const AxiomCheck& at(const std::string& name) const;
    bool passed(const std::string& name) const { return at(name).passed; }

private:
    std::vector<AxiomCheck> checks_;
};

/// A duality (A, A*, eta, eps) with eta : I -> A* (x) A and eps : A (x) A* -> I.
struct CompactStructure {
    Obj a;
    Obj astar;
    Mor eta;
    Mor eps;

    /// Bell state: eps is derived as dagger(eta) o sigma.
    static CompactStructure bell(const Obj& a, const Obj& astar, const Mor& eta);
    /// Self-dual structure with eta = sum_i e_i (x) e_i over the whole object.
    static CompactStructure standard(const Obj& a, SemiringKind kind = SemiringKind::complex);
    /// Unit object with eta = eps = 1.
    static CompactStructure trivial(SemiringKind kind = SemiringKind::complex);
};

/// The compact structure on A* with dual A.
CompactStructure dual(const CompactStructure& c);

/// Planar tensor of dualities: (A (x) B)* = B* (x) A*.
CompactStructure compact_tensor(const CompactStructure& ca, const CompactStructure& cb);

AxiomReport verify_compact(const CompactStructure& c, double tol = kDefaultTol);

/// A commutative special dagger Frobenius algebra given by its comonoid
/// half; the monoid half is derived by the dagger.
class ClassicalStructure {
public:
    /// Checks only the typing of delta : X -> X (x) X and top : X -> I.
    ClassicalStructure(Obj x, Mor delta, Mor top);

    /// Standard basis structure on `x`.
    static ClassicalStructure standard(const Obj& x, SemiringKind kind = SemiringKind::complex);
    /// The unit object with trivial copying.
    static ClassicalStructure trivial(SemiringKind kind = SemiringKind::complex);

    const Obj& object() const { return x_; }
    const Mor& delta() const { return delta_; }
    const Mor& top() const { return top_; }
    Mor nabla() const { return dagger(delta_); }
    Mor bot() const { return dagger(top_); }
    SemiringKind kind() const { return delta_.kind(); }

    /// Exact equality of carrier and structure maps.
    friend bool operator==(const ClassicalStructure& a, const ClassicalStructure& b);

private:
    Obj x_;
    Mor delta_;
    Mor top_;
};

/// Copies the columns of the unitary `u`. Throws NotUnitary.
ClassicalStructure classical_from_basis(const Mor& u, double tol = kDefaultTol);

/// Checks assoc, unit, coassoc, counit, frobenius, special, commutative and
/// dagger_compat.
AxiomReport verify_classical(const ClassicalStructure& cs, double tol = kDefaultTol);

/// eta = Delta o bot; throws AxiomFailure if `cs` is not a classical
/// structure or if sigma o eta != eta.
CompactStructure bell_from_classical(const ClassicalStructure& cs, double tol = kDefaultTol);

/// Product structure on X (x) Y.
ClassicalStructure product_structure(const ClassicalStructure& x, const ClassicalStructure& y);

/// f* : B* -> A* for f : A -> B.
Mor transpose_of(const Mor& f, const CompactStructure& ca, const CompactStructure& cb);
/// f_* = (f^dagger)* : A* -> B*.
Mor conjugate_of(const Mor& f, const CompactStructure& ca, const CompactStructure& cb);

/// The scalar eps o sigma o eta.
Mor dimension(const CompactStructure& c);

enum class ScalarConvention {
    loop,    // spider(0, 0) = top o bot
    reject,  // spider(0, 0) throws InvalidArity
};

/// Left-nested n-fold comultiplication X -> X^m (Delta^(0) = top, Delta^(1) = id).
Mor comultiplication_power(const ClassicalStructure& cs, std::size_t m);

/// The spider X^n -> X^m, Delta^(m) o nabla^(n).
Mor spider_matrix(const ClassicalStructure& cs, std::size_t n, std::size_t m,
                  ScalarConvention conv = ScalarConvention::loop);

/// Basis vectors b_i with Delta b_i = b_i (x) b_i, as the columns of a
/// matrix, ordered by the position of each vector's largest coordinate.
/// Complex structures only.
Matrix copyable_basis(const ClassicalStructure& cs);

/// A finite abelian group on a block of the carrier. `table[i][j]` is the
/// position (in `elements`) of elements[i] * elements[j]; `unit` is a
/// position in `elements`.
struct GroupBlock {
    std::vector<std::size_t> elements;
    std::vector<std::vector<std::size_t>> table;
    std::size_t unit = 0;
};

/// The FRel classical structure whose multiplication is blockwise group
/// multiplication. Blocks must partition {0, ..., n-1}. Throws NotGroup,
/// NotAbelian or InvalidInput.
ClassicalStructure frel_structure_from_groups(const std::vector<GroupBlock>& blocks);

}  // namespace cqm
