#include "cqm/core.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cqm {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::dim_mismatch: return "DimMismatch";
        case ErrorCode::semiring_mismatch: return "SemiringMismatch";
        case ErrorCode::not_unitary: return "NotUnitary";
        case ErrorCode::axiom_failure: return "AxiomFailure";
        case ErrorCode::invalid_arity: return "InvalidArity";
        case ErrorCode::not_abelian: return "NotAbelian";
        case ErrorCode::not_group: return "NotGroup";
        case ErrorCode::not_endo: return "NotEndo";
        case ErrorCode::classification_failure: return "ClassificationFailure";
        case ErrorCode::boolean_unsupported: return "BooleanUnsupported";
        case ErrorCode::not_a_relation: return "NotARelation";
        case ErrorCode::not_classical: return "NotClassical";
        case ErrorCode::budget_exceeded: return "BudgetExceeded";
        case ErrorCode::index_mismatch: return "IndexMismatch";
        case ErrorCode::not_stochastic: return "NotStochastic";
        case ErrorCode::type_mismatch: return "TypeMismatch";
        case ErrorCode::syntax_error: return "SyntaxError";
        case ErrorCode::type_error: return "TypeError";
        case ErrorCode::invalid_input: return "InvalidInput";
    }
    return "Unknown";
}

std::string_view to_string(SemiringKind kind) {
    return kind == SemiringKind::complex ? "complex" : "boolean";
}

// ---------------------------------------------------------------- semiring

Scalar DaggerSemiring::add(Scalar a, Scalar b) const {
    if (kind_ == SemiringKind::boolean) {
        return (a != 0.0 || b != 0.0) ? Scalar(1.0) : Scalar(0.0);
    }
    return a + b;
}

Scalar DaggerSemiring::mul(Scalar a, Scalar b) const {
    if (kind_ == SemiringKind::boolean) {
        return (a != 0.0 && b != 0.0) ? Scalar(1.0) : Scalar(0.0);
    }
    return a * b;
}

Scalar DaggerSemiring::conj(Scalar a) const {
    return kind_ == SemiringKind::boolean ? a : std::conj(a);
}

bool DaggerSemiring::contains(Scalar a) const {
    if (kind_ == SemiringKind::complex) return true;
    return a == Scalar(0.0) || a == Scalar(1.0);
}

namespace {

// Boolean matrices are computed with ordinary arithmetic on 0/1 entries and
// then mapped back to their support: for nonnegative integer sums, "> 0"
// is exactly OR of ANDs.
void to_support(Matrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            m(i, j) = m(i, j).real() > 0.5 ? Scalar(1.0) : Scalar(0.0);
        }
    }
}

std::size_t product(std::span<const std::size_t> dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

}  // namespace

// --------------------------------------------------------------------- Obj

Obj::Obj(std::initializer_list<std::size_t> factors) : Obj(std::vector<std::size_t>(factors)) {}

Obj::Obj(std::vector<std::size_t> factors) {
    for (std::size_t d : factors) {
        if (d == 0) throw Error(ErrorCode::dim_mismatch, "object factor of dimension 0");
        if (d != 1) factors_.push_back(d);
    }
}

Obj Obj::power(const Obj& base, std::size_t n) {
    Obj out;
    for (std::size_t i = 0; i < n; ++i) out = out * base;
    return out;
}

std::size_t Obj::dim() const { return product(factors_); }

Obj Obj::slice(std::size_t first, std::size_t count) const {
    if (first + count > factors_.size()) {
        throw Error(ErrorCode::dim_mismatch, "factor slice out of range for " + str());
    }
    Obj out;
    out.factors_.assign(factors_.begin() + static_cast<std::ptrdiff_t>(first),
                        factors_.begin() + static_cast<std::ptrdiff_t>(first + count));
    return out;
}

Obj operator*(const Obj& a, const Obj& b) {
    Obj out = a;
    out.factors_.insert(out.factors_.end(), b.factors_.begin(), b.factors_.end());
    return out;
}

std::string Obj::str() const {
    if (factors_.empty()) return "I";
    std::ostringstream os;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) os << "x";
        os << factors_[i];
    }
    return os.str();
}

// --------------------------------------------------------------------- Mor

Mor::Mor(Obj dom, Obj cod, Matrix entries, SemiringKind kind)
    : dom_(std::move(dom)), cod_(std::move(cod)), entries_(std::move(entries)), kind_(kind) {
    if (static_cast<std::size_t>(entries_.rows()) != cod_.dim() ||
        static_cast<std::size_t>(entries_.cols()) != dom_.dim()) {
        std::ostringstream os;
        os << "matrix is " << entries_.rows() << "x" << entries_.cols() << " but type is "
           << dom_.str() << " -> " << cod_.str();
        throw Error(ErrorCode::dim_mismatch, os.str());
    }
    if (kind_ == SemiringKind::boolean) {
        const DaggerSemiring sr(kind_);
        for (Eigen::Index j = 0; j < entries_.cols(); ++j) {
            for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
                if (!sr.contains(entries_(i, j))) {
                    throw Error(ErrorCode::invalid_input, "boolean matrix entry is not 0 or 1");
                }
            }
        }
    }
}

Mor Mor::zero(const Obj& dom, const Obj& cod, SemiringKind kind) {
    return Mor(dom, cod, Matrix::Zero(static_cast<Eigen::Index>(cod.dim()),
                                      static_cast<Eigen::Index>(dom.dim())),
               kind);
}

Mor Mor::scalar(Scalar s, SemiringKind kind) {
    Matrix m(1, 1);
    m(0, 0) = s;
    return Mor(Obj(), Obj(), m, kind);
}

Mor Mor::ket(const Obj& obj, std::size_t index, SemiringKind kind) {
    if (index >= obj.dim()) throw Error(ErrorCode::dim_mismatch, "basis index out of range");
    Mor out = zero(Obj(), obj, kind);
    out.entries_(static_cast<Eigen::Index>(index), 0) = 1.0;
    return out;
}

Mor Mor::bra(const Obj& obj, std::size_t index, SemiringKind kind) {
    return dagger(ket(obj, index, kind));
}

Scalar Mor::value() const {
    if (entries_.size() != 1) throw Error(ErrorCode::dim_mismatch, "morphism is not a scalar");
    return entries_(0, 0);
}

Mor Mor::retyped(const Obj& dom, const Obj& cod) const {
    if (dom.dim() != dom_.dim() || cod.dim() != cod_.dim()) {
        throw Error(ErrorCode::dim_mismatch,
                    "cannot retype " + dom_.str() + " -> " + cod_.str() + " as " + dom.str() +
                        " -> " + cod.str());
    }
    return Mor(dom, cod, entries_, kind_);
}

// -------------------------------------------------------------- operations

void require_same_semiring(const Mor& f, const Mor& g) {
    if (f.kind() != g.kind()) {
        throw Error(ErrorCode::semiring_mismatch,
                    std::string(to_string(f.kind())) + " vs " + std::string(to_string(g.kind())));
    }
}

Mor compose(const Mor& g, const Mor& f) {
    require_same_semiring(f, g);
    if (!(f.cod() == g.dom())) {
        throw Error(ErrorCode::dim_mismatch,
                    "compose: codomain " + f.cod().str() + " vs domain " + g.dom().str());
    }
    Matrix m = g.matrix() * f.matrix();
    if (f.kind() == SemiringKind::boolean) to_support(m);
    return Mor(f.dom(), g.cod(), std::move(m), f.kind());
}

Mor tensor(const Mor& f, const Mor& g) {
    require_same_semiring(f, g);
    const Matrix& a = f.matrix();
    const Matrix& b = g.matrix();
    Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            m.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return Mor(f.dom() * g.dom(), f.cod() * g.cod(), std::move(m), f.kind());
}

Mor tensor(std::initializer_list<Mor> factors) {
    if (factors.size() == 0) return Mor::scalar(1.0);
    auto it = factors.begin();
    Mor out = *it;
    for (++it; it != factors.end(); ++it) out = tensor(out, *it);
    return out;
}

Mor dagger(const Mor& f) {
    return Mor(f.cod(), f.dom(), f.matrix().adjoint(), f.kind());
}

Mor identity(const Obj& a, SemiringKind kind) {
    const auto n = static_cast<Eigen::Index>(a.dim());
    return Mor(a, a, Matrix::Identity(n, n), kind);
}

Mor wire_permutation(const Obj& dom, std::span<const std::size_t> order, SemiringKind kind) {
    const auto& dims = dom.factors();
    const std::size_t k = dims.size();
    if (order.size() != k) throw Error(ErrorCode::dim_mismatch, "permutation length mismatch");
    std::vector<bool> seen(k, false);
    for (std::size_t o : order) {
        if (o >= k || seen[o]) throw Error(ErrorCode::dim_mismatch, "not a permutation");
        seen[o] = true;
    }
    std::vector<std::size_t> cod_dims(k);
    for (std::size_t i = 0; i < k; ++i) cod_dims[i] = dims[order[i]];
    const Obj cod(cod_dims);

    // Strides of the domain factors in the mixed-radix index.
    std::vector<std::size_t> stride(k, 1);
    for (std::size_t i = k; i-- > 1;) stride[i - 1] = stride[i] * dims[i];

    Mor out = Mor::zero(dom, cod, kind);
    Matrix m = out.matrix();
    const std::size_t n = dom.dim();
    std::vector<std::size_t> digits(k, 0);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t rem = col;
        for (std::size_t i = 0; i < k; ++i) {
            digits[i] = rem / stride[i];
            rem %= stride[i];
        }
        std::size_t row = 0;
        for (std::size_t i = 0; i < k; ++i) row = row * cod_dims[i] + digits[order[i]];
        m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = 1.0;
    }
    return Mor(dom, cod, std::move(m), kind);
}

Mor block_permutation(std::span<const Obj> blocks, std::span<const std::size_t> order,
                      SemiringKind kind) {
    if (order.size() != blocks.size()) {
        throw Error(ErrorCode::dim_mismatch, "block permutation length mismatch");
    }
    std::vector<std::size_t> first(blocks.size(), 0);
    Obj dom;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        first[i] = dom.size();
        dom = dom * blocks[i];
    }
    std::vector<std::size_t> factor_order;
    for (std::size_t b : order) {
        if (b >= blocks.size()) throw Error(ErrorCode::dim_mismatch, "block index out of range");
        for (std::size_t j = 0; j < blocks[b].size(); ++j) factor_order.push_back(first[b] + j);
    }
    return wire_permutation(dom, factor_order, kind);
}

Mor symmetry(const Obj& a, const Obj& b, SemiringKind kind) {
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < b.size(); ++i) order.push_back(a.size() + i);
    for (std::size_t i = 0; i < a.size(); ++i) order.push_back(i);
    return wire_permutation(a * b, order, kind);
}

Mor compose_at(const Mor& f, const Mor& g, std::size_t pos) {
    require_same_semiring(f, g);
    const Obj& c = g.cod();
    const std::size_t len = f.dom().size();
    if (pos + len > c.size() || !(c.slice(pos, len) == f.dom())) {
        throw Error(ErrorCode::dim_mismatch, "compose_at: " + f.dom().str() +
                                                 " does not match factors of " + c.str() +
                                                 " at position " + std::to_string(pos));
    }
    const Obj left = c.slice(0, pos);
    const Obj right = c.slice(pos + len, c.size() - pos - len);
    const auto L = static_cast<Eigen::Index>(left.dim());
    const auto R = static_cast<Eigen::Index>(right.dim());
    const auto A = static_cast<Eigen::Index>(f.dom().dim());
    const auto B = static_cast<Eigen::Index>(f.cod().dim());
    const Matrix ft = f.matrix().transpose();

    Matrix out(L * B * R, g.matrix().cols());
    for (Eigen::Index col = 0; col < g.matrix().cols(); ++col) {
        const Scalar* in = g.matrix().col(col).data();
        Scalar* dst = out.col(col).data();
        for (Eigen::Index l = 0; l < L; ++l) {
            // For fixed l the (a, r) slab is a column-major R x A matrix.
            Eigen::Map<const Matrix> slab(in + l * A * R, R, A);
            Eigen::Map<Matrix> res(dst + l * B * R, R, B);
            res.noalias() = slab * ft;
        }
    }
    if (f.kind() == SemiringKind::boolean) to_support(out);
    return Mor(g.dom(), left * f.cod() * right, std::move(out), f.kind());
}

Mor precompose_at(const Mor& g, const Mor& f, std::size_t pos) {
    return dagger(compose_at(dagger(f), dagger(g), pos));
}

Mor scaled(const Mor& f, Scalar s) {
    if (f.kind() == SemiringKind::boolean && !(s == 0.0 || s == 1.0)) {
        throw Error(ErrorCode::semiring_mismatch, "boolean morphisms scale only by 0 or 1");
    }
    return Mor(f.dom(), f.cod(), f.matrix() * s, f.kind());
}

Mor add(const Mor& f, const Mor& g) {
    require_same_semiring(f, g);
    if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) {
        throw Error(ErrorCode::dim_mismatch, "add: types differ");
    }
    Matrix m = f.matrix() + g.matrix();
    if (f.kind() == SemiringKind::boolean) to_support(m);
    return Mor(f.dom(), f.cod(), std::move(m), f.kind());
}

double deviation(const Mor& f, const Mor& g) {
    require_same_semiring(f, g);
    if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) {
        throw Error(ErrorCode::dim_mismatch, "compare: " + f.dom().str() + " -> " + f.cod().str() +
                                                 " vs " + g.dom().str() + " -> " + g.cod().str());
    }
    if (f.matrix().size() == 0) return 0.0;
    if (f.kind() == SemiringKind::boolean) return f.matrix() == g.matrix() ? 0.0 : 1.0;
    return (f.matrix() - g.matrix()).cwiseAbs().maxCoeff();
}

bool approx_eq(const Mor& f, const Mor& g, double tol) {
    const double d = deviation(f, g);
    return f.kind() == SemiringKind::boolean ? d == 0.0 : d <= tol;
}

}  // namespace cqm
