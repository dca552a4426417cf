#pragma once

// Shared generators and independent oracles for the test suites.

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "cqm/core.hpp"
#include "cqm/structures.hpp"

namespace cqm::testing {

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

inline double uniform(Rng& rng, double lo = -1.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline Matrix random_complex_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
    Matrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = Scalar(uniform(rng), uniform(rng));
    }
    return m;
}

inline Mor random_mor(Rng& rng, const Obj& dom, const Obj& cod) {
    return Mor(dom, cod,
               random_complex_matrix(rng, static_cast<Eigen::Index>(cod.dim()),
                                     static_cast<Eigen::Index>(dom.dim())));
}

inline Mor random_real_mor(Rng& rng, const Obj& dom, const Obj& cod) {
    Matrix m = random_complex_matrix(rng, static_cast<Eigen::Index>(cod.dim()),
                                     static_cast<Eigen::Index>(dom.dim()));
    return Mor(dom, cod, m.real().cast<Scalar>());
}

inline Mor random_nonneg_mor(Rng& rng, const Obj& dom, const Obj& cod, double zero_prob = 0.3) {
    Matrix m(static_cast<Eigen::Index>(cod.dim()), static_cast<Eigen::Index>(dom.dim()));
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            m(i, j) = uniform(rng, 0.0, 1.0) < zero_prob ? 0.0 : uniform(rng, 0.1, 2.0);
        }
    }
    return Mor(dom, cod, m);
}

inline Mor random_boolean_mor(Rng& rng, const Obj& dom, const Obj& cod, double one_prob = 0.5) {
    Matrix m(static_cast<Eigen::Index>(cod.dim()), static_cast<Eigen::Index>(dom.dim()));
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            m(i, j) = uniform(rng, 0.0, 1.0) < one_prob ? 1.0 : 0.0;
        }
    }
    return Mor(dom, cod, m, SemiringKind::boolean);
}

/// Haar-ish random unitary from the QR factorisation of a Gaussian-like matrix.
inline Mor random_unitary(Rng& rng, const Obj& a) {
    const auto n = static_cast<Eigen::Index>(a.dim());
    Eigen::HouseholderQR<Matrix> qr(random_complex_matrix(rng, n, n));
    Matrix q = qr.householderQ();
    return Mor(a, a, q);
}

/// Boolean matrix of size rows x cols whose entries are the bits of `code`.
inline Mor boolean_from_bits(const Obj& dom, const Obj& cod, std::uint64_t code) {
    const auto rows = static_cast<Eigen::Index>(cod.dim());
    const auto cols = static_cast<Eigen::Index>(dom.dim());
    Matrix m(rows, cols);
    std::uint64_t bit = 0;
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = (code >> bit++ & 1u) ? 1.0 : 0.0;
    }
    return Mor(dom, cod, m, SemiringKind::boolean);
}

/// Independent Choi-matrix oracle for f : A* (x) A -> B* (x) B with standard
/// self-dual structures: C[(a, b*), (a', b)] = f[(b*, b), (a, a')] must be PSD.
/// Uses a general complex eigen-solver rather than the Hermitian one.
inline bool choi_oracle_psd(const Mor& f, std::size_t da, std::size_t db, double tol = 1e-9) {
    const auto A = static_cast<Eigen::Index>(da);
    const auto B = static_cast<Eigen::Index>(db);
    Matrix c(A * B, A * B);
    for (Eigen::Index a = 0; a < A; ++a) {
        for (Eigen::Index bs = 0; bs < B; ++bs) {
            for (Eigen::Index ap = 0; ap < A; ++ap) {
                for (Eigen::Index b = 0; b < B; ++b) {
                    c(a * B + bs, ap * B + b) = f.matrix()(bs * B + b, a * A + ap);
                }
            }
        }
    }
    if ((c - c.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
    Eigen::ComplexEigenSolver<Matrix> solver(c);
    return solver.eigenvalues().real().minCoeff() >= -tol;
}

/// Brute-force boolean positivity: e = g o g^dagger for some boolean g. It
/// suffices to search g whose columns are distinct nonempty subsets.
inline bool boolean_positive_oracle(const Mor& e) {
    const auto n = static_cast<std::size_t>(e.matrix().rows());
    const std::size_t subsets = (std::size_t{1} << n) - 1;  // nonempty subsets
    // Each candidate g is a set of columns: a bitmask over nonempty subsets.
    for (std::uint64_t choice = 0; choice < (std::uint64_t{1} << subsets); ++choice) {
        Matrix prod = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (std::size_t s = 0; s < subsets; ++s) {
            if (!(choice >> s & 1u)) continue;
            const std::size_t col = s + 1;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    if ((col >> i & 1u) && (col >> j & 1u)) {
                        prod(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
                    }
                }
            }
        }
        if (prod == e.matrix()) return true;
    }
    return false;
}

/// Relational composite computed pair by pair: (x, z) related iff some y has
/// (x, y) in s and (y, z) in r.
inline Mor relational_composite(const Mor& r, const Mor& s) {
    const auto X = s.matrix().cols();
    const auto Y = s.matrix().rows();
    const auto Z = r.matrix().rows();
    Matrix m = Matrix::Zero(Z, X);
    for (Eigen::Index x = 0; x < X; ++x) {
        for (Eigen::Index z = 0; z < Z; ++z) {
            for (Eigen::Index y = 0; y < Y; ++y) {
                if (s.matrix()(y, x) != 0.0 && r.matrix()(z, y) != 0.0) m(z, x) = 1.0;
            }
        }
    }
    return Mor(s.dom(), r.cod(), m, SemiringKind::boolean);
}

inline Mor hadamard() {
    Matrix h(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    h << s, s, s, -s;
    return Mor(Obj{2}, Obj{2}, h);
}

inline Mor matrix_mor(const Obj& dom, const Obj& cod, std::initializer_list<std::initializer_list<Scalar>> rows,
                      SemiringKind kind = SemiringKind::complex) {
    Matrix m(static_cast<Eigen::Index>(rows.size()),
             static_cast<Eigen::Index>(rows.size() ? rows.begin()->size() : 0));
    Eigen::Index i = 0;
    for (const auto& row : rows) {
        Eigen::Index j = 0;
        for (Scalar v : row) m(i, j++) = v;
        ++i;
    }
    return Mor(dom, cod, m, kind);
}

/// The two FRel structures on a 2-element set: Z copies each element, X is
/// the group Z2 with unit 1.
inline ClassicalStructure frel_copy_z() {
    return ClassicalStructure(Obj{2}, matrix_mor(Obj{2}, Obj{2, 2}, {{1, 0}, {0, 0}, {0, 0}, {0, 1}}, SemiringKind::boolean),
                              matrix_mor(Obj{2}, Obj{}, {{1, 1}}, SemiringKind::boolean));
}

inline ClassicalStructure frel_copy_x() {
    return ClassicalStructure(Obj{2}, matrix_mor(Obj{2}, Obj{2, 2}, {{0, 1}, {1, 0}, {1, 0}, {0, 1}}, SemiringKind::boolean),
                              matrix_mor(Obj{2}, Obj{}, {{0, 1}}, SemiringKind::boolean));
}

/// Standard or rotated complex classical structure on an n-dimensional space.
inline ClassicalStructure random_structure(Rng& rng, std::size_t n) {
    if (pick(rng, 0, 2) == 0) return ClassicalStructure::standard(Obj{n});
    return classical_from_basis(random_unitary(rng, Obj{n}));
}

}  // namespace cqm::testing
