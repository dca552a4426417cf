#include "cqm/protocols.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "cqm/channels.hpp"
#include "cqm/classify.hpp"
#include "cqm/error.hpp"
#include "cqm/kleisli.hpp"

namespace cqm {
namespace {

const Obj kQ{2};

Mor sandwich(const Obj& left, const Mor& m, const Obj& right) {
    return tensor({identity(left), m, identity(right)});
}

void require_unitary(const Mor& u, std::size_t d, const std::string& what, double tol) {
    if (u.dom() != Obj{d} || u.cod() != Obj{d}) {
        throw Error(ErrorCode::dim_mismatch, what + ": expected an endomorphism of " + Obj{d}.str());
    }
    const Matrix& m = u.matrix();
    const auto n = static_cast<Eigen::Index>(d);
    if ((m.adjoint() * m - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > tol) {
        throw Error(ErrorCode::not_unitary, what + " is not unitary");
    }
}

// Kleisli carrier X (x) A -> A whose value at the k-th copyable state of X
// is family[k].
Mor indexed_family(const std::vector<Mor>& family, const ClassicalStructure& x, std::size_t d) {
    const Matrix basis = copyable_basis(x);
    const Matrix dual = basis.inverse();
    const auto n = static_cast<Eigen::Index>(d);
    const Eigen::Index nx = basis.cols();
    Matrix m = Matrix::Zero(n, nx * n);
    for (Eigen::Index k = 0; k < nx; ++k) {
        const Matrix& u = family[static_cast<std::size_t>(k)].matrix();
        for (Eigen::Index c = 0; c < nx; ++c) m.middleCols(c * n, n) += dual(k, c) * u;
    }
    return Mor(x.object() * Obj{d}, Obj{d}, m);
}

// Vectorised |v><v| in the layout Q* (x) Q.
Mor density(const Mor& ket) {
    return w_pure(ket, CompactStructure::trivial(), CompactStructure::standard(ket.cod()));
}

Mor qubit_ket(Scalar c0, Scalar c1) {
    Matrix v(2, 1);
    v << c0, c1;
    return Mor(Obj(), kQ, v);
}

// Destructive measurement of one qubit: sum_s |s> <b_s|, Q -> S.
Mor destructive(const std::array<Mor, 2>& basis) {
    Matrix m(2, 2);
    for (Eigen::Index s = 0; s < 2; ++s) m.row(s) = basis[static_cast<std::size_t>(s)].matrix().adjoint();
    return Mor(kQ, kQ, m);
}

double scalar_trace(const Mor& rho_vec, std::size_t n) {
    Scalar t = 0.0;
    for (std::size_t i = 0; i < n; ++i) t += rho_vec(i * n + i, 0);
    return t.real();
}

void record(AxiomReport& r, const std::string& name, bool ok) { r.add(name, ok, ok ? 0.0 : 1.0); }

}  // namespace

std::vector<Mor> generalized_paulis(std::size_t d) {
    if (d < 2) throw Error(ErrorCode::invalid_input, "teleportation needs d >= 2");
    const auto n = static_cast<Eigen::Index>(d);
    Matrix shift = Matrix::Zero(n, n);
    Matrix clock = Matrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        shift((j + 1) % n, j) = 1.0;
        clock(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(d));
    }
    std::vector<Mor> out;
    out.reserve(d * d);
    for (std::size_t b = 0; b < d; ++b) {
        Matrix z = Matrix::Identity(n, n);
        for (std::size_t i = 0; i < b; ++i) z = clock * z;
        Matrix m = z;
        for (std::size_t a = 0; a < d; ++a) {
            out.emplace_back(Obj{d}, Obj{d}, m);
            m = shift * m;
        }
    }
    return out;
}

TeleportationData default_teleportation(std::size_t d) {
    auto paulis = generalized_paulis(d);
    return TeleportationData{d, ClassicalStructure::standard(Obj{d * d}), paulis, paulis};
}

TeleportationReport teleport_verify(const TeleportationData& td, double tol) {
    const std::size_t d = td.d;
    const std::size_t nx = d * d;
    if (td.x.object().dim() != nx) {
        throw Error(ErrorCode::dim_mismatch, "classical data must have dimension d^2");
    }
    if (td.basis.size() != nx || td.correction.size() != nx) {
        throw Error(ErrorCode::dim_mismatch, "teleportation families need d^2 members");
    }
    for (std::size_t k = 0; k < nx; ++k) {
        require_unitary(td.basis[k], d, "measurement basis member " + std::to_string(k), tol);
        require_unitary(td.correction[k], d, "correction member " + std::to_string(k), tol);
    }

    const Obj a{d};
    const CompactStructure ca = CompactStructure::standard(a);
    const ClassicalStructure& x = td.x;

    // m_k = eps o (A (x) (V_k)_*) : A A* -> I, indexed over X.
    std::vector<Mor> effects;
    effects.reserve(nx);
    for (const Mor& v : td.basis) {
        effects.push_back(compose(ca.eps, tensor(identity(a), conjugate_of(v, ca, ca))));
    }
    const Matrix cbasis = copyable_basis(x);
    const Matrix cdual = cbasis.inverse();
    Matrix mm = Matrix::Zero(1, static_cast<Eigen::Index>(nx * d * d));
    for (std::size_t k = 0; k < nx; ++k) {
        const Matrix& row = effects[k].matrix();
        for (std::size_t c = 0; c < nx; ++c) {
            mm.middleCols(static_cast<Eigen::Index>(c * d * d), static_cast<Eigen::Index>(d * d)) +=
                cdual(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(c)) * row;
        }
    }
    const KMor m_x(x, a * ca.astar, Obj(), Mor(x.object() * a * ca.astar, Obj(), mm));

    const KMor pair = lift_F(tensor(identity(a), ca.eta), x);  // A -> A A* A
    const KMor measure = KMor(x, a * ca.astar * a, a, tensor(m_x.mor(), identity(a)));
    const KMor u(x, a, a, indexed_family(td.correction, x, d));
    const KMor t = kcompose(u, kcompose(measure, pair));

    TeleportationReport rep;
    rep.protocol = t.mor();
    const Mor w_t = w_pure_controlled(t.mor(), x);
    rep.deviation = deviation(w_t, controlled_identity(x, a));
    rep.checks.add("identity", rep.deviation <= tol, rep.deviation);

    double worst = 0.0;
    for (std::size_t k = 0; k < nx; ++k) {
        const Matrix& e = cbasis;
        const Mor state(Obj(), x.object(), e.col(static_cast<Eigen::Index>(k)));
        const Mor branch = compose(t.mor(), tensor(state, identity(a)));
        const double dev = deviation(w_pure(branch), w_pure(identity(a)));
        rep.branch_deviations.push_back(dev);
        worst = std::max(worst, dev);
    }
    rep.checks.add("branches", worst <= tol, worst);

    const KMor kid_a = kid(x, a);
    const double unit_dev = std::max(deviation(kcompose(u, kdagger(u)).mor(), kid_a.mor()),
                                     deviation(kcompose(kdagger(u), u).mor(), kid_a.mor()));
    rep.checks.add("kleisli_unitary", unit_dev <= tol, unit_dev);

    Mor completeness = Mor::zero(a * ca.astar, a * ca.astar);
    for (const Mor& e : effects) completeness = add(completeness, compose(dagger(e), e));
    const double bell_dev =
        deviation(completeness, scaled(identity(a * ca.astar), static_cast<double>(d)));
    rep.checks.add("bell_complete", bell_dev <= tol, bell_dev);

    // sum_k e_k / d^2 over the copyable states, fed to the controlled channel.
    const Mor uniform(Obj(), x.object(), cbasis.rowwise().sum() / static_cast<double>(nx));
    const std::array<Obj, 3> blocks{x.object(), a, a};
    const std::array<std::size_t, 3> order{1, 0, 2};
    const Mor front = compose(w_t, block_permutation(blocks, order));
    const Mor channel = mix(uniform, KMor(x, a * a, a * a, front), tol);
    const double chan_dev = deviation(channel, identity(a * a));
    rep.checks.add("channel", chan_dev <= tol, chan_dev);

    rep.pass = rep.checks.all_pass();
    return rep;
}

Mor cluster_state() {
    Matrix v(16, 1);
    for (Eigen::Index i = 0; i < 16; ++i) {
        const int b1 = static_cast<int>(i >> 3) & 1, b2 = static_cast<int>(i >> 2) & 1;
        const int b3 = static_cast<int>(i >> 1) & 1, b4 = static_cast<int>(i) & 1;
        const int parity = (b1 * b2 + b2 * b3 + b3 * b4) % 2;
        v(i, 0) = (parity == 0 ? 0.25 : -0.25);
    }
    return Mor(Obj(), Obj{2, 2, 2, 2}, v);
}

DemoReport mbqc_demo(double tol) {
    const double r = 1.0 / std::sqrt(2.0);
    const std::array<Mor, 2> x_basis{qubit_ket(r, r), qubit_ket(r, -r)};
    const std::array<Mor, 2> y_basis{qubit_ket(r, Scalar(0.0, r)), qubit_ket(r, Scalar(0.0, -r))};
    const std::array<Mor, 2> z_basis{qubit_ket(1.0, 0.0), qubit_ket(0.0, 1.0)};
    const Obj q2 = kQ * kQ, q3 = q2 * kQ, q4 = q3 * kQ;

    const ClassicalStructure one = ClassicalStructure::trivial();
    const ClassicalStructure bit = ClassicalStructure::standard(kQ);
    const ClassicalStructure xy = product_structure(bit, bit);
    const ClassicalStructure xyz = product_structure(xy, bit);

    // Z^s3 on the last qubit, controlled by (s1, s2, s3).
    Matrix corr(2, 16);
    for (Eigen::Index s = 0; s < 8; ++s) {
        corr.middleCols(2 * s, 2) = Matrix::Identity(2, 2);
        if ((s & 1) != 0) corr(1, 2 * s + 1) = -1.0;
    }
    const Mor correction(xyz.object() * kQ, kQ, corr);

    DemoReport rep;
    rep.classical_dim = xyz.object().dim();
    record(rep.checks, "classical_dim", rep.classical_dim == 8);

    // Post-selected chain in SC with outcomes (+, +, -).
    const SCObj o0{one, Obj()}, o1{one, q4}, o2{bit, q3}, o3{xy, q2}, o4{xyz, kQ}, o5{one, kQ};
    const Mor psi = cluster_state();
    std::vector<SCMor> arrows;
    const auto try_arrow = [&](const std::string& name, const SCObj& d, const SCObj& c, const Mor& phi,
                               const Mor& g) {
        try {
            arrows.emplace_back(d, c, phi, g, tol);
            record(rep.checks, name + "_sc", true);
        } catch (const Error&) {
            arrows.push_back(SCMor::unchecked(d, c, phi, g));
            record(rep.checks, name + "_sc", false);
        }
        const SCMor& m = arrows.back();
        record(rep.checks, name + "_cq",
               is_cq(embed_sc(m), d.x, c.x, CompactStructure::standard(d.a), CompactStructure::standard(c.a), tol));
    };
    try_arrow("prepare", o0, o1, identity(Obj()), w_pure(psi));
    try_arrow("measure_x", o1, o2, Mor::ket(kQ, 0), w_pure(tensor(dagger(x_basis[0]), identity(q3))));
    try_arrow("measure_y", o2, o3, tensor(identity(kQ), Mor::ket(kQ, 0)),
              w_pure_controlled(tensor(bit.top(), tensor(dagger(y_basis[0]), identity(q2))), bit));
    try_arrow("measure_z", o3, o4, tensor(identity(q2), Mor::ket(kQ, 1)),
              w_pure_controlled(tensor(xy.top(), tensor(dagger(z_basis[1]), identity(kQ))), xy));
    try_arrow("correct", o4, o5, xyz.top(), w_pure_controlled(correction, xyz));
    record(rep.checks, "erasure_shape",
           arrows.back().cod().x.object().is_unit() && approx_eq(arrows.back().phi(), xyz.top(), tol));

    bool typed = true;
    SCMor chain = arrows.front();
    try {
        for (std::size_t i = 1; i < arrows.size(); ++i) chain = sc_compose(arrows[i], chain);
    } catch (const Error&) {
        typed = false;
    }
    record(rep.checks, "typing", typed);
    const Mor plus = density(x_basis[0]);
    if (typed) {
        rep.composite = chain.g();
        const double p = std::max(scalar_trace(rep.composite, 2), tol);
        const double dev = deviation(scaled(rep.composite, 1.0 / p), plus);
        rep.checks.add("post_selected_output", dev <= tol, dev);
    } else {
        record(rep.checks, "post_selected_output", false);
    }

    // The same computation with genuine measurements.
    const CompactStructure s1 = CompactStructure::standard(kQ), s2 = CompactStructure::standard(q2),
                           s3 = CompactStructure::standard(q3), s4 = CompactStructure::standard(q4);
    const CompactStructure s0 = CompactStructure::trivial();
    struct Stage {
        std::string name;
        Mor f;
        ClassicalStructure x, y;
        CompactStructure ca, cb;
    };
    std::vector<Stage> stages;
    stages.push_back({"prepare", w_pure(psi), one, one, s0, s4});
    stages.push_back({"measure_x", controlled_measurement(tensor(destructive(x_basis), identity(q3)), one, bit, s4, s3),
                      one, bit, s4, s3});
    stages.push_back({"measure_y",
                      controlled_measurement(tensor({identity(kQ), destructive(y_basis), identity(q2)}), bit, xy, s3, s2),
                      bit, xy, s3, s2});
    stages.push_back({"measure_z",
                      controlled_measurement(tensor({identity(q2), destructive(z_basis), identity(kQ)}), xy, xyz, s2, s1),
                      xy, xyz, s2, s1});
    stages.push_back({"correct", embed_pair(xyz.top(), w_pure_controlled(correction, xyz), xyz, one, kQ, kQ), xyz,
                      one, s1, s1});
    Mor measured = Mor::scalar(1.0);
    for (const Stage& st : stages) {
        record(rep.checks, st.name + "_measured_cq", is_cq(st.f, st.x, st.y, st.ca, st.cb, tol));
        measured = compose(st.f, measured);
    }
    rep.measured = measured;
    const double out_dev = deviation(measured, plus);
    rep.checks.add("measured_output", out_dev <= tol, out_dev);

    rep.pass = rep.checks.all_pass();
    return rep;
}

DemoReport coin_toss_demo(double tol) {
    const ClassicalStructure one = ClassicalStructure::trivial();
    const ClassicalStructure bit = ClassicalStructure::standard(kQ);
    const CompactStructure sq = CompactStructure::standard(kQ);
    const double r = 1.0 / std::sqrt(2.0);
    const Mor h = Mor(kQ, kQ, (Matrix(2, 2) << r, r, r, -r).finished());
    const ClassicalStructure xobs = classical_from_basis(h, tol);

    // Canonical measurements with outcomes written in the standard labels.
    const Mor pi_z = bit.delta();
    const Mor pi_x = compose(tensor(dagger(h), identity(kQ)), xobs.delta());
    const std::array<Mor, 2> pis{pi_z, pi_x};
    Matrix ctrl(4, 4);
    ctrl.leftCols(2) = pi_z.matrix();
    ctrl.rightCols(2) = pi_x.matrix();
    const Mor pi_ctrl(kQ * kQ, kQ * kQ, ctrl);  // C (x) Q -> Y (x) Q

    DemoReport rep;
    rep.classical_dim = 2;
    record(rep.checks, "measurement_z", is_measurement(pi_z, bit, tol));
    record(rep.checks, "measurement_x", is_measurement(pi_x, bit, tol));
    rep.composite = controlled_measurement(pi_ctrl, bit, bit, sq, sq);
    record(rep.checks, "is_cq", is_cq(rep.composite, bit, bit, sq, sq, tol));
    const std::array<const char*, 2> names{"slice_z", "slice_x"};
    for (std::size_t c = 0; c < 2; ++c) {
        const Mor slice = compose(rep.composite, sandwich(kQ, Mor::ket(kQ, c), kQ));
        const Mor want = controlled_measurement(pis[c], one, bit, sq, sq);
        const double dev = deviation(slice, want);
        rep.checks.add(names[c], dev <= tol, dev);
    }
    // A fair coin fed into the control.
    const Mor coin(Obj(), kQ, (Matrix(2, 1) << 0.5, 0.5).finished());
    const Mor tossed = compose(rep.composite, sandwich(kQ, coin, kQ));
    record(rep.checks, "tossed_cq", is_cq(tossed, one, bit, sq, sq, tol));

    rep.pass = rep.checks.all_pass();
    return rep;
}

}  // namespace cqm
