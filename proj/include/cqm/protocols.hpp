#pragma once

// End-to-end protocol checks: teleportation with classical data flow, the
// one-way computation on a four qubit cluster state, and a measurement whose
// basis is chosen by a coin toss.

#include <cstddef>
#include <vector>

#include "cqm/core.hpp"
#include "cqm/structures.hpp"

namespace cqm {

/// Teleportation of a d-dimensional system with classical data in X
/// (dimension d^2). Branch k is indexed by the k-th copyable state of X.
/// The Bell effect of branch k is the coname m_k = eps o (A (x) (V_k)_*) of
/// basis[k] = V_k, and correction[k] = U_k is applied after it.
struct TeleportationData {
    std::size_t d = 2;
    ClassicalStructure x;
    std::vector<Mor> basis;
    std::vector<Mor> correction;
};

/// X^a Z^b at index a + d * b, with the shift X|j> = |j + 1> and the clock
/// Z|j> = w^j |j>, w = exp(2 pi i / d). For d = 2 this is I, X, Z, XZ.
std::vector<Mor> generalized_paulis(std::size_t d);

/// Standard X of dimension d^2; basis and correction are both the
/// generalized Paulis.
TeleportationData default_teleportation(std::size_t d = 2);

struct TeleportationReport {
    /// Distance of the pure-channel form of the protocol from A* top A.
    double deviation = 0.0;
    /// Same distance per branch: U_k o V_k^dagger against id_A.
    std::vector<double> branch_deviations;
    AxiomReport checks;
    bool pass = false;
    /// The protocol as a Kleisli morphism X (x) A -> A.
    Mor protocol = Mor::scalar(0.0);
};

/// Builds T = U o_X (m_X (x) A) o_X F(A (x) eta_A) and checks it against the
/// Kleisli identity. Checks: "identity" (pure-channel form of T), "branches",
/// "kleisli_unitary" (U o_X U^dagger = id and U^dagger o_X U = id),
/// "bell_complete" (sum_k m_k^dagger m_k = d id) and "channel" (the
/// normalised average of the branch channels is the identity channel).
/// Throws NotUnitary if a family member is not unitary and DimMismatch if
/// the data is malformed.
TeleportationReport teleport_verify(const TeleportationData& td, double tol = kDefaultTol);

struct DemoReport {
    AxiomReport checks;
    bool pass = false;
    /// For the one-way computation: the post-selected SC composite I -> Q* Q.
    /// For the coin toss: the controlled measurement Q* C Q -> Q* Y Q.
    Mor composite = Mor::scalar(0.0);
    /// For the one-way computation: the composite with genuine measurements.
    Mor measured = Mor::scalar(0.0);
    std::size_t classical_dim = 0;
};

/// The linear cluster CZ_12 CZ_23 CZ_34 |+>^4.
Mor cluster_state();

/// Measures qubit 1 along X, qubit 2 along Y and qubit 3 along Z, then
/// applies Z^s3 to qubit 4 and erases the outcomes. The arrows are built
/// once as SC morphisms with the outcomes fixed to (+, +, -), and once with
/// genuine measurements as classical-quantum maps. Outcome 0 is the +
/// eigenstate throughout.
DemoReport mbqc_demo(double tol = kDefaultTol);

/// A qubit measured along Z when the coin reads 0 and along X when it reads 1.
DemoReport coin_toss_demo(double tol = kDefaultTol);

}  // namespace cqm
