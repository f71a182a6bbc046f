#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace qkak {

using Complex = std::complex<double>;

/// 3x3 complex operator on the qutrit Hilbert space spanned by the spin-1
/// projection states |m = 1>, |m = 0>, |m = -1>. Energies are dimensionless
/// in units of the quadrupole coupling q, times in units of 1/q.
using Operator3 = Eigen::Matrix3cd;

struct NotHermitianError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotUnitaryError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Entrywise tolerance for Hermiticity checks. All quantities handled here
/// are O(1) and 3x3, so near-machine precision is expected.
inline constexpr double kHermitianTol = 1e-12;

/// Frobenius tolerance for unitarity checks.
inline constexpr double kUnitaryTol = 1e-10;

struct SpinOperators {
  Operator3 Ix;
  Operator3 Iy;
  Operator3 Iz;
  Operator3 Hq;  ///< quadrupole Hamiltonian Iz^2 - (2/3)I = diag(1/3, -2/3, 1/3)
};

/// Spin-1 angular momentum operators and the quadrupole Hamiltonian, all
/// Hermitian and traceless, with q = 1 and the rf field on resonance.
const SpinOperators& spin1_operators();

bool is_hermitian(const Operator3& H, double tol = kHermitianTol);
bool is_unitary(const Operator3& U, double tol = kUnitaryTol);

/// exp(-i t H) for Hermitian H via eigendecomposition, which is always
/// well conditioned for 3x3 Hermitian input. Throws NotHermitianError.
Operator3 herm_expm(const Operator3& H, double t);

/// Closed-form hard-pulse propagator exp(-i angle Ix).
Operator3 rotation_x(double angle);

/// Closed-form hard-pulse propagator exp(-i angle Iy).
Operator3 rotation_y(double angle);

/// Free evolution exp(-i t Hq) under the quadrupole Hamiltonian.
Operator3 free_evolution(double t);

/// Phase-insensitive gate fidelity |Tr(U^dag V)| / 3. Equals 1 exactly when
/// U and V agree up to a global phase. Throws NotUnitaryError if either
/// argument fails the unitarity check.
double gate_fidelity(const Operator3& U, const Operator3& V);

/// Frobenius norm ||U - V||. Zero only for exact equality, so this metric
/// distinguishes global phases where gate_fidelity does not.
double phase_sensitive_distance(const Operator3& U, const Operator3& V);

/// [A, B] = AB - BA.
Operator3 commutator(const Operator3& A, const Operator3& B);

/// Hilbert-Schmidt inner product Tr(A^dag B).
Complex hs_inner(const Operator3& A, const Operator3& B);

}  // namespace qkak
