#include "qkak/su3.hpp"

#include <cmath>

namespace qkak {

namespace {

constexpr Complex kI{0.0, 1.0};

SpinOperators build_spin1() {
  const double r = 1.0 / std::sqrt(2.0);
  SpinOperators ops;
  ops.Ix << 0, r, 0, r, 0, r, 0, r, 0;
  ops.Iy << 0, -kI * r, 0, kI * r, 0, -kI * r, 0, kI * r, 0;
  ops.Iz << 1, 0, 0, 0, 0, 0, 0, 0, -1;
  ops.Hq << 1.0 / 3.0, 0, 0, 0, -2.0 / 3.0, 0, 0, 0, 1.0 / 3.0;
  return ops;
}

}  // namespace

const SpinOperators& spin1_operators() {
  static const SpinOperators ops = build_spin1();
  return ops;
}

bool is_hermitian(const Operator3& H, double tol) {
  return (H - H.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Operator3& U, double tol) {
  return (U.adjoint() * U - Operator3::Identity()).norm() <= tol;
}

Operator3 herm_expm(const Operator3& H, double t) {
  if (!is_hermitian(H)) {
    throw NotHermitianError("herm_expm: input is not Hermitian within 1e-12");
  }
  Eigen::SelfAdjointEigenSolver<Operator3> es(H);
  Eigen::Vector3cd phases;
  for (int k = 0; k < 3; ++k) {
    phases(k) = std::exp(-kI * t * es.eigenvalues()(k));
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// For a spin-1 component I_n, I_n^3 = I_n, so the exponential series folds
// into exp(-i a I_n) = 1 - i sin(a) I_n + (cos(a) - 1) I_n^2.
Operator3 rotation_x(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double q = 0.5 * (c - 1.0);  // coefficient of 2 Ix^2
  const Complex ms = -kI * s / std::sqrt(2.0);
  Operator3 R;
  R << 1.0 + q, ms, q, ms, c, ms, q, ms, 1.0 + q;
  return R;
}

Operator3 rotation_y(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double q = 0.5 * (c - 1.0);
  const double sr = s / std::sqrt(2.0);
  Operator3 R;
  R << 1.0 + q, -sr, -q, sr, c, -sr, -q, sr, 1.0 + q;
  return R;
}

Operator3 free_evolution(double t) {
  Operator3 D = Operator3::Zero();
  D(0, 0) = std::exp(-kI * t / 3.0);
  D(1, 1) = std::exp(kI * 2.0 * t / 3.0);
  D(2, 2) = D(0, 0);
  return D;
}

double gate_fidelity(const Operator3& U, const Operator3& V) {
  if (!is_unitary(U) || !is_unitary(V)) {
    throw NotUnitaryError("gate_fidelity: arguments must be unitary");
  }
  return std::abs((U.adjoint() * V).trace()) / 3.0;
}

double phase_sensitive_distance(const Operator3& U, const Operator3& V) {
  return (U - V).norm();
}

Operator3 commutator(const Operator3& A, const Operator3& B) {
  return A * B - B * A;
}

Complex hs_inner(const Operator3& A, const Operator3& B) {
  return (A.adjoint() * B).trace();
}

}  // namespace qkak
