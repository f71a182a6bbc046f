#include "qkak/cartan.hpp"

#include <cmath>
#include <string>

namespace qkak {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kPi = 3.14159265358979323846;

// Closed forms of the rotated quadrupole generators, used to cross-check the
// conjugation-built basis entry by entry.
Operator3 explicit_L5() {
  const Complex w = kI * (3.0 * std::sqrt(2.0) / 12.0);
  Operator3 M;
  M << 1.0 / 12.0, w, -0.25, -w, -2.0 / 12.0, -w, -0.25, w, 1.0 / 12.0;
  return M;
}

Operator3 explicit_L6() {
  const double w = 3.0 * std::sqrt(2.0) / 12.0;
  Operator3 M;
  M << 1.0 / 12.0, w, 0.25, w, -2.0 / 12.0, -w, 0.25, -w, 1.0 / 12.0;
  return M;
}

Operator3 explicit_L7() {
  Operator3 M;
  M << -1, 0, 3, 0, 2, 0, 3, 0, -1;
  return M / 6.0;
}

Operator3 explicit_L8() {
  Operator3 M;
  M << -1, 0, -3.0 * kI, 0, 2, 0, 3.0 * kI, 0, -1;
  return M / 6.0;
}

GeneratorBasis build_basis() {
  const auto& ops = spin1_operators();
  GeneratorBasis basis;
  basis.L[0] = ops.Ix;
  basis.L[1] = ops.Iy;
  basis.L[2] = ops.Iz;
  basis.L[3] = ops.Hq;

  const Operator3 rx = rotation_x(kPi / 4.0);
  const Operator3 ry4 = rotation_y(kPi / 4.0);
  const Operator3 ry2 = rotation_y(kPi / 2.0);
  const Operator3 ry2m = rotation_y(-kPi / 2.0);
  basis.L[4] = rx * ops.Hq * rx.adjoint();
  basis.L[5] = ry4 * ops.Hq * ry4.adjoint();
  basis.L[6] = ry2 * ops.Hq * ry2.adjoint();
  basis.L[7] = ry2m * basis.L[4] * ry2m.adjoint();

  const Operator3 expected[4] = {explicit_L5(), explicit_L6(), explicit_L7(),
                                 explicit_L8()};
  for (int k = 0; k < 4; ++k) {
    if ((basis.L[4 + k] - expected[k]).cwiseAbs().maxCoeff() > 1e-12) {
      throw std::logic_error("generator_basis: conjugation-built L" +
                             std::to_string(5 + k) +
                             " disagrees with its closed form");
    }
  }
  return basis;
}

// Largest Frobenius leftover after projecting the Hermitian matrix D onto
// the real span of the given generators. The generators are not mutually
// orthogonal, so the projection solves the Gram system.
double projection_residual(const Operator3& D, const GeneratorBasis& basis,
                           const int* idx, int count) {
  Eigen::MatrixXd gram(count, count);
  Eigen::VectorXd rhs(count);
  for (int m = 0; m < count; ++m) {
    for (int n = 0; n < count; ++n) {
      gram(m, n) = hs_inner(basis.L[idx[m]], basis.L[idx[n]]).real();
    }
    rhs(m) = hs_inner(basis.L[idx[m]], D).real();
  }
  const Eigen::VectorXd coeff = gram.ldlt().solve(rhs);
  Operator3 rem = D;
  for (int m = 0; m < count; ++m) {
    rem -= coeff(m) * basis.L[idx[m]];
  }
  return rem.norm();
}

}  // namespace

const GeneratorBasis& generator_basis() {
  static const GeneratorBasis basis = build_basis();
  return basis;
}

CartanStructureReport check_cartan_structure(const GeneratorBasis& basis) {
  static const int k_idx[3] = {0, 1, 2};
  static const int p_idx[5] = {3, 4, 5, 6, 7};

  CartanStructureReport report;
  report.k_closes = true;
  report.p_stable_under_k = true;
  report.p_brackets_into_k = true;

  for (int m = 0; m < 8; ++m) {
    for (int n = m + 1; n < 8; ++n) {
      // Commutators of Hermitian matrices are anti-Hermitian; divide out the
      // i so membership can be tested against the Hermitian generators.
      const Operator3 D = -kI * commutator(basis.L[m], basis.L[n]);
      const bool m_in_k = m < 3;
      const bool n_in_k = n < 3;
      double res = 0.0;
      if (m_in_k && n_in_k) {
        res = projection_residual(D, basis, k_idx, 3);
        if (res > kStructureTol) report.k_closes = false;
      } else if (m_in_k != n_in_k) {
        res = projection_residual(D, basis, p_idx, 5);
        if (res > kStructureTol) report.p_stable_under_k = false;
      } else {
        res = projection_residual(D, basis, k_idx, 3);
        if (res > kStructureTol) report.p_brackets_into_k = false;
      }
      report.worst_residual = std::max(report.worst_residual, res);
      if (res > kStructureTol) {
        report.failures.push_back("[L" + std::to_string(m + 1) + ", L" +
                                  std::to_string(n + 1) +
                                  "] leaves its subspace, residual " +
                                  std::to_string(res));
      }
    }
  }
  return report;
}

const char* to_string(EulerConvention c) {
  return c == EulerConvention::XYX ? "xyx" : "yxy";
}

const char* to_string(CartanPair p) {
  return p == CartanPair::L4_L7 ? "L4_L7" : "L4_L8";
}

std::optional<EulerConvention> parse_convention(std::string_view text) {
  if (text == "xyx" || text == "XYX") return EulerConvention::XYX;
  if (text == "yxy" || text == "YXY") return EulerConvention::YXY;
  return std::nullopt;
}

std::optional<CartanPair> parse_cartan_pair(std::string_view text) {
  if (text == "L4_L7" || text == "l4_l7") return CartanPair::L4_L7;
  if (text == "L4_L8" || text == "l4_l8") return CartanPair::L4_L8;
  return std::nullopt;
}

Operator3 euler_rotation(double alpha, double beta, double gamma,
                         EulerConvention convention) {
  if (convention == EulerConvention::XYX) {
    return rotation_x(alpha) * rotation_y(beta) * rotation_x(gamma);
  }
  return rotation_y(alpha) * rotation_x(beta) * rotation_y(gamma);
}

Operator3 sequence_unitary(const SequenceParams& p) {
  if (p.t1 < 0.0 || p.t2 < 0.0) {
    throw NegativeTimeError("sequence_unitary: evolution times must be nonnegative");
  }
  static const Operator3 frame7 = rotation_y(kPi / 2.0);
  static const Operator3 frame8 = rotation_y(-kPi / 2.0) * rotation_x(kPi / 4.0);

  const Operator3& frame = (p.pair == CartanPair::L4_L7) ? frame7 : frame8;
  const Operator3 central =
      free_evolution(p.t1) * (frame * free_evolution(p.t2) * frame.adjoint());
  return euler_rotation(p.alpha1, p.beta1, p.gamma1, p.convention) * central *
         euler_rotation(p.alpha2, p.beta2, p.gamma2, p.convention);
}

double residual(const SequenceParams& p, const Operator3& target, double phi) {
  const Complex phase = std::exp(kI * phi);
  return phase_sensitive_distance(phase * target, sequence_unitary(p));
}

double residual(const SequenceParams& p, const GateTarget& gate, double phi) {
  return residual(p, gate.unitary, phi);
}

}  // namespace qkak
