#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qkak/analytic.hpp"
#include "qkak/cartan.hpp"

using namespace qkak;
using Catch::Approx;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr Complex kI{0.0, 1.0};
}  // namespace

TEST_CASE("generator basis matrices") {
  const GeneratorBasis& basis = generator_basis();
  const SpinOperators& ops = spin1_operators();

  SECTION("first four generators are the spin operators") {
    CHECK((basis.L[0] - ops.Ix).cwiseAbs().maxCoeff() == 0.0);
    CHECK((basis.L[1] - ops.Iy).cwiseAbs().maxCoeff() == 0.0);
    CHECK((basis.L[2] - ops.Iz).cwiseAbs().maxCoeff() == 0.0);
    CHECK((basis.L[3] - ops.Hq).cwiseAbs().maxCoeff() == 0.0);
  }

  SECTION("L7 equals its explicit matrix") {
    Operator3 expect;
    expect << -1, 0, 3, 0, 2, 0, 3, 0, -1;
    expect /= 6.0;
    CHECK((basis.L[6] - expect).cwiseAbs().maxCoeff() < 1e-14);
  }

  SECTION("L5 corner entry is -1/4") {
    CHECK(basis.L[4](0, 2).real() == Approx(-0.25).margin(1e-14));
    CHECK(std::abs(basis.L[4](0, 2).imag()) < 1e-14);
  }

  SECTION("all generators are traceless and Hermitian") {
    for (const Operator3& L : basis.L) {
      CHECK(std::abs(L.trace()) < 1e-14);
      CHECK(is_hermitian(L));
    }
  }

  SECTION("conjugation route matches an independent exponential oracle") {
    const Operator3 rx = oracle::taylor_evolution(ops.Ix, kPi / 4.0);
    const Operator3 L5 = rx * ops.Hq * rx.adjoint();
    CHECK((basis.L[4] - L5).cwiseAbs().maxCoeff() < 1e-13);

    const Operator3 ry = oracle::taylor_evolution(ops.Iy, -kPi / 2.0);
    const Operator3 L8 = ry * L5 * ry.adjoint();
    CHECK((basis.L[7] - L8).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("Cartan structure of the decomposition") {
  const GeneratorBasis& basis = generator_basis();
  const CartanStructureReport report = check_cartan_structure(basis);

  SECTION("all three closure checks pass") {
    CHECK(report.k_closes);
    CHECK(report.p_stable_under_k);
    CHECK(report.p_brackets_into_k);
    CHECK(report.all_pass());
    CHECK(report.worst_residual < kStructureTol);
    CHECK(report.failures.empty());
  }

  SECTION("[L1, L2] = i L3 explicitly") {
    CHECK((commutator(basis.L[0], basis.L[1]) - kI * basis.L[2])
              .cwiseAbs()
              .maxCoeff() < 1e-14);
  }

  SECTION("central generators commute") {
    CHECK(commutator(basis.L[3], basis.L[6]).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(commutator(basis.L[3], basis.L[7]).cwiseAbs().maxCoeff() < 1e-12);
  }

  SECTION("tampered basis is reported, not silently accepted") {
    GeneratorBasis bad = basis;
    bad.L[5](0, 0) += 0.05;
    bad.L[5](2, 2) -= 0.05;  // stays Hermitian and traceless, breaks closure
    const CartanStructureReport broken = check_cartan_structure(bad);
    CHECK_FALSE(broken.all_pass());
    CHECK_FALSE(broken.failures.empty());
    CHECK(broken.worst_residual > 1e-3);
  }
}

TEST_CASE("Euler rotations") {
  SECTION("zero angles give the identity") {
    const Operator3 Q = euler_rotation(0.0, 0.0, 0.0, EulerConvention::XYX);
    CHECK((Q - Operator3::Identity()).cwiseAbs().maxCoeff() < 1e-15);
  }

  SECTION("pure middle rotation reproduces the y pulse matrix") {
    Operator3 expect;
    expect << 0, 0, 1, 0, -1, 0, 1, 0, 0;
    const Operator3 Q = euler_rotation(0.0, kPi, 0.0, EulerConvention::XYX);
    CHECK((Q - expect).cwiseAbs().maxCoeff() < 1e-15);
  }

  SECTION("same-axis wings merge") {
    const Operator3 lhs = euler_rotation(0.4, 0.0, 1.1, EulerConvention::XYX);
    const Operator3 rhs = euler_rotation(1.5, 0.0, 0.0, EulerConvention::XYX);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-14);
  }

  SECTION("YXY swaps the wing axes") {
    const Operator3 Q = euler_rotation(0.3, 0.9, -0.2, EulerConvention::YXY);
    const Operator3 expect =
        rotation_y(0.3) * rotation_x(0.9) * rotation_y(-0.2);
    CHECK((Q - expect).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("sequence unitary") {
  SECTION("all-zero parameters give the identity") {
    SequenceParams p;
    CHECK((sequence_unitary(p) - Operator3::Identity()).cwiseAbs().maxCoeff() <
          1e-15);
  }

  SECTION("negative durations are rejected") {
    SequenceParams p;
    p.t1 = -1e-3;
    CHECK_THROWS_AS(sequence_unitary(p), NegativeTimeError);
  }

  SECTION("tabulated x rotation at theta = pi lands on the gate") {
    const AnalyticSolution sol = lookup_solution(GateName::Rx12, kPi, 0.0);
    const Operator3 target = make_gate(GateName::Rx12, kPi).unitary;
    CHECK(phase_sensitive_distance(sequence_unitary(sol.params), target) <
          1e-10);
    CHECK(sol.params.t1 == Approx(kPi / 3.0).margin(1e-12));
    CHECK(sol.params.t2 == Approx(2.0 * kPi / 3.0).margin(1e-12));
  }

  SECTION("matches an independent factor-by-factor fold") {
    const GeneratorBasis& basis = generator_basis();
    const SpinOperators& ops = spin1_operators();
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
    for (int trial = 0; trial < 10; ++trial) {
      SequenceParams p;
      p.alpha1 = u(rng);
      p.beta1 = u(rng);
      p.gamma1 = u(rng);
      p.alpha2 = u(rng);
      p.beta2 = u(rng);
      p.gamma2 = u(rng);
      p.t1 = 0.5 * u(rng);
      p.t2 = 0.5 * u(rng);
      p.convention =
          trial % 2 == 0 ? EulerConvention::XYX : EulerConvention::YXY;
      p.pair = trial % 3 == 0 ? CartanPair::L4_L8 : CartanPair::L4_L7;

      const Operator3& wing_a =
          p.convention == EulerConvention::XYX ? ops.Ix : ops.Iy;
      const Operator3& wing_b =
          p.convention == EulerConvention::XYX ? ops.Iy : ops.Ix;
      const Operator3& central =
          p.pair == CartanPair::L4_L7 ? basis.L[6] : basis.L[7];
      const Operator3 expect = oracle::taylor_evolution(wing_a, p.alpha1) *
                               oracle::taylor_evolution(wing_b, p.beta1) *
                               oracle::taylor_evolution(wing_a, p.gamma1) *
                               oracle::taylor_evolution(ops.Hq, p.t1) *
                               oracle::taylor_evolution(central, p.t2) *
                               oracle::taylor_evolution(wing_a, p.alpha2) *
                               oracle::taylor_evolution(wing_b, p.beta2) *
                               oracle::taylor_evolution(wing_a, p.gamma2);

      const Operator3 got = sequence_unitary(p);
      CHECK(is_unitary(got, 1e-12));
      CHECK(std::abs(std::abs(got.determinant()) - 1.0) < 1e-12);
      CHECK((got - expect).cwiseAbs().maxCoeff() < 1e-11);
    }
  }
}

TEST_CASE("sequence residual") {
  SECTION("identity with zero parameters has zero residual") {
    SequenceParams p;
    const GateTarget id = make_gate(GateName::Rx12, 0.0);
    CHECK(residual(p, id, 0.0) < 1e-15);
  }

  SECTION("tabulated parameters hit their target") {
    const AnalyticSolution sol = lookup_solution(GateName::Ry23, 1.1, 0.0);
    const GateTarget target = make_gate(GateName::Ry23, 1.1);
    CHECK(residual(sol.params, target, 0.0) < 1e-10);
  }

  SECTION("a milliradian perturbation is clearly visible") {
    AnalyticSolution sol = lookup_solution(GateName::Ry23, 1.1, 0.0);
    sol.params.beta1 += 1e-3;
    const GateTarget target = make_gate(GateName::Ry23, 1.1);
    CHECK(residual(sol.params, target, 0.0) > 1e-5);
  }
}

TEST_CASE("convention and pair names") {
  CHECK(parse_convention(to_string(EulerConvention::XYX)) ==
        EulerConvention::XYX);
  CHECK(parse_convention(to_string(EulerConvention::YXY)) ==
        EulerConvention::YXY);
  CHECK(parse_cartan_pair(to_string(CartanPair::L4_L7)) == CartanPair::L4_L7);
  CHECK(parse_cartan_pair(to_string(CartanPair::L4_L8)) == CartanPair::L4_L8);
  CHECK_FALSE(parse_convention("zxz").has_value());
  CHECK_FALSE(parse_cartan_pair("L4_L9").has_value());
}
