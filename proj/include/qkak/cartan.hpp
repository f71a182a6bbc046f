#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qkak/gates.hpp"
#include "qkak/su3.hpp"

namespace qkak {

/// Hermitian su(3) basis adapted to the control problem. L1..L3 are the spin
/// operators Ix, Iy, Iz and span the subalgebra k generated by the rf drive;
/// L4 is the quadrupole Hamiltonian Hq and L5..L8 are rotated copies of it,
/// e^{-ik} Hq e^{ik} for k in the drive algebra, spanning the complement p.
/// L4 commutes with L7 and with L8, giving two usable Cartan pairs.
struct GeneratorBasis {
  std::array<Operator3, 8> L;
};

/// Builds the basis by conjugating Hq with hard-pulse rotations and verifies
/// every matrix entrywise against its closed form before returning. The
/// returned reference is to an immutable singleton.
const GeneratorBasis& generator_basis();

/// Result of the symmetric-space structure checks for k = span{L1..L3} and
/// p = span{L4..L8}: [k,k] in k, [p,k] in p, [p,p] in k. Membership is
/// tested by projecting each commutator onto the claimed span under the
/// Hilbert-Schmidt inner product and measuring what is left over.
struct CartanStructureReport {
  bool k_closes = false;
  bool p_stable_under_k = false;
  bool p_brackets_into_k = false;
  double worst_residual = 0.0;  ///< largest projection leftover over all 28 pairs
  std::vector<std::string> failures;

  bool all_pass() const { return k_closes && p_stable_under_k && p_brackets_into_k; }
};

/// Projection residual threshold for the structure checks.
inline constexpr double kStructureTol = 1e-10;

CartanStructureReport check_cartan_structure(const GeneratorBasis& basis);

/// Euler factorization convention for elements of the drive group: XYX means
/// e^{-i alpha Ix} e^{-i beta Iy} e^{-i gamma Ix}, YXY swaps the axes.
enum class EulerConvention { XYX, YXY };

/// Which commuting generator accompanies L4 in the middle of the sequence.
enum class CartanPair { L4_L7, L4_L8 };

const char* to_string(EulerConvention c);
const char* to_string(CartanPair p);
std::optional<EulerConvention> parse_convention(std::string_view text);
std::optional<CartanPair> parse_cartan_pair(std::string_view text);

struct NegativeTimeError : std::domain_error {
  using std::domain_error::domain_error;
};

/// The eight parameters of the two-sided Cartan factorization
///   U = Q1(alpha1, beta1, gamma1) e^{-i t1 L4} e^{-i t2 Lc} Q2(alpha2, ...)
/// where Q1, Q2 are Euler-factored drive rotations and Lc is L7 or L8.
/// Free-evolution durations t1, t2 must be nonnegative to be physical.
struct SequenceParams {
  double alpha1 = 0.0;
  double beta1 = 0.0;
  double gamma1 = 0.0;
  double alpha2 = 0.0;
  double beta2 = 0.0;
  double gamma2 = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
  EulerConvention convention = EulerConvention::XYX;
  CartanPair pair = CartanPair::L4_L7;

  double total_time() const { return t1 + t2; }
};

/// Drive rotation from Euler angles in the chosen convention.
Operator3 euler_rotation(double alpha, double beta, double gamma,
                         EulerConvention convention);

/// The ordered eight-factor product described by the parameters. Throws
/// NegativeTimeError if t1 or t2 is negative.
Operator3 sequence_unitary(const SequenceParams& p);

/// Frobenius distance between e^{i phi} target and sequence_unitary(p),
/// the phase-sensitive equation the synthesis problem solves.
double residual(const SequenceParams& p, const Operator3& target, double phi);
double residual(const SequenceParams& p, const GateTarget& gate, double phi);

}  // namespace qkak
