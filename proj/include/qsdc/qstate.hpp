// Exact single-qubit state algebra: the four protocol states, the two
// encoding operations, projective measurement, and density-matrix utilities.
//
// All amplitudes that occur in the protocol are drawn from
// {0, ±1, ±1/√2, cos π/8, sin π/8}, so double precision with a 1e-12
// tolerance is exact for every identity asserted here.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "qsdc/rng.hpp"

namespace qsdc {

using Complex = std::complex<double>;

/// Absolute tolerance for every algebraic identity in this module.
inline constexpr double kAlgebraTol = 1e-12;

/// The four preparable states: Z0 = |0>, Z1 = |1>,
/// X0 = (|0>+|1>)/√2, X1 = (|0>-|1>)/√2.
enum class StateLabel { Z0, Z1, X0, X1 };

enum class BasisLabel { Z, X, Custom };

/// Basis the label's state is an eigenstate of (Z0, Z1 -> Z).
BasisLabel basis_of(StateLabel label);

/// Outcome bit the label carries within its basis (Z0, X0 -> 0).
int bit_of(StateLabel label);

/// Label for (basis, bit). Throws for BasisLabel::Custom.
StateLabel label_for(BasisLabel basis, int bit);

const char* to_string(StateLabel label);
const char* to_string(BasisLabel basis);

/// Normalized pure state a0|0> + a1|1>.
class StateVector {
 public:
  /// Requires |a0|^2 + |a1|^2 = 1 within kAlgebraTol; throws otherwise.
  StateVector(Complex a0, Complex a1);

  /// Rescales arbitrary (non-zero) amplitudes to a unit vector.
  static StateVector normalized(Complex a0, Complex a1);

  Complex a0() const { return a0_; }
  Complex a1() const { return a1_; }

  /// Same state with the first nonzero amplitude rotated to positive real,
  /// i.e. a global-phase-free representative for comparisons.
  StateVector canonical() const;

 private:
  Complex a0_, a1_;
};

/// <a|b>. Magnitude bounded by 1 + kAlgebraTol for unit vectors.
Complex inner_product(const StateVector& a, const StateVector& b);

/// Exact amplitude equality within tol (no phase freedom).
bool approx_equal(const StateVector& a, const StateVector& b,
                  double tol = kAlgebraTol);

/// Equality of the physical states, ignoring global phase.
bool approx_equal_up_to_phase(const StateVector& a, const StateVector& b,
                              double tol = kAlgebraTol);

/// Canonical amplitudes for a label.
StateVector prepare(StateLabel label);

/// 2x2 complex matrix, row-major.
class Operator {
 public:
  Operator(Complex m00, Complex m01, Complex m10, Complex m11);

  /// I = |0><0| + |1><1|, the bit-0 encoding.
  static const Operator& identity();

  /// i sigma_y = |0><1| - |1><0|, the bit-1 encoding. Maps every
  /// real-amplitude basis pair onto itself with the labels swapped.
  static const Operator& i_sigma_y();

  Complex entry(int row, int col) const { return m_[2 * row + col]; }

  bool is_unitary(double tol = kAlgebraTol) const;

 private:
  std::array<Complex, 4> m_;
};

/// op * psi. Throws std::invalid_argument when op is not unitary.
StateVector apply(const Operator& op, const StateVector& psi);

/// An orthonormal measurement basis {b0, b1}.
class BasisSpec {
 public:
  static const BasisSpec& z();
  static const BasisSpec& x();

  /// Arbitrary orthonormal pair; throws unless orthonormal within tol.
  static BasisSpec custom(StateVector b0, StateVector b1);

  BasisLabel label() const { return label_; }
  const StateVector& state(int outcome) const {
    return outcome == 0 ? b0_ : b1_;
  }

 private:
  BasisSpec(BasisLabel label, StateVector b0, StateVector b1);

  BasisLabel label_;
  StateVector b0_, b1_;
};

/// Basis object for a Z or X label. Throws for Custom.
const BasisSpec& basis_spec(BasisLabel basis);

struct MeasureResult {
  int outcome;             // 0 or 1
  StateVector post_state;  // the basis state for the outcome
};

/// Projective measurement, Born rule. Consumes exactly one uniform variate
/// from rng per call, so transcripts are bit-reproducible given a seed.
MeasureResult measure(const StateVector& psi, const BasisSpec& basis,
                      RandomStream& rng);

/// 2x2 Hermitian, PSD, trace-1 matrix.
class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace and eigenvalues >= -kAlgebraTol.
  DensityMatrix(Complex m00, Complex m01, Complex m10, Complex m11);

  /// |psi><psi|.
  static DensityMatrix pure(const StateVector& psi);

  Complex entry(int row, int col) const { return m_[2 * row + col]; }

  /// (x, y, z) with rho = (I + x sigma_x + y sigma_y + z sigma_z) / 2.
  std::array<double, 3> bloch_vector() const;

 private:
  std::array<Complex, 4> m_;
};

/// Sum p_i |psi_i><psi_i|. Probabilities must be nonnegative and sum to 1
/// within kAlgebraTol; throws otherwise.
DensityMatrix ensemble_density(
    const std::vector<std::pair<double, StateVector>>& states);

/// (1/2) Tr |r1 - r2|, in [0, 1]. Zero iff the states coincide.
double trace_distance(const DensityMatrix& r1, const DensityMatrix& r2);

/// Eigenbasis of (sigma_x + sigma_z)/√2: b0 = cos(π/8)|0> + sin(π/8)|1>
/// and its orthogonal complement. The intermediate basis between Z and X,
/// optimal for a single-measurement attack on the protocol's ensembles.
BasisSpec breidbart_basis();

}  // namespace qsdc
