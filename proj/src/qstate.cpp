#include "qsdc/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qsdc {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

double sq(double v) { return v * v; }

}  // namespace

BasisLabel basis_of(StateLabel label) {
  switch (label) {
    case StateLabel::Z0:
    case StateLabel::Z1:
      return BasisLabel::Z;
    case StateLabel::X0:
    case StateLabel::X1:
      return BasisLabel::X;
  }
  throw std::logic_error("invalid StateLabel");
}

int bit_of(StateLabel label) {
  return (label == StateLabel::Z1 || label == StateLabel::X1) ? 1 : 0;
}

StateLabel label_for(BasisLabel basis, int bit) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("bit must be 0 or 1");
  switch (basis) {
    case BasisLabel::Z:
      return bit ? StateLabel::Z1 : StateLabel::Z0;
    case BasisLabel::X:
      return bit ? StateLabel::X1 : StateLabel::X0;
    case BasisLabel::Custom:
      break;
  }
  throw std::invalid_argument("no state label for a custom basis");
}

const char* to_string(StateLabel label) {
  switch (label) {
    case StateLabel::Z0:
      return "z0";
    case StateLabel::Z1:
      return "z1";
    case StateLabel::X0:
      return "x0";
    case StateLabel::X1:
      return "x1";
  }
  return "?";
}

const char* to_string(BasisLabel basis) {
  switch (basis) {
    case BasisLabel::Z:
      return "z";
    case BasisLabel::X:
      return "x";
    case BasisLabel::Custom:
      return "custom";
  }
  return "?";
}

StateVector::StateVector(Complex a0, Complex a1) : a0_(a0), a1_(a1) {
  const double norm = std::norm(a0_) + std::norm(a1_);
  if (std::abs(norm - 1.0) > kAlgebraTol) {
    throw std::invalid_argument("state vector is not normalized");
  }
}

StateVector StateVector::normalized(Complex a0, Complex a1) {
  const double norm = std::sqrt(std::norm(a0) + std::norm(a1));
  if (norm == 0.0) {
    throw std::invalid_argument("cannot normalize the zero vector");
  }
  return StateVector(a0 / norm, a1 / norm);
}

StateVector StateVector::canonical() const {
  const Complex lead = std::abs(a0_) > kAlgebraTol ? a0_ : a1_;
  const double mag = std::abs(lead);
  if (mag == 0.0) return *this;
  const Complex phase = std::conj(lead) / mag;
  return StateVector::normalized(a0_ * phase, a1_ * phase);
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  return std::conj(a.a0()) * b.a0() + std::conj(a.a1()) * b.a1();
}

bool approx_equal(const StateVector& a, const StateVector& b, double tol) {
  return std::abs(a.a0() - b.a0()) <= tol && std::abs(a.a1() - b.a1()) <= tol;
}

bool approx_equal_up_to_phase(const StateVector& a, const StateVector& b,
                              double tol) {
  return approx_equal(a.canonical(), b.canonical(), tol);
}

StateVector prepare(StateLabel label) {
  switch (label) {
    case StateLabel::Z0:
      return StateVector(1.0, 0.0);
    case StateLabel::Z1:
      return StateVector(0.0, 1.0);
    case StateLabel::X0:
      return StateVector(kInvSqrt2, kInvSqrt2);
    case StateLabel::X1:
      return StateVector(kInvSqrt2, -kInvSqrt2);
  }
  throw std::logic_error("invalid StateLabel");
}

Operator::Operator(Complex m00, Complex m01, Complex m10, Complex m11)
    : m_{m00, m01, m10, m11} {}

const Operator& Operator::identity() {
  static const Operator op(1.0, 0.0, 0.0, 1.0);
  return op;
}

const Operator& Operator::i_sigma_y() {
  static const Operator op(0.0, 1.0, -1.0, 0.0);
  return op;
}

bool Operator::is_unitary(double tol) const {
  // U†U == I, four entries.
  const Complex c00 = std::conj(m_[0]) * m_[0] + std::conj(m_[2]) * m_[2];
  const Complex c01 = std::conj(m_[0]) * m_[1] + std::conj(m_[2]) * m_[3];
  const Complex c10 = std::conj(m_[1]) * m_[0] + std::conj(m_[3]) * m_[2];
  const Complex c11 = std::conj(m_[1]) * m_[1] + std::conj(m_[3]) * m_[3];
  return std::abs(c00 - 1.0) <= tol && std::abs(c01) <= tol &&
         std::abs(c10) <= tol && std::abs(c11 - 1.0) <= tol;
}

StateVector apply(const Operator& op, const StateVector& psi) {
  if (!op.is_unitary()) {
    throw std::invalid_argument("operator is not unitary");
  }
  return StateVector(op.entry(0, 0) * psi.a0() + op.entry(0, 1) * psi.a1(),
                     op.entry(1, 0) * psi.a0() + op.entry(1, 1) * psi.a1());
}

BasisSpec::BasisSpec(BasisLabel label, StateVector b0, StateVector b1)
    : label_(label), b0_(b0), b1_(b1) {}

const BasisSpec& BasisSpec::z() {
  static const BasisSpec basis(BasisLabel::Z, prepare(StateLabel::Z0),
                               prepare(StateLabel::Z1));
  return basis;
}

const BasisSpec& BasisSpec::x() {
  static const BasisSpec basis(BasisLabel::X, prepare(StateLabel::X0),
                               prepare(StateLabel::X1));
  return basis;
}

BasisSpec BasisSpec::custom(StateVector b0, StateVector b1) {
  if (std::abs(inner_product(b0, b1)) > kAlgebraTol) {
    throw std::invalid_argument("basis states are not orthonormal");
  }
  return BasisSpec(BasisLabel::Custom, b0, b1);
}

const BasisSpec& basis_spec(BasisLabel basis) {
  switch (basis) {
    case BasisLabel::Z:
      return BasisSpec::z();
    case BasisLabel::X:
      return BasisSpec::x();
    case BasisLabel::Custom:
      break;
  }
  throw std::invalid_argument("custom bases carry their own states");
}

MeasureResult measure(const StateVector& psi, const BasisSpec& basis,
                      RandomStream& rng) {
  const double p0 =
      std::clamp(std::norm(inner_product(basis.state(0), psi)), 0.0, 1.0);
  // Exactly one variate per call, even when the outcome is certain.
  const double u = rng.next_unit();
  const int outcome = u < p0 ? 0 : 1;
  return MeasureResult{outcome, basis.state(outcome)};
}

DensityMatrix::DensityMatrix(Complex m00, Complex m01, Complex m10, Complex m11)
    : m_{m00, m01, m10, m11} {
  if (std::abs(m00 - std::conj(m00)) > kAlgebraTol ||
      std::abs(m11 - std::conj(m11)) > kAlgebraTol ||
      std::abs(m01 - std::conj(m10)) > kAlgebraTol) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (std::abs(m00 + m11 - 1.0) > kAlgebraTol) {
    throw std::invalid_argument("density matrix trace is not 1");
  }
  // Hermitian 2x2: eigenvalues t/2 ± sqrt((t/2)^2 - det).
  const double tr = m00.real() + m11.real();
  const double det = (m00 * m11 - m01 * m10).real();
  const double disc = std::sqrt(std::max(0.0, sq(tr / 2.0) - det));
  if (tr / 2.0 - disc < -kAlgebraTol) {
    throw std::invalid_argument("density matrix is not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  return DensityMatrix(psi.a0() * std::conj(psi.a0()),
                       psi.a0() * std::conj(psi.a1()),
                       psi.a1() * std::conj(psi.a0()),
                       psi.a1() * std::conj(psi.a1()));
}

std::array<double, 3> DensityMatrix::bloch_vector() const {
  return {2.0 * entry(0, 1).real(), -2.0 * entry(0, 1).imag(),
          (entry(0, 0) - entry(1, 1)).real()};
}

DensityMatrix ensemble_density(
    const std::vector<std::pair<double, StateVector>>& states) {
  double total = 0.0;
  for (const auto& [p, psi] : states) {
    if (p < 0.0) {
      throw std::invalid_argument("ensemble probabilities must be nonnegative");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kAlgebraTol) {
    throw std::invalid_argument("ensemble probabilities must sum to 1");
  }
  Complex m00 = 0.0, m01 = 0.0, m10 = 0.0, m11 = 0.0;
  for (const auto& [p, psi] : states) {
    m00 += p * psi.a0() * std::conj(psi.a0());
    m01 += p * psi.a0() * std::conj(psi.a1());
    m10 += p * psi.a1() * std::conj(psi.a0());
    m11 += p * psi.a1() * std::conj(psi.a1());
  }
  return DensityMatrix(m00, m01, m10, m11);
}

double trace_distance(const DensityMatrix& r1, const DensityMatrix& r2) {
  // Difference of density matrices is Hermitian and traceless up to fp
  // error; its trace norm is |λ+| + |λ-|.
  const Complex d00 = r1.entry(0, 0) - r2.entry(0, 0);
  const Complex d01 = r1.entry(0, 1) - r2.entry(0, 1);
  const Complex d10 = r1.entry(1, 0) - r2.entry(1, 0);
  const Complex d11 = r1.entry(1, 1) - r2.entry(1, 1);
  const double tr = (d00 + d11).real();
  const double det = (d00 * d11 - d01 * d10).real();
  const double disc = std::sqrt(std::max(0.0, sq(tr / 2.0) - det));
  const double lam_plus = tr / 2.0 + disc;
  const double lam_minus = tr / 2.0 - disc;
  return std::clamp((std::abs(lam_plus) + std::abs(lam_minus)) / 2.0, 0.0, 1.0);
}

BasisSpec breidbart_basis() {
  const double c = std::cos(std::numbers::pi / 8.0);
  const double s = std::sin(std::numbers::pi / 8.0);
  return BasisSpec::custom(StateVector::normalized(c, s),
                           StateVector::normalized(-s, c));
}

}  // namespace qsdc
