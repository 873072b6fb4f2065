// Test-side oracles, written against raw amplitudes only (no library types)
// so the expected values frozen into the tests come from an independent
// computation path.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Amp2 = std::array<C, 2>;
using Basis2 = std::array<Amp2, 2>;

inline double overlap2(const Amp2& a, const Amp2& b) {  // |<a|b>|^2
  return std::norm(std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1]);
}

inline Basis2 z_basis() {
  return {Amp2{C(1.0), C(0.0)}, Amp2{C(0.0), C(1.0)}};
}

inline Basis2 x_basis() {
  const double s = std::sqrt(0.5);
  return {Amp2{C(s), C(s)}, Amp2{C(s), C(-s)}};
}

inline Basis2 breidbart_basis() {
  const double c8 = std::cos(std::numbers::pi / 8.0);
  const double s8 = std::sin(std::numbers::pi / 8.0);
  return {Amp2{C(c8), C(s8)}, Amp2{C(-s8), C(c8)}};
}

/// |0><1| - |1><0| applied to raw amplitudes.
inline Amp2 apply_flip(const Amp2& v) { return {v[1], -v[0]}; }

/// Exact P(detected | control round) for an attack that measures the B->A
/// qubit in each listed basis with the given probability and forwards the
/// outcome eigenstate. Branches: Bob's four equiprobable states, Eve's
/// basis and Born-weighted outcome, Alice's 1/2 sift, Alice's outcome.
inline double control_detection(
    const std::vector<std::pair<double, Basis2>>& eve_bases) {
  const Basis2 z = z_basis();
  const Basis2 x = x_basis();
  const Amp2 bob_states[4] = {z[0], z[1], x[0], x[1]};
  double p_detect = 0.0;
  for (const Amp2& bob : bob_states) {
    for (const auto& [p_basis, basis] : eve_bases) {
      for (int outcome = 0; outcome < 2; ++outcome) {
        const double weight = overlap2(basis[outcome], bob);
        // Sifted with probability 1/2; Alice then reads Bob's bit with the
        // Born weight of his state in the forwarded eigenstate.
        const double p_correct = overlap2(bob, basis[outcome]);
        p_detect += 0.25 * p_basis * weight * 0.5 * (1.0 - p_correct);
      }
    }
  }
  return p_detect;
}

/// Message-mode bit-error rate induced by a random-Z/X intercept-resend on
/// the A->B leg (Bob's encoding happens on Eve's forwarded eigenstate).
inline double dos_message_qber() {
  const Basis2 z = z_basis();
  const Basis2 x = x_basis();
  const Amp2 preps[2] = {z[0], x[0]};       // Alice sends |0> or |phi0>
  const Basis2 prep_basis[2] = {z, x};      // and measures in that basis
  const Basis2 eve_bases[2] = {z, x};
  double p_error = 0.0;
  for (int prep = 0; prep < 2; ++prep) {
    for (const Basis2& eve : eve_bases) {
      for (int eve_outcome = 0; eve_outcome < 2; ++eve_outcome) {
        const double weight = overlap2(eve[eve_outcome], preps[prep]);
        for (int bob_bit = 0; bob_bit < 2; ++bob_bit) {
          Amp2 wire = eve[eve_outcome];
          if (bob_bit) wire = apply_flip(wire);
          const double p_outcome1 = overlap2(prep_basis[prep][1], wire);
          const double p_err = bob_bit ? 1.0 - p_outcome1 : p_outcome1;
          p_error += 0.5 * 0.5 * weight * 0.5 * p_err;
        }
      }
    }
  }
  return p_error;
}

/// Accuracy of guessing Bob's bit from one Breidbart measurement after his
/// operation (guess = outcome index).
inline double breidbart_guess_accuracy() {
  const Basis2 z = z_basis();
  const Basis2 x = x_basis();
  const Basis2 bb = breidbart_basis();
  const Amp2 preps[2] = {z[0], x[0]};
  double p_correct = 0.0;
  for (int bob_bit = 0; bob_bit < 2; ++bob_bit) {
    for (const Amp2& prep : preps) {
      Amp2 wire = prep;
      if (bob_bit) wire = apply_flip(wire);
      p_correct += 0.5 * 0.5 * overlap2(bb[bob_bit], wire);
    }
  }
  return p_correct;
}

}  // namespace oracle
