#pragma once

#include <numbers>

#include "qsdc/qstate.hpp"
#include "qsdc/rng.hpp"

namespace testutil {

/// Haar-uniform pure state (uniform Bloch direction plus a random global
/// phase), driven by the given stream.
inline qsdc::StateVector random_state(qsdc::RandomStream& rng) {
  const double z = 2.0 * rng.next_unit() - 1.0;
  const double azimuth = 2.0 * std::numbers::pi * rng.next_unit();
  const double phase = 2.0 * std::numbers::pi * rng.next_unit();
  const double polar = std::acos(z);
  const qsdc::Complex a0 = std::polar(std::cos(polar / 2.0), phase);
  const qsdc::Complex a1 = std::polar(std::sin(polar / 2.0), phase + azimuth);
  return qsdc::StateVector::normalized(a0, a1);
}

}  // namespace testutil
