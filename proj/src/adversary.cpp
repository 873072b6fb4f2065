#include "qsdc/adversary.hpp"

#include <stdexcept>

namespace qsdc::adversary {

namespace {

/// Basis for this leg under the policy. RandomZX consumes one bit.
EveBasis pick_basis(BasisPolicy policy, RandomStream& rng) {
  switch (policy) {
    case BasisPolicy::FixedZ:
      return EveBasis::Z;
    case BasisPolicy::FixedX:
      return EveBasis::X;
    case BasisPolicy::RandomZX:
      return rng.next_bit() ? EveBasis::X : EveBasis::Z;
    case BasisPolicy::Breidbart:
      return EveBasis::Breidbart;
  }
  throw std::logic_error("invalid BasisPolicy");
}

/// Measure in `basis`, remember the outcome, put the outcome eigenstate back
/// on the wire. Emits Measured then Resent.
InterveneResult measure_and_resend(Leg leg, const StateVector& qubit,
                                   EveBasis basis, EveMemory& memory,
                                   RandomStream& rng) {
  const auto result = measure(qubit, eve_basis_spec(basis), rng);
  auto& record = leg == Leg::AtoB ? memory.a_to_b : memory.b_to_a;
  record = EveMemory::LegRecord{basis, result.outcome};
  InterveneResult out;
  out.qubit = result.post_state;
  out.events.push_back(
      {-1, leg, EveEvent::Action::Measured, basis, result.outcome});
  out.events.push_back(
      {-1, leg, EveEvent::Action::Resent, basis, result.outcome});
  return out;
}

InterveneResult passthrough(const StateVector& qubit) {
  return InterveneResult{qubit, {}};
}

}  // namespace

const char* to_string(EveKind kind) {
  switch (kind) {
    case EveKind::None:
      return "none";
    case EveKind::InterceptResendAB:
      return "intercept-ab";
    case EveKind::InterceptResendBA:
      return "intercept-ba";
    case EveKind::InterceptResendBoth:
      return "intercept-both";
    case EveKind::MeasureOnlyBA:
      return "measure-ba";
    case EveKind::DoSAB:
      return "dos-ab";
  }
  return "?";
}

const char* to_string(BasisPolicy policy) {
  switch (policy) {
    case BasisPolicy::FixedZ:
      return "z";
    case BasisPolicy::FixedX:
      return "x";
    case BasisPolicy::RandomZX:
      return "random-zx";
    case BasisPolicy::Breidbart:
      return "breidbart";
  }
  return "?";
}

const char* to_string(Leg leg) {
  return leg == Leg::AtoB ? "a_to_b" : "b_to_a";
}

const char* to_string(EveBasis basis) {
  switch (basis) {
    case EveBasis::Z:
      return "z";
    case EveBasis::X:
      return "x";
    case EveBasis::Breidbart:
      return "breidbart";
  }
  return "?";
}

const char* eigenstate_name(EveBasis basis, int outcome) {
  switch (basis) {
    case EveBasis::Z:
      return outcome ? "z1" : "z0";
    case EveBasis::X:
      return outcome ? "x1" : "x0";
    case EveBasis::Breidbart:
      return outcome ? "b1" : "b0";
  }
  return "?";
}

const BasisSpec& eve_basis_spec(EveBasis basis) {
  switch (basis) {
    case EveBasis::Z:
      return BasisSpec::z();
    case EveBasis::X:
      return BasisSpec::x();
    case EveBasis::Breidbart: {
      static const BasisSpec breidbart = breidbart_basis();
      return breidbart;
    }
  }
  throw std::logic_error("invalid EveBasis");
}

EveStrategySpec EveStrategySpec::intercept_resend(EveKind kind,
                                                  BasisPolicy policy) {
  if (kind != EveKind::InterceptResendAB &&
      kind != EveKind::InterceptResendBA &&
      kind != EveKind::InterceptResendBoth) {
    throw std::invalid_argument("not an intercept-resend kind");
  }
  return {kind, policy};
}

EveStrategySpec EveStrategySpec::measure_only_ba(BasisPolicy policy) {
  return {EveKind::MeasureOnlyBA, policy};
}

bool EveStrategySpec::attacks_leg(Leg leg) const {
  switch (kind) {
    case EveKind::None:
      return false;
    case EveKind::InterceptResendAB:
    case EveKind::DoSAB:
      return leg == Leg::AtoB;
    case EveKind::InterceptResendBA:
    case EveKind::MeasureOnlyBA:
      return leg == Leg::BtoA;
    case EveKind::InterceptResendBoth:
      return true;
  }
  return false;
}

InterveneResult intervene(const EveStrategySpec& spec, Leg leg,
                          const StateVector& qubit, EveMemory& memory,
                          RandomStream& rng) {
  switch (spec.kind) {
    case EveKind::None:
      return passthrough(qubit);

    case EveKind::InterceptResendAB:
      if (leg != Leg::AtoB) return passthrough(qubit);
      return measure_and_resend(leg, qubit, pick_basis(spec.policy, rng),
                                memory, rng);

    case EveKind::InterceptResendBA:
      if (leg != Leg::BtoA) return passthrough(qubit);
      return measure_and_resend(leg, qubit, pick_basis(spec.policy, rng),
                                memory, rng);

    case EveKind::InterceptResendBoth: {
      if (leg == Leg::AtoB) {
        return measure_and_resend(leg, qubit, pick_basis(spec.policy, rng),
                                  memory, rng);
      }
      // B->A: measure in the basis she already committed to on A->B, the
      // only basis in which her two outcomes are comparable.
      const EveBasis basis =
          memory.a_to_b ? memory.a_to_b->basis : pick_basis(spec.policy, rng);
      return measure_and_resend(leg, qubit, basis, memory, rng);
    }

    case EveKind::MeasureOnlyBA: {
      if (leg != Leg::BtoA) return passthrough(qubit);
      const EveBasis basis = pick_basis(spec.policy, rng);
      const auto result = measure(qubit, eve_basis_spec(basis), rng);
      memory.b_to_a = EveMemory::LegRecord{basis, result.outcome};
      InterveneResult out;
      out.qubit = result.post_state;  // forwards the post-measurement state
      out.events.push_back(
          {-1, leg, EveEvent::Action::Measured, basis, result.outcome});
      return out;
    }

    case EveKind::DoSAB:
      if (leg != Leg::AtoB) return passthrough(qubit);
      // Pure disturbance; the policy field is ignored per contract.
      return measure_and_resend(
          leg, qubit, pick_basis(BasisPolicy::RandomZX, rng), memory, rng);
  }
  throw std::logic_error("invalid EveKind");
}

EveGuess guess_bob_bit(const EveStrategySpec& spec, const EveMemory& memory) {
  EveGuess guess;
  switch (spec.kind) {
    case EveKind::InterceptResendBoth:
      if (memory.a_to_b && memory.b_to_a) {
        // Same basis on both legs: the encoding either fixed her eigenstate
        // (bit 0) or moved it to the orthogonal partner (bit 1).
        guess.guessed_bob_bit =
            memory.a_to_b->outcome == memory.b_to_a->outcome ? 0 : 1;
      }
      break;
    case EveKind::MeasureOnlyBA:
      if (memory.b_to_a) {
        // Outcome 1 states are the ones closer to the encoded ensemble's
        // Bloch vector (-1/2, 0, -1/2); outcome 0 states to (1/2, 0, 1/2).
        guess.guessed_bob_bit = memory.b_to_a->outcome;
      }
      break;
    default:
      break;
  }
  return guess;
}

}  // namespace qsdc::adversary
