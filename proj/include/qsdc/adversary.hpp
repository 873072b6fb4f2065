// Pluggable eavesdropper strategies acting on the A->B and B->A legs of the
// travel qubit, with an audit trail of everything Eve does and the guess she
// forms about Bob's encoded bit.

#pragma once

#include <optional>
#include <vector>

#include "qsdc/qstate.hpp"
#include "qsdc/rng.hpp"

namespace qsdc::adversary {

enum class EveKind {
  None,                 // passthrough
  InterceptResendAB,    // measure + resend on A->B only
  InterceptResendBA,    // measure + resend on B->A only
  InterceptResendBoth,  // both legs; B->A reuses the A->B basis
  MeasureOnlyBA,        // single measurement after Bob's operation
  DoSAB,                // disturb A->B without extracting anything
};

enum class BasisPolicy { FixedZ, FixedX, RandomZX, Breidbart };

enum class Leg { AtoB, BtoA };

/// Measurement bases Eve actually uses (Breidbart is the custom one).
enum class EveBasis { Z, X, Breidbart };

const char* to_string(EveKind kind);
const char* to_string(BasisPolicy policy);
const char* to_string(Leg leg);
const char* to_string(EveBasis basis);

/// Eigenstate name for (basis, outcome): z0..x1 plus b0/b1 for Breidbart.
const char* eigenstate_name(EveBasis basis, int outcome);

const BasisSpec& eve_basis_spec(EveBasis basis);

struct EveStrategySpec {
  EveKind kind = EveKind::None;
  // Ignored for None and DoSAB. MeasureOnlyBA defaults to the Breidbart
  // basis, which realizes the optimal two-outcome discrimination of the two
  // message ensembles.
  BasisPolicy policy = BasisPolicy::RandomZX;

  static EveStrategySpec none() { return {}; }
  static EveStrategySpec intercept_resend(EveKind kind, BasisPolicy policy);
  static EveStrategySpec measure_only_ba(
      BasisPolicy policy = BasisPolicy::Breidbart);
  static EveStrategySpec dos_ab() { return {EveKind::DoSAB, {}}; }

  bool attacks_leg(Leg leg) const;
};

/// One entry in the per-round audit trail. For intercept-resend legs a
/// Measured record is immediately followed by the Resent record naming the
/// eigenstate she put back on the wire.
struct EveEvent {
  enum class Action { Measured, Resent, Blocked };

  long long round_index = -1;  // filled in by the round executor
  Leg leg = Leg::AtoB;
  Action action = Action::Measured;
  EveBasis basis = EveBasis::Z;  // Measured / Resent
  int outcome = 0;               // Measured / Resent (names the eigenstate)
};

/// Eve's state within one round: what she measured on each leg.
struct EveMemory {
  struct LegRecord {
    EveBasis basis;
    int outcome;
  };
  std::optional<LegRecord> a_to_b;
  std::optional<LegRecord> b_to_a;
};

struct InterveneResult {
  // Absent only when a strategy blocks transmission. None of the shipped
  // strategies block; the representation is reserved for future ones.
  std::optional<StateVector> qubit;
  std::vector<EveEvent> events;
};

/// Applies the strategy to one leg. Draws (basis choices, Born samples) come
/// from rng in a fixed order: optional basis bit first, then the measurement
/// variate.
InterveneResult intervene(const EveStrategySpec& spec, Leg leg,
                          const StateVector& qubit, EveMemory& memory,
                          RandomStream& rng);

struct EveGuess {
  long long round_index = -1;
  std::optional<int> guessed_bob_bit;
};

/// Eve's guess of Bob's encoded bit, formed after the B->A leg of a message
/// round. InterceptResendBoth compares her two outcomes in the shared basis
/// (deterministic). MeasureOnlyBA guesses from which ensemble her outcome is
/// likelier. Other strategies produce no guess.
EveGuess guess_bob_bit(const EveStrategySpec& spec, const EveMemory& memory);

}  // namespace qsdc::adversary
