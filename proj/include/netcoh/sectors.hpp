#pragma once

#include "netcoh/nets.hpp"
#include "netcoh/weyl.hpp"

namespace netcoh {

struct NotOrdered : Error {
  NotOrdered() : Error("localizations are not strictly ordered left to right") {}
};

enum class TailConvention { RightTailZero, LeftTailZero };

// Charged Weyl representative localized in an interval: a tent of the right
// integral for the C charge, a ramp across the interval for the Q charge.
struct SectorRep {
  ChargePair charge;
  IndexElement interval;
  TailConvention convention = TailConvention::RightTailZero;
  TestPair representative;
};

// Needs an interval of at least two grid cells (tent placement).
SectorRep canonical_representative(const ChargePair& charge,
                                   const IndexElement& I,
                                   TailConvention convention, const Rat& step);

struct BraidResult {
  Rat exponent;         // charge_term + commutator_term
  Rat charge_term;      // -(C_rho Q_tau + Q_rho C_tau)
  Rat commutator_term;  // -sigma(F_tau, F_rho)
};

// Statistics phase for rho localized strictly left of tau. With the
// canonical conventions (rho right-tail zero, tau left-tail zero) the
// commutator term vanishes.
BraidResult braiding_phase(const SectorRep& rho, const SectorRep& tau);

// Both orderings combined; representative independent: -2(c q' + q c').
Rat monodromy(const ChargePair& rho, const ChargePair& tau);
bool is_symmetric_pair(const ChargePair& rho, const ChargePair& tau);

struct TransporterReport {
  TestPair element;
  bool zero_total_charge = false;
  bool in_dual = false;           // dual(Va, E)
  bool in_additive = false;       // additive_extension(Va, E)
};

// F_1 - F_2 for canonical representatives in I1 < I2 (strict gap required);
// membership against the zero-charge net on the covering double interval.
TransporterReport transporter(const AmbientSpace& ambient, const NetSpec& va_spec,
                              const ChargePair& charge, const IndexElement& I1,
                              const IndexElement& I2);

enum class ComplementSide { Left, Right };

struct ActionCoefficients {
  Rat coef_c;     // multiplies C_G
  Rat coef_tail;  // multiplies the tail of G facing F
};

// For G in the tagged space localized strictly on the given side of loc F:
// sigma(F, G) = coef_tail * (facing tail of G) + coef_c * C_G.
ActionCoefficients action_functional(const TestPair& F, ComplementSide side);

// Whether ad W(F) acts trivially on the whole tagged space on that side.
bool action_trivial_on(const TestPair& F, SpaceTag tag, ComplementSide side);

enum class NetName { A, B, C, E, Q, F0 };

struct SectorGroupDescriptor {
  NetName net;
  bool has_c_charges = false;  // labels include c in C
  bool has_q_charges = false;  // labels include q in Q
  bool solitonic = false;      // one-sided action; otherwise DHR
};

SectorGroupDescriptor sector_group(NetName net);
SpaceTag net_tag(NetName net);

}  // namespace netcoh
