#include "netcoh/sectors.hpp"

namespace netcoh {

SectorRep canonical_representative(const ChargePair& charge,
                                   const IndexElement& I,
                                   TailConvention convention, const Rat& step) {
  if (!I.is_interval()) throw Error("representative needs an interval");
  const Rat len = I.b - I.a;
  const Rat cells_q = len / step;
  if (!is_integer(cells_q)) throw Error("interval not on the grid");
  if (to_long(cells_q) < 2) throw IntervalTooSmall();

  SectorRep rep;
  rep.charge = charge;
  rep.interval = I;
  rep.convention = convention;

  PiecewiseLinear f0 = PiecewiseLinear::constant(0);
  if (sgn(charge.c) != 0) {
    // tent over I with apex on the grid: integral = peak * len / 2
    const long mid = to_long(cells_q) / 2;
    const Rat apex = I.a + Rat(mid) * step;
    const Rat peak = 2 * charge.c / len;
    f0 = PiecewiseLinear({I.a, apex, I.b}, {Rat(0), peak, Rat(0)});
  }
  PiecewiseLinear f1 = PiecewiseLinear::constant(0);
  if (sgn(charge.q) != 0) {
    if (convention == TailConvention::RightTailZero)
      f1 = PiecewiseLinear({I.a, I.b}, {-charge.q, Rat(0)});
    else
      f1 = PiecewiseLinear({I.a, I.b}, {Rat(0), charge.q});
  }
  rep.representative = TestPair(std::move(f0), std::move(f1));
  return rep;
}

namespace {

bool strictly_left(const TestPair& F, const TestPair& G) {
  const auto lf = localization(F);
  const auto lg = localization(G);
  if (lf.empty() || lg.empty()) return true;  // void localization never blocks
  return lf.back().b <= lg.front().a;
}

}  // namespace

BraidResult braiding_phase(const SectorRep& rho, const SectorRep& tau) {
  if (!before(rho.interval, tau.interval) ||
      !strictly_left(rho.representative, tau.representative))
    throw NotOrdered();
  BraidResult r;
  r.charge_term = -(rho.charge.c * tau.charge.q + rho.charge.q * tau.charge.c);
  r.commutator_term = -symplectic_form(tau.representative, rho.representative);
  r.exponent = r.charge_term + r.commutator_term;
  return r;
}

Rat monodromy(const ChargePair& rho, const ChargePair& tau) {
  return -2 * (rho.c * tau.q + rho.q * tau.c);
}

bool is_symmetric_pair(const ChargePair& rho, const ChargePair& tau) {
  return sgn(monodromy(rho, tau)) == 0;
}

TransporterReport transporter(const AmbientSpace& ambient, const NetSpec& va_spec,
                              const ChargePair& charge, const IndexElement& I1,
                              const IndexElement& I2) {
  if (!I1.is_interval() || !I2.is_interval() || !(I1.b < I2.a))
    throw NotOrdered();
  const auto r1 =
      canonical_representative(charge, I1, TailConvention::RightTailZero, ambient.step());
  const auto r2 =
      canonical_representative(charge, I2, TailConvention::RightTailZero, ambient.step());
  TransporterReport rep;
  rep.element = r1.representative - r2.representative;
  rep.zero_total_charge = charges(rep.element).charge.is_zero();
  const IndexElement E = IndexElement::double_interval(I1.a, I1.b, I2.a, I2.b);
  rep.in_dual = dual(ambient, va_spec, E).contains(rep.element);
  rep.in_additive =
      additive_extension(ambient, va_spec, E).contains(rep.element);
  return rep;
}

ActionCoefficients action_functional(const TestPair& F, ComplementSide side) {
  const Charges ch = charges(F);
  ActionCoefficients a;
  a.coef_tail = ch.charge.c;
  a.coef_c = side == ComplementSide::Left ? -ch.left_grade : -ch.right_grade;
  return a;
}

bool action_trivial_on(const TestPair& F, SpaceTag tag, ComplementSide side) {
  const ActionCoefficients a = action_functional(F, side);
  bool charge_free = false, tail_free = false;
  switch (tag) {
    case SpaceTag::Va: break;
    case SpaceTag::Vb: tail_free = true; break;
    case SpaceTag::Vc: charge_free = true; tail_free = true; break;
    case SpaceTag::Vq: tail_free = true; break;
    case SpaceTag::Ve: tail_free = true; break;
    case SpaceTag::Vf: charge_free = true; tail_free = true; break;
    case SpaceTag::Vfl:
      charge_free = true;
      // facing tail is lambda_+ on the left side, pinned to 0 by the tag
      tail_free = side == ComplementSide::Right;
      break;
    case SpaceTag::Vfr:
      charge_free = true;
      tail_free = side == ComplementSide::Left;
      break;
    case SpaceTag::Vf0: charge_free = true; break;
  }
  if (charge_free && sgn(a.coef_c) != 0) return false;
  if (tail_free && sgn(a.coef_tail) != 0) return false;
  return true;
}

SpaceTag net_tag(NetName net) {
  switch (net) {
    case NetName::A: return SpaceTag::Va;
    case NetName::B: return SpaceTag::Vb;
    case NetName::C: return SpaceTag::Vc;
    case NetName::E: return SpaceTag::Ve;
    case NetName::Q: return SpaceTag::Vq;
    case NetName::F0: return SpaceTag::Vf0;
  }
  throw Error("bad net name");
}

SectorGroupDescriptor sector_group(NetName net) {
  SectorGroupDescriptor d;
  d.net = net;
  switch (net) {
    case NetName::A:
    case NetName::B:
      d.has_c_charges = d.has_q_charges = true;
      d.solitonic = false;
      break;
    case NetName::C:
    case NetName::F0:
      d.has_q_charges = true;
      d.solitonic = true;
      break;
    case NetName::E:
    case NetName::Q:
      d.has_c_charges = true;
      d.solitonic = false;
      break;
  }
  return d;
}

}  // namespace netcoh
