#include "netcoh/weyl.hpp"

#include <algorithm>

namespace netcoh {

WeylElement weyl_mul(const WeylElement& w1, const WeylElement& w2) {
  return {w1.F + w2.F, w1.theta + w2.theta - symplectic_form(w1.F, w2.F) / 2};
}

WeylElement weyl_inverse(const WeylElement& w) {
  return {Rat(-1) * w.F, -w.theta};
}

Rat adjoint_phase(const TestPair& F, const TestPair& G) {
  return symplectic_form(F, G);
}

std::pair<GradingRep, GradingRep> partition_of_unity(const IndexElement& I,
                                                     const Rat& grid_step) {
  if (!I.is_interval()) throw Error("partition of unity needs an interval");
  if (I.b - I.a < grid_step) throw IntervalTooSmall();
  PiecewiseLinear f1l({I.a, I.b}, {Rat(1), Rat(0)});
  PiecewiseLinear f1r({I.a, I.b}, {Rat(0), Rat(1)});
  GradingRep left{RepSide::Left, I, TestPair(PiecewiseLinear::constant(0), f1l)};
  GradingRep right{RepSide::Right, I, TestPair(PiecewiseLinear::constant(0), f1r)};
  return {left, right};
}

GradingRep global_grading_rep() {
  GradingRep g;
  g.side = RepSide::Global;
  g.base = IndexElement::interval(0, 1);  // unused; the generator is global
  g.generator = TestPair(PiecewiseLinear::constant(0), PiecewiseLinear::constant(1));
  return g;
}

TestPair rep_ambiguity(const GradingRep& v1, const GradingRep& v2, const Rat& n) {
  if (v1.side != v2.side) throw SideMismatch();
  return n * (v1.generator - v2.generator);
}

AffineIsometry xi_interval(const IndexElement& I) {
  if (!I.is_interval()) throw Error("xi is defined on intervals");
  return {-1, I.a + I.b};
}

TestPair xi_apply(const IndexElement& I, const TestPair& F) {
  return pullback_isometry(F, xi_interval(I));
}

MobiusMap MobiusMap::from_coeffs(const Rat& a, const Rat& b, const Rat& c,
                                 const Rat& d) {
  if (a * d - b * c == 0) throw Error("Moebius map needs nonzero determinant");
  MobiusMap m{{a, b, c, d}};
  for (auto& v : m.m)
    if (sgn(v) != 0) {
      if (sgn(v) < 0)
        for (auto& w : m.m) w = -w;
      break;
    }
  // scale so the first nonzero entry is 1 (canonical representative)
  Rat scale = 0;
  for (const auto& v : m.m)
    if (sgn(v) != 0) { scale = v; break; }
  for (auto& v : m.m) v /= scale;
  return m;
}

int MobiusMap::orientation() const {
  return sgn(m[0] * m[3] - m[1] * m[2]);
}

MobiusMap mobius_from_double_interval(const IndexElement& E) {
  if (!E.is_double()) throw Error("needs a double interval");
  const Rat alpha = E.a, beta = E.b, gamma = E.a2, delta = E.b2;
  if ((delta - gamma) == (beta - alpha)) return MobiusMap::identity();
  const Rat c = (alpha * delta - beta * gamma) / ((delta - gamma) - (beta - alpha)) -
                (alpha + delta);
  const Rat a = c + alpha + delta;
  const Rat b = -alpha * delta;
  return MobiusMap::from_coeffs(a, b, 1, c);
}

Rat mobius_apply_endpoint(const MobiusMap& m, const Rat& x) {
  const Rat den = m.m[2] * x + m.m[3];
  if (sgn(den) == 0) throw PoleHit();
  return (m.m[0] * x + m.m[1]) / den;
}

IndexElement mobius_apply_element(const MobiusMap& m, const IndexElement& o) {
  auto img = [&](const Rat& x) { return mobius_apply_endpoint(m, x); };
  switch (o.kind) {
    case IndexElement::Kind::Interval: {
      Rat u = img(o.a), v = img(o.b);
      if (u > v) std::swap(u, v);
      return IndexElement::interval(u, v);
    }
    case IndexElement::Kind::DoubleInterval: {
      Rat u1 = img(o.a), v1 = img(o.b), u2 = img(o.a2), v2 = img(o.b2);
      if (u1 > v1) std::swap(u1, v1);
      if (u2 > v2) std::swap(u2, v2);
      if (u2 < u1) { std::swap(u1, u2); std::swap(v1, v2); }
      return IndexElement::double_interval(u1, v1, u2, v2);
    }
    case IndexElement::Kind::HalfLineLeft:
    case IndexElement::Kind::HalfLineRight:
      throw Error("Moebius images of half-lines not supported");
  }
  throw Error("bad element");
}

}  // namespace netcoh
