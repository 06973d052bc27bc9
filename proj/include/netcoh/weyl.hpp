#pragma once

#include <array>

#include "netcoh/piecewise.hpp"
#include "netcoh/poset.hpp"

namespace netcoh {

struct IntervalTooSmall : Error {
  IntervalTooSmall() : Error("interval too small for the construction") {}
};
struct SideMismatch : Error {
  SideMismatch() : Error("grading representations live on different sides") {}
};
struct PoleHit : Error {
  PoleHit() : Error("point hits the pole of the Moebius map") {}
};

// e^{i theta} W(F) in the Heisenberg phase group over test pairs.
struct WeylElement {
  TestPair F;
  Rat theta;

  static WeylElement identity() { return {TestPair::zero(), Rat(0)}; }
  static WeylElement of(TestPair f) { return {std::move(f), Rat(0)}; }

  bool operator==(const WeylElement& o) const {
    return theta == o.theta && F == o.F;
  }
  bool operator!=(const WeylElement& o) const { return !(*this == o); }
};

// (F1+F2, t1+t2 - sigma(F1,F2)/2): the CCR composition at phase level.
WeylElement weyl_mul(const WeylElement& w1, const WeylElement& w2);
WeylElement weyl_inverse(const WeylElement& w);

// Exponent sigma(F, G) of the phase picked up by W(G) under ad W(F).
Rat adjoint_phase(const TestPair& F, const TestPair& G);

enum class RepSide { Left, Right, Global };

// Unitary representation n -> W(n * generator) grading one complement side.
struct GradingRep {
  RepSide side = RepSide::Left;
  IndexElement base;  // interval carrying the slope
  TestPair generator;

  WeylElement at(const Rat& n) const { return WeylElement::of(n * generator); }
};

// f1l + f1r == 1 with both slopes inside I; f1l has grades (1, 0).
std::pair<GradingRep, GradingRep> partition_of_unity(const IndexElement& I,
                                                     const Rat& grid_step);

GradingRep global_grading_rep();

// n * (generator1 - generator2); requires equal sides. The difference is
// grade-free and localized in any interval containing both bases.
TestPair rep_ambiguity(const GradingRep& v1, const GradingRep& v2, const Rat& n);

// x -> -x + a + b: the reflection fixing I = (a, b) setwise.
AffineIsometry xi_interval(const IndexElement& I);
TestPair xi_apply(const IndexElement& I, const TestPair& F);

// x -> (a x + b)/(c x + d) with rational entries, det != 0, normalized so the
// first nonzero entry of (a, b, c, d) is positive.
struct MobiusMap {
  std::array<Rat, 4> m;  // a, b, c, d

  static MobiusMap identity() { return MobiusMap{{Rat(1), Rat(0), Rat(0), Rat(1)}}; }
  static MobiusMap from_coeffs(const Rat& a, const Rat& b, const Rat& c, const Rat& d);
  static MobiusMap translation(const Rat& t) {
    return from_coeffs(1, t, 0, 1);
  }

  bool is_identity() const {
    return m[1] == 0 && m[2] == 0 && m[0] == m[3];
  }
  int orientation() const;  // sign of the determinant

  bool operator==(const MobiusMap& o) const { return m == o.m; }
};

// The g of the double-interval involution: fixes the outer endpoints of
// E = (a,b) u (g,d) and exchanges the reflected inner ones; the identity when
// the two components have equal length.
MobiusMap mobius_from_double_interval(const IndexElement& E);

Rat mobius_apply_endpoint(const MobiusMap& m, const Rat& x);
IndexElement mobius_apply_element(const MobiusMap& m, const IndexElement& o);

}  // namespace netcoh
