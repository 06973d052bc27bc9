#pragma once

#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "netcoh/rational.hpp"

namespace netcoh {

struct BothTailsNonzero : Error {
  BothTailsNonzero() : Error("product has non-compact support on at least one side") {}
};
struct UnsupportedMap : Error {
  UnsupportedMap() : Error("pullback map must be an affine isometry x -> +/-x + t") {}
};

// Continuous piecewise-linear function on R with constant extension beyond
// the first/last breakpoint. Canonical form: strictly increasing breakpoints,
// no interior breakpoint where the function is locally affine, no redundant
// end breakpoint; a constant keeps a single breakpoint.
class PiecewiseLinear {
 public:
  PiecewiseLinear() : xs_{Rat(0)}, ys_{Rat(0)} {}
  PiecewiseLinear(std::vector<Rat> xs, std::vector<Rat> ys);
  static PiecewiseLinear constant(const Rat& value);

  const std::vector<Rat>& breakpoints() const { return xs_; }
  const std::vector<Rat>& values() const { return ys_; }

  Rat operator()(const Rat& x) const;
  Rat left_tail() const { return ys_.front(); }
  Rat right_tail() const { return ys_.back(); }
  bool is_zero() const { return xs_.size() == 1 && sgn(ys_[0]) == 0; }
  bool is_constant() const { return xs_.size() == 1; }
  bool compact_support() const {
    return sgn(left_tail()) == 0 && sgn(right_tail()) == 0;
  }

  // Exact integral; requires compact support.
  Rat integral() const;

  bool operator==(const PiecewiseLinear& o) const {
    return xs_ == o.xs_ && ys_ == o.ys_;
  }
  bool operator!=(const PiecewiseLinear& o) const { return !(*this == o); }
  bool operator<(const PiecewiseLinear& o) const;  // lexicographic, for maps

 private:
  std::vector<Rat> xs_, ys_;
  void canonicalize();
};

// a*f + b*g on the merged breakpoint set.
PiecewiseLinear pl_combine(const Rat& a, const PiecewiseLinear& f,
                           const Rat& b, const PiecewiseLinear& g);

// Exact integral of f*g over R, per merged segment (closed-form quadratic).
// Throws BothTailsNonzero when a tail product is nonzero on either side.
Rat pl_product_integral(const PiecewiseLinear& f, const PiecewiseLinear& g);

// Closed interval [a, b] with rational endpoints, a <= b.
struct ClosedInterval {
  Rat a, b;
  bool operator==(const ClosedInterval& o) const { return a == o.a && b == o.b; }
};

// Time-zero datum f0 (+) f1. Invariant: f0 has compact support.
struct TestPair {
  PiecewiseLinear f0, f1;

  TestPair() = default;
  TestPair(PiecewiseLinear density, PiecewiseLinear field);
  static TestPair zero() { return TestPair(); }

  bool operator==(const TestPair& o) const { return f0 == o.f0 && f1 == o.f1; }
  bool operator!=(const TestPair& o) const { return !(*this == o); }
  bool operator<(const TestPair& o) const {
    if (f0 != o.f0) return f0 < o.f0;
    return f1 < o.f1;
  }
};

TestPair operator+(const TestPair& a, const TestPair& b);
TestPair operator-(const TestPair& a, const TestPair& b);
TestPair operator*(const Rat& s, const TestPair& a);

// sigma(F, G) = int (F.f0 G.f1 - F.f1 G.f0).
Rat symplectic_form(const TestPair& F, const TestPair& G);

// supp f0 (union) supp df1 as a minimal list of disjoint closed intervals.
std::vector<ClosedInterval> localization(const TestPair& F);

struct ChargePair {
  Rat c, q;
  bool operator==(const ChargePair& o) const { return c == o.c && q == o.q; }
  bool is_zero() const { return sgn(c) == 0 && sgn(q) == 0; }
};

struct Charges {
  ChargePair charge;      // c = int f0, q = rightGrade - leftGrade
  Rat left_grade, right_grade;  // tail values of f1
};

Charges charges(const TestPair& F);

enum class SpaceTag { Va, Vb, Vc, Vq, Ve, Vf, Vfl, Vfr, Vf0 };

const char* tag_name(SpaceTag t);
std::optional<SpaceTag> tag_from_name(const std::string& name);

// Membership by the charge/grade table; localization plays no role here.
bool space_member(const TestPair& F, SpaceTag tag);

// x -> sign*x + shift with sign in {+1, -1}.
struct AffineIsometry {
  int sign;   // +1 translation, -1 point reflection
  Rat shift;

  static AffineIsometry translation(const Rat& t) { return {1, t}; }
  static AffineIsometry reflection_about(const Rat& c) { return {-1, 2 * c}; }

  Rat apply(const Rat& x) const { return sign > 0 ? x + shift : shift - x; }
  AffineIsometry inverse() const {
    return sign > 0 ? AffineIsometry{1, -shift} : *this;
  }
};

PiecewiseLinear pullback(const PiecewiseLinear& f, const AffineIsometry& map);

// Components map as f (compose) map^{-1}; throws UnsupportedMap if
// map.sign is not +/-1.
TestPair pullback_isometry(const TestPair& F, const AffineIsometry& map);

}  // namespace netcoh
