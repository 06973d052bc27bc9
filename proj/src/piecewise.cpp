#include "netcoh/piecewise.hpp"

#include <algorithm>
#include <map>

namespace netcoh {

PiecewiseLinear::PiecewiseLinear(std::vector<Rat> xs, std::vector<Rat> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.empty() || xs_.size() != ys_.size())
    throw Error("piecewise-linear needs matching nonempty breakpoints/values");
  for (size_t i = 1; i < xs_.size(); ++i)
    if (!(xs_[i - 1] < xs_[i]))
      throw Error("breakpoints must be strictly increasing");
  canonicalize();
}

PiecewiseLinear PiecewiseLinear::constant(const Rat& value) {
  PiecewiseLinear f;
  f.ys_[0] = value;
  return f;
}

void PiecewiseLinear::canonicalize() {
  // Drop interior points where the two incident slopes agree, then redundant
  // end points (equal to the neighbour: tails are constant anyway).
  std::vector<Rat> xs, ys;
  const size_t n = xs_.size();
  for (size_t i = 0; i < n; ++i) {
    if (i > 0 && i + 1 < n) {
      // collinear iff (y_i - y_{i-1})(x_{i+1} - x_i) == (y_{i+1} - y_i)(x_i - x_{i-1})
      const Rat lhs = (ys_[i] - ys_[i - 1]) * (xs_[i + 1] - xs_[i]);
      const Rat rhs = (ys_[i + 1] - ys_[i]) * (xs_[i] - xs_[i - 1]);
      if (lhs == rhs) continue;
    }
    xs.push_back(xs_[i]);
    ys.push_back(ys_[i]);
  }
  while (xs.size() > 1 && ys[0] == ys[1]) {
    xs.erase(xs.begin());
    ys.erase(ys.begin());
  }
  while (xs.size() > 1 && ys[xs.size() - 1] == ys[xs.size() - 2]) {
    xs.pop_back();
    ys.pop_back();
  }
  if (xs.size() == 1) xs[0] = 0;  // canonical constant
  xs_ = std::move(xs);
  ys_ = std::move(ys);
}

Rat PiecewiseLinear::operator()(const Rat& x) const {
  if (x <= xs_.front()) return ys_.front();
  if (x >= xs_.back()) return ys_.back();
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  const size_t i = (size_t)(it - xs_.begin());  // xs_[i-1] <= x < xs_[i]
  const Rat t = (x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
  return ys_[i - 1] + t * (ys_[i] - ys_[i - 1]);
}

Rat PiecewiseLinear::integral() const {
  if (!compact_support()) throw Error("integral of non-compact function");
  Rat acc = 0;
  for (size_t i = 1; i < xs_.size(); ++i)
    acc += (xs_[i] - xs_[i - 1]) * (ys_[i] + ys_[i - 1]) / 2;
  return acc;
}

bool PiecewiseLinear::operator<(const PiecewiseLinear& o) const {
  if (xs_ != o.xs_) return xs_ < o.xs_;
  return ys_ < o.ys_;
}

PiecewiseLinear pl_combine(const Rat& a, const PiecewiseLinear& f,
                           const Rat& b, const PiecewiseLinear& g) {
  std::vector<Rat> xs;
  xs.reserve(f.breakpoints().size() + g.breakpoints().size());
  std::merge(f.breakpoints().begin(), f.breakpoints().end(),
             g.breakpoints().begin(), g.breakpoints().end(),
             std::back_inserter(xs));
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Rat> ys;
  ys.reserve(xs.size());
  for (const Rat& x : xs) ys.push_back(a * f(x) + b * g(x));
  return PiecewiseLinear(std::move(xs), std::move(ys));
}

Rat pl_product_integral(const PiecewiseLinear& f, const PiecewiseLinear& g) {
  if (sgn(f.left_tail()) != 0 && sgn(g.left_tail()) != 0)
    throw BothTailsNonzero();
  if (sgn(f.right_tail()) != 0 && sgn(g.right_tail()) != 0)
    throw BothTailsNonzero();
  std::vector<Rat> xs;
  std::merge(f.breakpoints().begin(), f.breakpoints().end(),
             g.breakpoints().begin(), g.breakpoints().end(),
             std::back_inserter(xs));
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  // Outside [xs.front(), xs.back()] the integrand is a vanishing constant.
  Rat acc = 0;
  for (size_t i = 1; i < xs.size(); ++i) {
    const Rat& s = xs[i - 1];
    const Rat& t = xs[i];
    const Rat fs = f(s), ft = f(t), gs = g(s), gt = g(t);
    // Linear on [s,t]: int f*g = (t-s)/6 * (2 fs gs + fs gt + ft gs + 2 ft gt)
    acc += (t - s) * (2 * fs * gs + fs * gt + ft * gs + 2 * ft * gt) / 6;
  }
  return acc;
}

TestPair::TestPair(PiecewiseLinear density, PiecewiseLinear field)
    : f0(std::move(density)), f1(std::move(field)) {
  if (!f0.compact_support())
    throw Error("test pair density component must have compact support");
}

TestPair operator+(const TestPair& a, const TestPair& b) {
  return TestPair(pl_combine(1, a.f0, 1, b.f0), pl_combine(1, a.f1, 1, b.f1));
}
TestPair operator-(const TestPair& a, const TestPair& b) {
  return TestPair(pl_combine(1, a.f0, -1, b.f0), pl_combine(1, a.f1, -1, b.f1));
}
TestPair operator*(const Rat& s, const TestPair& a) {
  return TestPair(pl_combine(s, a.f0, 0, PiecewiseLinear()),
                  pl_combine(s, a.f1, 0, PiecewiseLinear()));
}

Rat symplectic_form(const TestPair& F, const TestPair& G) {
  return pl_product_integral(F.f0, G.f1) - pl_product_integral(F.f1, G.f0);
}

namespace {

// Closed segments [xs[i-1], xs[i]] on which the function is not identically
// zero (for supports) or not constant (for slopes), merged when touching.
void merge_segment(std::vector<ClosedInterval>& out, const Rat& a, const Rat& b) {
  if (!out.empty() && out.back().b >= a) {
    if (out.back().b < b) out.back().b = b;
    return;
  }
  out.push_back({a, b});
}

}  // namespace

std::vector<ClosedInterval> localization(const TestPair& F) {
  // Collect candidate segments from both components, then merge in order.
  std::vector<std::pair<Rat, Rat>> segs;
  {
    const auto& xs = F.f0.breakpoints();
    const auto& ys = F.f0.values();
    for (size_t i = 1; i < xs.size(); ++i)
      if (sgn(ys[i - 1]) != 0 || sgn(ys[i]) != 0)
        segs.emplace_back(xs[i - 1], xs[i]);
  }
  {
    const auto& xs = F.f1.breakpoints();
    const auto& ys = F.f1.values();
    for (size_t i = 1; i < xs.size(); ++i)
      if (ys[i - 1] != ys[i]) segs.emplace_back(xs[i - 1], xs[i]);
  }
  std::sort(segs.begin(), segs.end());
  std::vector<ClosedInterval> out;
  for (auto& [a, b] : segs) merge_segment(out, a, b);
  return out;
}

Charges charges(const TestPair& F) {
  Charges ch;
  ch.left_grade = F.f1.left_tail();
  ch.right_grade = F.f1.right_tail();
  ch.charge.c = F.f0.integral();
  ch.charge.q = ch.right_grade - ch.left_grade;
  return ch;
}

const char* tag_name(SpaceTag t) {
  switch (t) {
    case SpaceTag::Va: return "Va";
    case SpaceTag::Vb: return "Vb";
    case SpaceTag::Vc: return "Vc";
    case SpaceTag::Vq: return "Vq";
    case SpaceTag::Ve: return "Ve";
    case SpaceTag::Vf: return "Vf";
    case SpaceTag::Vfl: return "Vfl";
    case SpaceTag::Vfr: return "Vfr";
    case SpaceTag::Vf0: return "Vf0";
  }
  return "?";
}

std::optional<SpaceTag> tag_from_name(const std::string& name) {
  for (SpaceTag t : {SpaceTag::Va, SpaceTag::Vb, SpaceTag::Vc, SpaceTag::Vq,
                     SpaceTag::Ve, SpaceTag::Vf, SpaceTag::Vfl, SpaceTag::Vfr,
                     SpaceTag::Vf0})
    if (name == tag_name(t)) return t;
  return std::nullopt;
}

bool space_member(const TestPair& F, SpaceTag tag) {
  const Charges ch = charges(F);
  const bool c0 = sgn(ch.charge.c) == 0;
  const Rat& l = ch.left_grade;
  const Rat& r = ch.right_grade;
  switch (tag) {
    case SpaceTag::Va: return c0 && sgn(l) == 0 && sgn(r) == 0;
    case SpaceTag::Vb: return c0 && l == r;
    case SpaceTag::Vc: return l == r;
    case SpaceTag::Vq: return c0 && l == -r;
    case SpaceTag::Ve: return c0;
    case SpaceTag::Vf: return true;
    case SpaceTag::Vfl: return sgn(r) == 0;
    case SpaceTag::Vfr: return sgn(l) == 0;
    case SpaceTag::Vf0: return sgn(l) == 0 && sgn(r) == 0;
  }
  return false;
}

PiecewiseLinear pullback(const PiecewiseLinear& f, const AffineIsometry& map) {
  if (map.sign != 1 && map.sign != -1) throw UnsupportedMap();
  const auto& xs = f.breakpoints();
  const auto& ys = f.values();
  const size_t n = xs.size();
  std::vector<Rat> nxs(n), nys(n);
  for (size_t i = 0; i < n; ++i) {
    const size_t j = map.sign > 0 ? i : n - 1 - i;
    nxs[i] = map.apply(xs[j]);
    nys[i] = ys[j];
  }
  return PiecewiseLinear(std::move(nxs), std::move(nys));
}

TestPair pullback_isometry(const TestPair& F, const AffineIsometry& map) {
  return TestPair(pullback(F.f0, map), pullback(F.f1, map));
}

}  // namespace netcoh
