#include "netcoh/ambient.hpp"

namespace netcoh {

AmbientSpace::AmbientSpace(const Rat& lo, const Rat& hi, const Rat& step)
    : lo_(lo), hi_(hi), step_(step) {
  if (!(lo < hi) || !(step > 0)) throw Error("ambient needs lo < hi, step > 0");
  const Rat cells_q = (hi - lo) / step;
  if (!is_integer(cells_q) || to_long(cells_q) < 4)
    throw Error("ambient window must be an integer number of cells, at least 4");
  cells_ = to_long(cells_q);
}

bool AmbientSpace::on_grid(const Rat& x) const {
  if (x < lo_ || x > hi_) return false;
  return is_integer((x - lo_) / step_);
}

long AmbientSpace::node_index(const Rat& x) const {
  if (!on_grid(x)) throw Error("point off the ambient grid: " + format_rat(x));
  return to_long((x - lo_) / step_);
}

long AmbientSpace::f0_coord(long node) const {
  if (node < 1 || node > cells_ - 1) throw Error("f0 node out of range");
  return node - 1;
}

long AmbientSpace::f1_coord(long node) const {
  if (node < 0 || node > cells_) throw Error("f1 node out of range");
  return (cells_ - 1) + node;
}

TestPair AmbientSpace::basis_element(long coord) const {
  VecQ x = VecQ::Zero(dim());
  x(coord) = 1;
  return from_coordinates(x);
}

VecQ AmbientSpace::coordinates(const TestPair& F) const {
  for (const auto& bp : F.f0.breakpoints())
    if (!on_grid(bp)) throw Error("f0 breakpoint off the grid");
  for (const auto& bp : F.f1.breakpoints())
    if (!on_grid(bp)) throw Error("f1 breakpoint off the grid");
  if (sgn(F.f0(lo_)) != 0 || sgn(F.f0(hi_)) != 0)
    throw Error("f0 must vanish at the window boundary");
  VecQ x = VecQ::Zero(dim());
  for (long k = 1; k <= cells_ - 1; ++k) x(f0_coord(k)) = F.f0(node(k));
  for (long k = 0; k <= cells_; ++k) x(f1_coord(k)) = F.f1(node(k));
  return x;
}

TestPair AmbientSpace::from_coordinates(const VecQ& x) const {
  if (x.size() != dim()) throw Error("coordinate size mismatch");
  std::vector<Rat> xs, y0, y1;
  xs.reserve(cells_ + 1);
  for (long k = 0; k <= cells_; ++k) {
    xs.push_back(node(k));
    y0.push_back(k >= 1 && k <= cells_ - 1 ? Rat(x(f0_coord(k))) : Rat(0));
    y1.push_back(x(f1_coord(k)));
  }
  return TestPair(PiecewiseLinear(xs, y0), PiecewiseLinear(std::move(xs), std::move(y1)));
}

const MatQ& AmbientSpace::gram() const {
  if (gram_.rows() == dim()) return gram_;
  gram_ = MatQ::Zero(dim(), dim());
  // Only f0 x f1 entries are nonzero, and only for overlapping hats.
  for (long i = 1; i <= cells_ - 1; ++i) {
    const TestPair ei = basis_element(f0_coord(i));
    for (long j = std::max<long>(0, i - 1); j <= std::min(cells_, i + 1); ++j) {
      const TestPair ej = basis_element(f1_coord(j));
      const Rat v = pl_product_integral(ei.f0, ej.f1);
      gram_(f0_coord(i), f1_coord(j)) = v;
      gram_(f1_coord(j), f0_coord(i)) = -v;
    }
  }
  return gram_;
}

Rat AmbientSpace::sigma(const VecQ& x, const VecQ& y) const {
  const MatQ& g = gram();
  Rat acc = 0;
  for (long i = 1; i <= cells_ - 1; ++i) {
    const long fi = f0_coord(i);
    for (long j = std::max<long>(0, i - 1); j <= std::min(cells_, i + 1); ++j) {
      const long fj = f1_coord(j);
      if (sgn(x(fi)) != 0 && sgn(y(fj)) != 0) acc += x(fi) * g(fi, fj) * y(fj);
      if (sgn(x(fj)) != 0 && sgn(y(fi)) != 0) acc += x(fj) * g(fj, fi) * y(fi);
    }
  }
  return acc;
}

RowQ AmbientSpace::charge_row() const {
  RowQ r = RowQ::Zero(dim());
  for (long k = 1; k <= cells_ - 1; ++k) r(f0_coord(k)) = step_;
  return r;
}

RowQ AmbientSpace::left_grade_row() const {
  RowQ r = RowQ::Zero(dim());
  r(f1_coord(0)) = 1;
  return r;
}

RowQ AmbientSpace::right_grade_row() const {
  RowQ r = RowQ::Zero(dim());
  r(f1_coord(cells_)) = 1;
  return r;
}

RowQ AmbientSpace::partial_charge_row_upto(long node) const {
  // Exact integral of f0 over (-inf, node(k)]: full hats left of the node
  // plus half of the hat at the node itself.
  RowQ r = RowQ::Zero(dim());
  for (long k = 1; k <= cells_ - 1; ++k) {
    if (k < node) r(f0_coord(k)) = step_;
    else if (k == node) r(f0_coord(k)) = step_ / 2;
  }
  return r;
}

std::vector<TestPair> SymplecticSubspace::generators() const {
  std::vector<TestPair> out;
  out.reserve((size_t)basis_.rows());
  for (Eigen::Index i = 0; i < basis_.rows(); ++i)
    out.push_back(ambient_->from_coordinates(basis_.row(i).transpose()));
  return out;
}

SymplecticSubspace join(const std::vector<SymplecticSubspace>& spaces) {
  if (spaces.empty()) throw Error("join of nothing");
  const AmbientSpace* amb = spaces.front().ambient();
  Eigen::Index rows = 0;
  for (const auto& s : spaces) {
    if (s.ambient() != amb) throw AmbientMismatch();
    rows += s.basis().rows();
  }
  MatQ m(rows, amb->dim());
  Eigen::Index at = 0;
  for (const auto& s : spaces) {
    m.middleRows(at, s.basis().rows()) = s.basis();
    at += s.basis().rows();
  }
  return SymplecticSubspace(amb, m);
}

SymplecticSubspace intersect(const std::vector<SymplecticSubspace>& spaces) {
  if (spaces.empty()) throw Error("intersection of nothing");
  const AmbientSpace* amb = spaces.front().ambient();
  MatQ acc = spaces.front().basis();
  for (size_t i = 1; i < spaces.size(); ++i) {
    if (spaces[i].ambient() != amb) throw AmbientMismatch();
    acc = intersect_spaces(acc, spaces[i].basis());
    if (acc.rows() == 0) break;
  }
  return SymplecticSubspace(amb, acc);
}

}  // namespace netcoh
