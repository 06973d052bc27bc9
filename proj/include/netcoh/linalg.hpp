#pragma once

#include <vector>

#include "netcoh/rational.hpp"

namespace netcoh {

// Exact dense linear algebra over Q. Matrices are row-major collections of
// vectors; a subspace is identified with the row space of its RREF, which is
// canonical, so subspace equality is matrix equality.

// In-place reduced row echelon form. Returns the pivot columns.
inline std::vector<Eigen::Index> rref_in_place(MatQ& m) {
  std::vector<Eigen::Index> pivots;
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = -1;
    for (Eigen::Index i = r; i < rows; ++i)
      if (sgn(m(i, c)) != 0) { p = i; break; }
    if (p < 0) continue;
    if (p != r) m.row(p).swap(m.row(r));
    const Rat inv = Rat(1) / m(r, c);
    if (inv != 1)
      for (Eigen::Index j = c; j < cols; ++j)
        if (sgn(m(r, j)) != 0) m(r, j) *= inv;
    m(r, c) = 1;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r) continue;
      const Rat f = m(i, c);
      if (sgn(f) == 0) continue;
      for (Eigen::Index j = c; j < cols; ++j)
        if (sgn(m(r, j)) != 0) m(i, j) -= f * m(r, j);
      m(i, c) = 0;
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// RREF with zero rows dropped: the canonical basis of the row space.
inline MatQ row_basis(const MatQ& m) {
  MatQ a = m;
  auto pivots = rref_in_place(a);
  MatQ out((Eigen::Index)pivots.size(), m.cols());
  for (Eigen::Index i = 0; i < out.rows(); ++i) out.row(i) = a.row(i);
  return out;
}

inline Eigen::Index rank_of(const MatQ& m) {
  MatQ a = m;
  return (Eigen::Index)rref_in_place(a).size();
}

// Canonical basis of {x : m x = 0}, one row per free column.
inline MatQ kernel_basis(const MatQ& m) {
  MatQ a = m;
  auto pivots = rref_in_place(a);
  const Eigen::Index cols = m.cols();
  std::vector<char> is_pivot(cols, 0);
  for (auto c : pivots) is_pivot[c] = 1;
  MatQ out(cols - (Eigen::Index)pivots.size(), cols);
  out.setZero();
  Eigen::Index k = 0;
  for (Eigen::Index c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    out(k, c) = 1;
    for (Eigen::Index i = 0; i < (Eigen::Index)pivots.size(); ++i)
      out(k, pivots[i]) = -a(i, c);
    ++k;
  }
  return out;
}

// Membership of v in the row space of an RREF basis.
inline bool in_row_space(const MatQ& basis, const RowQ& v) {
  RowQ w = v;
  for (Eigen::Index i = 0; i < basis.rows(); ++i) {
    Eigen::Index lead = -1;
    for (Eigen::Index j = 0; j < basis.cols(); ++j)
      if (basis(i, j) == 1) { lead = j; break; }
    if (lead < 0) continue;
    const Rat f = w(lead);
    if (sgn(f) != 0) w -= f * basis.row(i);
  }
  for (Eigen::Index j = 0; j < w.cols(); ++j)
    if (sgn(w(j)) != 0) return false;
  return true;
}

inline MatQ vstack(const MatQ& a, const MatQ& b) {
  MatQ out(a.rows() + b.rows(), a.cols() > 0 ? a.cols() : b.cols());
  out.topRows(a.rows()) = a;
  out.bottomRows(b.rows()) = b;
  return out;
}

// Row-space sum: canonical basis of span(a) + span(b).
inline MatQ join_spaces(const MatQ& a, const MatQ& b) {
  return row_basis(vstack(a, b));
}

// Row-space intersection via orthogonal complements over Q: x lies in
// span(a) iff x is orthogonal to ker(a) for the standard bilinear form.
inline MatQ intersect_spaces(const MatQ& a, const MatQ& b) {
  MatQ ka = kernel_basis(a);
  MatQ kb = kernel_basis(b);
  return kernel_basis(vstack(ka, kb));
}

// span(sub) <= span(sup), both RREF.
inline bool space_contained(const MatQ& sub, const MatQ& sup) {
  for (Eigen::Index i = 0; i < sub.rows(); ++i)
    if (!in_row_space(sup, sub.row(i))) return false;
  return true;
}

}  // namespace netcoh
