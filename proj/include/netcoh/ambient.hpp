#pragma once

#include <optional>
#include <vector>

#include "netcoh/linalg.hpp"
#include "netcoh/piecewise.hpp"
#include "netcoh/poset.hpp"

namespace netcoh {

struct AmbientMismatch : Error {
  AmbientMismatch() : Error("subspaces live over different ambient spaces") {}
};

// Finite-dimensional window model of the test-pair space. Coordinates:
//   f0 block: nodal values at interior nodes 1..N-1 (hat basis);
//   f1 block: nodal values at nodes 0..N, where the boundary coordinates are
//   the tail units (constant extension beyond the window).
class AmbientSpace {
 public:
  AmbientSpace(const Rat& lo, const Rat& hi, const Rat& step);

  const Rat& lo() const { return lo_; }
  const Rat& hi() const { return hi_; }
  const Rat& step() const { return step_; }
  long cells() const { return cells_; }
  long dim() const { return 2 * cells_; }

  Rat node(long k) const { return lo_ + Rat(k) * step_; }
  // Exact node index of x; throws when x is off the grid or window.
  long node_index(const Rat& x) const;
  bool on_grid(const Rat& x) const;

  long f0_coord(long node) const;  // node in 1..N-1
  long f1_coord(long node) const;  // node in 0..N

  TestPair basis_element(long coord) const;
  VecQ coordinates(const TestPair& F) const;
  TestPair from_coordinates(const VecQ& x) const;

  // sigma as a bilinear form on coordinates: sigma(x, y) = x^T Gram y.
  const MatQ& gram() const;
  Rat sigma(const VecQ& x, const VecQ& y) const;

  // Linear functionals as coordinate rows.
  RowQ charge_row() const;              // int f0
  RowQ left_grade_row() const;          // f1 tail at -inf
  RowQ right_grade_row() const;         // f1 tail at +inf
  // int f0 over (-inf, node(k)] (used for plateau tests in duals).
  RowQ partial_charge_row_upto(long node) const;

  bool operator==(const AmbientSpace& o) const {
    return lo_ == o.lo_ && hi_ == o.hi_ && step_ == o.step_;
  }

 private:
  Rat lo_, hi_, step_;
  long cells_;
  mutable MatQ gram_;  // lazily filled
};

// Row space of generators over an ambient, kept in canonical RREF: equality
// of subspaces is equality of matrices.
class SymplecticSubspace {
 public:
  SymplecticSubspace() = default;
  SymplecticSubspace(const AmbientSpace* ambient, MatQ generators)
      : ambient_(ambient), basis_(row_basis(generators)) {}

  const AmbientSpace* ambient() const { return ambient_; }
  const MatQ& basis() const { return basis_; }
  Eigen::Index dim() const { return basis_.rows(); }

  bool contains(const VecQ& x) const { return in_row_space(basis_, x.transpose()); }
  bool contains(const TestPair& F) const {
    return contains(ambient_->coordinates(F));
  }
  bool contains(const SymplecticSubspace& other) const {
    return space_contained(other.basis_, basis_);
  }

  bool operator==(const SymplecticSubspace& s) const {
    return basis_ == s.basis_;
  }
  bool operator!=(const SymplecticSubspace& s) const { return !(*this == s); }

  std::vector<TestPair> generators() const;

 private:
  const AmbientSpace* ambient_ = nullptr;
  MatQ basis_;
};

SymplecticSubspace join(const std::vector<SymplecticSubspace>& spaces);
SymplecticSubspace intersect(const std::vector<SymplecticSubspace>& spaces);

}  // namespace netcoh
