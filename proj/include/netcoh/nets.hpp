#pragma once

#include <vector>

#include "netcoh/ambient.hpp"

namespace netcoh {

struct NetSpec {
  SpaceTag tag = SpaceTag::Va;
  const CausalPoset* poset = nullptr;
};

// Localization target: a finite union of closed grid intervals, one per
// component. Pieces flagged unbounded absorb everything up to the window
// edge on that side and carry the vanishing-tail condition there.
struct LocTarget {
  std::vector<ComplementPiece> pieces;

  static LocTarget of(const IndexElement& o);
  static LocTarget of(const ComplementPiece& piece);
};

// Constraint rows whose kernel is the local space below.
std::vector<RowQ> local_constraint_rows(const AmbientSpace& ambient, SpaceTag tag,
                                        const LocTarget& target);

// Local space: ambient elements of the tag with localization inside the
// target. For pieces at the window edge, the f1 tail on that side is pinned
// to zero (the true complement is unbounded).
SymplecticSubspace materialize(const AmbientSpace& ambient, SpaceTag tag,
                               const LocTarget& target);

SymplecticSubspace materialize(const AmbientSpace& ambient, const NetSpec& spec,
                               const IndexElement& o);

// Join over the poset intervals contained in the composite element.
SymplecticSubspace additive_extension(const AmbientSpace& ambient,
                                      const NetSpec& spec,
                                      const IndexElement& composite);

// Test-side charge policy for one causal-complement piece of a dual.
enum class PiecePolicy {
  FixedCharge,  // zero-charge, zero-tail test family (N-fixed part)
  FreeCharge    // charged, zero-tail test family
};

// sigma-annihilator within the tag's ambient of the full tag test family on
// every causal-complement piece (exact closed-form conditions).
SymplecticSubspace dual(const AmbientSpace& ambient, const NetSpec& spec,
                        const IndexElement& o);

enum class GradedSide { Left, Right };

// Twisted complement space of Def-style K-twisted algebras at phase level:
// join of the per-piece test spaces (zero-charge zero-tail on the graded
// side and the middle gap, charged zero-tail on the opposite side).
SymplecticSubspace graded_twist(const AmbientSpace& ambient,
                                const CausalPoset& poset, GradedSide side,
                                const IndexElement& o);

// Annihilator of the twisted complement within Vfl (resp. Vfr).
SymplecticSubspace graded_dual(const AmbientSpace& ambient,
                               const CausalPoset& poset, GradedSide side,
                               const IndexElement& o);

// For the globally graded net: annihilator within Vc of the zero-charge
// zero-tail family on all complement pieces.
SymplecticSubspace global_graded_dual(const AmbientSpace& ambient,
                                      const CausalPoset& poset,
                                      const IndexElement& o);

struct LocalityViolation {
  IndexElement o1, o2;
  TestPair F, G;
  Rat sigma;
};

struct LocalityReport {
  size_t pairs_checked = 0;
  size_t generator_pairs_checked = 0;
  std::vector<LocalityViolation> violations;
  bool ok() const { return violations.empty(); }
};

// All disjoint pairs of the spec's poset, every cross generator pair.
LocalityReport check_locality(const AmbientSpace& ambient, const NetSpec& spec,
                              size_t max_violations = 16);

// Left net on o1 against right net on o2 for all pairs o1 < o2.
LocalityReport check_graded_locality(const AmbientSpace& ambient,
                                     const CausalPoset& poset,
                                     size_t max_violations = 16);

}  // namespace netcoh
