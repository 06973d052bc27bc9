#pragma once

#include <optional>
#include <variant>

#include "netcoh/nets.hpp"
#include "netcoh/sectors.hpp"
#include "netcoh/simplicial.hpp"
#include "netcoh/weyl.hpp"

namespace netcoh {

struct RepresentativeDoesNotFit : Error {
  RepresentativeDoesNotFit()
      : Error("support too small for the canonical representative") {}
};
struct NoOverlap : Error {
  NoOverlap() : Error("consecutive chain elements do not overlap enough") {}
};
struct SupportNotCovered : Error {
  SupportNotCovered() : Error("chain does not cover the support") {}
};

// Weyl-valued assignment on the canonical 1-simplices of a poset. Entries are
// stored densely by (source, target) element index; an entry exists iff the
// pair has a common support.
class Cocycle1 {
 public:
  Cocycle1(const CausalPoset& poset);

  const CausalPoset& poset() const { return *poset_; }
  size_t size() const { return poset_->elements.size(); }

  bool has_edge(size_t s, size_t t) const { return edge_ok_[s * size() + t]; }
  const WeylElement& at(size_t s, size_t t) const;
  WeylElement& at(size_t s, size_t t);

  std::optional<ChargePair> provenance_charge;
  std::optional<TailConvention> provenance_convention;

 private:
  const CausalPoset* poset_;
  std::vector<WeylElement> entries_;
  std::vector<char> edge_ok_;
};

// z(b) = W(F_{target}) W(F_{source})^{-1} for canonical charged
// representatives placed in each element (side Left = right-tail-zero).
Cocycle1 induced_cocycle(const AmbientSpace& ambient, const ChargePair& charge,
                         const CausalPoset& poset, GradedSide side);

struct CocycleReport {
  size_t edges_checked = 0;
  size_t triangles_checked = 0;
  size_t locality_violations = 0;
  size_t identity_violations = 0;
  size_t strict_violations = 0;  // only when the strict flag is set
  std::optional<std::pair<size_t, size_t>> first_bad_edge;
  bool ok() const { return locality_violations == 0 && identity_violations == 0; }
};

// Locality on all canonical 1-simplices and the cocycle identity on all
// canonical 2-simplices. With strict set, also the phase-level shadow of the
// far-commutation clause against the tagged net (report-only).
CocycleReport check_cocycle(const Cocycle1& z,
                            const AmbientSpace* ambient = nullptr,
                            bool strict = false,
                            SpaceTag strict_tag = SpaceTag::Vfl);

struct ConditionAAResult {
  bool holds = false;
  SymplecticSubspace join_space;          // N(|d0 b|) v N(|d1 b|)
  SymplecticSubspace intersection_space;  // over all enumerated path spaces
  size_t paths_enumerated = 0;
  size_t distinct_support_sets = 0;
  std::optional<TestPair> witness;  // element of X \ J when it fails
  bool witness_certified = false;   // decomposed along every enumerated path
};

// Condition (aa) for the 1-simplex with endpoint bodies a0, a1: intersection
// over path spaces with both endpoints fixed versus the join of the endpoint
// spaces. A failure comes with a witness decomposed along every enumerated
// path chain.
ConditionAAResult condition_aa(const AmbientSpace& ambient, const NetSpec& spec,
                               const IndexElement& a0, const IndexElement& a1,
                               size_t max_len);

// Zero-integral summands along an overlapping chain: g_i supported in
// chain[i], all with zero integral, summing exactly to f0. Compensating
// bumps are placed in the consecutive overlaps.
std::vector<PiecewiseLinear> chain_decompose(const PiecewiseLinear& f0,
                                             const std::vector<IndexElement>& chain,
                                             const Rat& step);

struct TrivializerWitness {
  std::vector<WeylElement> v;      // per poset element index
  std::vector<char> in_target;     // tag membership and localization per entry
  size_t edges_verified = 0;
  bool exact = false;              // z(b) == V(d0 b) V(d1 b)^{-1} on all edges
};

struct ObstructionCertificate {
  IndexElement a1, a2;       // disjoint witnesses
  TestPair transporter;      // z-transport between them
  ChargePair forced_charge;  // charge the trivializer would have to absorb
  bool subsystem_infeasible = false;  // two-element affine system has no solution
};

using CoboundaryResult = std::variant<TrivializerWitness, ObstructionCertificate>;

// Decides triviality of z in the target net: propagates trivializer
// candidates along a spanning tree and solves for the one remaining gauge
// degree of freedom; on failure returns the localization/charge obstruction.
CoboundaryResult coboundary_feasibility(const AmbientSpace& ambient,
                                        const Cocycle1& z, SpaceTag target_tag,
                                        size_t tree_root = 0);

// Intrinsic net charge of a cocycle, read off a far transport.
ChargePair cocycle_charge(const Cocycle1& z);

// Intersection of the local spaces over the whole poset.
SymplecticSubspace z0(const AmbientSpace& ambient, const NetSpec& spec);

}  // namespace netcoh
