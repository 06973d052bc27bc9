#pragma once

#include <vector>

#include "netcoh/poset.hpp"

namespace netcoh {

struct NoCommonSupport : Error {
  NoCommonSupport() : Error("no poset element contains both faces") {}
};
struct NonComposable : Error {
  NonComposable() : Error("paths do not chain") {}
};

struct Simplex0 {
  IndexElement body;
  IndexElement support;  // body subset support

  static Simplex0 at(const IndexElement& o) { return {o, o}; }
  bool operator==(const Simplex0& o) const {
    return body == o.body && support == o.support;
  }
};

// Oriented edge: source d1, target d0, both inside the support.
struct Simplex1 {
  IndexElement support;
  Simplex0 d0, d1;

  bool operator==(const Simplex1& o) const {
    return support == o.support && d0 == o.d0 && d1 == o.d1;
  }
};

// Triangle over vertices (v0, v1, v2): d2 = v0->v1, d0 = v1->v2, d1 = v0->v2.
struct Simplex2 {
  IndexElement support;
  Simplex1 d0, d1, d2;
};

struct Path {
  std::vector<Simplex1> edges;  // d1(edges[0]) = start, d0(edges[i]) = d1(edges[i+1])

  const Simplex0& start() const { return edges.front().d1; }
  const Simplex0& end() const { return edges.back().d0; }
};

enum class SupportPolicy { Minimal, All };

// The 1-simplex over (a0, a1) with the inclusion-minimal support containing
// both, ties broken by enumeration order. Faces carry themselves as supports.
Simplex1 canonical_simplex1(const IndexElement& a0, const IndexElement& a1,
                            const CausalPoset& poset);

// Precomputed minimal common supports for all element pairs (-1: none).
class SupportTable {
 public:
  explicit SupportTable(const CausalPoset& poset);
  int32_t min_support_index(size_t i, size_t j) const;
  const CausalPoset& poset() const { return *poset_; }

 private:
  const CausalPoset* poset_;
  std::vector<int32_t> min_support_;
};

// Minimal support over a set of elements; throws NoCommonSupport.
IndexElement minimal_support(const std::vector<IndexElement>& parts,
                             const CausalPoset& poset);

std::vector<Simplex0> enumerate_simplices0(const CausalPoset& poset,
                                           SupportPolicy policy,
                                           size_t max_count);
std::vector<Simplex1> enumerate_simplices1(const CausalPoset& poset,
                                           SupportPolicy policy,
                                           size_t max_count);
std::vector<Simplex2> enumerate_simplices2(const CausalPoset& poset,
                                           SupportPolicy policy,
                                           size_t max_count);

bool face_compatible(const Simplex2& c);

// All chained canonical-support paths from start to end of length <= max_len,
// deduplicated by their vertex sequence.
std::vector<Path> enumerate_paths(const Simplex0& start, const Simplex0& end,
                                  const CausalPoset& poset, size_t max_len);

std::pair<Simplex0, Simplex0> path_boundary(const Path& p);  // (start, end)
Path path_reverse(const Path& p);
Path path_compose(const Path& p, const Path& q);  // end(p) must equal start(q)

}  // namespace netcoh
