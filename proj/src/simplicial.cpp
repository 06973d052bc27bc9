#include "netcoh/simplicial.hpp"

#include <algorithm>
#include <functional>

namespace netcoh {

IndexElement minimal_support(const std::vector<IndexElement>& parts,
                             const CausalPoset& poset) {
  const IndexElement* best = nullptr;
  for (const auto& o : poset.elements) {
    bool covers = true;
    for (const auto& part : parts)
      if (!leq(part, o)) { covers = false; break; }
    if (!covers) continue;
    if (best == nullptr || leq(o, *best)) best = &o;
  }
  if (best == nullptr) throw NoCommonSupport();
  return *best;
}

Simplex1 canonical_simplex1(const IndexElement& a0, const IndexElement& a1,
                            const CausalPoset& poset) {
  Simplex1 b;
  b.support = minimal_support({a0, a1}, poset);
  b.d0 = Simplex0::at(a1);
  b.d1 = Simplex0::at(a0);
  return b;
}

SupportTable::SupportTable(const CausalPoset& poset) : poset_(&poset) {
  const auto& es = poset.elements;
  const size_t n = es.size();
  min_support_.assign(n * n, -1);
  // containment lists: for each element, the elements containing it
  std::vector<std::vector<int32_t>> above(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (leq(es[i], es[j])) above[i].push_back((int32_t)j);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) {
      int32_t best = -1;
      // merge scan over the two sorted containment lists
      size_t pi = 0, pj = 0;
      while (pi < above[i].size() && pj < above[j].size()) {
        if (above[i][pi] == above[j][pj]) {
          const int32_t cand = above[i][pi];
          if (best < 0 || leq(es[cand], es[best])) best = cand;
          ++pi;
          ++pj;
        } else if (above[i][pi] < above[j][pj]) {
          ++pi;
        } else {
          ++pj;
        }
      }
      min_support_[i * n + j] = best;
      min_support_[j * n + i] = best;
    }
}

int32_t SupportTable::min_support_index(size_t i, size_t j) const {
  return min_support_[i * poset_->elements.size() + j];
}

std::vector<Simplex0> enumerate_simplices0(const CausalPoset& poset,
                                           SupportPolicy policy,
                                           size_t max_count) {
  std::vector<Simplex0> out;
  for (const auto& o : poset.elements) {
    if (policy == SupportPolicy::Minimal) {
      out.push_back(Simplex0::at(o));
      if (out.size() >= max_count) return out;
    } else {
      for (const auto& sup : poset.elements) {
        if (!leq(o, sup)) continue;
        out.push_back({o, sup});
        if (out.size() >= max_count) return out;
      }
    }
  }
  return out;
}

std::vector<Simplex1> enumerate_simplices1(const CausalPoset& poset,
                                           SupportPolicy policy,
                                           size_t max_count) {
  std::vector<Simplex1> out;
  const SupportTable table(poset);
  const auto& es = poset.elements;
  for (size_t i = 0; i < es.size(); ++i)
    for (size_t j = 0; j < es.size(); ++j) {
      if (policy == SupportPolicy::Minimal) {
        const int32_t s = table.min_support_index(i, j);
        if (s < 0) continue;
        Simplex1 b;
        b.support = es[s];
        b.d0 = Simplex0::at(es[j]);
        b.d1 = Simplex0::at(es[i]);
        out.push_back(std::move(b));
        if (out.size() >= max_count) return out;
      } else {
        for (const auto& sup : es) {
          if (!leq(es[i], sup) || !leq(es[j], sup)) continue;
          Simplex1 b;
          b.support = sup;
          b.d0 = Simplex0::at(es[j]);
          b.d1 = Simplex0::at(es[i]);
          out.push_back(std::move(b));
          if (out.size() >= max_count) return out;
        }
      }
    }
  return out;
}

std::vector<Simplex2> enumerate_simplices2(const CausalPoset& poset,
                                           SupportPolicy policy,
                                           size_t max_count) {
  (void)policy;  // faces always canonical; support minimal over the faces
  std::vector<Simplex2> out;
  const SupportTable table(poset);
  const auto& es = poset.elements;
  const size_t n = es.size();
  auto edge = [&](size_t i, size_t j, Simplex1& b) -> bool {
    const int32_t s = table.min_support_index(i, j);
    if (s < 0) return false;
    b.support = es[s];
    b.d0 = Simplex0::at(es[j]);
    b.d1 = Simplex0::at(es[i]);
    return true;
  };
  for (size_t v0 = 0; v0 < n; ++v0)
    for (size_t v1 = 0; v1 < n; ++v1)
      for (size_t v2 = 0; v2 < n; ++v2) {
        Simplex2 c;
        if (!edge(v0, v1, c.d2) || !edge(v1, v2, c.d0) || !edge(v0, v2, c.d1))
          continue;
        try {
          c.support =
              minimal_support({c.d0.support, c.d1.support, c.d2.support}, poset);
        } catch (const NoCommonSupport&) {
          continue;
        }
        out.push_back(std::move(c));
        if (out.size() >= max_count) return out;
      }
  return out;
}

bool face_compatible(const Simplex2& c) {
  if (!(c.d2.d1 == c.d1.d1)) return false;  // v0
  if (!(c.d2.d0 == c.d0.d1)) return false;  // v1
  if (!(c.d0.d0 == c.d1.d0)) return false;  // v2
  if (!leq(c.d0.support, c.support) || !leq(c.d1.support, c.support) ||
      !leq(c.d2.support, c.support))
    return false;
  return true;
}

std::vector<Path> enumerate_paths(const Simplex0& start, const Simplex0& end,
                                  const CausalPoset& poset, size_t max_len) {
  std::vector<Path> out;
  if (max_len == 0) return out;
  const SupportTable table(poset);
  const auto& es = poset.elements;
  const auto i_start = poset.index_of(start.body);
  const auto i_end = poset.index_of(end.body);
  if (!i_start || !i_end) throw ElementNotInPoset();

  std::vector<size_t> chain{*i_start};
  auto make_path = [&](const std::vector<size_t>& vs) {
    Path p;
    for (size_t i = 1; i < vs.size(); ++i) {
      const int32_t s = table.min_support_index(vs[i - 1], vs[i]);
      Simplex1 b;
      b.support = es[s];
      b.d0 = Simplex0::at(es[vs[i]]);
      b.d1 = Simplex0::at(es[vs[i - 1]]);
      p.edges.push_back(std::move(b));
    }
    return p;
  };

  std::function<void()> extend = [&]() {
    // close the chain with the end vertex when possible
    if (table.min_support_index(chain.back(), *i_end) >= 0) {
      std::vector<size_t> vs = chain;
      vs.push_back(*i_end);
      out.push_back(make_path(vs));
    }
    if (chain.size() >= max_len) return;  // next edge would exceed max_len
    for (size_t v = 0; v < es.size(); ++v) {
      if (table.min_support_index(chain.back(), v) < 0) continue;
      chain.push_back(v);
      extend();
      chain.pop_back();
    }
  };
  extend();
  return out;
}

std::pair<Simplex0, Simplex0> path_boundary(const Path& p) {
  return {p.start(), p.end()};
}

Path path_reverse(const Path& p) {
  Path r;
  for (auto it = p.edges.rbegin(); it != p.edges.rend(); ++it) {
    Simplex1 b = *it;
    std::swap(b.d0, b.d1);
    r.edges.push_back(std::move(b));
  }
  return r;
}

Path path_compose(const Path& p, const Path& q) {
  if (!(p.end() == q.start())) throw NonComposable();
  Path r = p;
  r.edges.insert(r.edges.end(), q.edges.begin(), q.edges.end());
  return r;
}

}  // namespace netcoh
