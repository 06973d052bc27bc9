#include "netcoh/poset.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace netcoh {

IndexElement IndexElement::interval(const Rat& a, const Rat& b) {
  if (!(a < b)) throw Error("interval needs a < b");
  IndexElement e;
  e.kind = Kind::Interval;
  e.a = a;
  e.b = b;
  return e;
}

IndexElement IndexElement::double_interval(const Rat& a1, const Rat& b1,
                                           const Rat& a2, const Rat& b2) {
  if (!(a1 < b1) || !(a2 < b2)) throw Error("double interval components need a < b");
  if (!(b1 < a2)) throw Error("double interval components must have disjoint closures");
  IndexElement e;
  e.kind = Kind::DoubleInterval;
  e.a = a1;
  e.b = b1;
  e.a2 = a2;
  e.b2 = b2;
  return e;
}

IndexElement IndexElement::half_line_left(const Rat& b) {
  IndexElement e;
  e.kind = Kind::HalfLineLeft;
  e.b = b;
  return e;
}

IndexElement IndexElement::half_line_right(const Rat& a) {
  IndexElement e;
  e.kind = Kind::HalfLineRight;
  e.a = a;
  return e;
}

std::vector<IndexElement::Component> IndexElement::components() const {
  switch (kind) {
    case Kind::Interval: return {{false, false, a, b}};
    case Kind::DoubleInterval: return {{false, false, a, b}, {false, false, a2, b2}};
    case Kind::HalfLineLeft: return {{true, false, Rat(0), b}};
    case Kind::HalfLineRight: return {{false, true, a, Rat(0)}};
  }
  return {};
}

Rat IndexElement::inf() const {
  if (!bounded_below()) throw Error("unbounded below");
  return a;
}

Rat IndexElement::sup() const {
  if (!bounded_above()) throw Error("unbounded above");
  return kind == Kind::DoubleInterval ? b2 : b;
}

std::string IndexElement::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Interval:
      os << "(" << format_rat(a) << "," << format_rat(b) << ")";
      break;
    case Kind::DoubleInterval:
      os << "(" << format_rat(a) << "," << format_rat(b) << ")u("
         << format_rat(a2) << "," << format_rat(b2) << ")";
      break;
    case Kind::HalfLineLeft:
      os << "(-inf," << format_rat(b) << ")";
      break;
    case Kind::HalfLineRight:
      os << "(" << format_rat(a) << ",+inf)";
      break;
  }
  return os.str();
}

bool IndexElement::operator==(const IndexElement& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::Interval: return a == o.a && b == o.b;
    case Kind::DoubleInterval:
      return a == o.a && b == o.b && a2 == o.a2 && b2 == o.b2;
    case Kind::HalfLineLeft: return b == o.b;
    case Kind::HalfLineRight: return a == o.a;
  }
  return false;
}

bool IndexElement::operator<(const IndexElement& o) const {
  if (kind != o.kind) return kind < o.kind;
  auto key = [](const IndexElement& e) {
    switch (e.kind) {
      case Kind::Interval: return std::vector<Rat>{e.a, e.b};
      case Kind::DoubleInterval: return std::vector<Rat>{e.a, e.b, e.a2, e.b2};
      case Kind::HalfLineLeft: return std::vector<Rat>{e.b};
      case Kind::HalfLineRight: return std::vector<Rat>{e.a};
    }
    return std::vector<Rat>{};
  };
  return key(*this) < key(o);
}

namespace {

// component c1 subset of component c2 (open sets)
bool comp_leq(const IndexElement::Component& c1, const IndexElement::Component& c2) {
  if (c1.unbounded_left && !c2.unbounded_left) return false;
  if (c1.unbounded_right && !c2.unbounded_right) return false;
  const bool lo_ok = c2.unbounded_left || (!c1.unbounded_left && c2.lo <= c1.lo);
  const bool hi_ok = c2.unbounded_right || (!c1.unbounded_right && c1.hi <= c2.hi);
  if (!c1.unbounded_left && !c1.unbounded_right && !(c1.lo < c1.hi)) return true;
  return lo_ok && hi_ok;
}

bool comp_disjoint(const IndexElement::Component& c1, const IndexElement::Component& c2) {
  // open sets: (a,b) and (b,c) are disjoint
  const bool c1_left_of_c2 = !c1.unbounded_right && !c2.unbounded_left && c1.hi <= c2.lo;
  const bool c2_left_of_c1 = !c2.unbounded_right && !c1.unbounded_left && c2.hi <= c1.lo;
  return c1_left_of_c2 || c2_left_of_c1;
}

}  // namespace

bool leq(const IndexElement& o1, const IndexElement& o2) {
  for (const auto& c1 : o1.components()) {
    bool ok = false;
    for (const auto& c2 : o2.components())
      if (comp_leq(c1, c2)) { ok = true; break; }
    if (!ok) return false;
  }
  return true;
}

bool disjoint(const IndexElement& o1, const IndexElement& o2) {
  for (const auto& c1 : o1.components())
    for (const auto& c2 : o2.components())
      if (!comp_disjoint(c1, c2)) return false;
  return true;
}

bool before(const IndexElement& o1, const IndexElement& o2) {
  if (!o1.bounded_above() || !o2.bounded_below()) return false;
  return o1.sup() <= o2.inf();
}

const char* poset_kind_name(PosetKind k) {
  switch (k) {
    case PosetKind::I: return "I";
    case PosetKind::I2: return "I2";
    case PosetKind::D: return "D";
    case PosetKind::J: return "J";
  }
  return "?";
}

std::optional<PosetKind> poset_kind_from_name(const std::string& name) {
  for (PosetKind k : {PosetKind::I, PosetKind::I2, PosetKind::D, PosetKind::J})
    if (name == poset_kind_name(k)) return k;
  return std::nullopt;
}

std::optional<size_t> CausalPoset::index_of(const IndexElement& o) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), o);
  if (it != elements.end() && *it == o) return (size_t)(it - elements.begin());
  return std::nullopt;
}

CausalPoset build_poset(PosetKind kind, const Rat& lo, const Rat& hi,
                        const Rat& step, size_t max_elements) {
  if (!(lo < hi) || !(step > 0)) throw Error("poset window needs lo < hi, step > 0");
  const Rat cells_q = (hi - lo) / step;
  if (!is_integer(cells_q) || to_long(cells_q) < 4)
    throw Error("window length must be an integer multiple of step, at least 4 cells");
  const long n = to_long(cells_q);
  auto node = [&](long k) { return lo + Rat(k) * step; };

  CausalPoset p;
  p.kind = kind;
  p.lo = lo;
  p.hi = hi;
  p.step = step;

  auto push = [&](IndexElement e) {
    if (p.elements.size() >= max_elements) throw TooManyElements();
    p.elements.push_back(std::move(e));
  };

  const bool want_i = kind == PosetKind::I || kind == PosetKind::D;
  const bool want_i2 = kind == PosetKind::I2 || kind == PosetKind::D;
  if (want_i)
    for (long i = 0; i < n; ++i)
      for (long j = i + 1; j <= n; ++j)
        push(IndexElement::interval(node(i), node(j)));
  if (want_i2)
    for (long i = 0; i < n; ++i)
      for (long j = i + 1; j < n; ++j)
        for (long k = j + 1; k < n; ++k)
          for (long l = k + 1; l <= n; ++l)
            push(IndexElement::double_interval(node(i), node(j), node(k), node(l)));
  if (kind == PosetKind::J) {
    for (long j = 1; j <= n; ++j) push(IndexElement::half_line_left(node(j)));
    for (long i = 0; i < n; ++i) push(IndexElement::half_line_right(node(i)));
  }
  std::sort(p.elements.begin(), p.elements.end());
  return p;
}

std::vector<ComplementPiece> causal_complement(const IndexElement& o,
                                               const Rat& window_lo,
                                               const Rat& window_hi) {
  if (o.is_half_line()) throw Error("complement pieces defined for bounded elements");
  std::vector<ComplementPiece> out;
  const Rat left_end = o.a;
  out.push_back({window_lo, std::max(window_lo, left_end), true, false});
  if (o.is_double()) out.push_back({o.b, o.a2, false, false});
  const Rat right_end = o.is_double() ? o.b2 : o.b;
  out.push_back({std::min(window_hi, right_end), window_hi, false, true});
  // clip degenerate ends: a piece of zero width at the window edge is empty
  for (auto& piece : out) {
    if (piece.unbounded_left && piece.hi <= window_lo) {
      piece.lo = piece.hi = window_lo;
      piece.unbounded_left = false;  // nothing of the true piece is visible or relevant
    }
    if (piece.unbounded_right && piece.lo >= window_hi) {
      piece.lo = piece.hi = window_hi;
      piece.unbounded_right = false;
    }
  }
  return out;
}

DisjointSieve disjoint_sieve(const IndexElement& o, const CausalPoset& poset) {
  if (!poset.contains(o)) throw ElementNotInPoset();
  DisjointSieve s;
  for (const auto& e : poset.elements) {
    if (!disjoint(e, o)) continue;
    if (before(e, o)) s.left.push_back(e);
    else if (before(o, e)) s.right.push_back(e);
    else s.other.push_back(e);
  }
  return s;
}

bool is_directed(const CausalPoset& poset) {
  const auto& es = poset.elements;
  for (size_t i = 0; i < es.size(); ++i)
    for (size_t j = i + 1; j < es.size(); ++j) {
      bool found = false;
      for (const auto& ub : es)
        if (leq(es[i], ub) && leq(es[j], ub)) { found = true; break; }
      if (!found) return false;
    }
  return true;
}

namespace {

struct UnionFind {
  std::vector<size_t> parent;
  explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  size_t find(size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(size_t a, size_t b) { parent[find(a)] = find(b); }
  size_t count() {
    size_t c = 0;
    for (size_t i = 0; i < parent.size(); ++i)
      if (find(i) == i) ++c;
    return c;
  }
};

}  // namespace

bool is_connected(const CausalPoset& poset) {
  const auto& es = poset.elements;
  if (es.empty()) return true;
  UnionFind uf(es.size());
  for (size_t i = 0; i < es.size(); ++i)
    for (size_t j = i + 1; j < es.size(); ++j) {
      bool adjacent = false;
      for (const auto& sup : es)
        if (leq(es[i], sup) && leq(es[j], sup)) { adjacent = true; break; }
      if (adjacent) uf.unite(i, j);
    }
  return uf.count() == 1;
}

bool is_cofinal(const std::vector<IndexElement>& sub, const CausalPoset& super) {
  for (const auto& e : super.elements) {
    bool covered = false;
    for (const auto& s : sub)
      if (leq(e, s)) { covered = true; break; }
    if (!covered) return false;
  }
  return true;
}

BotGraph bot_graph(const CausalPoset& poset) {
  // Vertices: ordered disjoint pairs. The oriented sub-graphs G< and G> are
  // what the paper identifies as the two components; interleaved
  // double-interval pairs fall in neither and are reported as mixed.
  const auto& es = poset.elements;
  const size_t n = es.size();
  struct Pair { size_t i, j; };
  std::vector<Pair> less, greater;
  BotGraph g;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (i == j || !disjoint(es[i], es[j])) continue;
      if (before(es[i], es[j])) less.push_back({i, j});
      else if (before(es[j], es[i])) greater.push_back({i, j});
      else ++g.mixed_pairs;
    }
  g.less_pairs = less.size();
  g.greater_pairs = greater.size();

  // Connectivity under the product order, moving one coordinate at a time
  // (one-coordinate moves generate the same components as comparability).
  auto component_count = [&](const std::vector<Pair>& pairs) -> size_t {
    if (pairs.empty()) return 0;
    UnionFind uf(pairs.size());
    // bucket by each coordinate
    std::vector<std::vector<size_t>> by_first(n), by_second(n);
    for (size_t k = 0; k < pairs.size(); ++k) {
      by_first[pairs[k].i].push_back(k);
      by_second[pairs[k].j].push_back(k);
    }
    for (size_t k = 0; k < pairs.size(); ++k) {
      for (size_t m : by_first[pairs[k].i])
        if (m != k && (leq(es[pairs[k].j], es[pairs[m].j]) || leq(es[pairs[m].j], es[pairs[k].j])))
          uf.unite(k, m);
      for (size_t m : by_second[pairs[k].j])
        if (m != k && (leq(es[pairs[k].i], es[pairs[m].i]) || leq(es[pairs[m].i], es[pairs[k].i])))
          uf.unite(k, m);
    }
    return uf.count();
  };

  const size_t cl = component_count(less);
  const size_t cg = component_count(greater);
  g.less_connected = cl <= 1;
  g.greater_connected = cg <= 1;
  g.component_count = cl + cg;
  return g;
}

IndexElement apply_inversion(const IndexElement& o) {
  switch (o.kind) {
    case IndexElement::Kind::Interval:
      return IndexElement::interval(-o.b, -o.a);
    case IndexElement::Kind::DoubleInterval:
      return IndexElement::double_interval(-o.b2, -o.a2, -o.b, -o.a);
    case IndexElement::Kind::HalfLineLeft:
      return IndexElement::half_line_right(-o.b);
    case IndexElement::Kind::HalfLineRight:
      return IndexElement::half_line_left(-o.a);
  }
  throw Error("bad element");
}

bool flip_check(const CausalPoset& poset) {
  if (poset.lo != -poset.hi) throw WindowNotSymmetric();
  const auto& es = poset.elements;
  for (size_t i = 0; i < es.size(); ++i)
    for (size_t j = 0; j < es.size(); ++j) {
      if (i == j || !disjoint(es[i], es[j])) continue;
      const IndexElement si = apply_inversion(es[i]);
      const IndexElement sj = apply_inversion(es[j]);
      if (!poset.contains(si) || !poset.contains(sj)) return false;
      if (before(es[i], es[j]) != before(sj, si)) return false;
      if (before(es[j], es[i]) != before(si, sj)) return false;
    }
  return true;
}

}  // namespace netcoh
