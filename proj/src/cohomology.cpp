#include "netcoh/cohomology.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace netcoh {

namespace {

bool loc_inside(const TestPair& F, const IndexElement& o) {
  const auto pieces = localization(F);
  const auto comps = o.components();
  for (const auto& piece : pieces) {
    bool ok = false;
    for (const auto& c : comps) {
      const bool lo_ok = c.unbounded_left || c.lo <= piece.a;
      const bool hi_ok = c.unbounded_right || piece.b <= c.hi;
      if (lo_ok && hi_ok) { ok = true; break; }
    }
    if (!ok) return false;
  }
  return true;
}

}  // namespace

Cocycle1::Cocycle1(const CausalPoset& poset) : poset_(&poset) {
  const size_t n = poset.elements.size();
  entries_.assign(n * n, WeylElement::identity());
  edge_ok_.assign(n * n, 0);
  const SupportTable table(poset);
  for (size_t s = 0; s < n; ++s)
    for (size_t t = 0; t < n; ++t)
      edge_ok_[s * n + t] = table.min_support_index(s, t) >= 0;
}

const WeylElement& Cocycle1::at(size_t s, size_t t) const {
  if (!has_edge(s, t)) throw Error("no canonical 1-simplex for this pair");
  return entries_[s * size() + t];
}

WeylElement& Cocycle1::at(size_t s, size_t t) {
  if (!has_edge(s, t)) throw Error("no canonical 1-simplex for this pair");
  return entries_[s * size() + t];
}

namespace {

// Representative interval inside an element: the element itself, or the
// first component of a double interval that is wide enough.
IndexElement rep_interval(const IndexElement& e, const Rat& step) {
  if (e.is_interval()) {
    if (e.b - e.a < 2 * step) throw RepresentativeDoesNotFit();
    return e;
  }
  if (e.is_double()) {
    if (e.b - e.a >= 2 * step) return IndexElement::interval(e.a, e.b);
    if (e.b2 - e.a2 >= 2 * step) return IndexElement::interval(e.a2, e.b2);
    throw RepresentativeDoesNotFit();
  }
  throw RepresentativeDoesNotFit();
}

}  // namespace

Cocycle1 induced_cocycle(const AmbientSpace& ambient, const ChargePair& charge,
                         const CausalPoset& poset, GradedSide side) {
  const TailConvention conv = side == GradedSide::Left
                                  ? TailConvention::RightTailZero
                                  : TailConvention::LeftTailZero;
  const size_t n = poset.elements.size();
  std::vector<WeylElement> reps(n);
  for (size_t i = 0; i < n; ++i)
    reps[i] = WeylElement::of(
        canonical_representative(charge, rep_interval(poset.elements[i], ambient.step()),
                                 conv, ambient.step())
            .representative);
  Cocycle1 z(poset);
  for (size_t s = 0; s < n; ++s)
    for (size_t t = 0; t < n; ++t)
      if (z.has_edge(s, t))
        z.at(s, t) = weyl_mul(reps[t], weyl_inverse(reps[s]));
  z.provenance_charge = charge;
  z.provenance_convention = conv;
  return z;
}

CocycleReport check_cocycle(const Cocycle1& z, const AmbientSpace* ambient,
                            bool strict, SpaceTag strict_tag) {
  CocycleReport rep;
  const auto& poset = z.poset();
  const auto& es = poset.elements;
  const size_t n = es.size();
  const SupportTable table(poset);

  for (size_t s = 0; s < n; ++s)
    for (size_t t = 0; t < n; ++t) {
      if (!z.has_edge(s, t)) continue;
      ++rep.edges_checked;
      const IndexElement& sup = es[table.min_support_index(s, t)];
      if (!loc_inside(z.at(s, t).F, sup)) {
        ++rep.locality_violations;
        if (!rep.first_bad_edge) rep.first_bad_edge = {s, t};
      }
    }

  // The poset needs a top element for every edge triple to form a canonical
  // 2-simplex; the window posets used here have one.
  for (size_t v0 = 0; v0 < n; ++v0)
    for (size_t v1 = 0; v1 < n; ++v1) {
      if (!z.has_edge(v0, v1)) continue;
      for (size_t v2 = 0; v2 < n; ++v2) {
        if (!z.has_edge(v1, v2) || !z.has_edge(v0, v2)) continue;
        ++rep.triangles_checked;
        if (weyl_mul(z.at(v1, v2), z.at(v0, v1)) != z.at(v0, v2)) {
          ++rep.identity_violations;
          if (!rep.first_bad_edge) rep.first_bad_edge = {v0, v2};
        }
      }
    }

  if (strict && ambient != nullptr) {
    for (size_t s = 0; s < n; ++s)
      for (size_t t = 0; t < n; ++t) {
        if (!z.has_edge(s, t)) continue;
        for (const auto& o : es) {
          if (!disjoint(o, es[s]) || !disjoint(o, es[t])) continue;
          const auto local =
              materialize(*ambient, strict_tag, LocTarget::of(o));
          for (const auto& G : local.generators())
            if (sgn(adjoint_phase(z.at(s, t).F, G)) != 0) ++rep.strict_violations;
        }
      }
  }
  return rep;
}

namespace {

// Solves stack^T alpha = target and splits alpha by row blocks. Returns
// per-block vectors (as coordinate rows); throws if the target is outside.
std::vector<VecQ> decompose_over(const std::vector<MatQ>& blocks,
                                 const VecQ& target) {
  Eigen::Index total = 0;
  for (const auto& b : blocks) total += b.rows();
  const Eigen::Index dim = target.size();
  MatQ aug(dim, total + 1);
  Eigen::Index at = 0;
  for (const auto& b : blocks) {
    aug.middleCols(at, b.rows()) = b.transpose();
    at += b.rows();
  }
  aug.col(total) = target;
  MatQ work = aug;
  auto pivots = rref_in_place(work);
  VecQ alpha = VecQ::Zero(total);
  for (size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == total) throw Error("decomposition target outside the span");
    alpha(pivots[i]) = work(i, total);
  }
  std::vector<VecQ> out;
  at = 0;
  for (const auto& b : blocks) {
    VecQ part = VecQ::Zero(dim);
    for (Eigen::Index r = 0; r < b.rows(); ++r)
      if (sgn(alpha(at + r)) != 0) part += alpha(at + r) * b.row(r).transpose();
    out.push_back(std::move(part));
    at += b.rows();
  }
  return out;
}

}  // namespace

ConditionAAResult condition_aa(const AmbientSpace& ambient, const NetSpec& spec,
                               const IndexElement& a0, const IndexElement& a1,
                               size_t max_len) {
  const CausalPoset& poset = *spec.poset;
  const auto i0 = poset.index_of(a0), i1 = poset.index_of(a1);
  if (!i0 || !i1) throw ElementNotInPoset();

  ConditionAAResult res;
  const auto n0 = materialize(ambient, spec.tag, LocTarget::of(a0));
  const auto n1 = materialize(ambient, spec.tag, LocTarget::of(a1));
  res.join_space = join({n0, n1});

  const SupportTable table(poset);
  const size_t n = poset.elements.size();

  // local spaces cached per support index
  std::vector<std::optional<SymplecticSubspace>> local(n);
  auto local_at = [&](size_t idx) -> const SymplecticSubspace& {
    if (!local[idx])
      local[idx] = materialize(ambient, spec.tag, LocTarget::of(poset.elements[idx]));
    return *local[idx];
  };

  // enumerate chains, dedup support sets
  std::set<std::vector<size_t>> support_sets;
  std::vector<size_t> chain{*i0};
  std::function<void()> extend = [&]() {
    const int32_t close = table.min_support_index(chain.back(), *i1);
    if (close >= 0) {
      std::vector<size_t> sup;
      for (size_t i = 1; i < chain.size(); ++i)
        sup.push_back((size_t)table.min_support_index(chain[i - 1], chain[i]));
      sup.push_back((size_t)close);
      std::sort(sup.begin(), sup.end());
      sup.erase(std::unique(sup.begin(), sup.end()), sup.end());
      support_sets.insert(std::move(sup));
      ++res.paths_enumerated;
    }
    if (chain.size() >= max_len) return;
    for (size_t v = 0; v < n; ++v) {
      if (table.min_support_index(chain.back(), v) < 0) continue;
      chain.push_back(v);
      extend();
      chain.pop_back();
    }
  };
  extend();
  res.distinct_support_sets = support_sets.size();

  bool first = true;
  SymplecticSubspace x;
  for (const auto& sup : support_sets) {
    std::vector<SymplecticSubspace> parts;
    for (size_t idx : sup) parts.push_back(local_at(idx));
    const SymplecticSubspace path_space = join(parts);
    x = first ? path_space : intersect({x, path_space});
    first = false;
    if (x == res.join_space) break;  // cannot shrink below the join
  }
  res.intersection_space = x;
  res.holds = (x == res.join_space);
  if (res.holds) return res;

  // pick a witness outside the join, preferring a pure-field direction
  std::optional<VecQ> witness;
  for (Eigen::Index r = 0; r < x.basis().rows(); ++r) {
    const RowQ row = x.basis().row(r);
    if (in_row_space(res.join_space.basis(), row)) continue;
    bool pure_f1 = true;
    for (long k = 1; k <= ambient.cells() - 1; ++k)
      if (sgn(row(ambient.f0_coord(k))) != 0) { pure_f1 = false; break; }
    if (pure_f1) { witness = row.transpose(); break; }
    if (!witness) witness = row.transpose();
  }
  if (!witness) return res;  // should not happen: x != join
  res.witness = ambient.from_coordinates(*witness);

  // certify: the witness decomposes along every enumerated support chain
  res.witness_certified = true;
  for (const auto& sup : support_sets) {
    std::vector<MatQ> blocks;
    for (size_t idx : sup) blocks.push_back(local_at(idx).basis());
    try {
      const auto parts = decompose_over(blocks, *witness);
      VecQ sum = VecQ::Zero(ambient.dim());
      for (size_t i = 0; i < parts.size(); ++i) {
        sum += parts[i];
        if (!local_at(sup[i]).contains(parts[i])) res.witness_certified = false;
      }
      if (sum != *witness) res.witness_certified = false;
    } catch (const Error&) {
      res.witness_certified = false;
    }
  }
  return res;
}

std::vector<PiecewiseLinear> chain_decompose(const PiecewiseLinear& f0,
                                             const std::vector<IndexElement>& chain,
                                             const Rat& step) {
  if (chain.empty()) throw Error("empty chain");
  for (const auto& c : chain)
    if (!c.is_interval()) throw Error("chain elements must be intervals");
  if (!f0.compact_support()) throw Error("f0 must have compact support");
  if (sgn(f0.integral()) != 0) throw Error("f0 must have zero total integral");
  for (size_t i = 1; i < chain.size(); ++i) {
    const Rat p = std::max(chain[i - 1].a, chain[i].a);
    const Rat q = std::min(chain[i - 1].b, chain[i].b);
    if (q - p < step) throw NoOverlap();
  }

  // nodal grid covering the support
  std::vector<Rat> nodes;
  {
    const Rat lo = std::min(f0.breakpoints().front(), chain.front().a);
    const Rat hi = std::max(f0.breakpoints().back(), chain.back().b);
    for (Rat x = lo; x <= hi; x += step) nodes.push_back(x);
    for (const auto& bp : f0.breakpoints())
      if (!is_integer((bp - lo) / step))
        throw Error("f0 breakpoints must sit on the chain grid");
  }

  // assign nonzero nodes to the first chain element able to host their hats
  const size_t m = chain.size();
  std::vector<std::vector<Rat>> part_values(m, std::vector<Rat>(nodes.size(), Rat(0)));
  for (size_t k = 0; k < nodes.size(); ++k) {
    const Rat v = f0(nodes[k]);
    if (sgn(v) == 0) continue;
    bool placed = false;
    for (size_t i = 0; i < m; ++i) {
      if (chain[i].a <= nodes[k] - step && nodes[k] + step <= chain[i].b) {
        part_values[i][k] = v;
        placed = true;
        break;
      }
    }
    if (!placed) throw SupportNotCovered();
  }

  auto make_part = [&](const std::vector<Rat>& vals) {
    return PiecewiseLinear(nodes, vals);
  };
  std::vector<PiecewiseLinear> parts;
  for (size_t i = 0; i < m; ++i) parts.push_back(make_part(part_values[i]));

  // telescoping bumps in consecutive overlaps
  std::vector<PiecewiseLinear> out;
  Rat running = 0;
  PiecewiseLinear prev_bump = PiecewiseLinear::constant(0);
  for (size_t i = 0; i < m; ++i) {
    PiecewiseLinear g = pl_combine(1, parts[i], running, prev_bump);
    const Rat mass = g.integral();
    if (i + 1 < m) {
      running = mass;  // == running_old + integral(part_i)
      if (sgn(running) != 0) {
        const Rat p = std::max(chain[i].a, chain[i + 1].a);
        const Rat q = std::min(chain[i].b, chain[i + 1].b);
        if (q - p < 2 * step) throw NoOverlap();
        // unit-integral tent at a grid node inside the overlap
        const long cells = to_long((q - p) / step);
        const Rat apex = p + Rat(cells / 2 > 0 ? cells / 2 : 1) * step;
        PiecewiseLinear tent({apex - step, apex, apex + step},
                             {Rat(0), Rat(1) / step, Rat(0)});
        prev_bump = tent;
        g = pl_combine(1, g, -running, tent);
      } else {
        prev_bump = PiecewiseLinear::constant(0);
      }
    }
    out.push_back(std::move(g));
  }
  return out;
}

ChargePair cocycle_charge(const Cocycle1& z) {
  if (z.provenance_charge) return *z.provenance_charge;
  const auto& es = z.poset().elements;
  for (size_t i = 0; i < es.size(); ++i)
    for (size_t j = 0; j < es.size(); ++j) {
      if (i == j || !z.has_edge(i, j)) continue;
      if (!before(es[i], es[j]) || !(es[i].sup() < es[j].inf())) continue;
      const TestPair& T = z.at(i, j).F;
      const Rat x0 = es[i].sup();
      // charge of the target-side half of the transport
      Rat c_right = 0;
      {
        const auto& xs = T.f0.breakpoints();
        const auto& ys = T.f0.values();
        for (size_t k = 1; k < xs.size(); ++k) {
          if (xs[k] <= x0) continue;
          const Rat s = std::max(xs[k - 1], x0);
          const Rat fs = T.f0(s), ft = ys[k];
          c_right += (xs[k] - s) * (fs + ft) / 2;
        }
      }
      const Rat q_right = T.f1.right_tail() - T.f1(x0);
      return {c_right, q_right};
    }
  return {Rat(0), Rat(0)};
}

namespace {

bool charge_allowed(SpaceTag tag, const ChargePair& ch) {
  const bool c0 = sgn(ch.c) == 0, q0 = sgn(ch.q) == 0;
  switch (tag) {
    case SpaceTag::Va:
    case SpaceTag::Vb: return c0 && q0;
    case SpaceTag::Vc:
    case SpaceTag::Vf0: return q0;
    case SpaceTag::Vq:
    case SpaceTag::Ve: return c0;
    case SpaceTag::Vf:
    case SpaceTag::Vfl:
    case SpaceTag::Vfr: return true;
  }
  return false;
}

struct AffineSet {
  VecQ point;
  MatQ kernel;  // rows span the homogeneous freedom
  bool empty = false;
};

// Intersect the affine set with {x : rows (g + x) = 0}.
void refine(AffineSet& set, const std::vector<RowQ>& rows, const VecQ& g) {
  if (set.empty || rows.empty()) return;
  const Eigen::Index kdim = set.kernel.rows();
  MatQ aug((Eigen::Index)rows.size(), kdim + 1);
  for (size_t r = 0; r < rows.size(); ++r) {
    for (Eigen::Index k = 0; k < kdim; ++k)
      aug((Eigen::Index)r, k) = rows[r].dot(set.kernel.row(k));
    aug((Eigen::Index)r, kdim) = -(rows[r].dot(g.transpose()) + rows[r].dot(set.point.transpose()));
  }
  MatQ work = aug;
  auto pivots = rref_in_place(work);
  VecQ u = VecQ::Zero(kdim);
  for (size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == kdim) { set.empty = true; return; }
    u(pivots[i]) = work(i, kdim);
  }
  set.point += set.kernel.transpose() * u;
  const MatQ m = aug.leftCols(kdim);
  set.kernel = kernel_basis(m) * set.kernel;
}

}  // namespace

CoboundaryResult coboundary_feasibility(const AmbientSpace& ambient,
                                        const Cocycle1& z, SpaceTag target_tag,
                                        size_t tree_root) {
  const CausalPoset& poset = z.poset();
  const auto& es = poset.elements;
  const size_t n = es.size();
  if (tree_root >= n) throw Error("tree root out of range");

  // spanning tree by BFS over canonical-edge adjacency
  std::vector<WeylElement> v(n, WeylElement::identity());
  std::vector<char> seen(n, 0);
  std::vector<size_t> queue{tree_root};
  seen[tree_root] = 1;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    const size_t s = queue[qi];
    for (size_t t = 0; t < n; ++t) {
      if (seen[t] || !z.has_edge(s, t)) continue;
      v[t] = weyl_mul(z.at(s, t), v[s]);
      seen[t] = 1;
      queue.push_back(t);
    }
  }
  for (size_t i = 0; i < n; ++i)
    if (!seen[i]) throw Error("poset not connected under canonical edges");

  const ChargePair net_charge = cocycle_charge(z);
  if (!charge_allowed(target_tag, net_charge)) {
    // obstruction: exhibit a disjoint pair and the transport between them
    ObstructionCertificate cert;
    bool found = false;
    for (size_t i = 0; i < n && !found; ++i)
      for (size_t j = 0; j < n && !found; ++j) {
        if (i == j || !z.has_edge(i, j)) continue;
        if (!before(es[i], es[j]) || !(es[i].sup() < es[j].inf())) continue;
        cert.a1 = es[i];
        cert.a2 = es[j];
        cert.transporter = z.at(i, j).F;
        found = true;
        // two-element affine subsystem: s with both entries in the target net
        AffineSet set{VecQ::Zero(ambient.dim()),
                      MatQ::Identity(ambient.dim(), ambient.dim()), false};
        refine(set, local_constraint_rows(ambient, target_tag, LocTarget::of(es[i])),
               ambient.coordinates(v[i].F));
        refine(set, local_constraint_rows(ambient, target_tag, LocTarget::of(es[j])),
               ambient.coordinates(v[j].F));
        cert.subsystem_infeasible = set.empty;
      }
    cert.forced_charge = net_charge;
    if (!found) throw Error("no separated pair available for the certificate");
    return cert;
  }

  // solve for the remaining gauge: one global Weyl multiplier
  AffineSet set{VecQ::Zero(ambient.dim()),
                MatQ::Identity(ambient.dim(), ambient.dim()), false};
  for (size_t i = 0; i < n && !set.empty; ++i)
    refine(set, local_constraint_rows(ambient, target_tag, LocTarget::of(es[i])),
           ambient.coordinates(v[i].F));

  if (set.empty) {
    ObstructionCertificate cert;
    cert.a1 = es.front();
    cert.a2 = es.back();
    cert.forced_charge = net_charge;
    cert.subsystem_infeasible = true;
    return cert;
  }

  const WeylElement gauge = WeylElement::of(ambient.from_coordinates(set.point));
  TrivializerWitness wit;
  wit.v.resize(n);
  wit.in_target.assign(n, 0);
  for (size_t i = 0; i < n; ++i) {
    wit.v[i] = weyl_mul(v[i], gauge);
    wit.in_target[i] = space_member(wit.v[i].F, target_tag) &&
                       loc_inside(wit.v[i].F, es[i]);
  }
  wit.exact = true;
  for (size_t s = 0; s < n; ++s)
    for (size_t t = 0; t < n; ++t) {
      if (!z.has_edge(s, t)) continue;
      ++wit.edges_verified;
      if (!(weyl_mul(wit.v[t], weyl_inverse(wit.v[s])) == z.at(s, t)))
        wit.exact = false;
    }
  return wit;
}

SymplecticSubspace z0(const AmbientSpace& ambient, const NetSpec& spec) {
  const auto& es = spec.poset->elements;
  if (es.empty()) throw Error("empty poset");
  SymplecticSubspace acc = materialize(ambient, spec.tag, LocTarget::of(es[0]));
  for (size_t i = 1; i < es.size(); ++i) {
    if (acc.dim() == 0) break;
    acc = intersect({acc, materialize(ambient, spec.tag, LocTarget::of(es[i]))});
  }
  return acc;
}

}  // namespace netcoh
