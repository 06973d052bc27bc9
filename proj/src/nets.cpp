#include "netcoh/nets.hpp"

#include <algorithm>

namespace netcoh {

LocTarget LocTarget::of(const IndexElement& o) {
  LocTarget t;
  for (const auto& c : o.components())
    t.pieces.push_back({c.lo, c.hi, c.unbounded_left, c.unbounded_right});
  return t;
}

LocTarget LocTarget::of(const ComplementPiece& piece) { return {{piece}}; }

namespace {

// Grid cells [k, k+1] whose closed extent lies inside the target (closure
// reading; unbounded sides reach the window edge).
std::vector<char> allowed_cells(const AmbientSpace& amb, const LocTarget& t) {
  std::vector<char> ok(amb.cells(), 0);
  for (const auto& p : t.pieces) {
    if (p.empty()) continue;
    const Rat lo = p.unbounded_left ? amb.lo() : p.lo;
    const Rat hi = p.unbounded_right ? amb.hi() : p.hi;
    if (!(lo < hi)) continue;
    const long k0 = amb.node_index(lo);
    const long k1 = amb.node_index(hi);
    for (long k = k0; k < k1; ++k) ok[k] = 1;
  }
  return ok;
}

void append_row(std::vector<RowQ>& rows, RowQ r) { rows.push_back(std::move(r)); }

void add_tag_rows(const AmbientSpace& amb, SpaceTag tag, std::vector<RowQ>& rows) {
  const RowQ c = amb.charge_row();
  const RowQ l = amb.left_grade_row();
  const RowQ r = amb.right_grade_row();
  switch (tag) {
    case SpaceTag::Va: append_row(rows, c); append_row(rows, l); append_row(rows, r); break;
    case SpaceTag::Vb: append_row(rows, c); append_row(rows, l - r); break;
    case SpaceTag::Vc: append_row(rows, l - r); break;
    case SpaceTag::Vq: append_row(rows, c); append_row(rows, l + r); break;
    case SpaceTag::Ve: append_row(rows, c); break;
    case SpaceTag::Vf: break;
    case SpaceTag::Vfl: append_row(rows, r); break;
    case SpaceTag::Vfr: append_row(rows, l); break;
    case SpaceTag::Vf0: append_row(rows, l); append_row(rows, r); break;
  }
}

MatQ rows_to_matrix(const AmbientSpace& amb, const std::vector<RowQ>& rows) {
  MatQ m((Eigen::Index)rows.size(), amb.dim());
  for (size_t i = 0; i < rows.size(); ++i) m.row((Eigen::Index)i) = rows[i];
  return m;
}

}  // namespace

std::vector<RowQ> local_constraint_rows(const AmbientSpace& amb, SpaceTag tag,
                                        const LocTarget& target) {
  const auto ok = allowed_cells(amb, target);
  std::vector<RowQ> rows;
  // f0 vanishes wherever an incident cell is outside the target
  for (long k = 1; k <= amb.cells() - 1; ++k) {
    if (ok[k - 1] && ok[k]) continue;
    RowQ r = RowQ::Zero(amb.dim());
    r(amb.f0_coord(k)) = 1;
    append_row(rows, std::move(r));
  }
  // f1 slope vanishes on every cell outside the target
  for (long k = 0; k < amb.cells(); ++k) {
    if (ok[k]) continue;
    RowQ r = RowQ::Zero(amb.dim());
    r(amb.f1_coord(k)) = -1;
    r(amb.f1_coord(k + 1)) = 1;
    append_row(rows, std::move(r));
  }
  add_tag_rows(amb, tag, rows);
  // vanishing-tail condition on window-edge pieces
  for (const auto& p : target.pieces) {
    if (p.empty()) continue;
    if (p.unbounded_left) append_row(rows, amb.left_grade_row());
    if (p.unbounded_right) append_row(rows, amb.right_grade_row());
  }
  return rows;
}

SymplecticSubspace materialize(const AmbientSpace& amb, SpaceTag tag,
                               const LocTarget& target) {
  const auto rows = local_constraint_rows(amb, tag, target);
  return SymplecticSubspace(&amb, kernel_basis(rows_to_matrix(amb, rows)));
}

SymplecticSubspace materialize(const AmbientSpace& amb, const NetSpec& spec,
                               const IndexElement& o) {
  return materialize(amb, spec.tag, LocTarget::of(o));
}

SymplecticSubspace additive_extension(const AmbientSpace& amb,
                                      const NetSpec& spec,
                                      const IndexElement& composite) {
  std::vector<SymplecticSubspace> parts;
  for (const auto& e : spec.poset->elements)
    if (e.is_interval() && leq(e, composite))
      parts.push_back(materialize(amb, spec.tag, LocTarget::of(e)));
  if (parts.empty())
    return SymplecticSubspace(&amb, MatQ(0, amb.dim()));
  return join(parts);
}

namespace {

// Exact annihilator rows for one complement piece: the conditions cut out by
// the full (continuum) tag test family supported in the piece. Expressed on
// G's coordinates; closed-form, no sampling kernel.
void add_piece_rows(const AmbientSpace& amb, const ComplementPiece& p,
                    bool charged_tests, bool tail_tests_left,
                    bool tail_tests_right, bool equal_tail_tests,
                    bool opposite_tail_tests, std::vector<RowQ>& rows) {
  if (p.empty()) return;
  const Rat lo = p.unbounded_left ? amb.lo() : p.lo;
  const Rat hi = p.unbounded_right ? amb.hi() : p.hi;
  if (!(lo < hi)) return;
  const long k0 = amb.node_index(lo);
  const long k1 = amb.node_index(hi);

  // compactly supported f1 tests: g0 == 0 on the closed piece
  for (long k = std::max<long>(k0, 1); k <= std::min(k1, amb.cells() - 1); ++k) {
    RowQ r = RowQ::Zero(amb.dim());
    r(amb.f0_coord(k)) = 1;
    rows.push_back(std::move(r));
  }
  if (charged_tests) {
    // charged f0 tests: g1 == 0 on the closed piece
    for (long k = k0; k <= k1; ++k) {
      RowQ r = RowQ::Zero(amb.dim());
      r(amb.f1_coord(k)) = 1;
      rows.push_back(std::move(r));
    }
    // and g1 constant up to the window edge on an unbounded side
    if (p.unbounded_left)
      for (long k = 0; k < k0; ++k) {
        RowQ r = RowQ::Zero(amb.dim());
        r(amb.f1_coord(k)) = 1;
        rows.push_back(std::move(r));
      }
    if (p.unbounded_right)
      for (long k = k1 + 1; k <= amb.cells(); ++k) {
        RowQ r = RowQ::Zero(amb.dim());
        r(amb.f1_coord(k)) = 1;
        rows.push_back(std::move(r));
      }
  } else {
    // zero-integral f0 tests: g1 constant across the closed piece
    for (long k = k0; k < k1; ++k) {
      RowQ r = RowQ::Zero(amb.dim());
      r(amb.f1_coord(k)) = -1;
      r(amb.f1_coord(k + 1)) = 1;
      rows.push_back(std::move(r));
    }
  }
  // plateau tests from tail-carrying f1 elements localized in the piece
  const RowQ total = amb.charge_row();
  const RowQ up_left = amb.partial_charge_row_upto(k0);    // int g0 over (-inf, lo]
  const RowQ up_right = amb.partial_charge_row_upto(k1);   // int g0 over (-inf, hi]
  if (tail_tests_left && !p.unbounded_left) rows.push_back(up_left);
  if (tail_tests_right && !p.unbounded_right) rows.push_back(total - up_right);
  if (equal_tail_tests && !p.unbounded_left && !p.unbounded_right)
    rows.push_back(up_left + (total - up_right));
  if (opposite_tail_tests && !p.unbounded_left && !p.unbounded_right)
    rows.push_back(up_left - (total - up_right));
}

// Tag -> which test families exist inside a piece.
struct TestMenu {
  bool charged = false;
  bool tail_left = false;      // elements with nonzero tail to the left of the piece
  bool tail_right = false;
  bool equal_tails = false;    // dips: same nonzero constant on both sides
  bool opposite_tails = false;
};

TestMenu menu_for(SpaceTag tag) {
  TestMenu m;
  switch (tag) {
    case SpaceTag::Va: break;
    case SpaceTag::Vf0: m.charged = true; break;
    case SpaceTag::Vb: m.equal_tails = true; break;
    case SpaceTag::Vc: m.charged = true; m.equal_tails = true; break;
    case SpaceTag::Vq: m.opposite_tails = true; break;
    case SpaceTag::Ve: m.tail_left = true; m.tail_right = true; break;
    case SpaceTag::Vf: m.charged = true; m.tail_left = true; m.tail_right = true; break;
    case SpaceTag::Vfl: m.charged = true; m.tail_left = true; break;
    case SpaceTag::Vfr: m.charged = true; m.tail_right = true; break;
  }
  return m;
}

SymplecticSubspace annihilator(const AmbientSpace& amb, SpaceTag g_tag,
                               const std::vector<ComplementPiece>& pieces,
                               const std::vector<PiecePolicy>& policies) {
  std::vector<RowQ> rows;
  add_tag_rows(amb, g_tag, rows);
  for (size_t i = 0; i < pieces.size(); ++i) {
    const bool charged = policies[i] == PiecePolicy::FreeCharge;
    add_piece_rows(amb, pieces[i], charged, false, false, false, false, rows);
  }
  return SymplecticSubspace(&amb, kernel_basis(rows_to_matrix(amb, rows)));
}

}  // namespace

SymplecticSubspace dual(const AmbientSpace& amb, const NetSpec& spec,
                        const IndexElement& o) {
  if (o.is_half_line()) throw Error("dual defined for bounded elements");
  const auto pieces = causal_complement(o, amb.lo(), amb.hi());
  const TestMenu m = menu_for(spec.tag);
  std::vector<RowQ> rows;
  add_tag_rows(amb, spec.tag, rows);
  for (const auto& p : pieces)
    add_piece_rows(amb, p, m.charged, m.tail_left, m.tail_right, m.equal_tails,
                   m.opposite_tails, rows);
  return SymplecticSubspace(&amb, kernel_basis(rows_to_matrix(amb, rows)));
}

SymplecticSubspace graded_twist(const AmbientSpace& amb,
                                const CausalPoset& poset, GradedSide side,
                                const IndexElement& o) {
  (void)poset;
  const auto pieces = causal_complement(o, amb.lo(), amb.hi());
  std::vector<SymplecticSubspace> parts;
  for (const auto& p : pieces) {
    if (p.empty()) continue;
    const bool graded_piece =
        (side == GradedSide::Left) ? !p.unbounded_right : !p.unbounded_left;
    // graded side and gap: N-fixed, zero charge; opposite side: full charge
    const SpaceTag t = graded_piece ? SpaceTag::Va : SpaceTag::Vf0;
    parts.push_back(materialize(amb, t, LocTarget::of(p)));
  }
  if (parts.empty()) return SymplecticSubspace(&amb, MatQ(0, amb.dim()));
  return join(parts);
}

SymplecticSubspace graded_dual(const AmbientSpace& amb,
                               const CausalPoset& poset, GradedSide side,
                               const IndexElement& o) {
  (void)poset;
  if (o.is_half_line()) throw Error("graded dual defined for bounded elements");
  const auto pieces = causal_complement(o, amb.lo(), amb.hi());
  std::vector<PiecePolicy> policies;
  for (const auto& p : pieces) {
    const bool graded_piece =
        (side == GradedSide::Left) ? !p.unbounded_right : !p.unbounded_left;
    policies.push_back(graded_piece ? PiecePolicy::FixedCharge
                                    : PiecePolicy::FreeCharge);
  }
  const SpaceTag g_tag = side == GradedSide::Left ? SpaceTag::Vfl : SpaceTag::Vfr;
  return annihilator(amb, g_tag, pieces, policies);
}

SymplecticSubspace global_graded_dual(const AmbientSpace& amb,
                                      const CausalPoset& poset,
                                      const IndexElement& o) {
  (void)poset;
  if (o.is_half_line()) throw Error("global graded dual defined for bounded elements");
  const auto pieces = causal_complement(o, amb.lo(), amb.hi());
  std::vector<PiecePolicy> policies(pieces.size(), PiecePolicy::FixedCharge);
  return annihilator(amb, SpaceTag::Vc, pieces, policies);
}

namespace {

LocalityReport cross_check(const AmbientSpace& amb,
                           const std::vector<std::pair<size_t, size_t>>& pairs,
                           const CausalPoset& poset, SpaceTag tag1, SpaceTag tag2,
                           size_t max_violations) {
  LocalityReport rep;
  std::vector<std::optional<std::vector<TestPair>>> gen1(poset.elements.size()),
      gen2(poset.elements.size());
  auto gens = [&](size_t idx, SpaceTag t,
                  std::vector<std::optional<std::vector<TestPair>>>& cache)
      -> const std::vector<TestPair>& {
    if (!cache[idx])
      cache[idx] =
          materialize(amb, t, LocTarget::of(poset.elements[idx])).generators();
    return *cache[idx];
  };
  for (auto [i, j] : pairs) {
    ++rep.pairs_checked;
    for (const auto& F : gens(i, tag1, gen1))
      for (const auto& G : gens(j, tag2, gen2)) {
        ++rep.generator_pairs_checked;
        const Rat s = symplectic_form(F, G);
        if (sgn(s) != 0 && rep.violations.size() < max_violations)
          rep.violations.push_back({poset.elements[i], poset.elements[j], F, G, s});
      }
  }
  return rep;
}

}  // namespace

LocalityReport check_locality(const AmbientSpace& amb, const NetSpec& spec,
                              size_t max_violations) {
  const auto& es = spec.poset->elements;
  std::vector<std::pair<size_t, size_t>> pairs;
  for (size_t i = 0; i < es.size(); ++i)
    for (size_t j = i + 1; j < es.size(); ++j)
      if (disjoint(es[i], es[j])) pairs.emplace_back(i, j);
  return cross_check(amb, pairs, *spec.poset, spec.tag, spec.tag, max_violations);
}

LocalityReport check_graded_locality(const AmbientSpace& amb,
                                     const CausalPoset& poset,
                                     size_t max_violations) {
  const auto& es = poset.elements;
  std::vector<std::pair<size_t, size_t>> pairs;
  for (size_t i = 0; i < es.size(); ++i)
    for (size_t j = 0; j < es.size(); ++j)
      if (i != j && before(es[i], es[j])) pairs.emplace_back(i, j);
  return cross_check(amb, pairs, poset, SpaceTag::Vfl, SpaceTag::Vfr, max_violations);
}

}  // namespace netcoh
