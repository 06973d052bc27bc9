#include "netcoh/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <random>
#include <sstream>

#include <json.hpp>

#include "netcoh/cohomology.hpp"
#include "netcoh/nets.hpp"
#include "netcoh/sectors.hpp"
#include "netcoh/weyl.hpp"

namespace netcoh {

using Json = nlohmann::ordered_json;

std::vector<std::string> list_check_kinds() {
  return {"haag-duality",     "double-interval-duality",
          "additivity",       "graded-locality",
          "graded-duality",   "global-graded-duality",
          "condition-aa",     "cocycle-triviality",
          "z0-table",         "braiding",
          "geometry",         "poset-facts",
          "partition-of-unity", "locality"};
}

namespace {

bool known_kind(const std::string& kind) {
  const auto kinds = list_check_kinds();
  return std::find(kinds.begin(), kinds.end(), kind) != kinds.end();
}

Json testpair_json(const TestPair& F) {
  auto pl = [](const PiecewiseLinear& f) {
    Json j;
    Json xs = Json::array(), ys = Json::array();
    for (const auto& x : f.breakpoints()) xs.push_back(format_rat(x));
    for (const auto& y : f.values()) ys.push_back(format_rat(y));
    j["breakpoints"] = xs;
    j["values"] = ys;
    return j;
  };
  Json j;
  j["f0"] = pl(F.f0);
  j["f1"] = pl(F.f1);
  return j;
}

struct CheckContext {
  const Scenario* scenario;
  const AmbientSpace* ambient;
  uint64_t seed;
};

using Details = std::vector<std::pair<std::string, std::string>>;

struct Outcome {
  bool pass = true;
  Details details;
  std::string witness;

  void note(const std::string& k, const std::string& v) { details.emplace_back(k, v); }
  void note(const std::string& k, long v) { details.emplace_back(k, std::to_string(v)); }
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      details.emplace_back("failed", what);
    }
  }
};

CausalPoset poset_for(const CheckContext& ctx, const CheckRequest& req,
                      const std::string& kind_default_step,
                      const std::string& kind_override = "") {
  const Scenario& sc = *ctx.scenario;
  const std::string kind_name =
      kind_override.empty() ? req.param_or("posetKind", sc.poset_kind) : kind_override;
  const auto kind = poset_kind_from_name(kind_name);
  if (!kind) throw ValidationError("unknown poset kind: " + kind_name);
  const Rat step = parse_rat(req.param_or("posetStep", kind_default_step));
  return build_poset(*kind, sc.window_lo, sc.window_hi, step, sc.limits.max_elements);
}

std::vector<IndexElement> pick_intervals(const CausalPoset& poset, size_t count,
                                         std::mt19937_64& rng, long min_cells) {
  std::vector<IndexElement> pool;
  for (const auto& e : poset.elements)
    if (e.is_interval() && (e.b - e.a) / poset.step >= min_cells) pool.push_back(e);
  std::shuffle(pool.begin(), pool.end(), rng);
  if (pool.size() > count) pool.resize(count);
  return pool;
}

std::vector<IndexElement> pick_doubles(const CausalPoset& poset, size_t count,
                                       std::mt19937_64& rng) {
  std::vector<IndexElement> pool;
  for (const auto& e : poset.elements)
    if (e.is_double()) pool.push_back(e);
  std::shuffle(pool.begin(), pool.end(), rng);
  if (pool.size() > count) pool.resize(count);
  return pool;
}

TestPair random_member(const SymplecticSubspace& space, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  VecQ x = VecQ::Zero(space.ambient()->dim());
  for (Eigen::Index r = 0; r < space.basis().rows(); ++r) {
    const int c = coeff(rng);
    if (c != 0) x += Rat(c) * space.basis().row(r).transpose();
  }
  return space.ambient()->from_coordinates(x);
}

// ---- individual checks -----------------------------------------------------

Outcome check_haag_duality(const CheckContext& ctx, const CheckRequest& req) {
  Outcome out;
  std::mt19937_64 rng(ctx.seed);
  const auto tag = tag_from_name(req.param_or("tag", "Va"));
  if (!tag) throw ValidationError("bad tag");
  CausalPoset poset = poset_for(ctx, req, "1", "I");
  const size_t count = std::stoul(req.param_or("count", "20"));
  NetSpec spec{*tag, &poset};
  size_t checked = 0;
  for (const auto& I : pick_intervals(poset, count, rng, 1)) {
    const auto local = materialize(*ctx.ambient, spec, I);
    const auto d = dual(*ctx.ambient, spec, I);
    ++checked;
    out.expect(local == d, "duality at " + I.to_string());
    if (!out.pass) break;
  }
  out.note("intervals_checked", (long)checked);
  out.expect(checked >= std::min<size_t>(count, 20), "enough intervals");
  return out;
}

Outcome check_double_interval_duality(const CheckContext& ctx, const CheckRequest& req) {
  Outcome out;
  std::mt19937_64 rng(ctx.seed);
  CausalPoset poset = poset_for(ctx, req, "1", "D");
  const size_t count = std::stoul(req.param_or("count", "10"));
  NetSpec spec{SpaceTag::Va, &poset};
  size_t checked = 0;
  for (const auto& E : pick_doubles(poset, count, rng)) {
    const auto local = materialize(*ctx.ambient, spec, E);
    const auto d = dual(*ctx.ambient, spec, E);
    const auto add = additive_extension(*ctx.ambient, spec, E);
    ++checked;
    out.expect(d == local, "dual equals local at " + E.to_string());
    out.expect(d.contains(add) && add.dim() + 2 == d.dim(),
               "rank gap 2 at " + E.to_string());
    if (!out.pass) break;
  }
  out.note("doubles_checked", (long)checked);
  return out;
}

Outcome check_additivity(const CheckContext& ctx, const CheckRequest& req) {
  Outcome out;
  std::mt19937_64 rng(ctx.seed);
  CausalPoset poset = poset_for(ctx, req, "1", "D");
  const size_t count = std::stoul(req.param_or("count", "10"));
  for (SpaceTag tag : {SpaceTag::Vf, SpaceTag::Vf0}) {
    NetSpec spec{tag, &poset};
    size_t checked = 0;
    for (const auto& E : pick_doubles(poset, count, rng)) {
      ++checked;
      out.expect(additive_extension(*ctx.ambient, spec, E) ==
                     materialize(*ctx.ambient, spec, E),
                 std::string(tag_name(tag)) + " additivity at " + E.to_string());
      if (!out.pass) return out;
    }
    out.note(std::string(tag_name(tag)) + "_doubles", (long)checked);
  }
  return out;
}

Outcome check_graded_locality(const CheckContext& ctx, const CheckRequest& req) {
  Outcome out;
  std::mt19937_64 rng(ctx.seed);
  CausalPoset poset = poset_for(ctx, req, "1", "I");
  const size_t samples = std::stoul(req.param_or("samples", "1000"));
  std::vector<std::pair<size_t, size_t>> ordered;
  const auto& es = poset.elements;
  for (size_t i = 0; i < es.size(); ++i)
    for (size_t j = 0; j < es.size(); ++j)
      if (i != j && before(es[i], es[j])) ordered.emplace_back(i, j);
  out.expect(!ordered.empty(), "ordered pairs exist");
  std::uniform_int_distribution<size_t> pick(0, ordered.empty() ? 0 : ordered.size() - 1);
  std::vector<std::optional<SymplecticSubspace>> left(es.size()), right(es.size());
  size_t nonzero = 0;
  for (size_t k = 0; k < samples && out.pass; ++k) {
    const auto [i, j] = ordered[pick(rng)];
    if (!left[i]) left[i] = materialize(*ctx.ambient, SpaceTag::Vfl, LocTarget::of(es[i]));
    if (!right[j]) right[j] = materialize(*ctx.ambient, SpaceTag::Vfr, LocTarget::of(es[j]));
    const TestPair F = random_member(*left[i], rng);
    const TestPair G = random_member(*right[j], rng);
    if (sgn(symplectic_form(F, G)) != 0) {
      ++nonzero;
      out.witness = testpair_json(F).dump();
      out.expect(false, "graded locality violated at " + es[i].to_string() + " < " +
                            es[j].to_string());
    }
  }
  out.note("samples", (long)samples);
  out.note("violations", (long)nonzero);
  return out;
}

Outcome check_graded_duality(const CheckContext& ctx, const CheckRequest& req) {
  Outcome out;
  std::mt19937_64 rng(ctx.seed);
  CausalPoset poset = poset_for(ctx, req, "1", "D");
  const size_t count = std::stoul(req.param_or("count", "10"));
  size_t icheck = 0, echeck = 0;
  for (const auto& I : pick_intervals(poset, count, rng, 1)) {
    ++icheck;
    out.expect(graded_dual(*ctx.ambient, poset, GradedSide::Left, I) ==
                   materialize(*ctx.ambient, SpaceTag::Vfl, LocTarget::of(I)),
               "left graded duality at " + I.to_string());
    out.expect(graded_dual(*ctx.ambient, poset, GradedSide::Right, I) ==
                   materialize(*ctx.ambient, SpaceTag::Vfr, LocTarget::of(I)),
               "right graded duality at " + I.to_string());
    if (!out.pass) return out;
  }
  for (const auto& E : pick_doubles(poset, count, rng)) {
    ++echeck;
    out.expect(graded_dual(*ctx.ambient, poset, GradedSide::Left, E) ==
                   materialize(*ctx.ambient, SpaceTag::Vfl, LocTarget::of(E)),
               "left graded duality at " + E.to_string());
    if (!out.pass) return out;
  }
  out.note("intervals", (long)icheck);
  out.note("doubles", (long)echeck);
  return out;
}

Outcome check_global_graded_duality(const CheckContext& ctx, const CheckRequest& req) {
  Outcome out;
  std::mt19937_64 rng(ctx.seed);
  CausalPoset poset = poset_for(ctx, req, "1", "D");
  const size_t count = std::stoul(req.param_or("count", "10"));
  for (const auto& I : pick_intervals(poset, count, rng, 1)) {
    out.expect(global_graded_dual(*ctx.ambient, poset, I) ==
                   materialize(*ctx.ambient, SpaceTag::Vc, LocTarget::of(I)),
               "global graded duality at " + I.to_string());
    if (!out.pass) return out;
  }
  for (const auto& E : pick_doubles(poset, count, rng)) {
    out.expect(global_graded_dual(*ctx.ambient, poset, E) ==
                   materialize(*ctx.ambient, SpaceTag::Vc, LocTarget::of(E)),
               "global graded duality at " + E.to_string());
    if (!out.pass) return out;
  }
  return out;
}

Outcome check_condition_aa(const CheckContext& ctx, const CheckRequest& req) {
  Outcome out;
  CausalPoset poset = poset_for(ctx, req, "4", "D");
  const size_t max_len =
      std::stoul(req.param_or("maxPathLen", std::to_string(ctx.scenario->limits.max_path_len)));
  const size_t want_pairs = std::stoul(req.param_or("pairs", "5"));

  // disjoint interval pairs with a gap
  std::vector<std::pair<IndexElement, IndexElement>> pairs;
  for (const auto& a : poset.elements)
    for (const auto& b : poset.elements) {
      if (!a.is_interval() || !b.is_interval()) continue;
      if (a.sup() < b.inf()) pairs.emplace_back(a, b);
    }
  if (pairs.size() > want_pairs) pairs.resize(want_pairs);
  out.expect(pairs.size() >= want_pairs, "enough endpoint pairs");

  NetSpec field{SpaceTag::Vf, &poset};
  NetSpec observable{SpaceTag::Va, &poset};
  for (const auto& [a0, a1] : pairs) {
    const auto holds = condition_aa(*ctx.ambient, field, a0, a1, max_len);
    out.expect(holds.holds, "condition (aa) for Vf at " + a0.to_string() + "," +
                                a1.to_string());
    const auto fails = condition_aa(*ctx.ambient, observable, a0, a1, max_len);
    out.expect(!fails.holds, "condition (aa) must fail for Va at " + a0.to_string());
    out.expect(fails.witness.has_value() && fails.witness_certified,
               "certified witness at " + a0.to_string());
    if (fails.witness && out.witness.empty())
      out.witness = testpair_json(*fails.witness).dump();
    if (!out.pass) return out;
  }
  out.note("pairs", (long)pairs.size());
  return out;
}

Outcome check_cocycle_triviality(const CheckContext& ctx, const CheckRequest& req) {
  Outcome out;
  CausalPoset poset = poset_for(ctx, req, "4", "D");
  const std::vector<ChargePair> charges = {
      {Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(1)}, {Rat(0), Rat(0)}};
  for (const auto& ch : charges) {
    const Cocycle1 z = induced_cocycle(*ctx.ambient, ch, poset, GradedSide::Left);
    const auto rep = check_cocycle(z);
    out.expect(rep.ok(), "cocycle law for charge (" + format_rat(ch.c) + "," +
                             format_rat(ch.q) + ")");
    for (SpaceTag target : {SpaceTag::Vf, SpaceTag::Vfl}) {
      const auto res = coboundary_feasibility(*ctx.ambient, z, target);
      const auto* wit = std::get_if<TrivializerWitness>(&res);
      out.expect(wit != nullptr && wit->exact,
                 std::string("trivializer in ") + tag_name(target));
      if (wit)
        for (char flag : wit->in_target)
          if (!flag) out.expect(false, "trivializer entries localized in the net");
    }
    const auto res = coboundary_feasibility(*ctx.ambient, z, SpaceTag::Va);
    if (ch.is_zero()) {
      out.expect(std::holds_alternative<TrivializerWitness>(res),
                 "zero charge trivial in Va");
    } else {
      const auto* cert = std::get_if<ObstructionCertificate>(&res);
      out.expect(cert != nullptr, "nonzero charge obstructed in Va");
      if (cert) {
        out.expect(cert->subsystem_infeasible, "certificate subsystem infeasible");
        out.expect(cert->forced_charge == ch, "certificate charge matches");
      }
    }
    if (!out.pass) return out;
  }
  // tree-independence of the obstruction
  const Cocycle1 z =
      induced_cocycle(*ctx.ambient, {Rat(1), Rat(0)}, poset, GradedSide::Left);
  const auto r0 = coboundary_feasibility(*ctx.ambient, z, SpaceTag::Va, 0);
  const auto r1 =
      coboundary_feasibility(*ctx.ambient, z, SpaceTag::Va, poset.elements.size() / 2);
  const auto* c0 = std::get_if<ObstructionCertificate>(&r0);
  const auto* c1 = std::get_if<ObstructionCertificate>(&r1);
  out.expect(c0 && c1 && c0->forced_charge == c1->forced_charge,
             "obstruction independent of the spanning tree");
  return out;
}

Outcome check_z0_table(const CheckContext& ctx, const CheckRequest& req) {
  Outcome out;
  for (const char* kind : {"I", "D"}) {
    CausalPoset poset = poset_for(ctx, req, "2", kind);
    const TestPair unit(PiecewiseLinear::constant(0), PiecewiseLinear::constant(1));
    for (SpaceTag tag : {SpaceTag::Va, SpaceTag::Vq, SpaceTag::Vf0, SpaceTag::Vfl,
                         SpaceTag::Vfr}) {
      NetSpec spec{tag, &poset};
      out.expect(z0(*ctx.ambient, spec).dim() == 0,
                 std::string("Z0(") + tag_name(tag) + "," + kind + ") trivial");
    }
    for (SpaceTag tag : {SpaceTag::Vb, SpaceTag::Vc, SpaceTag::Vf}) {
      NetSpec spec{tag, &poset};
      const auto space = z0(*ctx.ambient, spec);
      out.expect(space.dim() == 1 && space.contains(unit),
                 std::string("Z0(") + tag_name(tag) + "," + kind + ") = constants");
    }
    if (!out.pass) return out;
  }
  return out;
}

Outcome check_braiding(const CheckContext& ctx, const CheckRequest& req) {
  Outcome out;
  std::mt19937_64 rng(ctx.seed);
  const size_t samples = std::stoul(req.param_or("samples", "100"));
  const Rat h = ctx.ambient->step();
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  std::uniform_int_distribution<long> offset(0, 3);
  auto random_charge = [&]() {
    return ChargePair{Rat(num(rng), den(rng)), Rat(num(rng), den(rng))};
  };
  const IndexElement base_left = IndexElement::interval(-6, -2);
  const IndexElement base_right = IndexElement::interval(2, 6);
  for (size_t k = 0; k < samples && out.pass; ++k) {
    const ChargePair c1 = random_charge(), c2 = random_charge();
    // randomized representative shapes: shifted sub-intervals of the bases
    const long o1 = offset(rng), o2 = offset(rng);
    const IndexElement i1 =
        IndexElement::interval(base_left.a + Rat(o1) * h, base_left.b - Rat(o1) * h);
    const IndexElement i2 =
        IndexElement::interval(base_right.a + Rat(o2) * h, base_right.b - Rat(o2) * h);
    const auto rho = canonical_representative(c1, i1, TailConvention::RightTailZero, h);
    const auto tau = canonical_representative(c2, i2, TailConvention::LeftTailZero, h);
    const auto braid = braiding_phase(rho, tau);
    out.expect(sgn(braid.commutator_term) == 0, "commutator term vanishes");
    out.expect(braid.exponent == -(c1.c * c2.q + c1.q * c2.c), "braid exponent");
    out.expect(monodromy(c1, c2) == -2 * (c1.c * c2.q + c1.q * c2.c), "monodromy");
    // symmetric subcategories
    out.expect(is_symmetric_pair({c1.c, Rat(0)}, {c2.c, Rat(0)}), "C x C symmetric");
    out.expect(is_symmetric_pair({Rat(0), c1.q}, {Rat(0), c2.q}), "Q x Q symmetric");
    // self-braiding of a transported pair
    const auto rho2 = canonical_representative(c1, i2, TailConvention::LeftTailZero, h);
    const auto self = braiding_phase(rho, rho2);
    out.expect(self.exponent == -2 * c1.c * c1.q, "self braiding -2cq");
  }
  out.expect(!is_symmetric_pair({Rat(1), Rat(0)}, {Rat(0), Rat(1)}),
             "(1,0) vs (0,1) braids");
  out.note("samples", (long)samples);
  return out;
}

Outcome check_geometry(const CheckContext& ctx, const CheckRequest& req) {
  Outcome out;
  std::mt19937_64 rng(ctx.seed);
  CausalPoset poset = poset_for(ctx, req, "1", "D");
  const size_t mob = std::stoul(req.param_or("mobiusCount", "50"));
  const size_t xi_count = std::stoul(req.param_or("xiCount", "20"));

  size_t unequal = 0;
  for (const auto& E : pick_doubles(poset, 4 * mob, rng)) {
    const Rat alpha = E.a, beta = E.b, gamma = E.a2, delta = E.b2;
    const MobiusMap g = mobius_from_double_interval(E);
    if ((beta - alpha) == (delta - gamma)) {
      out.expect(g.is_identity(), "equal lengths give the identity");
      continue;
    }
    if (unequal >= mob) continue;
    ++unequal;
    out.expect(mobius_apply_endpoint(g, alpha) == alpha, "g fixes left endpoint");
    out.expect(mobius_apply_endpoint(g, delta) == delta, "g fixes right endpoint");
    out.expect(mobius_apply_endpoint(g, -beta + alpha + delta) == gamma,
               "g maps reflected beta to gamma");
    out.expect(mobius_apply_endpoint(g, -gamma + alpha + delta) == beta,
               "g maps reflected gamma to beta");
    if (!out.pass) return out;
  }
  out.note("unequal_doubles", (long)unequal);
  out.expect(unequal >= std::min<size_t>(mob, 50), "enough unequal doubles");

  size_t xi_done = 0;
  for (const auto& I : pick_intervals(poset, xi_count, rng, 1)) {
    const auto vfl = materialize(*ctx.ambient, SpaceTag::Vfl, LocTarget::of(I));
    const auto vfr = materialize(*ctx.ambient, SpaceTag::Vfr, LocTarget::of(I));
    bool swap_ok = vfl.dim() == vfr.dim();
    for (const auto& F : vfl.generators())
      if (!vfr.contains(xi_apply(I, F))) swap_ok = false;
    for (const auto& F : vfr.generators())
      if (!vfl.contains(xi_apply(I, F))) swap_ok = false;
    out.expect(swap_ok, "xi swaps the graded subspaces at " + I.to_string());
    ++xi_done;
    if (!out.pass) return out;
  }
  out.note("xi_intervals", (long)xi_done);
  return out;
}

Outcome check_poset_facts(const CheckContext& ctx, const CheckRequest& req) {
  Outcome out;
  CausalPoset pI = poset_for(ctx, req, "2", "I");
  CausalPoset pI2 = poset_for(ctx, req, "2", "I2");
  CausalPoset pD = poset_for(ctx, req, "2", "D");
  CausalPoset pJ = poset_for(ctx, req, "2", "J");

  out.expect(is_directed(pI) && is_connected(pI), "I directed and connected");
  out.expect(is_directed(pD) && is_connected(pD), "D directed and connected");
  out.expect(is_connected(pI2), "I2 connected");
  out.expect(!is_directed(pJ), "J not directed");
  out.expect(!is_connected(pJ), "J not connected");

  std::vector<IndexElement> intervals = pI.elements;
  out.expect(is_cofinal(intervals, pD), "I cofinal in D");
  out.expect(is_cofinal(intervals, pI2), "I cofinal in I2");
  out.expect(!is_cofinal(intervals, pJ), "I not cofinal in J");

  for (const CausalPoset* p : {&pI, &pI2, &pD, &pJ}) {
    const BotGraph g = bot_graph(*p);
    out.expect(g.component_count == 2,
               std::string("bot graph components for ") + poset_kind_name(p->kind));
    out.note(std::string("mixed_pairs_") + poset_kind_name(p->kind),
             (long)g.mixed_pairs);
  }
  out.expect(flip_check(pI), "S flips the oriented components of I");
  out.expect(flip_check(pD), "S flips the oriented components of D");
  return out;
}

Outcome check_partition_of_unity(const CheckContext& ctx, const CheckRequest& req) {
  Outcome out;
  std::mt19937_64 rng(ctx.seed);
  CausalPoset poset = poset_for(ctx, req, "1", "I");
  const size_t samples = std::stoul(req.param_or("samples", "500"));
  const TestPair one(PiecewiseLinear::constant(0), PiecewiseLinear::constant(1));

  for (const auto& I : poset.elements) {
    const auto [l, r] = partition_of_unity(I, ctx.ambient->step());
    out.expect(l.generator + r.generator == one,
               "partition of unity at " + I.to_string());
    const Charges cl = charges(l.generator);
    out.expect(cl.left_grade == 1 && sgn(cl.right_grade) == 0, "left grades (1,0)");
    if (!out.pass) return out;
  }

  // triviality on the opposite side, sampled
  std::uniform_int_distribution<size_t> pick(0, poset.elements.size() - 1);
  std::uniform_int_distribution<int> scale(-5, 5);
  std::vector<std::optional<SymplecticSubspace>> cache_r(poset.elements.size());
  size_t done = 0;
  while (done < samples) {
    const size_t i = pick(rng), j = pick(rng);
    const auto& I = poset.elements[i];
    const auto& O = poset.elements[j];
    if (!before(I, O)) continue;
    const auto [l, r] = partition_of_unity(I, ctx.ambient->step());
    const Rat n(scale(rng));
    if (!cache_r[j])
      cache_r[j] = materialize(*ctx.ambient, SpaceTag::Vfr, LocTarget::of(O));
    const TestPair G = random_member(*cache_r[j], rng);
    out.expect(sgn(adjoint_phase(n * l.generator, G)) == 0,
               "left grading trivial right of " + I.to_string());
    ++done;
    if (!out.pass) return out;
  }
  // exact left-side action on charged elements
  for (size_t k = 0; k < 64; ++k) {
    const size_t i = pick(rng), j = pick(rng);
    const auto& O = poset.elements[j];
    const auto& I = poset.elements[i];
    if (!before(O, I)) continue;
    const auto [l, r] = partition_of_unity(I, ctx.ambient->step());
    const Rat n(scale(rng));
    const auto space = materialize(*ctx.ambient, SpaceTag::Vf0, LocTarget::of(O));
    const TestPair G = random_member(space, rng);
    const Rat cg = charges(G).charge.c;
    out.expect(adjoint_phase(n * l.generator, G) == -n * cg,
               "left-side action is -n C_G");
    if (!out.pass) return out;
  }
  out.note("samples", (long)done);
  return out;
}

Outcome check_locality(const CheckContext& ctx, const CheckRequest& req) {
  Outcome out;
  const auto tag = tag_from_name(req.param_or("tag", "Va"));
  if (!tag) throw ValidationError("bad tag");
  CausalPoset poset = poset_for(ctx, req, "2", "I");
  NetSpec spec{*tag, &poset};
  const auto rep = check_locality(*ctx.ambient, spec, 4);
  const bool expect_local = req.param_or("expect", "local") == "local";
  out.note("pairs", (long)rep.pairs_checked);
  out.note("violations", (long)rep.violations.size());
  if (expect_local)
    out.expect(rep.ok(), std::string(tag_name(*tag)) + " is local");
  else {
    out.expect(!rep.ok(), std::string(tag_name(*tag)) + " is not local");
    if (!rep.violations.empty())
      out.witness = testpair_json(rep.violations.front().F).dump();
  }
  return out;
}

Outcome dispatch(const CheckContext& ctx, const CheckRequest& req) {
  if (req.kind == "haag-duality") return check_haag_duality(ctx, req);
  if (req.kind == "double-interval-duality") return check_double_interval_duality(ctx, req);
  if (req.kind == "additivity") return check_additivity(ctx, req);
  if (req.kind == "graded-locality") return check_graded_locality(ctx, req);
  if (req.kind == "graded-duality") return check_graded_duality(ctx, req);
  if (req.kind == "global-graded-duality") return check_global_graded_duality(ctx, req);
  if (req.kind == "condition-aa") return check_condition_aa(ctx, req);
  if (req.kind == "cocycle-triviality") return check_cocycle_triviality(ctx, req);
  if (req.kind == "z0-table") return check_z0_table(ctx, req);
  if (req.kind == "braiding") return check_braiding(ctx, req);
  if (req.kind == "geometry") return check_geometry(ctx, req);
  if (req.kind == "poset-facts") return check_poset_facts(ctx, req);
  if (req.kind == "partition-of-unity") return check_partition_of_unity(ctx, req);
  if (req.kind == "locality") return check_locality(ctx, req);
  throw ValidationError("unknown check kind: " + req.kind);
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // recover line/column from the byte offset
    size_t line = 1, col = 1;
    for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') { ++line; col = 1; } else ++col;
    }
    throw ParseError("scenario parse error at line " + std::to_string(line) +
                     ", column " + std::to_string(col) + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError("scenario must be a JSON object");

  Scenario sc;
  try {
    if (doc.contains("window")) {
      sc.window_lo = parse_rat(doc["window"].at(0).get<std::string>());
      sc.window_hi = parse_rat(doc["window"].at(1).get<std::string>());
    }
    if (doc.contains("step")) sc.step = parse_rat(doc["step"].get<std::string>());
    if (doc.contains("posetKind")) sc.poset_kind = doc["posetKind"].get<std::string>();
    if (doc.contains("seed")) sc.seed = doc["seed"].get<uint64_t>();
    if (doc.contains("limits")) {
      const auto& l = doc["limits"];
      if (l.contains("maxElements")) sc.limits.max_elements = l["maxElements"].get<size_t>();
      if (l.contains("maxPathLen")) sc.limits.max_path_len = l["maxPathLen"].get<size_t>();
      if (l.contains("sampleCounts")) sc.limits.sample_count = l["sampleCounts"].get<size_t>();
    }
    if (doc.contains("checks")) {
      for (const auto& c : doc["checks"]) {
        CheckRequest req;
        req.kind = c.at("kind").get<std::string>();
        for (auto it = c.begin(); it != c.end(); ++it)
          if (it.key() != "kind") {
            if (it.value().is_string())
              req.params[it.key()] = it.value().get<std::string>();
            else
              req.params[it.key()] = it.value().dump();
          }
        sc.checks.push_back(std::move(req));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("scenario field error: ") + e.what());
  }

  // validation
  if (!(sc.window_lo < sc.window_hi)) throw ValidationError("window must be nonempty");
  if (!(sc.step > 0)) throw ValidationError("step must be positive");
  const Rat cells = (sc.window_hi - sc.window_lo) / sc.step;
  if (!is_integer(cells) || to_long(cells) < 4)
    throw ValidationError("step must divide the window into at least 4 cells");
  if (!poset_kind_from_name(sc.poset_kind))
    throw ValidationError("unknown poset kind: " + sc.poset_kind);
  for (const auto& c : sc.checks) {
    if (!known_kind(c.kind)) throw ParseError("unknown check kind: '" + c.kind + "'");
    if (c.kind == "poset-facts" && sc.window_lo != -sc.window_hi)
      throw ValidationError("poset-facts needs a window symmetric about 0");
  }
  return sc;
}

RunReport run(const Scenario& scenario, unsigned jobs) {
  RunReport report;
  report.scenario = scenario;
  AmbientSpace ambient(scenario.window_lo, scenario.window_hi, scenario.step);
  ambient.gram();  // fill the cache before any parallel use

  auto run_one = [&](size_t idx) {
    const auto& req = scenario.checks[idx];
    CheckContext ctx{&scenario, &ambient,
                     scenario.seed ^ (0x9e3779b97f4a7c15ULL * (idx + 1))};
    CheckResult r;
    r.name = req.kind;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      Outcome out = dispatch(ctx, req);
      r.status = out.pass ? "pass" : "fail";
      r.details = out.details;
      r.witness = out.witness;
    } catch (const ValidationError&) {
      throw;
    } catch (const Error& e) {
      r.status = "fail";
      r.details.emplace_back("error", e.what());
    }
    r.elapsed_us = (uint64_t)std::chrono::duration_cast<std::chrono::microseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
    return r;
  };

  report.results.resize(scenario.checks.size());
  if (jobs <= 1) {
    for (size_t i = 0; i < scenario.checks.size(); ++i)
      report.results[i] = run_one(i);
  } else {
    std::vector<std::future<CheckResult>> futures;
    for (size_t i = 0; i < scenario.checks.size(); ++i)
      futures.push_back(std::async(std::launch::async, run_one, i));
    for (size_t i = 0; i < futures.size(); ++i) report.results[i] = futures[i].get();
  }
  for (const auto& r : report.results) {
    if (r.status == "pass") ++report.passed;
    else if (r.status == "fail") ++report.failed;
    else ++report.skipped;
  }
  return report;
}

std::string emit(const RunReport& report, ReportFormat format) {
  if (format == ReportFormat::Csv) {
    std::ostringstream os;
    os << "check,status,elapsed_us,details\n";
    for (const auto& r : report.results) {
      os << r.name << "," << r.status << "," << r.elapsed_us << ",";
      std::string detail;
      for (const auto& [k, v] : r.details) detail += k + "=" + v + ";";
      os << '"' << detail << '"' << "\n";
    }
    return os.str();
  }
  Json j;
  Json input;
  input["window"] = Json::array({format_rat(report.scenario.window_lo),
                                 format_rat(report.scenario.window_hi)});
  input["step"] = format_rat(report.scenario.step);
  input["posetKind"] = report.scenario.poset_kind;
  input["seed"] = report.scenario.seed;
  Json checks = Json::array();
  for (const auto& c : report.scenario.checks) {
    Json jc;
    jc["kind"] = c.kind;
    for (const auto& [k, v] : c.params) jc[k] = v;
    checks.push_back(jc);
  }
  input["checks"] = checks;
  j["input"] = input;
  Json results = Json::array();
  for (const auto& r : report.results) {
    Json jr;
    jr["name"] = r.name;
    jr["status"] = r.status;
    Json det;
    for (const auto& [k, v] : r.details) det[k] = v;
    jr["details"] = det;
    if (!r.witness.empty()) jr["witness"] = Json::parse(r.witness);
    jr["elapsed_us"] = r.elapsed_us;
    results.push_back(jr);
  }
  j["results"] = results;
  Json summary;
  summary["passed"] = report.passed;
  summary["failed"] = report.failed;
  summary["skipped"] = report.skipped;
  j["summary"] = summary;
  return j.dump(2);
}

Scenario default_scenario() {
  Scenario sc;
  sc.checks = {
      {"poset-facts", {}},
      {"haag-duality", {{"tag", "Va"}, {"count", "20"}}},
      {"double-interval-duality", {{"count", "10"}}},
      {"additivity", {{"count", "10"}}},
      {"graded-locality", {{"samples", "1000"}}},
      {"graded-duality", {{"count", "10"}}},
      {"global-graded-duality", {{"count", "10"}}},
      {"condition-aa", {{"pairs", "5"}, {"maxPathLen", "3"}}},
      {"cocycle-triviality", {}},
      {"z0-table", {}},
      {"braiding", {{"samples", "100"}}},
      {"geometry", {{"mobiusCount", "50"}, {"xiCount", "20"}}},
      {"partition-of-unity", {{"samples", "500"}}},
      {"locality", {{"tag", "Va"}, {"expect", "local"}}},
  };
  return sc;
}

}  // namespace netcoh
