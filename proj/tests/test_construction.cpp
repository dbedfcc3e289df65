#include <doctest.h>

#include <random>

#include "princlat/construction.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace princlat;
using R = BridgeTemplate::Role;

namespace {

Error caught(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  FAIL("no exception");
  return Error(Errc::Parse, "unreachable");
}

bool princ_matches(const FiniteLattice& l, const Poset& p) {
  return poset_isomorphic(princ(l).order, p).has_value();
}

/// Restricted to old elements, cg in the extension equals the old cg, joined
/// with cg(δp, εp) when a horizontal step bridged (p, q) and q <= γ(x, y).
bool conservative(const AuxStructure& old, const AuxStructure& big, const TraceStep& step) {
  const FiniteLattice& l = old.lattice;
  std::optional<Index> p, q;
  if (step.kind == StepKind::Horizontal) {
    p = old.colors.find(step.parameters[0]);
    q = old.colors.find(step.parameters[1]);
  }
  for (const auto& pr : ordered_pairs(l)) {
    std::vector<OrderedPair> gens{pr};
    if (p && old.colors.leq(*q, old.gamma(pr))) gens.push_back({old.delta[*p], old.epsilon[*p]});
    const Partition expected = con_gen(l, gens), large = cg(big.lattice, pr.lo, pr.hi);
    for (Index x = 0; x < l.size(); ++x)
      for (Index y = 0; y < l.size(); ++y)
        if (expected.same_block(x, y) != large.same_block(x, y)) return false;
  }
  return true;
}

Poset diamond() { return fixtures::antichain_middle(2); }

}  // namespace

TEST_CASE("bridge template") {
  const BridgeTemplate& b = bridge_template();
  const FiniteLattice& l = b.lattice;
  CHECK(l.size() == 11);
  CHECK(cover_pairs(l).size() == 15);
  CHECK(l.bottom() == R::Zero);
  CHECK(l.top() == R::One);
  const std::vector<std::pair<R, R>> covers{
      {R::Zero, R::Ap}, {R::Zero, R::C}, {R::C, R::D},  {R::C, R::Aq}, {R::D, R::E},
      {R::D, R::F},     {R::Ap, R::Bp},  {R::Ap, R::F}, {R::E, R::Bq}, {R::E, R::G},
      {R::Aq, R::Bq},   {R::F, R::G},    {R::Bp, R::G}, {R::Bq, R::One}, {R::G, R::One}};
  for (const auto& [x, y] : covers) CHECK(l.covers(x, y));

  const std::vector<Index> boundary(std::begin(b.boundary), std::end(b.boundary));
  CHECK(is_01_sublattice(l, boundary));
  CHECK(oracles::brute_isomorphic(l.as_poset().restrict_to(boundary), fixtures::n6().as_poset()));
  CHECK(classify_n6(l, R::Ap, R::Bp, R::Aq, R::Bq) == N6Class::SpanningN6);
  CHECK(lattice_length(l) == 5);

  for (Index z : {R::C, R::D, R::E}) {
    const auto ideal = principal_ideal(l.as_poset(), z);
    for (Index x : ideal)
      for (Index y : ideal) CHECK_FALSE(l.parallel(x, y));
  }

  CHECK(perspective(l, {R::C, R::D}, {R::Aq, R::Bq}));
  CHECK(perspective(l, {R::C, R::E}, {R::Aq, R::Bq}));
  CHECK(perspective(l, {R::D, R::E}, {R::F, R::G}));
  CHECK(perspective(l, {R::F, R::G}, {R::Ap, R::Bp}));

  const Partition cp = cg(l, R::Ap, R::Bp), cq = cg(l, R::Aq, R::Bq);
  for (const auto& pr : b.p_pairs) CHECK(cg(l, pr.lo, pr.hi) == cp);
  for (const auto& pr : b.q_pairs) CHECK(cg(l, pr.lo, pr.hi) == cq);
  CHECK(cp.refines(cq));
  CHECK(cp != cq);
  CHECK(princ(l).congruences.size() == 11);
}

TEST_CASE("trivial structure") {
  const AuxStructure a = trivial_aux("z");
  CHECK(a.lattice.size() == 1);
  CHECK(a.colors.label(0) == "z");
  CHECK(a.delta == std::vector<Index>{0});
  CHECK(a.epsilon == std::vector<Index>{0});
  CHECK(check_aux(a).passed());
}

TEST_CASE("vertical extension sizes and principal congruences") {
  const AuxStructure sk = vertical_skeleton();
  CHECK(sk.lattice.size() == 9);
  CHECK(princ_matches(sk.lattice, fixtures::chain_poset(2)));
  CHECK(check_aux(sk).passed());

  const ExtensionResult one = vertical_extend(trivial_aux(), {"s"});
  CHECK(one.aux.lattice.size() == 11);
  CHECK(princ_matches(one.aux.lattice, fixtures::chain_poset(3)));
  CHECK(one.step.kind == StepKind::Vertical);
  CHECK(one.step.parameters == std::vector<std::string>{"s", "1"});
  CHECK(one.step.elements_before == 1);
  CHECK(one.step.elements_after == 11);

  for (std::size_t k = 1; k <= 4; ++k) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= k; ++i) names.push_back("h" + std::to_string(i));
    const ExtensionResult v = vertical_extend(trivial_aux(), names);
    CHECK(v.aux.lattice.size() == 2 * k + 9);
    CHECK(princ_matches(v.aux.lattice, fixtures::antichain_middle(k)));
    CHECK(check_aux(v.aux).passed());
    CHECK(aux_substructure(trivial_aux(), v.aux, v.embed));
    // New parallel colors meet in strong quadruples.
    for (std::size_t i = 1; i <= k; ++i)
      for (std::size_t j = 1; j <= k; ++j)
        if (i != j)
          CHECK(classify_n6(v.aux.lattice, v.aux.delta[i], v.aux.epsilon[i], v.aux.delta[j],
                            v.aux.epsilon[j]) == N6Class::StrongN6);
  }
}

TEST_CASE("vertical extension of a nontrivial structure") {
  const AuxStructure base = vertical_extend(trivial_aux(), {"s", "u"}).aux;
  const ExtensionResult v = vertical_extend(base, {"w"}, "top");
  CHECK(check_aux(v.aux).passed());
  CHECK(aux_substructure(base, v.aux, v.embed));
  CHECK(conservative(base, v.aux, v.step));
  CHECK(v.aux.colors.label(*v.aux.top_color()) == "top");
  // The old top color is no longer greatest.
  const Index old_top = *base.top_color();
  CHECK(v.aux.colors.less(old_top, *v.aux.top_color()));
}

TEST_CASE("vertical extension rejects label collisions") {
  const AuxStructure a = vertical_extend(trivial_aux(), {"s"}).aux;
  CHECK(caught([&] { vertical_extend(a, {"s"}, "t2"); }).code() == Errc::LabelCollision);
  CHECK(caught([&] { vertical_extend(a, {"w"}, "1"); }).code() == Errc::LabelCollision);
  CHECK(caught([&] { vertical_extend(a, {"w", "w"}, "t2"); }).code() == Errc::LabelCollision);
  CHECK(caught([&] { vertical_extend(a, {"w"}, "w"); }).code() == Errc::LabelCollision);
}

TEST_CASE("horizontal extension") {
  const AuxStructure base = vertical_extend(trivial_aux(), {"s", "u", "w"}).aux;
  const Index s = *base.colors.find("s"), u = *base.colors.find("u");
  const ExtensionResult h = horizontal_extend(base, s, u);
  const FiniteLattice& l = h.aux.lattice;

  CHECK(l.size() == base.lattice.size() + 5);
  CHECK(h.step.kind == StepKind::Horizontal);
  CHECK(h.step.parameters == std::vector<std::string>{"s", "u"});
  CHECK(check_aux(h.aux).passed());
  CHECK(aux_substructure(base, h.aux, h.embed));
  CHECK(conservative(base, h.aux, h.step));
  CHECK(h.aux.delta == base.delta);
  CHECK(h.aux.epsilon == base.epsilon);

  // ν' is the closure of ν plus (s, u).
  std::vector<IndexPair> seed = base.colors.pairs();
  seed.emplace_back(s, u);
  const auto expected = oracles::naive_quos(base.colors.size(), seed);
  for (Index x = 0; x < base.colors.size(); ++x)
    for (Index y = 0; y < base.colors.size(); ++y)
      CHECK(h.aux.colors.leq(x, y) == bool(expected[x][y]));

  const Partition cs = cg(l, h.aux.delta[s], h.aux.epsilon[s]);
  const Partition cu = cg(l, h.aux.delta[u], h.aux.epsilon[u]);
  CHECK(cs.refines(cu));
  CHECK(cs != cu);

  // The five new elements form a copy of the bridge over the spanning quadruple.
  std::vector<Index> sub{l.bottom(), base.delta[s], base.epsilon[s], base.delta[u],
                         base.epsilon[u]};
  for (Index x = Index(base.lattice.size()); x < l.size(); ++x) sub.push_back(x);
  sub.push_back(l.top());
  CHECK(is_01_sublattice(l, sub));
  CHECK(oracles::brute_isomorphic(l.as_poset().restrict_to(sub), bridge_template().lattice.as_poset()));
}

TEST_CASE("horizontal extension preconditions") {
  const AuxStructure base = vertical_extend(trivial_aux(), {"s", "u"}).aux;
  const Index s = *base.colors.find("s"), u = *base.colors.find("u");
  const Index top = *base.top_color();
  CHECK(caught([&] { horizontal_extend(base, 0, s); }).code() == Errc::PreconditionViolated);
  CHECK(caught([&] { horizontal_extend(base, s, s); }).code() == Errc::PreconditionViolated);
  CHECK(caught([&] { horizontal_extend(base, s, top); }).code() == Errc::PreconditionViolated);
  const AuxStructure bridged = horizontal_extend(base, s, u).aux;
  CHECK(caught([&] { horizontal_extend(bridged, s, u); }).code() == Errc::PreconditionViolated);
  CHECK(caught([&] { horizontal_extend(bridged, u, s); }).code() == Errc::PreconditionViolated);
}

TEST_CASE("combin extension") {
  SUBCASE("2-chain target is the plain vertical step") {
    const std::vector<Index> embed{0};
    const CombinResult c = combin_extend(trivial_aux(), fixtures::chain_poset(2), embed);
    CHECK(c.aux.lattice == vertical_skeleton().lattice);
    CHECK(c.trace.size() == 1);
  }
  SUBCASE("diamond needs no bridge") {
    const std::vector<Index> embed{0};
    const CombinResult c = combin_extend(trivial_aux(), diamond(), embed);
    CHECK(c.aux.lattice.size() == 13);
    CHECK(c.trace.size() == 1);
    CHECK(princ_matches(c.aux.lattice, diamond()));
  }
  SUBCASE("4-chain needs one bridge") {
    const std::vector<Index> embed{0};
    const CombinResult c = combin_extend(trivial_aux(), fixtures::chain_poset(4), embed);
    REQUIRE(c.trace.size() == 2);
    CHECK(c.trace[0].elements_after == 13);
    CHECK(c.trace[1].kind == StepKind::Horizontal);
    CHECK(c.aux.lattice.size() == 18);
  }
  SUBCASE("already complete") {
    const AuxStructure a = vertical_skeleton();
    const std::vector<Index> embed{0, 1};
    const CombinResult c = combin_extend(a, fixtures::chain_poset(2), embed);
    CHECK(c.trace.empty());
    CHECK(c.aux.lattice == a.lattice);
  }
}

TEST_CASE("combin extension rejects non-ideals") {
  const AuxStructure a = vertical_extend(trivial_aux(), {"s"}).aux;  // 0 < s < 1
  const Poset c4 = fixtures::chain_poset(4);
  // {0, 2, 3} skips 1, so it is not a down-set.
  std::vector<Index> gap{0, 2, 3};
  CHECK(caught([&] { combin_extend(a, c4, gap); }).code() == Errc::NotAnIdeal);
  std::vector<Index> short_embed{0, 1};
  CHECK(caught([&] { combin_extend(a, c4, short_embed); }).code() == Errc::NotAnIdeal);
  std::vector<Index> repeated{0, 1, 1};
  CHECK(caught([&] { combin_extend(a, c4, repeated); }).code() == Errc::NotAnIdeal);
  // Order mismatch: s and 1 are comparable in H but parallel in the diamond.
  std::vector<Index> parallel{0, 1, 2};
  CHECK(caught([&] { combin_extend(a, diamond(), parallel); }).code() == Errc::NotAnIdeal);
}

TEST_CASE("represent concrete sizes") {
  CHECK(represent(fixtures::chain_poset(1)).lattice().size() == 1);
  CHECK(represent(fixtures::chain_poset(2)).lattice().size() == 9);
  CHECK(represent(fixtures::chain_poset(3)).lattice().size() == 11);
  CHECK(represent(fixtures::chain_poset(4)).lattice().size() == 18);
  for (std::size_t k = 1; k <= 4; ++k)
    CHECK(represent(fixtures::antichain_middle(k)).lattice().size() == 2 * k + 9);
}

TEST_CASE("represent on every bounded poset up to 6 elements") {
  for (const Poset& p : fixtures::bounded_posets_up_to(6)) {
    std::size_t stages = 0;
    const Representation r = represent(p, [&](const AuxStructure& a, const TraceStep&) {
      ++stages;
      CHECK_MESSAGE(check_aux(a).passed(), check_aux(a).digest());
    });
    CHECK(r.witness.validates(r.princ.order, p));
    CHECK(princ_matches(r.lattice(), p));
    CHECK(stages == r.trace.size());
    CHECK(r.color_of.size() == p.size());
  }
}

TEST_CASE("represent on random shuffled posets") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 30; ++i) {
    const std::size_t n = 3 + i % 6;
    const Poset p = fixtures::random_bounded_poset(rng, n);
    const Representation r = represent(p);
    CHECK(r.witness.validates(r.princ.order, p));
    CHECK(check_aux(r.aux).passed());
  }
}

TEST_CASE("represent is deterministic") {
  const Poset p = fixtures::poset_from_pairs(5, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {1, 4}, {3, 4}});
  const Representation a = represent(p), b = represent(p);
  CHECK(a.lattice() == b.lattice());
  CHECK(a.lattice().labels() == b.lattice().labels());
  CHECK(a.aux.gamma == b.aux.gamma);
  CHECK(a.witness.map == b.witness.map);
}

TEST_CASE("represent rejects bad inputs") {
  // Two minimal elements.
  const Poset no_zero = fixtures::poset_from_pairs(3, {{0, 2}, {1, 2}});
  const Error e1 = caught([&] { represent(no_zero); });
  CHECK(e1.code() == Errc::NoZero);
  // Zero with two maximal elements.
  const Poset v = fixtures::poset_from_pairs(3, {{0, 1}, {0, 2}});
  CHECK(caught([&] { represent(v); }).code() == Errc::NotDirected);
}

TEST_CASE("spanning invariant during combin") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    const Poset p = fixtures::random_bounded_poset(rng, 4 + i % 5);
    const Index zero = *p.least(), one = *p.greatest();
    std::vector<std::pair<std::string, std::string>> d;
    for (Index x = 0; x < p.size(); ++x)
      for (Index y = 0; y < p.size(); ++y)
        if (x != zero && y != one && p.less(x, y)) d.emplace_back(p.label(x), p.label(y));
    represent(p, [&](const AuxStructure& a, const TraceStep&) {
      for (const auto& [xl, yl] : d) {
        const Index x = *a.colors.find(xl), y = *a.colors.find(yl);
        if (!a.colors.parallel(x, y)) continue;
        const N6Class c = classify_n6(a.lattice, a.delta[x], a.epsilon[x], a.delta[y], a.epsilon[y]);
        CHECK((c == N6Class::SpanningN6 || c == N6Class::StrongN6));
      }
    });
  }
}

TEST_CASE("old pairs keep their congruences up to the new bridge") {
  const Poset p = fixtures::poset_from_pairs(6, {{0, 1}, {0, 2}, {1, 3}, {2, 4}, {3, 5}, {4, 5}, {1, 4}});
  std::vector<AuxStructure> stages{trivial_aux(p.label(0))};
  std::vector<TraceStep> steps;
  represent(p, [&](const AuxStructure& a, const TraceStep& t) {
    stages.push_back(a);
    steps.push_back(t);
  });
  REQUIRE(stages.size() >= 3);
  for (std::size_t i = 1; i < stages.size(); ++i)
    CHECK(conservative(stages[i - 1], stages[i], steps[i - 1]));
}

TEST_CASE("bridges from an earlier top color") {
  // Stage lattices for ↓1 and then ↓4 of the 5-chain; the second stage
  // bridges the old top color 1 to the new color 2.
  const Poset p = fixtures::chain_poset(5);
  const std::vector<Index> gens{0, 1, 4};
  std::vector<Stage> out;
  std::vector<AuxStructure> seen;
  represent_chain(p, gens, [&](Stage s) { out.push_back(std::move(s)); },
                  [&](const AuxStructure& a, const TraceStep& t) {
                    seen.push_back(a);
                    CHECK_MESSAGE(check_aux(a).passed(), check_aux(a).digest());
                    if (t.kind == StepKind::Horizontal && t.parameters[0] == p.label(1)) {
                      // The previous stage is the 9-element skeleton.
                      const Index old_bottom = out[1].aux.lattice.bottom();
                      const Index old_top = out[1].aux.lattice.top();
                      const Index top = a.lattice.top();
                      CHECK(a.lattice.label(a.lattice.bottom()) != a.lattice.label(old_bottom));
                      CHECK(cg(a.lattice, old_bottom, old_top) != Partition::full(a.lattice.size()));
                      CHECK_FALSE(cg(a.lattice, old_bottom, old_top).same_block(old_top, top));
                    }
                  });
  REQUIRE(out.size() == 3);
  CHECK(princ_matches(out[2].aux.lattice, p));
  CHECK(aux_substructure(out[1].aux, out[2].aux, out[2].embed));
}

TEST_CASE("explicit p quotient must carry color p") {
  const AuxStructure base = vertical_extend(trivial_aux(), {"s", "u"}).aux;
  const Index s = *base.colors.find("s"), u = *base.colors.find("u");
  const OrderedPair wrong{base.lattice.bottom(), base.epsilon[s]};
  CHECK(caught([&] { horizontal_extend(base, s, u, wrong); }).code() == Errc::PreconditionViolated);
  const OrderedPair same{base.delta[s], base.epsilon[s]};
  CHECK(horizontal_extend(base, s, u, same).aux.lattice == horizontal_extend(base, s, u).aux.lattice);
}

TEST_CASE("top color law") {
  const Representation r = represent(fixtures::chain_poset(5));
  const Index top = *r.aux.top_color();
  for (const auto& pr : ordered_pairs(r.lattice()))
    CHECK((r.aux.gamma(pr) == top) == cg(r.lattice(), pr.lo, pr.hi).is_full());
}

TEST_CASE("represent_chain") {
  SUBCASE("bottom then top matches represent") {
    const Poset p = fixtures::poset_from_pairs(5, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}});
    std::vector<Stage> out;
    const std::vector<Index> gens{0, 4};
    represent_chain(p, gens, [&](Stage s) { out.push_back(std::move(s)); });
    REQUIRE(out.size() == 2);
    CHECK(out[0].aux.lattice.size() == 1);
    const Representation r = represent(p);
    CHECK(poset_isomorphic(out[1].aux.lattice.as_poset(), r.lattice().as_poset()).has_value());
    CHECK(out[1].witness.validates(princ(out[1].aux.lattice).order, out[1].ideal_order));
  }
  SUBCASE("growing ideals embed into each other") {
    const Poset p = fixtures::chain_poset(5);
    const std::vector<Index> gens{0, 1, 3, 4};
    std::vector<Stage> out;
    represent_chain(p, gens, [&](Stage s) { out.push_back(std::move(s)); });
    REQUIRE(out.size() == 4);
    for (std::size_t i = 0; i < out.size(); ++i) {
      CHECK(out[i].ideal == principal_ideal(p, gens[i]));
      CHECK(princ_matches(out[i].aux.lattice, out[i].ideal_order));
      CHECK(check_aux(out[i].aux).passed());
      if (i > 0) CHECK(aux_substructure(out[i - 1].aux, out[i].aux, out[i].embed));
    }
  }
  SUBCASE("constant zero sequence") {
    const Poset p = fixtures::chain_poset(3);
    const std::vector<Index> gens{0, 0, 0};
    std::size_t n = 0;
    represent_chain(p, gens, [&](Stage s) {
      CHECK(s.aux.lattice.size() == 1);
      ++n;
    });
    CHECK(n == 3);
  }
  SUBCASE("rejects bad chains") {
    const Poset p = diamond();
    const auto ignore = [](Stage) {};
    const std::vector<Index> not_zero{1, 3};
    CHECK(caught([&] { represent_chain(p, not_zero, ignore); }).code() == Errc::NotAChainOfIdeals);
    const std::vector<Index> crossing{0, 1, 2};
    CHECK(caught([&] { represent_chain(p, crossing, ignore); }).code() == Errc::NotAChainOfIdeals);
    CHECK(caught([&] { represent_chain(p, {}, ignore); }).code() == Errc::NotAChainOfIdeals);
  }
}

TEST_CASE("bridges hang from the old top first") {
  // Index order would bridge 1 < 3 before 2 < 3.
  const Poset p = fixtures::chain_poset(5);
  const std::vector<Index> gens{0, 2, 4};
  std::vector<Stage> out;
  represent_chain(p, gens, [&](Stage s) { out.push_back(std::move(s)); });
  REQUIRE(out.size() == 3);
  REQUIRE(out[2].trace.size() == 2);
  CHECK(out[2].trace[1].parameters == std::vector<std::string>{p.label(2), p.label(3)});
  CHECK(princ_matches(out[2].aux.lattice, p));
  CHECK(aux_substructure(out[1].aux, out[2].aux, out[2].embed));
}

TEST_CASE("an inner old color cannot reach a new color off the old top") {
  // 0 < a < t < T and a < q < T with q not above t.
  const Poset p = fixtures::poset_from_pairs(5, {{0, 1}, {1, 2}, {2, 4}, {1, 3}, {3, 4}},
                                             {"0", "a", "t", "q", "T"});
  const std::vector<Index> gens{0, 2, 4};
  std::vector<Stage> out;
  CHECK(caught([&] { represent_chain(p, gens, [&](Stage s) { out.push_back(std::move(s)); }); }).code() ==
        Errc::VerificationFailed);
  REQUIRE(out.size() == 2);

  const AuxStructure& old = out[1].aux;
  const ExtensionResult v = vertical_extend(old, {"q"}, "T");
  const Index a = *v.aux.colors.find("a"), q = *v.aux.colors.find("q");
  const ExtensionResult h = horizontal_extend(v.aux, a, q);
  CHECK_FALSE(check_aux(h.aux).passed());
  // The old bounds now collapse a pair colored with the new top.
  const FiniteLattice& l = h.aux.lattice;
  const Index g = *l.find("g[a,q]");
  const Partition whole_old = cg(l, old.lattice.bottom(), old.lattice.top());
  CHECK(whole_old.same_block(g, l.top()));
  CHECK(h.aux.gamma(g, l.top()) == *h.aux.top_color());
  CHECK(old.gamma(old.lattice.bottom(), old.lattice.top()) == *old.colors.find("t"));
}
