#include "princlat/construction.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace princlat {

namespace {

FiniteLattice build_bridge() {
  using R = BridgeTemplate::Role;
  const std::vector<IndexPair> covers = {
      {R::Zero, R::Ap}, {R::Zero, R::C}, {R::C, R::D},   {R::C, R::Aq}, {R::D, R::E},
      {R::D, R::F},     {R::Ap, R::Bp},  {R::Ap, R::F},  {R::E, R::Bq}, {R::E, R::G},
      {R::Aq, R::Bq},   {R::F, R::G},    {R::Bp, R::G},  {R::Bq, R::One}, {R::G, R::One},
  };
  std::vector<std::string> labels = {"0", "a_p", "b_p", "a_q", "b_q", "c",
                                     "d", "e",   "f",   "g",   "1"};
  const QuasiOrder q = quos(R::RoleCount, covers);
  return FiniteLattice::from_leq(q.matrix(), std::move(labels));
}

void check_fresh(const std::set<std::string>& taken, const std::string& label) {
  if (taken.count(label) != 0)
    throw Error(Errc::LabelCollision, "label '" + label + "' is already in use");
}

/// Lists every old non-reflexive pair explicitly so the fallback can change.
Coloring pin_old_pairs(const AuxStructure& a) {
  Coloring g = a.gamma;
  if (!g.fallback()) return g;
  for (const auto& p : ordered_pairs(a.lattice))
    if (!p.reflexive() && !g.explicit_color(p.lo, p.hi)) g.set(p.lo, p.hi, *g.fallback());
  return g;
}

std::string color_list(const QuasiOrder& h, Index p, Index q) {
  return h.label(p) + "," + h.label(q);
}

}  // namespace

const BridgeTemplate& bridge_template() {
  static const BridgeTemplate t{build_bridge()};
  return t;
}

const char* step_kind_name(StepKind k) noexcept {
  return k == StepKind::Vertical ? "vertical" : "horizontal";
}

AuxStructure trivial_aux(const std::string& zero_label) {
  AuxStructure a;
  a.lattice = FiniteLattice::from_leq(BitMatrix::identity(1), {"x0"});
  a.gamma = Coloring(0);
  a.colors = QuasiOrder::from_matrix(BitMatrix::identity(1), {zero_label});
  a.delta = {0};
  a.epsilon = {0};
  return a;
}

ExtensionResult vertical_extend(const AuxStructure& a, const std::vector<std::string>& new_colors,
                                const std::string& top_color) {
  const FiniteLattice& l = a.lattice;
  const QuasiOrder& h = a.colors;
  const std::size_t n = l.size();
  const std::size_t hn = h.size();
  const std::size_t k = new_colors.size();

  std::set<std::string> color_labels(h.labels().begin(), h.labels().end());
  for (const auto& w : new_colors) {
    check_fresh(color_labels, w);
    color_labels.insert(w);
  }
  check_fresh(color_labels, top_color);

  // Colors: old, then K, then the new top.
  std::vector<std::string> hlabels = h.labels();
  hlabels.insert(hlabels.end(), new_colors.begin(), new_colors.end());
  hlabels.push_back(top_color);
  const Index top_c = Index(hn + k);
  std::vector<IndexPair> nu = h.pairs();
  for (Index x = 0; x <= top_c; ++x) {
    nu.emplace_back(a.zero_color(), x);
    nu.emplace_back(x, top_c);
  }
  QuasiOrder colors = quos(hn + k + 1, nu, hlabels);

  // Elements: old, 0, 1, a_w b_w per new color, a t b for the top color, m1 m2 m3.
  const Index bot = Index(n), top = Index(n + 1);
  const auto a_of = [&](std::size_t i) { return Index(n + 2 + 2 * i); };
  const auto b_of = [&](std::size_t i) { return Index(n + 3 + 2 * i); };
  const Index b_top = b_of(k), t = Index(n + 4 + 2 * k);
  const Index m0 = t + 1;
  const std::size_t size = m0 + 3;

  std::set<std::string> taken(l.labels().begin(), l.labels().end());
  std::vector<std::string> labels = l.labels();
  const auto add = [&](const std::string& s) {
    check_fresh(taken, s);
    taken.insert(s);
    labels.push_back(s);
  };
  add("0[" + top_color + "]");
  add("1[" + top_color + "]");
  for (const auto& w : new_colors) {
    add("a[" + w + "]");
    add("b[" + w + "]");
  }
  add("a[" + top_color + "]");
  add("b[" + top_color + "]");
  add("t[" + top_color + "]");
  for (int i = 1; i <= 3; ++i) add("m" + std::to_string(i) + "[" + top_color + "]");

  BitMatrix leq = BitMatrix::identity(size);
  for (Index x = 0; x < n; ++x)
    for (std::size_t y : l.leq_matrix().row_indices(x)) leq.set(x, y);
  for (Index x = 0; x < size; ++x) {
    leq.set(bot, x);
    leq.set(x, top);
  }
  for (std::size_t i = 0; i <= k; ++i) leq.set(a_of(i), b_of(i));
  leq.set(t, b_top);

  AuxStructure out;
  out.lattice = FiniteLattice::from_leq(std::move(leq), std::move(labels));
  out.gamma = pin_old_pairs(a);
  out.gamma.set_fallback(top_c);
  for (std::size_t i = 0; i < k; ++i) out.gamma.set(a_of(i), b_of(i), Index(hn + i));
  out.colors = std::move(colors);
  out.delta = a.delta;
  out.epsilon = a.epsilon;
  for (std::size_t i = 0; i <= k; ++i) {
    out.delta.push_back(a_of(i));
    out.epsilon.push_back(b_of(i));
  }

  TraceStep step{StepKind::Vertical, new_colors, n, size};
  step.parameters.push_back(top_color);
  return {std::move(out), Embedding::identity(n, hn), std::move(step)};
}

ExtensionResult horizontal_extend(const AuxStructure& a, Index p, Index q,
                                  std::optional<OrderedPair> p_quotient) {
  using R = BridgeTemplate::Role;
  const FiniteLattice& l = a.lattice;
  const QuasiOrder& h = a.colors;
  const Index zero = a.zero_color();
  if (p >= h.size() || q >= h.size())
    throw Error(Errc::IndexOutOfRange, "horizontal_extend: color out of range", {p, q});
  if (p == zero || q == zero)
    throw Error(Errc::PreconditionViolated,
                "horizontal_extend: colors must be nonzero (" + color_list(h, p, q) + ")", {p, q});
  if (!h.parallel(p, q))
    throw Error(Errc::PreconditionViolated,
                "horizontal_extend: colors are not parallel (" + color_list(h, p, q) + ")", {p, q});
  const OrderedPair pq = p_quotient.value_or(OrderedPair{a.delta[p], a.epsilon[p]});
  if (pq.lo >= l.size() || pq.hi >= l.size() || !l.less(pq.lo, pq.hi) || a.gamma(pq) != p)
    throw Error(Errc::PreconditionViolated,
                "horizontal_extend: the quotient standing for p is not a p-colored pair",
                {pq.lo, pq.hi});
  const N6Class cls = classify_n6(l, pq.lo, pq.hi, a.delta[q], a.epsilon[q]);
  if (cls != N6Class::SpanningN6 && cls != N6Class::StrongN6)
    throw Error(Errc::PreconditionViolated,
                "horizontal_extend: quadruple is not spanning (" + color_list(h, p, q) + ")",
                {p, q});
  const auto top_color = a.top_color();
  if (!top_color)
    throw Error(Errc::PreconditionViolated, "horizontal_extend: H has no greatest color");

  const FiniteLattice& s6 = bridge_template().lattice;
  const std::size_t n = l.size();
  const std::size_t size = n + 5;

  // Template role -> element of Sp L.
  std::array<Index, R::RoleCount> at{};
  at[R::Zero] = l.bottom();
  at[R::Ap] = pq.lo;
  at[R::Bp] = pq.hi;
  at[R::Aq] = a.delta[q];
  at[R::Bq] = a.epsilon[q];
  at[R::One] = l.top();
  for (Index r = R::C; r <= R::G; ++r) at[r] = Index(n + r - R::C);

  // Element of Sp L -> template role, for S6 only.
  std::vector<Index> role(size, Index(-1));
  for (Index r = 0; r < R::RoleCount; ++r) role[at[r]] = r;
  const auto in_s6 = [&](Index x) { return role[x] != Index(-1); };
  const auto is_new = [&](Index x) { return x >= n; };

  // Least boundary role above / greatest below, inside S6 or inside L.
  const auto extreme_boundary = [&](auto&& related, bool least) {
    std::optional<Index> best;
    for (Index r : BridgeTemplate::boundary) {
      if (!related(r)) continue;
      if (!best || (least ? s6.leq(r, *best) : s6.leq(*best, r))) best = r;
    }
    for (Index r : BridgeTemplate::boundary)
      if (related(r) && best && !(least ? s6.leq(*best, r) : s6.leq(r, *best)))
        throw Error(Errc::PreconditionViolated,
                    "horizontal_extend: boundary projection is not unique", {p, q});
    if (!best)
      throw Error(Errc::PreconditionViolated, "horizontal_extend: no boundary projection",
                  {p, q});
    return *best;
  };
  // fcs / acs: identity on L, boundary projections on new elements.
  std::vector<Index> fcs(size), acs(size);
  for (Index x = 0; x < size; ++x) {
    if (!is_new(x)) {
      fcs[x] = acs[x] = x;
      continue;
    }
    const Index r = role[x];
    fcs[x] = at[extreme_boundary([&](Index b) { return s6.leq(r, b); }, true)];
    acs[x] = at[extreme_boundary([&](Index b) { return s6.leq(b, r); }, false)];
  }

  BitMatrix leq(size);
  for (Index x = 0; x < size; ++x)
    for (Index y = 0; y < size; ++y) {
      bool v = false;
      if (!is_new(x) && !is_new(y)) v = l.leq(x, y);
      else if (in_s6(x) && in_s6(y)) v = s6.leq(role[x], role[y]);
      else if (!is_new(x)) v = l.leq(x, acs[y]);
      else v = l.leq(fcs[x], y);
      if (v) leq.set(x, y);
    }

  // hat: least S6 element above; check: greatest S6 element below.
  std::vector<Index> hat(size), check(size);
  for (Index x = 0; x < size; ++x) {
    if (is_new(x)) {
      hat[x] = check[x] = role[x];
      continue;
    }
    hat[x] = extreme_boundary([&](Index b) { return l.leq(x, at[b]); }, true);
    check[x] = extreme_boundary([&](Index b) { return l.leq(at[b], x); }, false);
  }

  const Index c = at[R::C], g = at[R::G];
  std::vector<Index> meet(size * size), join(size * size);
  for (Index x = 0; x < size; ++x)
    for (Index y = 0; y < size; ++y) {
      const bool both_old = !is_new(x) && !is_new(y);
      const std::size_t k = std::size_t(x) * size + y;
      if (both_old || !(leq.test(x, g) && leq.test(y, g)))
        join[k] = l.join(fcs[x], fcs[y]);
      else
        join[k] = at[s6.join(hat[x], hat[y])];
      if (both_old || !(leq.test(c, x) && leq.test(c, y)))
        meet[k] = l.meet(acs[x], acs[y]);
      else
        meet[k] = at[s6.meet(check[x], check[y])];
    }

  std::vector<std::string> labels = l.labels();
  std::set<std::string> taken(labels.begin(), labels.end());
  const std::string tag = "[" + color_list(h, p, q) + "]";
  for (const char* name : {"c", "d", "e", "f", "g"}) {
    check_fresh(taken, name + tag);
    labels.push_back(name + tag);
  }

  AuxStructure out;
  out.lattice = FiniteLattice::from_tables(std::move(leq), std::move(meet), std::move(join),
                                           std::move(labels));
  out.gamma = a.gamma.fallback() == top_color ? a.gamma : pin_old_pairs(a);
  out.gamma.set_fallback(*top_color);
  for (const auto& pr : BridgeTemplate::p_pairs) out.gamma.set(at[pr.lo], at[pr.hi], p);
  for (const auto& pr : BridgeTemplate::q_pairs) out.gamma.set(at[pr.lo], at[pr.hi], q);
  std::vector<IndexPair> nu = h.pairs();
  nu.emplace_back(p, q);
  out.colors = quos(h.size(), nu, h.labels());
  out.delta = a.delta;
  out.epsilon = a.epsilon;

  TraceStep step{StepKind::Horizontal, {h.label(p), h.label(q)}, n, size};
  return {std::move(out), Embedding::identity(n, h.size()), std::move(step)};
}

CombinResult combin_extend(const AuxStructure& a, const Poset& h_up,
                           std::span<const Index> ideal_embed, const StageObserver& observe) {
  const QuasiOrder& h = a.colors;
  const std::size_t m = h_up.size();
  if (ideal_embed.size() != h.size())
    throw Error(Errc::NotAnIdeal, "ideal embedding size differs from the color count");
  if (!h_up.bounded()) throw Error(Errc::NotAnIdeal, "the target ordered set is not bounded");

  std::vector<Index> color_of(m, Index(-1));
  for (Index c = 0; c < h.size(); ++c) {
    const Index x = ideal_embed[c];
    if (x >= m || color_of[x] != Index(-1))
      throw Error(Errc::NotAnIdeal, "ideal embedding is not injective", {c});
    color_of[x] = c;
  }
  for (Index c = 0; c < h.size(); ++c)
    for (Index y = 0; y < m; ++y)
      if (h_up.leq(y, ideal_embed[c]) && color_of[y] == Index(-1))
        throw Error(Errc::NotAnIdeal, "colors do not form a down-set", {c, y});
  for (Index c = 0; c < h.size(); ++c)
    for (Index d = 0; d < h.size(); ++d)
      if (h.leq(c, d) != h_up.leq(ideal_embed[c], ideal_embed[d]))
        throw Error(Errc::NotAnIdeal, "color order is not the restricted order", {c, d});

  CombinResult res;
  res.embed = Embedding::identity(a.lattice.size(), h.size());
  if (h.size() == m) {
    res.aux = a;
    res.color_of = std::move(color_of);
    return res;
  }

  const Index up_top = *h_up.greatest();
  const Index up_zero = *h_up.least();
  std::vector<std::string> k_labels;
  std::vector<Index> k_elems;
  for (Index x = 0; x < m; ++x)
    if (color_of[x] == Index(-1) && x != up_top) {
      k_elems.push_back(x);
      k_labels.push_back(h_up.label(x));
    }
  ExtensionResult v = vertical_extend(a, k_labels, h_up.label(up_top));
  for (std::size_t i = 0; i < k_elems.size(); ++i) color_of[k_elems[i]] = Index(h.size() + i);
  color_of[up_top] = Index(h.size() + k_elems.size());
  if (observe) observe(v.aux, v.step);
  res.trace.push_back(v.step);
  AuxStructure cur = std::move(v.aux);

  std::vector<std::pair<Index, Index>> d;
  for (Index x = 0; x < m; ++x)
    for (Index y = 0; y < m; ++y)
      if (x != up_zero && y != up_top && h_up.less(x, y) &&
          !cur.colors.leq(color_of[x], color_of[y]))
        d.emplace_back(x, y);

  // The old top color collapses all of the old lattice, so its bridges hang
  // from the old bounds instead of from its prime quotient.
  const auto old_top = a.top_color();
  const bool grown = a.lattice.size() > 1;
  std::stable_partition(d.begin(), d.end(),
                        [&](const auto& e) { return grown && color_of[e.first] == old_top; });
  for (const auto& [x, y] : d) {
    const Index p = color_of[x], q = color_of[y];
    if (cur.colors.leq(p, q)) continue;
    std::optional<OrderedPair> quotient;
    if (grown && p == old_top) quotient = OrderedPair{a.lattice.bottom(), a.lattice.top()};
    ExtensionResult s = horizontal_extend(cur, p, q, quotient);
    if (observe) observe(s.aux, s.step);
    res.trace.push_back(s.step);
    cur = std::move(s.aux);
  }

  for (Index x = 0; x < m; ++x)
    for (Index y = 0; y < m; ++y)
      if (cur.colors.leq(color_of[x], color_of[y]) != h_up.leq(x, y))
        throw Error(Errc::VerificationFailed, "final color order differs from the target",
                    {x, y});

  res.aux = std::move(cur);
  res.color_of = std::move(color_of);
  return res;
}

namespace {

/// princ(L).order -> target, via the colors of generating pairs.
IsoWitness lemma_witness(const AuxStructure& a, const PrincPoset& pp,
                         const std::vector<Index>& color_of, const Poset& target) {
  std::vector<Index> element_of(a.colors.size(), Index(-1));
  for (Index x = 0; x < color_of.size(); ++x) element_of[color_of[x]] = x;
  IsoWitness w;
  for (const auto& g : pp.generators) w.map.push_back(element_of[a.gamma(g)]);
  if (!w.validates(pp.order, target))
    throw Error(Errc::VerificationFailed, "principal congruences are not isomorphic to the target");
  return w;
}

}  // namespace

Representation represent(const Poset& p, const StageObserver& observe) {
  if (!p.least()) throw Error(Errc::NoZero, "input must be directed with zero, but it has no least element");
  if (!is_directed_with_zero(p))
    throw Error(Errc::NotDirected, "input must be directed with zero, but it is not directed");
  const Index zero = *p.least();
  const std::vector<Index> embed{zero};
  CombinResult c = combin_extend(trivial_aux(p.label(zero)), p, embed, observe);

  Representation r;
  r.princ = princ(c.aux.lattice);
  r.witness = lemma_witness(c.aux, r.princ, c.color_of, p);
  r.aux = std::move(c.aux);
  r.color_of = std::move(c.color_of);
  r.trace = std::move(c.trace);
  return r;
}

void represent_chain(const Poset& p, std::span<const Index> generators,
                     const std::function<void(Stage)>& consume, const StageObserver& observe) {
  if (!p.least()) throw Error(Errc::NoZero, "input must be directed with zero, but it has no least element");
  if (generators.empty()) throw Error(Errc::NotAChainOfIdeals, "no ideals supplied");
  for (Index c : generators)
    if (c >= p.size()) throw Error(Errc::IndexOutOfRange, "ideal generator out of range", {c});
  if (generators.front() != *p.least())
    throw Error(Errc::NotAChainOfIdeals, "the first ideal must be the zero ideal",
                {generators.front()});
  for (std::size_t i = 1; i < generators.size(); ++i)
    if (!p.leq(generators[i - 1], generators[i]))
      throw Error(Errc::NotAChainOfIdeals, "ideals do not increase",
                  {generators[i - 1], generators[i]});

  AuxStructure cur = trivial_aux(p.label(*p.least()));
  std::vector<Index> element_of_color{*p.least()};
  for (std::size_t i = 0; i < generators.size(); ++i) {
    Stage s;
    s.step = i;
    s.generator = generators[i];
    s.ideal = principal_ideal(p, generators[i]);
    s.ideal_order = p.restrict_to(s.ideal);

    std::vector<Index> position(p.size(), Index(-1));
    for (Index k = 0; k < s.ideal.size(); ++k) position[s.ideal[k]] = k;
    std::vector<Index> embed;
    for (Index x : element_of_color) embed.push_back(position[x]);

    CombinResult c = combin_extend(cur, s.ideal_order, embed, observe);
    element_of_color.assign(c.aux.colors.size(), Index(-1));
    for (Index k = 0; k < s.ideal.size(); ++k) element_of_color[c.color_of[k]] = s.ideal[k];

    const PrincPoset pp = princ(c.aux.lattice);
    s.witness = lemma_witness(c.aux, pp, c.color_of, s.ideal_order);
    s.aux = c.aux;
    s.embed = std::move(c.embed);
    s.color_of = std::move(c.color_of);
    s.trace = std::move(c.trace);
    cur = std::move(c.aux);
    consume(std::move(s));
  }
}

AuxStructure vertical_skeleton() { return vertical_extend(trivial_aux(), {}).aux; }

}  // namespace princlat
