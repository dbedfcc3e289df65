#include "princlat/quasicoloring.hpp"

#include <sstream>

namespace princlat {

void Coloring::set(Index lo, Index hi, Index color) {
  if (lo == hi) return;
  entries_[{lo, hi}] = color;
}

std::optional<Index> Coloring::explicit_color(Index lo, Index hi) const {
  const auto it = entries_.find({lo, hi});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

Index Coloring::operator()(Index lo, Index hi) const {
  if (lo == hi) return zero_;
  if (const auto it = entries_.find({lo, hi}); it != entries_.end()) return it->second;
  if (fallback_) return *fallback_;
  throw Error(Errc::PreconditionViolated, "coloring has no color for this pair", {lo, hi});
}

std::vector<Index> Coloring::dense(const FiniteLattice& l) const {
  const std::size_t n = l.size();
  std::vector<Index> out(n * n, Index(-1));
  for (const auto& p : ordered_pairs(l)) out[std::size_t(p.lo) * n + p.hi] = (*this)(p);
  return out;
}

std::optional<Index> AuxStructure::top_color() const {
  const auto g = colors.greatest_elements();
  if (g.size() != 1) return std::nullopt;
  return g.front();
}

bool AxiomReport::passed() const noexcept { return first_failure() == nullptr; }

const AxiomResult* AxiomReport::first_failure() const noexcept {
  for (const auto& r : results)
    if (!r.passed) return &r;
  return nullptr;
}

const AxiomResult* AxiomReport::find(const std::string& name) const noexcept {
  for (const auto& r : results)
    if (r.name == name) return &r;
  return nullptr;
}

std::string AxiomReport::digest() const {
  std::ostringstream os;
  for (const auto& r : results) {
    os << r.name << (r.passed ? " ok" : " FAIL");
    if (!r.passed) {
      os << ": " << r.detail;
      if (!r.witness.empty()) {
        os << " [";
        for (std::size_t i = 0; i < r.witness.size(); ++i) os << (i ? " " : "") << r.witness[i];
        os << "]";
      }
    }
    os << '\n';
  }
  return os.str();
}

namespace {

AxiomResult pass(std::string name) { return {std::move(name), true, {}, {}}; }

AxiomResult fail(std::string name, std::string detail, std::vector<Index> witness = {}) {
  return {std::move(name), false, std::move(detail), std::move(witness)};
}

std::string pair_text(const FiniteLattice& l, OrderedPair p) {
  return "(" + l.label(p.lo) + "," + l.label(p.hi) + ")";
}

/// Colors of all ordered pairs, in `pp.pairs` order. Throws on a color
/// outside H or a non-surjective map.
std::vector<Index> pair_colors(const FiniteLattice& l, const Coloring& gamma,
                               const QuasiOrder& h, const PrincPoset& pp) {
  std::vector<Index> colors;
  colors.reserve(pp.pairs.size());
  std::vector<bool> hit(h.size(), false);
  for (const auto& p : pp.pairs) {
    const Index c = gamma(p);
    if (c >= h.size())
      throw Error(Errc::IndexOutOfRange, "color of " + pair_text(l, p) + " is outside H",
                  {p.lo, p.hi});
    hit[c] = true;
    colors.push_back(c);
  }
  for (Index c = 0; c < h.size(); ++c)
    if (!hit[c])
      throw Error(Errc::NotSurjective, "color " + h.label(c) + " has no preimage", {c});
  return colors;
}

/// (C1) and (C2) on the distinct (congruence, color) combinations.
std::pair<AxiomResult, AxiomResult> quasicolored(const FiniteLattice& l, const QuasiOrder& h,
                                                 const PrincPoset& pp,
                                                 const std::vector<Index>& colors) {
  std::map<std::pair<Index, Index>, Index> keys;
  for (Index i = 0; i < pp.pairs.size(); ++i) keys.try_emplace({pp.pair_class[i], colors[i]}, i);

  std::optional<std::pair<Index, Index>> c1, c2;
  for (const auto& [k1, i1] : keys)
    for (const auto& [k2, i2] : keys) {
      const bool by_color = h.leq(k1.second, k2.second);
      const bool by_cg = pp.order.leq(k1.first, k2.first);
      if (by_color && !by_cg && !c1) c1 = {i1, i2};
      if (by_cg && !by_color && !c2) c2 = {i1, i2};
    }

  const auto witness = [&](std::pair<Index, Index> w) {
    const auto& a = pp.pairs[w.first];
    const auto& b = pp.pairs[w.second];
    return std::vector<Index>{a.lo, a.hi, b.lo, b.hi};
  };
  const auto text = [&](std::pair<Index, Index> w) {
    return pair_text(l, pp.pairs[w.first]) + " vs " + pair_text(l, pp.pairs[w.second]);
  };
  AxiomResult r1 = c1 ? fail("C1", "color below but congruence not contained: " + text(*c1),
                             witness(*c1))
                      : pass("C1");
  AxiomResult r2 = c2 ? fail("C2", "congruence contained but color not below: " + text(*c2),
                             witness(*c2))
                      : pass("C2");
  return {std::move(r1), std::move(r2)};
}

bool is_complement_of_all(const FiniteLattice& l, Index x) {
  for (Index y = 0; y < l.size(); ++y) {
    if (y == x || y == l.bottom() || y == l.top()) continue;
    if (l.meet(x, y) != l.bottom() || l.join(x, y) != l.top()) return false;
  }
  return true;
}

}  // namespace

AxiomReport check_quasicolored(const FiniteLattice& l, const Coloring& gamma,
                               const QuasiOrder& h) {
  const PrincPoset pp = princ(l);
  const auto colors = pair_colors(l, gamma, h, pp);
  auto [c1, c2] = quasicolored(l, h, pp, colors);
  AxiomReport report;
  report.results.push_back(std::move(c1));
  report.results.push_back(std::move(c2));
  return report;
}

bool check_chain_lemma(const FiniteLattice& l, const Coloring& gamma, const QuasiOrder& h,
                       std::span<const Index> chain) {
  if (chain.empty()) throw Error(Errc::NotAChain, "empty chain");
  for (Index x : chain)
    if (x >= l.size()) throw Error(Errc::IndexOutOfRange, "chain element out of range", {x});
  for (std::size_t i = 1; i < chain.size(); ++i)
    if (!l.leq(chain[i - 1], chain[i]))
      throw Error(Errc::NotAChain, "chain is not increasing", {chain[i - 1], chain[i]});

  const Index p = gamma(chain.front(), chain.back());
  std::vector<Index> steps;
  for (std::size_t i = 1; i < chain.size(); ++i) steps.push_back(gamma(chain[i - 1], chain[i]));
  for (Index q : steps)
    if (!h.leq(q, p)) return false;
  for (Index r = 0; r < h.size(); ++r) {
    bool upper = true;
    for (Index q : steps) upper = upper && h.leq(q, r);
    if (upper && !h.leq(p, r)) return false;
  }
  return true;
}

AxiomReport check_aux(const AuxStructure& a) {
  const FiniteLattice& l = a.lattice;
  const QuasiOrder& h = a.colors;
  const Index zero = a.zero_color();
  AxiomReport report;
  auto& out = report.results;

  const PrincPoset pp = princ(l);

  // A1
  try {
    const auto colors = pair_colors(l, a.gamma, h, pp);
    auto [c1, c2] = quasicolored(l, h, pp, colors);
    if (!c1.passed) out.push_back(fail("A1", "C1: " + c1.detail, c1.witness));
    else if (!c2.passed) out.push_back(fail("A1", "C2: " + c2.detail, c2.witness));
    else out.push_back(pass("A1"));
  } catch (const Error& e) {
    out.push_back(fail("A1", e.what(), e.witness()));
  }

  // A2
  {
    const auto least = h.least_elements();
    const auto greatest = h.greatest_elements();
    if (least.size() != 1)
      out.push_back(fail("A2", "H needs exactly one least element, found " +
                                   std::to_string(least.size())));
    else if (least.front() != zero)
      out.push_back(fail("A2", "the least color is not the zero color", {least.front(), zero}));
    else if (greatest.size() > 1)
      out.push_back(fail("A2", "H has several greatest elements", greatest));
    else
      out.push_back(pass("A2"));
  }

  // A3; the later axioms need well-formed δ and ε.
  const bool maps_ok = a.delta.size() == h.size() && a.epsilon.size() == h.size() &&
                       zero < h.size() && [&] {
                         for (Index p = 0; p < h.size(); ++p)
                           if (a.delta[p] >= l.size() || a.epsilon[p] >= l.size()) return false;
                         return true;
                       }();
  if (!maps_ok) {
    out.push_back(fail("A3", "delta/epsilon are not maps from H into L"));
    for (const char* name : {"A4", "A5", "A6", "A7", "A8"})
      out.push_back(fail(name, "not evaluated: delta/epsilon malformed"));
    return report;
  }
  {
    std::optional<AxiomResult> bad;
    if (a.delta[zero] != a.epsilon[zero])
      bad = fail("A3", "delta(0) differs from epsilon(0)", {zero});
    for (Index p = 0; p < h.size() && !bad; ++p)
      if (p != zero && !l.covers(a.delta[p], a.epsilon[p]))
        bad = fail("A3", "delta(" + h.label(p) + ") is not covered by epsilon(" + h.label(p) + ")",
                   {p});
    out.push_back(bad ? *bad : pass("A3"));
  }

  // A4
  {
    std::optional<AxiomResult> bad;
    for (Index p = 0; p < h.size() && !bad; ++p) {
      if (!l.leq(a.delta[p], a.epsilon[p])) {
        bad = fail("A4", "(delta, epsilon) of " + h.label(p) + " is not an ordered pair", {p});
        break;
      }
      try {
        if (a.gamma(a.delta[p], a.epsilon[p]) != p)
          bad = fail("A4", "gamma(delta(p), epsilon(p)) differs from p for p = " + h.label(p),
                     {p});
      } catch (const Error& e) {
        bad = fail("A4", e.what(), {p});
      }
    }
    out.push_back(bad ? *bad : pass("A4"));
  }

  // A5, A6
  {
    std::optional<AxiomResult> bad5, bad6;
    for (Index p = 0; p < h.size(); ++p)
      for (Index q = 0; q < h.size(); ++q) {
        if (p == q || p == zero || q == zero) continue;
        const N6Class c = classify_n6(l, a.delta[p], a.epsilon[p], a.delta[q], a.epsilon[q]);
        if (c == N6Class::NotN6 && !bad5)
          bad5 = fail("A5", "no N6-quadruple for " + h.label(p) + ", " + h.label(q), {p, q});
        if (c == N6Class::SpanningN6 && h.parallel(p, q) && !bad6)
          bad6 = fail("A6", "spanning but not strong for " + h.label(p) + ", " + h.label(q),
                      {p, q});
      }
    out.push_back(bad5 ? *bad5 : pass("A5"));
    out.push_back(bad6 ? *bad6 : pass("A6"));
  }

  // A7
  if (l.size() > 1) {
    std::size_t count = 0;
    for (Index x = 0; x < l.size(); ++x)
      if (l.covers(l.bottom(), x) && l.covers(x, l.top()) && is_complement_of_all(l, x)) ++count;
    out.push_back(count >= 3 ? pass("A7")
                             : fail("A7", "only " + std::to_string(count) +
                                              " atoms-coatoms complementing everything"));
  } else {
    out.push_back(pass("A7"));
  }

  // A8
  const auto top = a.top_color();
  if (top && l.size() > 1) {
    std::vector<OrderedPair> gens;
    for (Index p = 0; p < h.size(); ++p)
      if (p != *top) gens.push_back({a.delta[p], a.epsilon[p]});
    out.push_back(con_gen(l, gens).is_full()
                      ? fail("A8", "the non-top prime quotients generate the full congruence")
                      : pass("A8"));
  } else {
    out.push_back(pass("A8"));
  }
  return report;
}

Embedding Embedding::identity(std::size_t lattice_size, std::size_t color_count) {
  Embedding e;
  e.lattice.resize(lattice_size);
  e.colors.resize(color_count);
  for (Index i = 0; i < lattice_size; ++i) e.lattice[i] = i;
  for (Index i = 0; i < color_count; ++i) e.colors[i] = i;
  return e;
}

Embedding Embedding::then(const Embedding& next) const {
  Embedding e;
  for (Index x : lattice) e.lattice.push_back(next.lattice.at(x));
  for (Index c : colors) e.colors.push_back(next.colors.at(c));
  return e;
}

bool aux_substructure(const AuxStructure& small, const AuxStructure& big, const Embedding& e) {
  const FiniteLattice& l = small.lattice;
  const FiniteLattice& m = big.lattice;
  const QuasiOrder& h = small.colors;
  const QuasiOrder& k = big.colors;
  if (e.lattice.size() != l.size() || e.colors.size() != h.size()) return false;

  std::vector<bool> used(m.size(), false);
  for (Index x : e.lattice) {
    if (x >= m.size() || used[x]) return false;
    used[x] = true;
  }
  std::vector<bool> used_c(k.size(), false);
  for (Index c : e.colors) {
    if (c >= k.size() || used_c[c]) return false;
    used_c[c] = true;
  }

  for (Index x = 0; x < l.size(); ++x)
    for (Index y = 0; y < l.size(); ++y) {
      if (m.meet(e.lattice[x], e.lattice[y]) != e.lattice[l.meet(x, y)]) return false;
      if (m.join(e.lattice[x], e.lattice[y]) != e.lattice[l.join(x, y)]) return false;
    }
  for (Index p = 0; p < h.size(); ++p)
    for (Index q = 0; q < h.size(); ++q)
      if (h.leq(p, q) && !k.leq(e.colors[p], e.colors[q])) return false;
  if (small.zero_color() >= h.size() || e.colors[small.zero_color()] != big.zero_color())
    return false;

  try {
    for (const auto& p : ordered_pairs(l))
      if (e.colors[small.gamma(p)] != big.gamma(e.lattice[p.lo], e.lattice[p.hi])) return false;
  } catch (const Error&) {
    return false;
  }
  if (small.delta.size() != h.size() || small.epsilon.size() != h.size()) return false;
  for (Index p = 0; p < h.size(); ++p) {
    const Index bp = e.colors[p];
    if (bp >= big.delta.size() || bp >= big.epsilon.size()) return false;
    if (big.delta[bp] != e.lattice[small.delta[p]] ||
        big.epsilon[bp] != e.lattice[small.epsilon[p]])
      return false;
  }
  return true;
}

std::optional<IsoWitness> color_witness(const AuxStructure& a, const PrincPoset& pp) {
  const ThetaQuotient theta = theta_quotient(a.colors);
  IsoWitness w;
  w.map.assign(pp.congruences.size(), Index(-1));
  try {
    for (Index i = 0; i < pp.pairs.size(); ++i) {
      const Index c = a.gamma(pp.pairs[i]);
      if (c >= a.colors.size()) return std::nullopt;
      const Index block = theta.projection[c];
      Index& slot = w.map[pp.pair_class[i]];
      if (slot == Index(-1)) slot = block;
      else if (slot != block) return std::nullopt;
    }
  } catch (const Error&) {
    return std::nullopt;
  }
  if (!w.validates(pp.order, theta.poset)) return std::nullopt;
  return w;
}

}  // namespace princlat
