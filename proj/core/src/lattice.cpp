#include "princlat/lattice.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>

namespace princlat {

const char* n6_class_name(N6Class c) noexcept {
  switch (c) {
    case N6Class::NotN6: return "NotN6";
    case N6Class::PlainN6: return "PlainN6";
    case N6Class::SpanningN6: return "SpanningN6";
    case N6Class::StrongN6: return "StrongN6";
  }
  return "Unknown";
}

namespace {

std::size_t and_count(std::span<const BitMatrix::Word> a, std::span<const BitMatrix::Word> b) {
  std::size_t c = 0;
  for (std::size_t k = 0; k < a.size(); ++k)
    c += static_cast<std::size_t>(std::popcount(a[k] & b[k]));
  return c;
}

bool and_equals(std::span<const BitMatrix::Word> a, std::span<const BitMatrix::Word> b,
                std::span<const BitMatrix::Word> target) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if ((a[k] & b[k]) != target[k]) return false;
  return true;
}

std::vector<std::string> fill_labels(std::size_t n, std::vector<std::string> labels) {
  if (labels.empty())
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  if (labels.size() != n)
    throw Error(Errc::IndexOutOfRange, "label table size does not match lattice size");
  return labels;
}

}  // namespace

FiniteLattice::FiniteLattice(BitMatrix leq, std::vector<std::string> labels)
    : n_(leq.size()),
      leq_(std::move(leq)),
      geq_(leq_.transposed()),
      labels_(fill_labels(n_, std::move(labels))) {
  if (n_ == 0) throw Error(Errc::NotALattice, "a lattice must be nonempty");
  // Reflexivity and transitivity; antisymmetry separately.
  const QuasiOrder q = QuasiOrder::from_matrix(leq_);
  if (!q.is_antisymmetric()) {
    for (Index x = 0; x < n_; ++x)
      for (Index y = x + 1; y < n_; ++y)
        if (leq_.test(x, y) && leq_.test(y, x))
          throw Error(Errc::NotAPartialOrder, "order is not antisymmetric", {x, y});
  }
  // Bounds exist once every pair has a meet and a join; the table builders
  // establish that before the lattice escapes.
  for (Index x = 0; x < n_; ++x) {
    if (leq_.row_count(x) == n_) bottom_ = x;
    if (geq_.row_count(x) == n_) top_ = x;
  }
}

FiniteLattice FiniteLattice::from_leq(BitMatrix leq, std::vector<std::string> labels) {
  FiniteLattice l(std::move(leq), std::move(labels));
  const std::size_t n = l.n_;
  std::vector<std::size_t> up_count(n), down_count(n);
  for (Index z = 0; z < n; ++z) {
    up_count[z] = l.leq_.row_count(z);
    down_count[z] = l.geq_.row_count(z);
  }
  l.meet_.assign(n * n, 0);
  l.join_.assign(n * n, 0);
  for (Index x = 0; x < n; ++x)
    for (Index y = x; y < n; ++y) {
      // The upper bounds of {x, y} form an up-set U; the join is the z in U
      // whose own up-set is all of U.
      const auto ux = l.leq_.row(x);
      const auto uy = l.leq_.row(y);
      const std::size_t ucount = and_count(ux, uy);
      std::optional<Index> j;
      for (std::size_t k = 0; k < ux.size() && !j; ++k) {
        BitMatrix::Word w = ux[k] & uy[k];
        while (w != 0 && !j) {
          const Index z = Index(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
          if (up_count[z] == ucount) j = z;
          w &= w - 1;
        }
      }
      const auto dx = l.geq_.row(x);
      const auto dy = l.geq_.row(y);
      const std::size_t dcount = and_count(dx, dy);
      std::optional<Index> m;
      for (std::size_t k = 0; k < dx.size() && !m; ++k) {
        BitMatrix::Word w = dx[k] & dy[k];
        while (w != 0 && !m) {
          const Index z = Index(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
          if (down_count[z] == dcount) m = z;
          w &= w - 1;
        }
      }
      if (!j || !m)
        throw Error(Errc::NotALattice,
                    "elements " + l.labels_[x] + " and " + l.labels_[y] + " have no " +
                        (!j ? "join" : "meet"),
                    {x, y});
      l.join_[x * n + y] = l.join_[y * n + x] = *j;
      l.meet_[x * n + y] = l.meet_[y * n + x] = *m;
    }
  return l;
}

FiniteLattice FiniteLattice::from_tables(BitMatrix leq, std::vector<Index> meet,
                                         std::vector<Index> join,
                                         std::vector<std::string> labels) {
  FiniteLattice l(std::move(leq), std::move(labels));
  const std::size_t n = l.n_;
  if (meet.size() != n * n || join.size() != n * n)
    throw Error(Errc::IndexOutOfRange, "operation table has the wrong size");
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) {
      const Index m = meet[x * n + y];
      const Index j = join[x * n + y];
      if (m >= n || j >= n || !and_equals(l.geq_.row(x), l.geq_.row(y), l.geq_.row(m)) ||
          !and_equals(l.leq_.row(x), l.leq_.row(y), l.leq_.row(j)))
        throw Error(Errc::NotALattice,
                    "operation table entry for " + l.labels_[x] + ", " + l.labels_[y] +
                        " is not the exact bound",
                    {x, y});
    }
  l.meet_ = std::move(meet);
  l.join_ = std::move(join);
  return l;
}

bool FiniteLattice::covers(Index x, Index y) const noexcept {
  return x != y && leq_.test(x, y) && and_count(leq_.row(x), geq_.row(y)) == 2;
}

std::optional<Index> FiniteLattice::find(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return Index(it - labels_.begin());
}

Poset FiniteLattice::as_poset() const {
  return Poset::from_quasiorder(QuasiOrder::from_matrix(leq_, labels_));
}

std::vector<OrderedPair> ordered_pairs(const FiniteLattice& l) {
  std::vector<OrderedPair> out;
  for (Index x = 0; x < l.size(); ++x)
    for (std::size_t y : l.leq_matrix().row_indices(x)) out.push_back({x, Index(y)});
  return out;
}

std::vector<OrderedPair> cover_pairs(const FiniteLattice& l) {
  std::vector<OrderedPair> out;
  for (Index x = 0; x < l.size(); ++x)
    for (std::size_t y : l.leq_matrix().row_indices(x))
      if (l.covers(x, Index(y))) out.push_back({x, Index(y)});
  return out;
}

N6Class classify_n6(const FiniteLattice& l, Index a1, Index b1, Index a2, Index b2) {
  const std::size_t n = l.size();
  if (a1 >= n || b1 >= n || a2 >= n || b2 >= n) return N6Class::NotN6;
  if (!l.less(a1, b1) || !l.less(a2, b2)) return N6Class::NotN6;
  const Index o = l.meet(b1, b2);
  const Index i = l.join(a1, a2);
  if (l.meet(a1, a2) != o || l.join(b1, b2) != i) return N6Class::NotN6;
  const std::array<Index, 6> s{o, a1, b1, a2, b2, i};
  for (std::size_t u = 0; u < s.size(); ++u)
    for (std::size_t v = u + 1; v < s.size(); ++v)
      if (s[u] == s[v]) return N6Class::NotN6;
  const auto in_s = [&](Index z) { return std::find(s.begin(), s.end(), z) != s.end(); };
  for (Index u : s)
    for (Index v : s)
      if (!in_s(l.meet(u, v)) || !in_s(l.join(u, v))) return N6Class::NotN6;

  if (o != l.bottom() || i != l.top()) return N6Class::PlainN6;

  const std::array<Index, 2> as{a1, a2};
  const std::array<Index, 2> bs{b1, b2};
  for (std::size_t k = 0; k < 2; ++k) {
    const Index other_a = as[1 - k];
    const Index other_b = bs[1 - k];
    for (Index x = 0; x < n; ++x) {
      if (x != l.bottom() && l.leq(x, bs[k]) && l.join(x, other_a) != l.top())
        return N6Class::SpanningN6;
      if (x != l.top() && l.leq(as[k], x) && l.meet(x, other_b) != l.bottom())
        return N6Class::SpanningN6;
    }
  }
  return N6Class::StrongN6;
}

bool is_01_sublattice(const FiniteLattice& l, std::span<const Index> subset) {
  std::vector<bool> in(l.size(), false);
  for (Index x : subset) {
    if (x >= l.size()) return false;
    in[x] = true;
  }
  if (!in[l.bottom()] || !in[l.top()]) return false;
  for (Index x : subset)
    for (Index y : subset)
      if (!in[l.meet(x, y)] || !in[l.join(x, y)]) return false;
  return true;
}

namespace {

std::vector<std::vector<Index>> upper_covers(const FiniteLattice& l) {
  std::vector<std::vector<Index>> up(l.size());
  for (const auto& p : cover_pairs(l)) up[p.lo].push_back(p.hi);
  return up;
}

}  // namespace

std::size_t lattice_length(const FiniteLattice& l) {
  // Process elements by increasing down-set size: a topological order.
  std::vector<Index> order(l.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    return l.geq_matrix().row_count(a) < l.geq_matrix().row_count(b);
  });
  const auto up = upper_covers(l);
  std::vector<std::size_t> depth(l.size(), 0);
  for (Index x : order)
    for (Index y : up[x]) depth[y] = std::max(depth[y], depth[x] + 1);
  return depth[l.top()];
}

std::vector<std::vector<Index>> maximal_chains(const FiniteLattice& l) {
  const auto up = upper_covers(l);
  std::vector<std::vector<Index>> out;
  std::vector<Index> chain{l.bottom()};
  // Explicit stack of (element, next-child position).
  std::vector<std::size_t> next{0};
  while (!chain.empty()) {
    const Index x = chain.back();
    if (x == l.top()) {
      out.push_back(chain);
      chain.pop_back();
      next.pop_back();
      continue;
    }
    std::size_t& k = next.back();
    if (k == up[x].size()) {
      chain.pop_back();
      next.pop_back();
      continue;
    }
    const Index y = up[x][k++];
    chain.push_back(y);
    next.push_back(0);
  }
  return out;
}

}  // namespace princlat
