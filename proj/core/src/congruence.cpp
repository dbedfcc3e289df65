#include "princlat/congruence.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

namespace princlat {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), Index{0});
  }

  Index find(Index x) noexcept {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  /// Links the larger root under the smaller so roots stay block minima.
  bool unite(Index x, Index y) noexcept {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (y < x) std::swap(x, y);
    parent_[y] = x;
    return true;
  }

  Partition partition() {
    std::vector<Index> roots(parent_.size());
    for (Index x = 0; x < parent_.size(); ++x) roots[x] = find(x);
    return Partition::from_labels(roots);
  }

 private:
  std::vector<Index> parent_;
};

/// Worklist congruence closure. Every pair that causes a merge has all its
/// translates x∧z, x∨z queued, so the final partition is compatible.
class CongruenceClosure {
 public:
  explicit CongruenceClosure(const FiniteLattice& l) : l_(l), uf_(l.size()) {}

  void seed(Index x, Index y) {
    if (x != y) queue_.emplace_back(x, y);
  }

  Partition run() {
    const Index n = Index(l_.size());
    while (!queue_.empty()) {
      const auto [x, y] = queue_.back();
      queue_.pop_back();
      if (!uf_.unite(x, y)) continue;
      for (Index z = 0; z < n; ++z) {
        const Index mx = l_.meet(x, z), my = l_.meet(y, z);
        if (mx != my && uf_.find(mx) != uf_.find(my)) queue_.emplace_back(mx, my);
        const Index jx = l_.join(x, z), jy = l_.join(y, z);
        if (jx != jy && uf_.find(jx) != uf_.find(jy)) queue_.emplace_back(jx, jy);
      }
    }
    return uf_.partition();
  }

 private:
  const FiniteLattice& l_;
  UnionFind uf_;
  std::vector<std::pair<Index, Index>> queue_;
};

}  // namespace

Partition Partition::identity(std::size_t n) {
  Partition p;
  p.block_.resize(n);
  std::iota(p.block_.begin(), p.block_.end(), Index{0});
  return p;
}

Partition Partition::full(std::size_t n) {
  Partition p;
  p.block_.assign(n, 0);
  return p;
}

Partition Partition::from_labels(std::span<const Index> labels) {
  std::map<Index, Index> first;
  Partition p;
  p.block_.resize(labels.size());
  for (Index x = 0; x < labels.size(); ++x) {
    const auto [it, inserted] = first.try_emplace(labels[x], x);
    p.block_[x] = it->second;
  }
  return p;
}

std::size_t Partition::block_count() const noexcept {
  std::size_t c = 0;
  for (Index x = 0; x < block_.size(); ++x)
    if (block_[x] == x) ++c;
  return c;
}

std::vector<std::vector<Index>> Partition::blocks() const {
  std::vector<std::vector<Index>> out;
  std::vector<Index> slot(block_.size(), 0);
  for (Index x = 0; x < block_.size(); ++x) {
    if (block_[x] == x) {
      slot[x] = Index(out.size());
      out.emplace_back();
    }
    out[slot[block_[x]]].push_back(x);
  }
  return out;
}

bool Partition::refines(const Partition& other) const noexcept {
  if (other.size() != size()) return false;
  for (Index x = 0; x < block_.size(); ++x)
    if (!other.same_block(x, block_[x])) return false;
  return true;
}

Partition cg(const FiniteLattice& l, Index a, Index b) {
  if (a >= l.size() || b >= l.size())
    throw Error(Errc::IndexOutOfRange, "cg: element out of range", {a, b});
  CongruenceClosure closure(l);
  closure.seed(l.meet(a, b), l.join(a, b));
  return closure.run();
}

Partition con_gen(const FiniteLattice& l, std::span<const OrderedPair> pairs) {
  CongruenceClosure closure(l);
  for (const auto& p : pairs) {
    if (p.lo >= l.size() || p.hi >= l.size())
      throw Error(Errc::IndexOutOfRange, "con_gen: element out of range", {p.lo, p.hi});
    closure.seed(p.lo, p.hi);
  }
  return closure.run();
}

bool is_congruence(const FiniteLattice& l, const Partition& p) {
  if (p.size() != l.size()) return false;
  // Compatibility of each element with its block representative suffices.
  for (Index x = 0; x < l.size(); ++x) {
    const Index r = p.block_of(x);
    if (r == x) continue;
    for (Index z = 0; z < l.size(); ++z)
      if (!p.same_block(l.meet(x, z), l.meet(r, z)) ||
          !p.same_block(l.join(x, z), l.join(r, z)))
        return false;
  }
  return true;
}

Index PrincPoset::class_of(Index lo, Index hi) const {
  if (lo >= n_ || hi >= n_)
    throw Error(Errc::IndexOutOfRange, "class_of: element out of range", {lo, hi});
  const Index c = lookup_[std::size_t(lo) * n_ + hi];
  if (c == Index(-1))
    throw Error(Errc::IndexOutOfRange, "class_of: not an ordered pair", {lo, hi});
  return c;
}

PrincPoset princ(const FiniteLattice& l) {
  const std::size_t n = l.size();
  PrincPoset out;
  out.n_ = n;
  out.pairs = ordered_pairs(l);
  out.lookup_.assign(n * n, Index(-1));

  // cg of a covering pair by closure; any other cg(x, y) is the join of the
  // cover congruences along one maximal chain of [x, y].
  std::vector<std::vector<Index>> cover_blocks(n * n);
  std::vector<std::vector<Index>> up(n);
  for (const auto& c : cover_pairs(l)) {
    up[c.lo].push_back(c.hi);
    cover_blocks[std::size_t(c.lo) * n + c.hi] = cg(l, c.lo, c.hi).canonical();
  }

  std::map<std::vector<Index>, Index> ids;
  out.pair_class.reserve(out.pairs.size());
  for (const auto& p : out.pairs) {
    UnionFind uf(n);
    Index cur = p.lo;
    while (cur != p.hi) {
      Index next = cur;
      for (Index u : up[cur])
        if (l.leq(u, p.hi)) {
          next = u;
          break;
        }
      const auto& blocks = cover_blocks[std::size_t(cur) * n + next];
      for (Index x = 0; x < n; ++x) uf.unite(x, blocks[x]);
      cur = next;
    }
    Partition part = uf.partition();
    auto [it, inserted] = ids.try_emplace(part.canonical(), Index(out.congruences.size()));
    if (inserted) {
      out.congruences.push_back(std::move(part));
      out.generators.push_back(p);
    }
    out.pair_class.push_back(it->second);
    out.lookup_[std::size_t(p.lo) * n + p.hi] = it->second;
  }

  const std::size_t k = out.congruences.size();
  BitMatrix m(k);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < k; ++i) {
    labels.push_back("cg(" + l.label(out.generators[i].lo) + "," +
                     l.label(out.generators[i].hi) + ")");
    for (std::size_t j = 0; j < k; ++j)
      if (out.congruences[i].refines(out.congruences[j])) m.set(i, j);
  }
  out.order = Poset::from_quasiorder(QuasiOrder::from_matrix(std::move(m), std::move(labels)));
  return out;
}

bool perspective(const FiniteLattice& l, OrderedPair p1, OrderedPair p2) {
  const auto oriented = [&](OrderedPair a, OrderedPair b) {
    return a.lo == l.meet(a.hi, b.lo) && b.hi == l.join(b.lo, a.hi);
  };
  return oriented(p1, p2) || oriented(p2, p1);
}

bool projectivity_oracle(const FiniteLattice& l, OrderedPair p1, OrderedPair p2) {
  const std::size_t n = l.size();
  if (!l.leq(p1.lo, p1.hi) || !l.leq(p2.lo, p2.hi))
    throw Error(Errc::IndexOutOfRange, "projectivity_oracle: not ordered pairs");
  if (p1.lo == p1.hi) return true;

  // reach(y, z): (y, z) is weakly projective into p2.
  std::vector<bool> reach(n * n, false);
  std::deque<OrderedPair> frontier{p2};
  reach[std::size_t(p2.lo) * n + p2.hi] = true;
  const auto visit = [&](Index y, Index z) {
    const std::size_t key = std::size_t(y) * n + z;
    if (!reach[key]) {
      reach[key] = true;
      frontier.push_back({y, z});
    }
  };
  while (!frontier.empty()) {
    const auto [y2, z2] = frontier.front();
    frontier.pop_front();
    // Weakly up-perspective into (y2, z2): y = z ∧ y2, z <= z2.
    for (std::size_t z : l.geq_matrix().row_indices(z2)) visit(l.meet(Index(z), y2), Index(z));
    // Weakly down-perspective into (y2, z2): z = y ∨ z2, y >= y2.
    for (std::size_t y : l.leq_matrix().row_indices(y2)) visit(Index(y), l.join(Index(y), z2));
  }

  // Chain p1.lo = x0 <= ... <= xk = p1.hi with every step reachable.
  std::vector<bool> seen(n, false);
  std::deque<Index> todo{p1.lo};
  seen[p1.lo] = true;
  while (!todo.empty()) {
    const Index x = todo.front();
    todo.pop_front();
    if (x == p1.hi) return true;
    for (std::size_t y : l.leq_matrix().row_indices(x))
      if (!seen[y] && l.leq(Index(y), p1.hi) && reach[std::size_t(x) * n + y]) {
        seen[y] = true;
        todo.push_back(Index(y));
      }
  }
  return false;
}

}  // namespace princlat
