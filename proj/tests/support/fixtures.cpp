#include "fixtures.hpp"

#include <algorithm>
#include <numeric>

#include "oracles.hpp"

namespace fixtures {

using namespace princlat;

FiniteLattice lattice_from_covers(std::size_t n, const std::vector<IndexPair>& covers,
                                  std::vector<std::string> labels) {
  return FiniteLattice::from_leq(quos(n, covers).matrix(), std::move(labels));
}

Poset poset_from_pairs(std::size_t n, const std::vector<IndexPair>& pairs,
                       std::vector<std::string> labels) {
  return Poset::from_quasiorder(quos(n, pairs, std::move(labels)));
}

FiniteLattice n6() {
  return lattice_from_covers(6, {{0, 1}, {1, 2}, {2, 5}, {0, 3}, {3, 4}, {4, 5}},
                             {"0", "a1", "b1", "a2", "b2", "1"});
}

FiniteLattice mk(std::size_t k) {
  std::vector<IndexPair> covers;
  std::vector<std::string> labels{"0"};
  for (Index i = 1; i <= k; ++i) {
    covers.emplace_back(0, i);
    covers.emplace_back(i, Index(k + 1));
    labels.push_back("x" + std::to_string(i));
  }
  labels.push_back("1");
  return lattice_from_covers(k + 2, covers, labels);
}

FiniteLattice chain_lattice(std::size_t n) {
  std::vector<IndexPair> covers;
  for (Index i = 0; i + 1 < n; ++i) covers.emplace_back(i, i + 1);
  return lattice_from_covers(n, covers);
}

Poset chain_poset(std::size_t n) {
  std::vector<IndexPair> pairs;
  for (Index i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
  return poset_from_pairs(n, pairs);
}

Poset antichain_middle(std::size_t k) {
  std::vector<IndexPair> pairs;
  std::vector<std::string> labels{"0"};
  for (Index i = 1; i <= k; ++i) {
    pairs.emplace_back(0, i);
    pairs.emplace_back(i, Index(k + 1));
    labels.push_back("h" + std::to_string(i));
  }
  labels.push_back("1");
  return poset_from_pairs(k + 2, pairs, labels);
}

std::vector<NamedLattice> small_lattices() {
  std::vector<NamedLattice> out;
  out.push_back({"N6", n6()});
  out.push_back({"M2", mk(2)});
  out.push_back({"M3", mk(3)});
  for (std::size_t n = 1; n <= 5; ++n) out.push_back({"chain" + std::to_string(n), chain_lattice(n)});
  out.push_back({"bridge", bridge_template().lattice});
  out.push_back({"vertical-skeleton", vertical_skeleton().lattice});
  out.push_back({"vertical-one-color", vertical_extend(trivial_aux(), {"s"}).aux.lattice});
  return out;
}

namespace {

/// Strict orders on {0..m-1} compatible with the natural order, closed.
std::vector<Poset> natural_posets(std::size_t m) {
  std::vector<IndexPair> slots;
  for (Index i = 0; i < m; ++i)
    for (Index j = i + 1; j < m; ++j) slots.emplace_back(i, j);
  std::vector<Poset> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    std::vector<IndexPair> pairs;
    for (std::size_t s = 0; s < slots.size(); ++s)
      if (mask >> s & 1U) pairs.push_back(slots[s]);
    const QuasiOrder q = quos(m, pairs);
    // Keep only already-closed masks so each relation appears once.
    bool closed = true;
    for (std::size_t s = 0; s < slots.size() && closed; ++s)
      closed = q.leq(slots[s].first, slots[s].second) == bool(mask >> s & 1U);
    if (closed) out.push_back(Poset::from_quasiorder(q));
  }
  return out;
}

Poset add_bounds(const Poset& middle) {
  const std::size_t m = middle.size();
  std::vector<IndexPair> pairs{{0, Index(m + 1)}};
  std::vector<std::string> labels{"0"};
  for (Index i = 0; i < m; ++i) {
    labels.push_back("h" + std::to_string(i + 1));
    pairs.emplace_back(0, i + 1);
    pairs.emplace_back(i + 1, Index(m + 1));
    for (Index j = 0; j < m; ++j)
      if (middle.less(i, j)) pairs.emplace_back(i + 1, j + 1);
  }
  labels.push_back("1");
  return poset_from_pairs(m + 2, pairs, labels);
}

Poset shuffled(const Poset& p, std::mt19937_64& rng) {
  const std::size_t n = p.size();
  std::vector<Index> perm(n);
  std::iota(perm.begin(), perm.end(), Index{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<IndexPair> pairs;
  for (const auto& [x, y] : p.cover_pairs()) pairs.emplace_back(perm[x], perm[y]);
  std::vector<std::string> labels(n);
  for (Index x = 0; x < n; ++x) labels[perm[x]] = "e" + std::to_string(perm[x]);
  return poset_from_pairs(n, pairs, labels);
}

Poset random_dag(std::mt19937_64& rng, std::size_t m) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double density = 0.1 + 0.5 * unit(rng);
  std::vector<IndexPair> pairs;
  for (Index i = 0; i < m; ++i)
    for (Index j = i + 1; j < m; ++j)
      if (unit(rng) < density) pairs.emplace_back(i, j);
  return poset_from_pairs(m, pairs);
}

}  // namespace

std::vector<Poset> bounded_posets_up_to(std::size_t max_size) {
  std::vector<Poset> out;
  if (max_size >= 1) out.push_back(poset_from_pairs(1, {}, {"0"}));
  for (std::size_t n = 2; n <= max_size; ++n) {
    std::vector<Poset> reps;
    for (const Poset& middle : natural_posets(n - 2)) {
      const Poset p = add_bounds(middle);
      const bool seen = std::any_of(reps.begin(), reps.end(), [&](const Poset& r) {
        return oracles::brute_isomorphic(r, p);
      });
      if (!seen) reps.push_back(p);
    }
    out.insert(out.end(), reps.begin(), reps.end());
  }
  return out;
}

std::vector<FiniteLattice> lattices_up_to(std::size_t max_size) {
  std::vector<FiniteLattice> out;
  for (const Poset& p : bounded_posets_up_to(max_size)) {
    try {
      out.push_back(FiniteLattice::from_leq(p.as_quasiorder().matrix(), p.labels()));
    } catch (const Error& e) {
      if (e.code() != Errc::NotALattice) throw;
    }
  }
  return out;
}

Poset random_bounded_poset(std::mt19937_64& rng, std::size_t size) {
  if (size <= 1) return poset_from_pairs(1, {}, {"0"});
  return shuffled(add_bounds(random_dag(rng, size - 2)), rng);
}

Poset random_poset_with_zero(std::mt19937_64& rng, std::size_t size) {
  const Poset dag = random_dag(rng, size - 1);
  std::vector<IndexPair> pairs;
  for (Index i = 0; i + 1 < size; ++i) {
    pairs.emplace_back(0, i + 1);
    for (Index j = 0; j + 1 < size; ++j)
      if (dag.less(i, j)) pairs.emplace_back(i + 1, j + 1);
  }
  return shuffled(poset_from_pairs(size, pairs), rng);
}

}  // namespace fixtures
