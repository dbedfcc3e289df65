#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "princlat/construction.hpp"

namespace fixtures {

using princlat::FiniteLattice;
using princlat::Index;
using princlat::IndexPair;
using princlat::Poset;

struct NamedLattice {
  std::string name;
  FiniteLattice lattice;
};

FiniteLattice lattice_from_covers(std::size_t n, const std::vector<IndexPair>& covers,
                                  std::vector<std::string> labels = {});
Poset poset_from_pairs(std::size_t n, const std::vector<IndexPair>& pairs,
                       std::vector<std::string> labels = {});

/// 0 < a1 < b1 < 1, 0 < a2 < b2 < 1; labels "0","a1","b1","a2","b2","1".
FiniteLattice n6();
/// Bounded antichain of width k (M2 is the square, M3 the diamond).
FiniteLattice mk(std::size_t k);
FiniteLattice chain_lattice(std::size_t n);

Poset chain_poset(std::size_t n);
/// 0 < x_i < 1 for k pairwise incomparable middles.
Poset antichain_middle(std::size_t k);

/// N6, M2, M3, chains 1..5, the bridge, the vertical skeleton and the
/// 11-element vertical extension with one new color.
std::vector<NamedLattice> small_lattices();

/// Every bounded poset with at most `max_size` elements, one per
/// isomorphism type, smallest first.
std::vector<Poset> bounded_posets_up_to(std::size_t max_size);

/// Every lattice with at most `max_size` elements up to isomorphism.
std::vector<FiniteLattice> lattices_up_to(std::size_t max_size);

/// Bounded poset on `size` elements with a random middle order, carrier
/// indices shuffled so the bounds sit anywhere.
Poset random_bounded_poset(std::mt19937_64& rng, std::size_t size);

/// Poset with zero whose order is a random transitive DAG, not necessarily
/// bounded or directed.
Poset random_poset_with_zero(std::mt19937_64& rng, std::size_t size);

}  // namespace fixtures
