#pragma once

// Finite lattices with precomputed meet and join tables.

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "princlat/bit_matrix.hpp"
#include "princlat/error.hpp"
#include "princlat/order.hpp"

namespace princlat {

/// (lo, hi) with lo <= hi in the ambient lattice.
struct OrderedPair {
  Index lo = 0;
  Index hi = 0;

  bool reflexive() const noexcept { return lo == hi; }
  friend auto operator<=>(const OrderedPair&, const OrderedPair&) = default;
};

enum class N6Class { NotN6, PlainN6, SpanningN6, StrongN6 };

const char* n6_class_name(N6Class c) noexcept;

class FiniteLattice {
 public:
  FiniteLattice() = default;

  /// Computes meet/join from an order matrix. Throws Errc::NotAPartialOrder
  /// or Errc::NotALattice (witness = the pair lacking a bound).
  static FiniteLattice from_leq(BitMatrix leq, std::vector<std::string> labels = {});

  /// Accepts precomputed tables (row-major, size n*n) and checks them against
  /// `leq`: every table entry must be the exact glb / lub.
  static FiniteLattice from_tables(BitMatrix leq, std::vector<Index> meet,
                                   std::vector<Index> join,
                                   std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return n_; }
  bool leq(Index x, Index y) const noexcept { return leq_.test(x, y); }
  bool less(Index x, Index y) const noexcept { return x != y && leq_.test(x, y); }
  bool parallel(Index x, Index y) const noexcept { return !leq(x, y) && !leq(y, x); }
  Index meet(Index x, Index y) const noexcept { return meet_[x * n_ + y]; }
  Index join(Index x, Index y) const noexcept { return join_[x * n_ + y]; }
  Index bottom() const noexcept { return bottom_; }
  Index top() const noexcept { return top_; }

  /// y covers x: x < y with nothing strictly between.
  bool covers(Index x, Index y) const noexcept;

  const BitMatrix& leq_matrix() const noexcept { return leq_; }
  /// Row x = {z : z <= x}.
  const BitMatrix& geq_matrix() const noexcept { return geq_; }

  const std::string& label(Index x) const { return labels_[x]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<Index> find(const std::string& label) const;

  Poset as_poset() const;

  friend bool operator==(const FiniteLattice& a, const FiniteLattice& b) {
    return a.leq_ == b.leq_;
  }

 private:
  FiniteLattice(BitMatrix leq, std::vector<std::string> labels);

  std::size_t n_ = 0;
  BitMatrix leq_;
  BitMatrix geq_;
  std::vector<Index> meet_;
  std::vector<Index> join_;
  Index bottom_ = 0;
  Index top_ = 0;
  std::vector<std::string> labels_;
};

inline FiniteLattice lattice_from_leq(BitMatrix leq, std::vector<std::string> labels = {}) {
  return FiniteLattice::from_leq(std::move(leq), std::move(labels));
}

/// All (x, y) with x <= y, reflexive pairs included, lexicographic.
std::vector<OrderedPair> ordered_pairs(const FiniteLattice& l);

/// Covering pairs x ≺ y, lexicographic.
std::vector<OrderedPair> cover_pairs(const FiniteLattice& l);

/// Most specific class of the quadruple (a1, b1, a2, b2).
N6Class classify_n6(const FiniteLattice& l, Index a1, Index b1, Index a2, Index b2);

/// Closed under meet and join and contains both bounds.
bool is_01_sublattice(const FiniteLattice& l, std::span<const Index> subset);

/// Number of covering steps in a longest chain.
std::size_t lattice_length(const FiniteLattice& l);

/// Every maximal chain bottom = u0 ≺ u1 ≺ ... ≺ un = top.
std::vector<std::vector<Index>> maximal_chains(const FiniteLattice& l);

}  // namespace princlat
