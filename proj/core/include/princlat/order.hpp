#pragma once

// Finite quasiordered and ordered sets over dense integer carriers.

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "princlat/bit_matrix.hpp"
#include "princlat/error.hpp"

namespace princlat {

using IndexPair = std::pair<Index, Index>;

/// Reflexive, transitive relation on {0, ..., size-1}. `leq(x, y)` reads
/// "x is below y". Labels are a side table; algorithms only see indices.
class QuasiOrder {
 public:
  QuasiOrder() = default;

  /// Validates reflexivity and transitivity; throws Errc::NotAPartialOrder.
  static QuasiOrder from_matrix(BitMatrix rel, std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return rel_.size(); }
  bool leq(Index x, Index y) const noexcept { return rel_.test(x, y); }
  bool less(Index x, Index y) const noexcept { return leq(x, y) && !leq(y, x); }
  bool parallel(Index x, Index y) const noexcept { return !leq(x, y) && !leq(y, x); }

  const BitMatrix& matrix() const noexcept { return rel_; }
  std::vector<IndexPair> pairs() const;

  const std::string& label(Index x) const { return labels_[x]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<Index> find(const std::string& label) const;

  std::vector<Index> least_elements() const;
  std::vector<Index> greatest_elements() const;

  bool is_antisymmetric() const noexcept;

  friend bool operator==(const QuasiOrder& a, const QuasiOrder& b) {
    return a.rel_ == b.rel_;
  }

 private:
  friend QuasiOrder quos(std::size_t, std::span<const IndexPair>, std::vector<std::string>);
  QuasiOrder(BitMatrix rel, std::vector<std::string> labels);

  BitMatrix rel_;
  std::vector<std::string> labels_;
};

/// Antisymmetric quasiorder.
class Poset {
 public:
  Poset() = default;

  /// Throws Errc::NotAPartialOrder unless `q` is antisymmetric.
  static Poset from_quasiorder(QuasiOrder q);

  std::size_t size() const noexcept { return q_.size(); }
  bool leq(Index x, Index y) const noexcept { return q_.leq(x, y); }
  bool less(Index x, Index y) const noexcept { return x != y && q_.leq(x, y); }
  bool parallel(Index x, Index y) const noexcept { return q_.parallel(x, y); }

  std::optional<Index> least() const noexcept { return least_; }
  std::optional<Index> greatest() const noexcept { return greatest_; }
  bool bounded() const noexcept { return least_ && greatest_; }

  const QuasiOrder& as_quasiorder() const noexcept { return q_; }
  const std::string& label(Index x) const { return q_.label(x); }
  const std::vector<std::string>& labels() const noexcept { return q_.labels(); }
  std::optional<Index> find(const std::string& label) const { return q_.find(label); }

  /// Pairs (x, y) with y covering x.
  std::vector<IndexPair> cover_pairs() const;

  /// The subposet on `elements` (kept in the given order).
  Poset restrict_to(std::span<const Index> elements) const;

  friend bool operator==(const Poset& a, const Poset& b) { return a.q_ == b.q_; }

 private:
  explicit Poset(QuasiOrder q);

  QuasiOrder q_;
  std::optional<Index> least_;
  std::optional<Index> greatest_;
};

/// Order isomorphism: `map[x]` is the image in the target of element `x`.
struct IsoWitness {
  std::vector<Index> map;

  /// True iff `map` is a bijection from `from` onto `to` preserving and
  /// reflecting the order.
  bool validates(const Poset& from, const Poset& to) const;
  IsoWitness inverse() const;
};

/// Least quasiorder on {0..size-1} containing `seed`.
QuasiOrder quos(std::size_t size, std::span<const IndexPair> seed,
                std::vector<std::string> labels = {});

struct ThetaQuotient {
  Poset poset;
  /// Element -> block index. Blocks are numbered by their least member.
  std::vector<Index> projection;
};

/// Quotient of `q` by nu ∩ nu⁻¹, ordered by [x] <= [y] iff x <= y.
ThetaQuotient theta_quotient(const QuasiOrder& q);

bool is_directed_with_zero(const Poset& p);

/// Down-set of `c`, ascending.
std::vector<Index> principal_ideal(const Poset& p, Index c);

/// Backtracking isomorphism search refined by up/down-set and cover-degree
/// profiles. Deterministic for fixed inputs.
std::optional<IsoWitness> poset_isomorphic(const Poset& p, const Poset& q);

}  // namespace princlat
