#pragma once

// Quasi-colored lattices and auxiliary structures, with executable checks
// for every axiom.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "princlat/congruence.hpp"
#include "princlat/lattice.hpp"
#include "princlat/order.hpp"

namespace princlat {

/// Map from ordered pairs of a lattice to colors. Reflexive pairs get the
/// zero color, listed pairs their entry, everything else the fallback color.
class Coloring {
 public:
  Coloring() = default;
  explicit Coloring(Index zero, std::optional<Index> fallback = std::nullopt)
      : zero_(zero), fallback_(fallback) {}

  Index zero() const noexcept { return zero_; }
  std::optional<Index> fallback() const noexcept { return fallback_; }
  void set_fallback(std::optional<Index> c) noexcept { fallback_ = c; }

  /// Explicit color for a non-reflexive pair.
  void set(Index lo, Index hi, Index color);
  std::optional<Index> explicit_color(Index lo, Index hi) const;
  const std::map<OrderedPair, Index>& entries() const noexcept { return entries_; }

  /// Throws Errc::PreconditionViolated when the pair has no color.
  Index operator()(Index lo, Index hi) const;
  Index operator()(OrderedPair p) const { return (*this)(p.lo, p.hi); }

  /// n*n table over `l`; entries for non-ordered (x, y) are Index(-1).
  std::vector<Index> dense(const FiniteLattice& l) const;

  friend bool operator==(const Coloring&, const Coloring&) = default;

 private:
  Index zero_ = 0;
  std::optional<Index> fallback_;
  std::map<OrderedPair, Index> entries_;
};

/// ⟨L; γ, H, ν, δ, ε⟩. `colors` carries H and ν.
struct AuxStructure {
  FiniteLattice lattice;
  Coloring gamma;
  QuasiOrder colors;
  std::vector<Index> delta;
  std::vector<Index> epsilon;

  Index zero_color() const noexcept { return gamma.zero(); }
  /// The unique greatest color, if there is one.
  std::optional<Index> top_color() const;
};

struct AxiomResult {
  std::string name;
  bool passed = true;
  std::string detail;
  std::vector<Index> witness;
};

struct AxiomReport {
  std::vector<AxiomResult> results;

  bool passed() const noexcept;
  const AxiomResult* first_failure() const noexcept;
  const AxiomResult* find(const std::string& name) const noexcept;
  /// One line per axiom, "A1 ok" or "A3 FAIL: ...".
  std::string digest() const;
};

/// (C1) and (C2) over every pair of ordered pairs. Throws
/// Errc::NotSurjective when some color has no preimage.
AxiomReport check_quasicolored(const FiniteLattice& l, const Coloring& gamma,
                               const QuasiOrder& h);

/// γ(u0, un) is a join of the step colors γ(u_{i-1}, u_i) in ⟨H; ν⟩.
/// Throws Errc::NotAChain unless `chain` is increasing.
bool check_chain_lemma(const FiniteLattice& l, const Coloring& gamma, const QuasiOrder& h,
                       std::span<const Index> chain);

/// Evaluates axioms A1 through A8. Never throws on malformed content; each
/// problem becomes a failed entry.
AxiomReport check_aux(const AuxStructure& a);

/// Index maps from a smaller structure into a larger one.
struct Embedding {
  std::vector<Index> lattice;
  std::vector<Index> colors;

  static Embedding identity(std::size_t lattice_size, std::size_t color_count);
  Embedding then(const Embedding& next) const;
};

bool aux_substructure(const AuxStructure& small, const AuxStructure& big, const Embedding& e);

/// cg(x, y) ↦ [γ(x, y)] as a map from `pp.order` to theta_quotient(a.colors).
/// Returns nullopt when the map is not a well-defined order isomorphism.
std::optional<IsoWitness> color_witness(const AuxStructure& a, const PrincPoset& pp);

}  // namespace princlat
