#pragma once

// Gadgets and the extension steps that build a lattice L with Princ L
// isomorphic to a given finite ordered set with zero.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "princlat/quasicoloring.hpp"

namespace princlat {

/// The 11-element bridge lattice. Index constants name the roles.
struct BridgeTemplate {
  enum Role : Index { Zero, Ap, Bp, Aq, Bq, C, D, E, F, G, One, RoleCount };

  FiniteLattice lattice;

  /// Pairs colored p: (d,e), (f,g). Pairs colored q: (c,d), (c,e).
  static constexpr OrderedPair p_pairs[2] = {{D, E}, {F, G}};
  static constexpr OrderedPair q_pairs[2] = {{C, D}, {C, E}};
  static constexpr Role boundary[6] = {Zero, Ap, Bp, Aq, Bq, One};
};

const BridgeTemplate& bridge_template();

enum class StepKind { Vertical, Horizontal };
const char* step_kind_name(StepKind k) noexcept;

struct TraceStep {
  StepKind kind = StepKind::Vertical;
  /// Vertical: new color labels followed by the top color label.
  /// Horizontal: the labels of p and q.
  std::vector<std::string> parameters;
  std::size_t elements_before = 0;
  std::size_t elements_after = 0;
};

struct ExtensionResult {
  AuxStructure aux;
  Embedding embed;
  TraceStep step;
};

/// One-element lattice {x0}, H = {zero_label}.
AuxStructure trivial_aux(const std::string& zero_label = "0");

/// Adds a new bottom and top around L, a chain a_w ≺ b_w for every new
/// color w, a top-color gadget {a, t} ≺ b and three complement atoms.
/// New lattice elements and colors are appended after the old ones.
/// Throws Errc::LabelCollision.
ExtensionResult vertical_extend(const AuxStructure& a, const std::vector<std::string>& new_colors,
                                const std::string& top_color = "1");

/// Splices a bridge onto the spanning quadruple of p and q and adds (p, q)
/// to ν. `p_quotient` replaces (δ(p), ε(p)) as the p side of the quadruple;
/// it must be a p-colored pair. Throws Errc::PreconditionViolated when p, q
/// are not parallel nonzero colors with a spanning quadruple, or H has no
/// greatest color.
ExtensionResult horizontal_extend(const AuxStructure& a, Index p, Index q,
                                  std::optional<OrderedPair> p_quotient = std::nullopt);

/// Called after every construction stage.
using StageObserver = std::function<void(const AuxStructure&, const TraceStep&)>;

struct CombinResult {
  AuxStructure aux;
  Embedding embed;
  /// Element of h_up -> color of the result.
  std::vector<Index> color_of;
  std::vector<TraceStep> trace;
};

/// Extends `a`, whose colors form an order ideal of the bounded poset h_up
/// via `ideal_embed` (color -> h_up element), until the colors are all of
/// h_up. Throws Errc::NotAnIdeal.
CombinResult combin_extend(const AuxStructure& a, const Poset& h_up,
                           std::span<const Index> ideal_embed,
                           const StageObserver& observe = {});

struct Representation {
  AuxStructure aux;
  /// Element of P -> color.
  std::vector<Index> color_of;
  PrincPoset princ;
  /// princ.order -> P.
  IsoWitness witness;
  std::vector<TraceStep> trace;

  const FiniteLattice& lattice() const noexcept { return aux.lattice; }
};

/// Builds L with Princ L ≅ p. Throws Errc::NoZero, Errc::NotDirected, or
/// Errc::VerificationFailed if the final isomorphism does not check out.
Representation represent(const Poset& p, const StageObserver& observe = {});

struct Stage {
  std::size_t step = 0;
  /// The ideal ↓generator of P, elements ascending, and its order.
  Index generator = 0;
  std::vector<Index> ideal;
  Poset ideal_order;
  AuxStructure aux;
  /// From the previous stage; identity-sized for stage 0.
  Embedding embed;
  /// Position in `ideal` -> color.
  std::vector<Index> color_of;
  /// princ(aux.lattice).order -> ideal_order.
  IsoWitness witness;
  std::vector<TraceStep> trace;
};

/// Feeds the principal ideals ↓generators[i] one by one. generators[0] must
/// be the zero of p and the sequence must increase. Throws
/// Errc::NotAChainOfIdeals, Errc::NoZero, or Errc::VerificationFailed.
void represent_chain(const Poset& p, std::span<const Index> generators,
                     const std::function<void(Stage)>& consume,
                     const StageObserver& observe = {});

/// Output of vertical_extend(trivial_aux(), {}).
AuxStructure vertical_skeleton();

}  // namespace princlat
