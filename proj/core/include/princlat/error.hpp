#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace princlat {

using Index = std::uint32_t;

enum class Errc {
  IndexOutOfRange,
  NotAPartialOrder,
  NotALattice,
  NotSurjective,
  NotAChain,
  LabelCollision,
  PreconditionViolated,
  NotAnIdeal,
  NoZero,
  NotDirected,
  NotAChainOfIdeals,
  UnknownGadget,
  VerificationFailed,
  Parse,
};

const char* errc_name(Errc code) noexcept;

/// Single exception type for the library. `witness()` carries the offending
/// element indices when the failure has one (e.g. the pair lacking a join).
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::vector<Index> witness = {})
      : std::runtime_error(what), code_(code), witness_(std::move(witness)) {}

  Errc code() const noexcept { return code_; }
  const std::vector<Index>& witness() const noexcept { return witness_; }

 private:
  Errc code_;
  std::vector<Index> witness_;
};

}  // namespace princlat
