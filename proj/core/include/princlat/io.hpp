#pragma once

// JSON and Graphviz serialization. Elements are referenced by label.

#include <filesystem>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "princlat/construction.hpp"

namespace princlat {

using Json = nlohmann::json;

/// {"elements": [...], "leq": [[x, y], ...]}. Reading applies quos and
/// rejects cycles with Errc::NotAPartialOrder; writing emits cover pairs.
Json poset_to_json(const Poset& p);
Poset poset_from_json(const Json& j);

/// {"elements": [...], "covers": [[x, y], ...], "bottom": x, "top": y}.
Json lattice_to_json(const FiniteLattice& l);
FiniteLattice lattice_from_json(const Json& j);

/// Blocks as sorted label lists.
Json partition_to_json(const FiniteLattice& l, const Partition& p);

/// Poset JSON over congruence names plus "congruences" with blocks and
/// generators.
Json princ_to_json(const FiniteLattice& l, const PrincPoset& pp);

Json aux_to_json(const AuxStructure& a);
AuxStructure aux_from_json(const Json& j);

Json trace_to_json(std::span<const TraceStep> trace);
Json report_to_json(const AxiomReport& r);

/// Hasse diagram, bottom-up. With `colored`, edges carry color labels.
std::string lattice_to_dot(const FiniteLattice& l, const AuxStructure* colored = nullptr);

/// Throws Errc::Parse on unreadable or malformed files.
Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace princlat
