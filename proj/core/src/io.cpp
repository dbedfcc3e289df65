#include "princlat/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

namespace princlat {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(Errc::Parse, what); }

class LabelIndex {
 public:
  explicit LabelIndex(const std::vector<std::string>& labels) {
    for (Index i = 0; i < labels.size(); ++i)
      if (!index_.emplace(labels[i], i).second) parse_error("duplicate element '" + labels[i] + "'");
  }

  Index operator()(const Json& label) const {
    if (!label.is_string()) parse_error("element reference must be a string: " + label.dump());
    const auto it = index_.find(label.get<std::string>());
    if (it == index_.end()) parse_error("unknown element '" + label.get<std::string>() + "'");
    return it->second;
  }

 private:
  std::map<std::string, Index> index_;
};

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<std::string> string_list(const Json& j, const char* what) {
  if (!j.is_array()) parse_error(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) parse_error(std::string(what) + " must contain strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::vector<IndexPair> pair_list(const Json& j, const LabelIndex& idx, const char* what) {
  if (!j.is_array()) parse_error(std::string(what) + " must be an array");
  std::vector<IndexPair> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) parse_error(std::string(what) + " entries must be pairs");
    out.emplace_back(idx(e[0]), idx(e[1]));
  }
  return out;
}

Json label_pairs(const std::vector<std::string>& labels, std::vector<IndexPair> pairs) {
  std::sort(pairs.begin(), pairs.end(), [&](const IndexPair& a, const IndexPair& b) {
    return std::tie(labels[a.first], labels[a.second]) <
           std::tie(labels[b.first], labels[b.second]);
  });
  Json out = Json::array();
  for (const auto& [x, y] : pairs) out.push_back({labels[x], labels[y]});
  return out;
}

std::vector<IndexPair> lattice_covers(const FiniteLattice& l) {
  std::vector<IndexPair> out;
  for (const auto& c : cover_pairs(l)) out.emplace_back(c.lo, c.hi);
  return out;
}

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Json poset_to_json(const Poset& p) {
  return {{"elements", p.labels()}, {"leq", label_pairs(p.labels(), p.cover_pairs())}};
}

Poset poset_from_json(const Json& j) {
  const auto labels = string_list(field(j, "elements"), "elements");
  const LabelIndex idx(labels);
  const auto pairs = pair_list(field(j, "leq"), idx, "leq");
  return Poset::from_quasiorder(quos(labels.size(), pairs, labels));
}

Json lattice_to_json(const FiniteLattice& l) {
  return {{"elements", l.labels()},
          {"covers", label_pairs(l.labels(), lattice_covers(l))},
          {"bottom", l.label(l.bottom())},
          {"top", l.label(l.top())}};
}

FiniteLattice lattice_from_json(const Json& j) {
  const auto labels = string_list(field(j, "elements"), "elements");
  if (labels.empty()) parse_error("a lattice needs at least one element");
  const LabelIndex idx(labels);
  const auto covers = pair_list(field(j, "covers"), idx, "covers");
  const QuasiOrder q = quos(labels.size(), covers, labels);
  FiniteLattice l = FiniteLattice::from_leq(q.matrix(), labels);
  if (j.contains("bottom") && idx(j.at("bottom")) != l.bottom())
    parse_error("declared bottom is not the least element");
  if (j.contains("top") && idx(j.at("top")) != l.top())
    parse_error("declared top is not the greatest element");
  return l;
}

Json partition_to_json(const FiniteLattice& l, const Partition& p) {
  Json out = Json::array();
  std::vector<std::vector<std::string>> blocks;
  for (const auto& b : p.blocks()) {
    std::vector<std::string> names;
    for (Index x : b) names.push_back(l.label(x));
    std::sort(names.begin(), names.end());
    blocks.push_back(std::move(names));
  }
  std::sort(blocks.begin(), blocks.end());
  for (auto& b : blocks) out.push_back(std::move(b));
  return out;
}

Json princ_to_json(const FiniteLattice& l, const PrincPoset& pp) {
  Json out = poset_to_json(pp.order);
  Json congruences = Json::array();
  for (std::size_t i = 0; i < pp.congruences.size(); ++i) {
    const auto& g = pp.generators[i];
    congruences.push_back({{"name", pp.order.label(Index(i))},
                           {"generator", {l.label(g.lo), l.label(g.hi)}},
                           {"blocks", partition_to_json(l, pp.congruences[i])}});
  }
  out["congruences"] = std::move(congruences);
  return out;
}

Json aux_to_json(const AuxStructure& a) {
  const auto& ll = a.lattice.labels();
  const auto& hl = a.colors.labels();
  std::vector<IndexPair> nu;
  for (const auto& [x, y] : a.colors.pairs())
    if (x != y) nu.push_back({x, y});

  Json entries = Json::array();
  for (const auto& [pair, c] : a.gamma.entries())
    entries.push_back({ll.at(pair.lo), ll.at(pair.hi), hl.at(c)});
  Json delta = Json::array(), epsilon = Json::array();
  for (Index d : a.delta) delta.push_back(ll.at(d));
  for (Index e : a.epsilon) epsilon.push_back(ll.at(e));

  return {{"lattice", lattice_to_json(a.lattice)},
          {"colors", {{"elements", hl}, {"leq", label_pairs(hl, nu)}}},
          {"gamma",
           {{"zero", hl.at(a.gamma.zero())},
            {"default", a.gamma.fallback() ? Json(hl.at(*a.gamma.fallback())) : Json(nullptr)},
            {"entries", std::move(entries)}}},
          {"delta", std::move(delta)},
          {"epsilon", std::move(epsilon)}};
}

AuxStructure aux_from_json(const Json& j) {
  AuxStructure a;
  a.lattice = lattice_from_json(field(j, "lattice"));
  const LabelIndex lidx(a.lattice.labels());

  const Json& cj = field(j, "colors");
  const auto hl = string_list(field(cj, "elements"), "colors.elements");
  const LabelIndex hidx(hl);
  a.colors = quos(hl.size(), pair_list(field(cj, "leq"), hidx, "colors.leq"), hl);

  const Json& gj = field(j, "gamma");
  const Json& fallback = field(gj, "default");
  a.gamma = Coloring(hidx(field(gj, "zero")),
                     fallback.is_null() ? std::nullopt : std::optional<Index>(hidx(fallback)));
  const Json& entries = field(gj, "entries");
  if (!entries.is_array()) parse_error("gamma.entries must be an array");
  for (const auto& e : entries) {
    if (!e.is_array() || e.size() != 3) parse_error("gamma entries must be [x, y, color]");
    const Index x = lidx(e[0]), y = lidx(e[1]);
    if (!a.lattice.leq(x, y)) parse_error("gamma entry is not an ordered pair: " + e.dump());
    a.gamma.set(x, y, hidx(e[2]));
  }
  for (const auto& name : string_list(field(j, "delta"), "delta")) a.delta.push_back(lidx(name));
  for (const auto& name : string_list(field(j, "epsilon"), "epsilon"))
    a.epsilon.push_back(lidx(name));
  return a;
}

Json trace_to_json(std::span<const TraceStep> trace) {
  Json out = Json::array();
  for (const auto& s : trace)
    out.push_back({{"kind", step_kind_name(s.kind)},
                   {"parameters", s.parameters},
                   {"elements_before", s.elements_before},
                   {"elements_after", s.elements_after}});
  return out;
}

Json report_to_json(const AxiomReport& r) {
  Json out = Json::array();
  for (const auto& a : r.results) {
    Json e = {{"axiom", a.name}, {"passed", a.passed}};
    if (!a.passed) {
      e["detail"] = a.detail;
      e["witness"] = a.witness;
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::string lattice_to_dot(const FiniteLattice& l, const AuxStructure* colored) {
  std::ostringstream os;
  os << "digraph lattice {\n  rankdir=BT;\n  node [shape=circle, fontsize=10];\n";
  for (Index x = 0; x < l.size(); ++x) os << "  " << dot_quote(l.label(x)) << ";\n";
  for (const auto& c : cover_pairs(l)) {
    os << "  " << dot_quote(l.label(c.lo)) << " -> " << dot_quote(l.label(c.hi));
    if (colored) os << " [label=" << dot_quote(colored->colors.label(colored->gamma(c))) << "]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Parse, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Parse, path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::Parse, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(Errc::Parse, "write failed for " + path.string());
}

}  // namespace princlat
