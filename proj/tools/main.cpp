#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "princlat/io.hpp"

using namespace princlat;

namespace {

enum Exit : int { Ok = 0, Failed = 1, Rejected = 2, IoError = 3 };

int exit_code(Errc c) {
  switch (c) {
    case Errc::Parse:
      return IoError;
    case Errc::VerificationFailed:
      return Failed;
    default:
      return Rejected;
  }
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_text_file(path, text);
}

std::string pretty(const Json& j) { return j.dump(2) + "\n"; }

double millis_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

Json summary(const Poset& p) {
  return {{"elements", p.size()}, {"covers", p.cover_pairs().size()}};
}

/// Congruence name -> input label.
Json witness_json(const PrincPoset& pp, const Poset& p, const IsoWitness& w) {
  Json out = Json::object();
  for (Index i = 0; i < w.map.size(); ++i) out[pp.order.label(i)] = p.label(w.map[i]);
  return out;
}

Json digest_lines(const AxiomReport& r) {
  Json out = Json::array();
  std::istringstream in(r.digest());
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(line);
  return out;
}

/// Verdict plus witness or an explanation of why none exists.
void add_verdict(Json& report, const PrincPoset& pp, const Poset& p) {
  const auto w = poset_isomorphic(pp.order, p);
  if (w && w->validates(pp.order, p)) {
    report["verdict"] = "ok";
    report["witness"] = witness_json(pp, p, *w);
    return;
  }
  report["verdict"] = "fail";
  std::string why;
  if (pp.order.size() != p.size())
    why = "princ has " + std::to_string(pp.order.size()) + " congruences, input has " +
          std::to_string(p.size()) + " elements";
  else
    why = "no order isomorphism between princ and the input";
  report["explanation"] = why;
}

struct RepresentOptions {
  std::string input, output, dot, trace, aux, report, stream;
};

std::vector<Index> read_generators(const Poset& p, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Parse, "cannot open " + path);
  std::vector<Index> gens;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    std::istringstream words(line);
    std::vector<Index> ideal;
    for (std::string w; words >> w;) {
      const auto x = p.find(w);
      if (!x) throw Error(Errc::Parse, path + ":" + std::to_string(line_no) + ": unknown element '" + w + "'");
      ideal.push_back(*x);
    }
    if (ideal.empty()) continue;
    // A line is either a generator or the full ideal it generates.
    std::optional<Index> gen;
    for (Index c : ideal) {
      std::vector<Index> down = principal_ideal(p, c), sorted = ideal;
      std::sort(sorted.begin(), sorted.end());
      sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
      if (ideal.size() == 1 || down == sorted) gen = c;
    }
    if (!gen)
      throw Error(Errc::NotAChainOfIdeals,
                  path + ":" + std::to_string(line_no) + ": not a principal ideal");
    gens.push_back(*gen);
  }
  return gens;
}

int cmd_represent(const RepresentOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  const Poset p = poset_from_json(read_json_file(o.input));
  Json report = {{"input", summary(p)}};

  if (!o.stream.empty()) {
    const std::vector<Index> gens = read_generators(p, o.stream);
    std::ostringstream lines;
    Json stages = Json::array();
    std::optional<Stage> last;
    represent_chain(p, gens, [&](Stage s) {
      const Json line = {{"stage", s.step},
                         {"generator", p.label(s.generator)},
                         {"elements", s.aux.lattice.size()},
                         {"lattice", lattice_to_json(s.aux.lattice)}};
      lines << line.dump() << "\n";
      stages.push_back({{"generator", p.label(s.generator)},
                        {"ideal_size", s.ideal.size()},
                        {"elements", s.aux.lattice.size()},
                        {"trace", trace_to_json(s.trace)}});
      last = std::move(s);
    });
    emit(o.output, lines.str());
    if (!o.dot.empty()) write_text_file(o.dot, lattice_to_dot(last->aux.lattice));
    if (!o.aux.empty()) write_text_file(o.aux, pretty(aux_to_json(last->aux)));
    report["stages"] = stages;
    report["verdict"] = "ok";
    report["axioms"] = digest_lines(check_aux(last->aux));
    report["wall_time_ms"] = millis_since(start);
    if (!o.report.empty()) write_text_file(o.report, pretty(report));
    std::cerr << "ok: " << stages.size() << " stages, final lattice has "
              << last->aux.lattice.size() << " elements\n";
    return Ok;
  }

  const Representation r = represent(p);
  emit(o.output, pretty(lattice_to_json(r.lattice())));
  if (!o.dot.empty()) write_text_file(o.dot, lattice_to_dot(r.lattice()));
  if (!o.trace.empty()) write_text_file(o.trace, pretty(trace_to_json(r.trace)));
  if (!o.aux.empty()) write_text_file(o.aux, pretty(aux_to_json(r.aux)));

  const AxiomReport axioms = check_aux(r.aux);
  report["trace"] = trace_to_json(r.trace);
  report["sizes"] = {{"lattice", r.lattice().size()},
                     {"colors", r.aux.colors.size()},
                     {"congruences", r.princ.congruences.size()}};
  add_verdict(report, r.princ, p);
  report["axioms"] = digest_lines(axioms);
  report["wall_time_ms"] = millis_since(start);
  if (!o.report.empty()) write_text_file(o.report, pretty(report));

  const bool ok = report["verdict"] == "ok" && axioms.passed();
  std::cerr << (ok ? "ok: " : "FAIL: ") << "lattice has " << r.lattice().size() << " elements\n";
  return ok ? Ok : Failed;
}

int cmd_princ(const std::string& input, const std::string& output) {
  const FiniteLattice l = lattice_from_json(read_json_file(input));
  const PrincPoset pp = princ(l);
  Json j = princ_to_json(l, pp);
  // Width of each rank level, ranks counted from Δ.
  const Poset& o = pp.order;
  std::vector<std::size_t> rank(o.size(), 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [x, y] : o.cover_pairs())
      if (rank[y] < rank[x] + 1) {
        rank[y] = rank[x] + 1;
        changed = true;
      }
  }
  std::vector<std::size_t> widths(o.size() ? *std::max_element(rank.begin(), rank.end()) + 1 : 0, 0);
  for (std::size_t r : rank) ++widths[r];
  j["count"] = pp.congruences.size();
  j["level_widths"] = widths;
  emit(output, pretty(j));
  return Ok;
}

int cmd_verify(const std::string& poset, const std::string& lattice, const std::string& aux,
               const std::string& output) {
  const auto start = std::chrono::steady_clock::now();
  const Poset p = poset_from_json(read_json_file(poset));
  std::optional<AuxStructure> a;
  FiniteLattice l;
  if (!aux.empty()) {
    a = aux_from_json(read_json_file(aux));
    l = a->lattice;
  } else {
    l = lattice_from_json(read_json_file(lattice));
  }
  const PrincPoset pp = princ(l);
  Json report = {{"input", summary(p)},
                 {"sizes", {{"lattice", l.size()}, {"congruences", pp.congruences.size()}}}};
  add_verdict(report, pp, p);
  bool ok = report["verdict"] == "ok";

  if (a) {
    const AxiomReport axioms = check_aux(*a);
    report["axioms"] = digest_lines(axioms);
    ok = ok && axioms.passed();
    if (axioms.passed()) {
      std::size_t chains = 0, bad = 0;
      for (const auto& c : maximal_chains(l)) {
        ++chains;
        if (!check_chain_lemma(l, a->gamma, a->colors, c)) ++bad;
      }
      report["chain_lemma"] = {{"chains", chains}, {"failures", bad}};
      ok = ok && bad == 0;
      report["color_witness"] = color_witness(*a, pp).has_value();
      ok = ok && color_witness(*a, pp).has_value();
    }
    if (!ok) report["verdict"] = "fail";
  }
  report["wall_time_ms"] = millis_since(start);
  emit(output, pretty(report));
  return ok ? Ok : Failed;
}

int cmd_gadget(const std::string& name, const std::string& output, const std::string& dot) {
  FiniteLattice l;
  if (name == "bridge")
    l = bridge_template().lattice;
  else if (name == "vertical-skeleton")
    l = vertical_skeleton().lattice;
  else
    throw Error(Errc::UnknownGadget, "unknown gadget '" + name + "' (bridge, vertical-skeleton)");
  emit(output, pretty(lattice_to_json(l)));
  if (!dot.empty()) write_text_file(dot, lattice_to_dot(l));
  return Ok;
}

int cmd_check_aux(const std::string& input, const std::string& output) {
  const AuxStructure a = aux_from_json(read_json_file(input));
  const AxiomReport r = check_aux(a);
  emit(output, pretty({{"passed", r.passed()}, {"axioms", report_to_json(r)}}));
  if (!r.passed()) std::cerr << r.digest();
  return r.passed() ? Ok : Failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite lattices with a prescribed poset of principal congruences"};
  app.require_subcommand(1);

  RepresentOptions ro;
  auto* represent_cmd = app.add_subcommand("represent", "Build a lattice whose principal congruences form the input poset");
  represent_cmd->add_option("input", ro.input, "Poset JSON")->required();
  represent_cmd->add_option("-o,--output", ro.output, "Lattice JSON (default stdout)");
  represent_cmd->add_option("--dot", ro.dot, "Graphviz Hasse diagram");
  represent_cmd->add_option("--trace", ro.trace, "Construction trace JSON");
  represent_cmd->add_option("--aux", ro.aux, "Full quasi-colored structure JSON");
  represent_cmd->add_option("--report", ro.report, "Run report JSON");
  represent_cmd->add_option("--stream", ro.stream,
                            "Ideal chain, one ideal per line (a generator or all its elements); "
                            "output becomes one JSON line per stage");

  std::string lattice_in, out;
  auto* princ_cmd = app.add_subcommand("princ", "Principal congruences of a lattice");
  princ_cmd->add_option("lattice", lattice_in, "Lattice JSON")->required();
  princ_cmd->add_option("-o,--output", out, "Output JSON (default stdout)");

  std::string poset_in, aux_in;
  auto* verify_cmd = app.add_subcommand("verify", "Check that a lattice represents a poset");
  verify_cmd->add_option("poset", poset_in, "Poset JSON")->required();
  auto* lat_opt = verify_cmd->add_option("--lattice", lattice_in, "Lattice JSON");
  auto* aux_opt = verify_cmd->add_option("--aux", aux_in, "Quasi-colored structure JSON");
  lat_opt->excludes(aux_opt);
  verify_cmd->add_option("-o,--output", out, "Run report JSON (default stdout)");

  std::string gadget, dot;
  auto* gadget_cmd = app.add_subcommand("gadget", "Emit a construction gadget");
  gadget_cmd->add_option("name", gadget, "bridge or vertical-skeleton")->required();
  gadget_cmd->add_option("-o,--output", out, "Lattice JSON (default stdout)");
  gadget_cmd->add_option("--dot", dot, "Graphviz Hasse diagram");

  std::string check_in;
  auto* check_cmd = app.add_subcommand("check-aux", "Evaluate the quasi-coloring axioms");
  check_cmd->add_option("aux", check_in, "Quasi-colored structure JSON")->required();
  check_cmd->add_option("-o,--output", out, "Report JSON (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? Ok : Rejected;
  }

  try {
    if (*represent_cmd) return cmd_represent(ro);
    if (*princ_cmd) return cmd_princ(lattice_in, out);
    if (*verify_cmd) {
      if (lattice_in.empty() && aux_in.empty()) {
        std::cerr << "error: verify needs --lattice or --aux\n";
        return Rejected;
      }
      return cmd_verify(poset_in, lattice_in, aux_in, out);
    }
    if (*gadget_cmd) return cmd_gadget(gadget, out, dot);
    if (*check_cmd) return cmd_check_aux(check_in, out);
  } catch (const Error& e) {
    std::cerr << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
    return exit_code(e.code());
  }
  return Rejected;
}
