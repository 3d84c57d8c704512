// perfkern: command-line front end.
//
// Exit codes: 0 kernel found / property holds, 1 no kernel / property fails,
// 2 usage or format error, 3 class precondition violated.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "perfkern/perfkern.hpp"

using namespace perfkern;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kNo = 1, kUsage = 2, kPrecondition = 3 };

struct Report {
  std::string status;
  std::optional<VertexSet> kernel;
  std::optional<VertexSet> witness;
  std::string message;
  DecompositionStats stats;
  double millis = 0;
};

int emit(const Report& r, bool as_json, int code) {
  if (as_json) {
    json j{{"status", r.status},
           {"stats", {{"atoms", r.stats.atom_calls}, {"cutsets", r.stats.cutsets}, {"millis", r.millis}}}};
    if (r.kernel) j["kernel"] = *r.kernel;
    if (r.witness) j["witness"] = *r.witness;
    if (!r.message.empty()) j["message"] = r.message;
    std::cout << j.dump() << '\n';
  } else {
    if (r.kernel) std::cout << "kernel: " << io::format_vertex_list(*r.kernel) << '\n';
    else if (r.status == "no-kernel") std::cout << "no kernel\n";
    if (!r.message.empty()) std::cerr << r.message << '\n';
    if (r.witness) std::cout << "witness: " << io::format_vertex_list(*r.witness) << '\n';
  }
  return code;
}

std::string find_class = "auto";
std::string input_path, certificate_path, representation_path;
bool json_out = false;

int run_find() {
  Report r;
  auto d = io::load_instance(input_path);
  auto t0 = std::chrono::steady_clock::now();
  std::optional<VertexSet> k;
  std::string cls = find_class;
  if (cls == "auto") {
    auto ev = recognize_chordal(d.underlying());
    if (!ev.chordal) {
      r.status = "error";
      r.message = "input is not chordal; pass --class";
      return emit(r, json_out, kUsage);
    }
    cls = check_clique_acyclic(d, &ev).acyclic ? "chordal" : "chordal-any";
  }
  if (cls == "chordal") {
    k = solve_chordal_super(d, &r.stats);
  } else if (cls == "chordal-any") {
    k = solve_chordal_orientation(d);
  } else if (cls == "circular-arc") {
    if (representation_path.empty()) throw InvalidInput("--representation is required for circular-arc");
    k = solve_circular_arc_orientation(d, io::load_representation(representation_path, d.size()));
  } else if (cls == "line") {
    std::optional<BipartiteRoot> root;
    if (!certificate_path.empty()) root = io::load_root(certificate_path);
    else root = reconstruct_bipartite_root(d.underlying());
    if (!root) throw PreconditionError("not-a-line-graph", "no bipartite multigraph root exists for this graph");
    k = solve_line_bipartite(d, *root);
  } else if (cls == "clawfree") {
    CertificateProvider provider;
    if (!certificate_path.empty()) {
      auto cert = io::load_certificate(certificate_path);
      validate_certificate(cert, d.underlying());
      provider = restrict_from(std::move(cert));
    }
    k = solve_clawfree_orientation(d, provider, {}, &r.stats);
  } else if (cls == "de") {
    k = solve_de_super(d, &r.stats);
  } else {
    throw InvalidInput("unknown class '" + cls + "'");
  }
  r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (!k) {
    r.status = "no-kernel";
    return emit(r, json_out, kNo);
  }
  r.status = "kernel";
  r.kernel = *k;
  return emit(r, json_out, kOk);
}

std::string kernel_text;

int run_verify() {
  auto d = io::load_instance(input_path);
  VertexSet s;
  try {
    s = io::parse_vertex_list(kernel_text);
  } catch (const FormatError& e) {
    throw FormatError(std::string("--kernel: ") + e.what());
  }
  auto verdict = verify_kernel(d, s);
  Report r;
  if (verdict) {
    r.status = "kernel";
    r.kernel = s;
    return emit(r, json_out, kOk);
  }
  r.status = "not-kernel";
  r.message = verdict.describe();
  r.witness = verdict.witness();
  return emit(r, json_out, kNo);
}

std::string property;

int run_check() {
  auto d = io::load_instance(input_path);
  auto g = d.underlying();
  Report r;
  if (property == "chordal") {
    auto ev = recognize_chordal(g);
    if (ev.chordal) {
      r.status = "holds";
      r.message = std::to_string(ev.cliques.size()) + " maximal cliques";
      return emit(r, json_out, kOk);
    }
    r.status = "fails";
    r.message = "induced cycle of length " + std::to_string(ev.hole.size());
    r.witness = ev.hole;
    return emit(r, json_out, kNo);
  }
  if (property == "claw-free") {
    auto c = check_claw_free(g);
    if (c.claw_free) {
      r.status = "holds";
      return emit(r, json_out, kOk);
    }
    r.status = "fails";
    r.message = "claw centred at " + std::to_string(c.center);
    r.witness = VertexSet{c.center, c.leaves[0], c.leaves[1], c.leaves[2]};
    return emit(r, json_out, kNo);
  }
  if (property == "clique-acyclic") {
    std::optional<ChordalEvidence> ev;
    if (!d.is_orientation()) ev = recognize_chordal(g);
    auto res = check_clique_acyclic(d, ev && ev->chordal ? &*ev : nullptr);
    if (res.acyclic) {
      r.status = "holds";
      return emit(r, json_out, kOk);
    }
    r.status = "fails";
    r.message = "directed cycle of one-way arcs inside a clique";
    r.witness = res.cycle;
    return emit(r, json_out, kNo);
  }
  if (property == "flat-edges") {
    auto flat = find_flat_edges(g);
    if (json_out) {
      json edges = json::array();
      for (auto [u, v] : flat) edges.push_back({u, v});
      std::cout << json{{"status", "holds"}, {"flat_edges", edges}}.dump() << '\n';
    } else {
      for (auto [u, v] : flat) std::cout << u << ' ' << v << '\n';
    }
    return kOk;
  }
  throw InvalidInput("unknown property '" + property + "'");
}

bool oracle_all = false;

int run_oracle() {
  auto d = io::load_instance(input_path);
  auto kernels = enumerate_kernels(d);
  if (json_out) {
    json j{{"status", kernels.empty() ? "no-kernel" : "kernel"}, {"count", kernels.size()}};
    if (oracle_all) j["kernels"] = kernels;
    else if (!kernels.empty()) j["kernel"] = kernels.front();
    std::cout << j.dump() << '\n';
  } else if (kernels.empty()) {
    std::cout << "no kernel\n";
  } else if (oracle_all) {
    std::cout << kernels.size() << " kernels\n";
    for (const auto& k : kernels) std::cout << io::format_vertex_list(k) << '\n';
  } else {
    std::cout << "kernel: " << io::format_vertex_list(kernels.front()) << '\n';
  }
  return kernels.empty() ? kNo : kOk;
}

std::string gen_class;
int gen_n = 10;
double gen_density = 0.5;
std::uint64_t gen_seed = 1;
std::string gen_out;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << text;
}

int run_gen() {
  auto inst = generate(parse_gen_class(gen_class), gen_n, gen_density, gen_seed);
  write_file(gen_out + ".inst", io::format_instance(inst.digraph, inst.header));
  std::vector<std::string> written{gen_out + ".inst"};
  auto side_file = [&](const std::string& ext, auto&& writer) {
    std::ostringstream os;
    for (const auto& h : inst.header) os << "# " << h << '\n';
    writer(os);
    write_file(gen_out + ext, os.str());
    written.push_back(gen_out + ext);
  };
  if (inst.representation) side_file(".rep", [&](std::ostream& os) { io::write_representation(os, *inst.representation); });
  if (inst.root) side_file(".root", [&](std::ostream& os) { io::write_root(os, *inst.root); });
  if (inst.tree) side_file(".tree", [&](std::ostream& os) { io::write_path_tree(os, *inst.tree); });
  if (inst.certificate) {
    std::ostringstream os;
    io::write_certificate(os, *inst.certificate);
    write_file(gen_out + ".cert.json", os.str());
    written.push_back(gen_out + ".cert.json");
  }
  for (const auto& w : written) std::cout << w << '\n';
  return kOk;
}

std::string bench_sizes = "100,1000,5000";

int run_bench() {
  auto cls = parse_gen_class(gen_class);
  auto sizes = io::parse_vertex_list(bench_sizes);
  std::cout << "class n arcs millis atoms cutsets verified\n";
  for (int n : sizes) {
    auto inst = generate(cls, n, gen_density, gen_seed);
    DecompositionStats st;
    auto t0 = std::chrono::steady_clock::now();
    std::optional<VertexSet> k;
    switch (cls) {
      case GenClass::chordal_super: k = solve_chordal_super(inst.digraph, &st); break;
      case GenClass::chordal_orientation: k = solve_chordal_orientation(inst.digraph); break;
      case GenClass::circular_arc: k = solve_circular_arc_orientation(inst.digraph, *inst.representation); break;
      case GenClass::line_bipartite: k = solve_line_bipartite(inst.digraph, *inst.root); break;
      case GenClass::augmented_line: k = solve_augmented_line_graph(inst.digraph, *inst.certificate); break;
      case GenClass::de: k = solve_de_super(inst.digraph, &st); break;
      case GenClass::clawfree_glued:
        k = solve_clawfree_orientation(inst.digraph, restrict_from(*inst.certificate), {}, &st);
        break;
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    const char* verified = !k ? "no-kernel" : (verify_kernel(inst.digraph, *k) ? "yes" : "NO");
    std::cout << to_string(cls) << ' ' << n << ' ' << inst.digraph.arc_count() << ' ' << ms << ' ' << st.atom_calls
              << ' ' << st.cutsets << ' ' << verified << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kernels of super-orientations of chordal, DE, claw-free and circular-arc graphs"};
  app.require_subcommand(1);

  auto* find = app.add_subcommand("find", "compute a kernel");
  find->add_option("--class", find_class, "chordal|chordal-any|circular-arc|line|clawfree|de|auto")
      ->check(CLI::IsMember({"chordal", "chordal-any", "circular-arc", "line", "clawfree", "de", "auto"}));
  find->add_option("--input", input_path, "instance file")->required();
  find->add_option("--certificate", certificate_path, "root file (line) or augmentation certificate (clawfree)");
  find->add_option("--representation", representation_path, "interval or arc model (circular-arc)");
  find->add_flag("--json", json_out);

  auto* verify = app.add_subcommand("verify", "check that a vertex set is a kernel");
  verify->add_option("--input", input_path)->required();
  verify->add_option("--kernel", kernel_text, "comma separated vertices")->required();
  verify->add_flag("--json", json_out);

  auto* check = app.add_subcommand("check", "test a structural property");
  check->add_option("--property", property)
      ->required()
      ->check(CLI::IsMember({"chordal", "claw-free", "clique-acyclic", "flat-edges"}));
  check->add_option("--input", input_path)->required();
  check->add_flag("--json", json_out);

  auto* oracle = app.add_subcommand("oracle", "exhaustive search (n <= 20)");
  oracle->add_option("--input", input_path)->required();
  oracle->add_flag("--all", oracle_all, "list every kernel");
  oracle->add_flag("--json", json_out);

  auto* gen = app.add_subcommand("gen", "write a random instance");
  gen->add_option("--class", gen_class)->required();
  gen->add_option("--n", gen_n)->required();
  gen->add_option("--density", gen_density);
  gen->add_option("--seed", gen_seed);
  gen->add_option("--out", gen_out, "output prefix")->required();

  auto* bench = app.add_subcommand("bench", "time a solver on generated instances");
  bench->add_option("--class", gen_class)->required();
  bench->add_option("--sizes", bench_sizes);
  bench->add_option("--seed", gen_seed);
  bench->add_option("--density", gen_density);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*find) return run_find();
    if (*verify) return run_verify();
    if (*check) return run_check();
    if (*oracle) return run_oracle();
    if (*gen) return run_gen();
    if (*bench) return run_bench();
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const PreconditionError& e) {
    Report r;
    r.status = "precondition";
    r.message = e.kind() + ": " + e.what();
    if (!e.witness().empty()) r.witness = e.witness();
    return emit(r, json_out, kPrecondition);
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kPrecondition;
  }
  return kUsage;
}
