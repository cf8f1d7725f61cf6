// Command-line front end. JSON-first output with a --plain fallback; exit
// codes carry the verdict (0 ok / relation suite passed / equivalent,
// 1 negative verdict, 2 usage or input error).

#include "bratteli/crossed_product.hpp"
#include "bratteli/diagram.hpp"
#include "bratteli/dynamics.hpp"
#include "bratteli/equivalence.hpp"
#include "bratteli/function_algebra.hpp"
#include "bratteli/operator_model.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace {

using bratteli::Diagram;
using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw bratteli::Error(bratteli::ErrorKind::MalformedLine, "cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Diagram load_diagram(const std::string& path) {
  const std::string text = read_file(path);
  if (ends_with(path, ".sub"))
    return Diagram::from_substitution(bratteli::Substitution::parse(text));
  return Diagram::parse(text);
}

void emit(const json& j, bool plain, const std::string& plain_text) {
  if (plain)
    std::cout << plain_text;
  else
    std::cout << j.dump(2) << '\n';
}

json report_json(const bratteli::RelationReport& r) {
  json ces = json::array();
  for (const auto& ce : r.counterexamples)
    ces.push_back({{"path", ce.path}, {"lhs", ce.lhs}, {"rhs", ce.rhs}});
  return json{{"relation", r.relation},
              {"interior", r.interior_size},
              {"pass", r.pass},
              {"mismatches", r.mismatches},
              {"counterexamples", ces}};
}

// ----------------------------------------------------------------- schemas

json schema_for(const std::string& name) {
  auto obj = [](json props, json required) {
    return json{{"$schema", "http://json-schema.org/draft-07/schema#"},
                {"type", "object"},
                {"properties", std::move(props)},
                {"required", std::move(required)}};
  };
  if (name == "info")
    return obj({{"vertices", {{"type", "integer"}}},
                {"edges", {{"type", "integer"}}},
                {"vertex_names", {{"type", "array"}, {"items", {{"type", "string"}}}}},
                {"minimal_edges", {{"type", "array"}, {"items", {{"type", "string"}}}}},
                {"maximal_edges", {{"type", "array"}, {"items", {{"type", "string"}}}}},
                {"incidence", {{"type", "object"}}},
                {"primitive", {{"type", "boolean"}}},
                {"domain_bounds", {{"type", "array"}}}},
               {"vertices", "edges", "incidence"});
  if (name == "paths")
    return obj({{"length", {{"type", "integer"}}},
                {"end", {{"type", {"string", "null"}}}},
                {"paths", {{"type", "array"}, {"items", {{"type", "string"}}}}}},
               {"length", "paths"});
  if (name == "vershik")
    return obj({{"path", {{"type", "string"}}},
                {"iterate", {{"type", "integer"}}},
                {"defined", {{"type", "boolean"}}},
                {"result", {{"type", {"string", "null"}}}}},
               {"path", "iterate", "defined"});
  if (name == "orbit")
    return obj({{"length", {{"type", "integer"}}},
                {"vertex", {{"type", "string"}}},
                {"orbit", {{"type", "array"}, {"items", {{"type", "string"}}}}}},
               {"length", "vertex", "orbit"});
  if (name == "af-tower")
    return obj({{"levels",
                 {{"type", "array"},
                  {"items",
                   obj({{"N", {{"type", "integer"}}},
                        {"blocks", {{"type", "array"}}},
                        {"dim", {{"type", "integer"}}},
                        {"mult", {{"type", "array"}}}},
                       {"N", "blocks", "dim", "mult"})}}}},
               {"levels"});
  if (name == "check")
    return obj({{"depth", {{"type", "integer"}}},
                {"nmax", {{"type", "integer"}}},
                {"pass", {{"type", "boolean"}}},
                {"reports",
                 {{"type", "array"},
                  {"items",
                   obj({{"relation", {{"type", "string"}}},
                        {"interior", {{"type", "integer"}}},
                        {"pass", {{"type", "boolean"}}},
                        {"mismatches", {{"type", "integer"}}},
                        {"counterexamples", {{"type", "array"}}}},
                       {"relation", "interior", "pass", "counterexamples"})}}}},
               {"depth", "nmax", "pass", "reports"});
  if (name == "crossed")
    return obj({{"depth", {{"type", "integer"}}},
                {"samples", {{"type", "integer"}}},
                {"seed", {{"type", "integer"}}},
                {"multiplicative_failures", {{"type", "integer"}}},
                {"adjoint_failures", {{"type", "integer"}}},
                {"pass", {{"type", "boolean"}}}},
               {"depth", "samples", "seed", "pass"});
  if (name == "equiv")
    return obj({{"equivalent", {{"type", "boolean"}}},
                {"certificate", {{"type", {"object", "null"}}}},
                {"reason", {{"type", {"string", "null"}}}}},
               {"equivalent"});
  if (name == "convert")
    return json{{"$schema", "http://json-schema.org/draft-07/schema#"},
                {"type", "string"},
                {"description", "canonical .bd text"}};
  throw bratteli::Error(bratteli::ErrorKind::MalformedLine, "no schema for subcommand '" + name + "'");
}

// -------------------------------------------------------------- subcommands

int run_info(const std::string& file, int bound_levels, bool plain) {
  Diagram d = load_diagram(file);
  json j;
  j["vertices"] = d.vertex_count();
  j["edges"] = d.edge_count();
  j["vertex_names"] = d.vertex_names();
  json min_ids = json::array(), max_ids = json::array();
  for (int e : d.minimal_edges()) min_ids.push_back(d.edge(e).id);
  for (int e : d.maximal_edges()) max_ids.push_back(d.edge(e).id);
  j["minimal_edges"] = min_ids;
  j["maximal_edges"] = max_ids;
  j["incidence"] = {{"rows", "source"}, {"cols", "target"}, {"matrix", d.incidence_matrix()}};
  j["primitive"] = d.is_primitive();
  json bounds = json::array();
  for (int n = 1; n <= bound_levels; ++n) {
    auto b = bratteli::domain_bound(d, n);
    json entry{{"length", n}, {"n_sup", b.n_sup}};
    if (b.bound)
      entry["bound"] = *b.bound;
    else
      entry["bound"] = nullptr;  // exceeds 64-bit range
    bounds.push_back(entry);
  }
  j["domain_bounds"] = bounds;

  std::ostringstream plain_out;
  plain_out << "vertices: " << d.vertex_count() << "\nedges: " << d.edge_count()
            << "\nprimitive: " << (d.is_primitive() ? "yes" : "no") << "\nminimal:";
  for (int e : d.minimal_edges()) plain_out << ' ' << d.edge(e).id;
  plain_out << "\nmaximal:";
  for (int e : d.maximal_edges()) plain_out << ' ' << d.edge(e).id;
  plain_out << "\nincidence (rows=source, cols=target):\n";
  for (const auto& row : d.incidence_matrix()) {
    for (auto v : row) plain_out << ' ' << v;
    plain_out << '\n';
  }
  emit(j, plain, plain_out.str());
  return 0;
}

int run_paths(const std::string& file, int length, const std::string& end, bool plain) {
  Diagram d = load_diagram(file);
  std::optional<int> end_vertex;
  if (!end.empty()) end_vertex = d.vertex_index(end);
  auto paths = bratteli::enumerate_paths(d, length, end_vertex);
  json list = json::array();
  std::ostringstream plain_out;
  for (const auto& p : paths) {
    list.push_back(bratteli::path_string(d, p));
    plain_out << bratteli::path_string(d, p) << '\n';
  }
  json j{{"length", length}, {"end", end.empty() ? json() : json(end)}, {"paths", list}};
  emit(j, plain, plain_out.str());
  return 0;
}

int run_vershik(const std::string& file, const std::string& path_text, long long n, bool plain) {
  Diagram d = load_diagram(file);
  auto p = bratteli::parse_path(d, path_text);
  auto q = bratteli::iterate(d, p, n);
  json j{{"path", path_text},
         {"iterate", n},
         {"defined", q.has_value()},
         {"result", q ? json(bratteli::path_string(d, *q)) : json()}};
  emit(j, plain, (q ? bratteli::path_string(d, *q) : std::string("undefined")) + "\n");
  return 0;
}

int run_orbit(const std::string& file, int length, const std::string& vertex, bool plain) {
  Diagram d = load_diagram(file);
  auto chain = bratteli::orbit_chain(d, length, d.vertex_index(vertex));
  json list = json::array();
  std::ostringstream plain_out;
  for (const auto& p : chain) {
    list.push_back(bratteli::path_string(d, p));
    plain_out << bratteli::path_string(d, p) << '\n';
  }
  json j{{"length", length}, {"vertex", vertex}, {"orbit", list}};
  emit(j, plain, plain_out.str());
  return 0;
}

int run_af_tower(const std::string& file, int levels, const std::string& dot_path, bool plain) {
  Diagram d = load_diagram(file);
  auto tower = bratteli::af_tower(d, levels);
  json jlevels = json::array();
  std::ostringstream plain_out;
  for (const auto& level : tower) {
    json blocks = json::array();
    for (int v = 0; v < d.vertex_count(); ++v)
      blocks.push_back({{"vertex", d.vertex_name(v)}, {"size", level.blocks.block_sizes[v]}});
    jlevels.push_back({{"N", level.blocks.level},
                       {"blocks", blocks},
                       {"dim", level.blocks.dimension},
                       {"mult", level.incl.multiplicity}});
    plain_out << "N=" << level.blocks.level << " dim=" << level.blocks.dimension << " sizes:";
    for (auto s : level.blocks.block_sizes) plain_out << ' ' << s;
    plain_out << '\n';
  }
  if (!dot_path.empty()) {
    std::ofstream out(dot_path);
    if (!out)
      throw bratteli::Error(bratteli::ErrorKind::MalformedLine, "cannot write '" + dot_path + "'");
    out << "digraph af_tower {\n  rankdir=TB;\n";
    for (const auto& level : tower)
      for (int v = 0; v < d.vertex_count(); ++v)
        out << "  n" << level.blocks.level << "_" << v << " [label=\"" << d.vertex_name(v) << ":"
            << level.blocks.block_sizes[v] << "\"];\n";
    for (size_t i = 0; i + 1 < tower.size(); ++i) {
      const auto& mult = tower[i].incl.multiplicity;
      for (int v = 0; v < d.vertex_count(); ++v)
        for (int w = 0; w < d.vertex_count(); ++w)
          if (mult[v][w] > 0)
            out << "  n" << tower[i].blocks.level << "_" << v << " -> n"
                << tower[i + 1].blocks.level << "_" << w << " [label=\"" << mult[v][w]
                << "\"];\n";
    }
    out << "}\n";
  }
  emit(json{{"levels", jlevels}}, plain, plain_out.str());
  return 0;
}

int run_check(const std::string& file, int depth, std::optional<long long> nmax, bool as_json,
              bool parallel) {
  Diagram d = load_diagram(file);
  auto reports = bratteli::check_all(d, depth, nmax, parallel);
  const bool ok = bratteli::all_pass(reports);
  const long long used_nmax =
      nmax.value_or(static_cast<long long>(bratteli::domain_bound(d, depth).n_sup) + 1);
  if (as_json) {
    json jreports = json::array();
    for (const auto& r : reports) jreports.push_back(report_json(r));
    std::cout << json{{"depth", depth}, {"nmax", used_nmax}, {"pass", ok}, {"reports", jreports}}
                     .dump(2)
              << '\n';
  } else {
    for (const auto& r : reports) {
      std::cout << (r.pass ? "PASS " : "FAIL ") << r.relation << " checked=" << r.interior_size;
      if (!r.pass) std::cout << " mismatches=" << r.mismatches;
      std::cout << '\n';
      for (const auto& ce : r.counterexamples)
        std::cout << "  at " << ce.path << "\n    lhs = " << ce.lhs << "\n    rhs = " << ce.rhs
                  << '\n';
    }
    std::cout << (ok ? "PASS" : "FAIL") << " all relation families (depth " << depth << ", |n| <= "
              << used_nmax << ")\n";
  }
  return ok ? 0 : 1;
}

int run_crossed(const std::string& file, int depth, int samples, unsigned long long seed,
                bool plain) {
  Diagram d = load_diagram(file);
  if (depth < 3)
    throw bratteli::Error(bratteli::ErrorKind::DepthExceeded, "crossed checks need --depth >= 3");
  bratteli::Generators gens = bratteli::build_generators(d, depth);
  std::mt19937_64 rng(seed);
  const int max_level = std::min(4, depth - 2);
  long long mult_failures = 0, adjoint_failures = 0;
  for (int s = 0; s < samples; ++s) {
    const int level = 1 + static_cast<int>(rng() % static_cast<unsigned long long>(max_level));
    auto basis = bratteli::a_n_basis(d, level);
    auto pick = [&]() {
      const auto& [f, n] = basis[rng() % basis.size()];
      const long long c = 1 + static_cast<long long>(rng() % 3);
      return bratteli::cross_scale(bratteli::crossed_indicator(d, f, n), bratteli::Rational(c));
    };
    auto x = pick();
    auto y = pick();
    auto lhs = bratteli::phi_times_pi(gens, bratteli::cross_multiply(d, x, y));
    auto rhs = bratteli::phi_times_pi(gens, x) * bratteli::phi_times_pi(gens, y);
    if (!(lhs == rhs)) ++mult_failures;
    auto adj_lhs = bratteli::phi_times_pi(gens, bratteli::cross_adjoint(d, x));
    auto adj_rhs = bratteli::phi_times_pi(gens, x).transpose();
    if (!(adj_lhs == adj_rhs)) ++adjoint_failures;
  }
  const bool ok = mult_failures == 0 && adjoint_failures == 0;
  json j{{"depth", depth},          {"samples", samples},
         {"seed", seed},            {"multiplicative_failures", mult_failures},
         {"adjoint_failures", adjoint_failures}, {"pass", ok}};
  std::ostringstream plain_out;
  plain_out << (ok ? "PASS" : "FAIL") << " " << samples << " samples (seed " << seed << ")\n";
  emit(j, plain, plain_out.str());
  return ok ? 0 : 1;
}

int run_equiv(const std::string& file_a, const std::string& file_b, const std::string& cert_path,
              bool plain) {
  Diagram a = load_diagram(file_a);
  Diagram b = load_diagram(file_b);
  auto result = bratteli::find_equivalence(a, b);
  json j;
  std::ostringstream plain_out;
  if (result.equivalent()) {
    json t = json::object();
    for (const auto& [from, to] : result.certificate->mapping) t[from] = to;
    j = {{"equivalent", true}, {"certificate", {{"T", t}}}, {"reason", nullptr}};
    plain_out << "equivalent\n";
    for (const auto& [from, to] : result.certificate->mapping)
      plain_out << "  " << from << " -> " << to << '\n';
    if (!cert_path.empty()) {
      std::ofstream out(cert_path);
      if (!out)
        throw bratteli::Error(bratteli::ErrorKind::MalformedLine,
                              "cannot write '" + cert_path + "'");
      out << json{{"T", t}}.dump(2) << '\n';
    }
  } else {
    j = {{"equivalent", false}, {"certificate", nullptr}, {"reason", result.reason}};
    plain_out << "not equivalent: " << result.reason << '\n';
  }
  emit(j, plain, plain_out.str());
  return result.equivalent() ? 0 : 1;
}

int run_convert(const std::string& file, const std::string& out_path) {
  const std::string text = read_file(file);
  Diagram d = ends_with(file, ".bd")
                  ? Diagram::parse(text)
                  : Diagram::from_substitution(bratteli::Substitution::parse(text));
  if (out_path.empty()) {
    std::cout << d.serialize();
  } else {
    std::ofstream out(out_path);
    if (!out)
      throw bratteli::Error(bratteli::ErrorKind::MalformedLine, "cannot write '" + out_path + "'");
    out << d.serialize();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stationary ordered Bratteli diagrams: successor dynamics, truncated operator "
               "models, the AF tower of the partial crossed product, and diagram equivalence"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(0, 1);

  std::string schema_name;
  app.add_option("--schema", schema_name, "print the JSON schema of a subcommand and exit");

  bool plain = false;
  app.add_flag("--plain", plain, "plain-text output instead of JSON");

  std::string file, file_b, end, vertex, path_text, dot_path, cert_path, out_path;
  int length = 1, levels = 3, depth = 6, samples = 200, bound_levels = 4;
  long long iterate_n = 1;
  long long nmax_value = -1;
  unsigned long long seed = 1;
  bool as_json = false, parallel = false;

  auto* info = app.add_subcommand("info", "vertex/edge counts, extremal edges, incidence matrix");
  info->add_option("file", file)->required();
  info->add_option("--bound-levels", bound_levels, "report domain bounds for lengths 1..K");

  auto* paths = app.add_subcommand("paths", "enumerate paths in colexicographic order");
  paths->add_option("file", file)->required();
  paths->add_option("--length", length)->required();
  paths->add_option("--end", end, "restrict to paths ending at this vertex");

  auto* vershik = app.add_subcommand("vershik", "apply the successor map to a path");
  vershik->add_option("file", file)->required();
  vershik->add_option("--path", path_text)->required();
  vershik->add_option("--iterate", iterate_n, "number of steps, may be negative");

  auto* orbit = app.add_subcommand("orbit", "successor orbit through the all-minimal path");
  orbit->add_option("file", file)->required();
  orbit->add_option("--length", length)->required();
  orbit->add_option("--vertex", vertex)->required();

  auto* af = app.add_subcommand("af-tower", "block sizes, dimensions and inclusion multiplicities");
  af->add_option("file", file)->required();
  af->add_option("--levels", levels);
  af->add_option("--dot", dot_path, "also write a DOT rendering of the tower");

  auto* check = app.add_subcommand("check", "verify every relation family on the truncation");
  check->add_option("file", file)->required();
  check->add_option("--depth", depth);
  check->add_option("--nmax", nmax_value, "range of shift powers (default: n_sup + 1)");
  check->add_flag("--json", as_json, "JSON report instead of per-relation lines");
  check->add_flag("--parallel", parallel, "run relation families concurrently");

  auto* crossed = app.add_subcommand("crossed", "seeded random multiplicativity checks of the embedding");
  crossed->add_option("file", file)->required();
  crossed->add_option("--depth", depth);
  crossed->add_option("--samples", samples);
  crossed->add_option("--seed", seed);

  auto* equiv = app.add_subcommand("equiv", "decide equivalence, emitting a certificate");
  equiv->add_option("A", file)->required();
  equiv->add_option("B", file_b)->required();
  equiv->add_option("--certificate", cert_path, "write the certificate JSON here");

  auto* convert = app.add_subcommand("convert", "substitution (.sub) to canonical .bd");
  convert->add_option("file", file)->required();
  convert->add_option("out", out_path, "output file (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return 2;
  }

  try {
    if (!schema_name.empty()) {
      std::cout << schema_for(schema_name).dump(2) << '\n';
      return 0;
    }
    if (info->parsed()) return run_info(file, bound_levels, plain);
    if (paths->parsed()) return run_paths(file, length, end, plain);
    if (vershik->parsed()) return run_vershik(file, path_text, iterate_n, plain);
    if (orbit->parsed()) return run_orbit(file, length, vertex, plain);
    if (af->parsed()) return run_af_tower(file, levels, dot_path, plain);
    if (check->parsed())
      return run_check(file, depth,
                       nmax_value >= 0 ? std::optional<long long>(nmax_value) : std::nullopt,
                       as_json, parallel);
    if (crossed->parsed()) return run_crossed(file, depth, samples, seed, plain);
    if (equiv->parsed()) return run_equiv(file, file_b, cert_path, plain);
    if (convert->parsed()) return run_convert(file, out_path);
    std::cerr << app.help();
    return 2;
  } catch (const bratteli::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
}
