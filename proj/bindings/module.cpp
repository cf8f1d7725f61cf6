#include "bratteli/crossed_product.hpp"
#include "bratteli/diagram.hpp"
#include "bratteli/dynamics.hpp"
#include "bratteli/equivalence.hpp"
#include "bratteli/function_algebra.hpp"
#include "bratteli/operator_model.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace bratteli;

namespace {

Word to_word(const Diagram& d, const std::vector<std::string>& ids) {
  Word w;
  w.reserve(ids.size());
  for (const auto& id : ids) w.push_back(d.edge_index(id));
  return w;
}

Path to_path(const Diagram& d, const std::vector<std::string>& ids) {
  Word w = to_word(d, ids);
  if (w.empty() || !is_path(d, w))
    throw Error(ErrorKind::BadPath, "edge id list is not a path");
  return Path{std::move(w)};
}

std::vector<std::string> from_path(const Diagram& d, const Path& p) {
  std::vector<std::string> ids;
  ids.reserve(p.edges.size());
  for (int e : p.edges) ids.push_back(d.edge(e).id);
  return ids;
}

py::dict report_dict(const Diagram& d, const RelationReport& r) {
  py::list ces;
  for (const auto& ce : r.counterexamples) {
    py::dict c;
    c["path"] = ce.path;
    c["lhs"] = ce.lhs;
    c["rhs"] = ce.rhs;
    ces.append(c);
  }
  py::dict out;
  out["relation"] = r.relation;
  out["interior"] = r.interior_size;
  out["pass"] = r.pass;
  out["mismatches"] = r.mismatches;
  out["counterexamples"] = ces;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "stationary ordered Bratteli diagrams with successor dynamics, truncated operator "
            "models, the AF tower of the partial crossed product, and equivalence certificates";

  py::register_exception<Error>(m, "BratteliError");

  py::class_<Diagram>(m, "Diagram")
      .def_static("parse", &Diagram::parse, py::arg("text"))
      .def_property_readonly("vertex_names", &Diagram::vertex_names)
      .def_property_readonly("vertex_count", &Diagram::vertex_count)
      .def_property_readonly("edge_count", &Diagram::edge_count)
      .def("edges",
           [](const Diagram& d) {
             py::list out;
             for (const Edge& e : d.edges())
               out.append(py::make_tuple(e.id, d.vertex_name(e.source), d.vertex_name(e.target),
                                         e.rank));
             return out;
           })
      .def("successor_edge",
           [](const Diagram& d, const std::string& id) -> std::optional<std::string> {
             auto s = d.successor_edge(d.edge_index(id));
             if (!s) return std::nullopt;
             return d.edge(*s).id;
           })
      .def("minimal_edges",
           [](const Diagram& d) {
             std::vector<std::string> out;
             for (int e : d.minimal_edges()) out.push_back(d.edge(e).id);
             return out;
           })
      .def("maximal_edges",
           [](const Diagram& d) {
             std::vector<std::string> out;
             for (int e : d.maximal_edges()) out.push_back(d.edge(e).id);
             return out;
           })
      .def("incidence_matrix", &Diagram::incidence_matrix)
      .def("is_primitive", &Diagram::is_primitive)
      .def("serialize", &Diagram::serialize)
      .def("__eq__", [](const Diagram& a, const Diagram& b) { return a == b; })
      .def("__repr__", [](const Diagram& d) {
        return "<Diagram " + std::to_string(d.vertex_count()) + " vertices, " +
               std::to_string(d.edge_count()) + " edges>";
      });

  py::class_<Substitution>(m, "Substitution")
      .def_readonly("letters", &Substitution::letters);

  m.def("parse_diagram", &Diagram::parse, py::arg("text"));
  m.def("parse_substitution", &Substitution::parse, py::arg("text"));
  m.def("diagram_from_substitution", &Diagram::from_substitution, py::arg("substitution"));

  // dynamics: paths travel as lists of edge ids
  m.def("is_path", [](const Diagram& d, const std::vector<std::string>& ids) {
    return is_path(d, to_word(d, ids));
  });
  m.def("classify", [](const Diagram& d, const std::vector<std::string>& ids) {
    auto c = classify(d, to_path(d, ids));
    return py::make_tuple(c.is_max, c.is_min);
  });
  m.def("vershik",
        [](const Diagram& d, const std::vector<std::string>& ids)
            -> std::optional<std::vector<std::string>> {
          auto q = vershik(d, to_path(d, ids));
          if (!q) return std::nullopt;
          return from_path(d, *q);
        });
  m.def("vershik_inv",
        [](const Diagram& d, const std::vector<std::string>& ids)
            -> std::optional<std::vector<std::string>> {
          auto q = vershik_inv(d, to_path(d, ids));
          if (!q) return std::nullopt;
          return from_path(d, *q);
        });
  m.def("iterate",
        [](const Diagram& d, const std::vector<std::string>& ids, long long n)
            -> std::optional<std::vector<std::string>> {
          auto q = iterate(d, to_path(d, ids), n);
          if (!q) return std::nullopt;
          return from_path(d, *q);
        });
  m.def("in_domain", [](const Diagram& d, const std::vector<std::string>& ids, long long n) {
    return in_domain(d, to_path(d, ids), n);
  });
  m.def("enumerate_paths",
        [](const Diagram& d, int length, std::optional<std::string> end) {
          std::optional<int> end_vertex;
          if (end) end_vertex = d.vertex_index(*end);
          py::list out;
          for (const Path& p : enumerate_paths(d, length, end_vertex))
            out.append(from_path(d, p));
          return out;
        },
        py::arg("diagram"), py::arg("length"), py::arg("end") = std::nullopt);
  m.def("orbit_chain", [](const Diagram& d, int length, const std::string& vertex) {
    py::list out;
    for (const Path& p : orbit_chain(d, length, d.vertex_index(vertex)))
      out.append(from_path(d, p));
    return out;
  });
  m.def("domain_bound", [](const Diagram& d, int length) {
    auto b = domain_bound(d, length);
    return py::make_tuple(b.n_sup, b.bound ? py::cast(*b.bound) : py::none());
  });

  // function algebra
  py::class_<LevelFunction>(m, "LevelFunction")
      .def_readonly("level", &LevelFunction::level)
      .def("coeffs",
           [](const LevelFunction& f) {
             // The diagram is needed to name paths; keep raw index tuples here.
             py::dict out;
             for (const auto& [p, c] : f.coeffs)
               out[py::tuple(py::cast(p.edges))] = rational_string(c);
             return out;
           })
      .def("__eq__", [](const LevelFunction& a, const LevelFunction& b) { return a == b; });

  m.def("indicator", [](const Diagram& d, const std::vector<std::string>& ids) {
    return indicator(d, to_path(d, ids));
  });
  m.def("unity", &unity);
  m.def("refine", &refine);
  m.def("lf_add", &lf_add);
  m.def("multiply", &multiply);
  m.def("alpha", &alpha);
  m.def("level_function_json", &level_function_json);

  // crossed product
  py::class_<CrossedElement>(m, "CrossedElement")
      .def("terms",
           [](const CrossedElement& x) {
             py::list out;
             for (const auto& [key, c] : x.terms)
               out.append(py::make_tuple(py::cast(key.first.edges), key.second,
                                         rational_string(c)));
             return out;
           })
      .def("is_zero", &CrossedElement::is_zero)
      .def("__eq__", [](const CrossedElement& a, const CrossedElement& b) { return a == b; });

  m.def("crossed_indicator",
        [](const Diagram& d, const std::vector<std::string>& ids, long long n) {
          return crossed_indicator(d, to_path(d, ids), n);
        });
  m.def("crossed_unit", &crossed_unit);
  m.def("cross_multiply", &cross_multiply);
  m.def("cross_adjoint", &cross_adjoint);
  m.def("a_n_basis", [](const Diagram& d, int length) {
    py::list out;
    for (const auto& [f, n] : a_n_basis(d, length))
      out.append(py::make_tuple(from_path(d, f), n));
    return out;
  });

  py::class_<BlockDecomposition>(m, "BlockInfo")
      .def_readonly("level", &BlockDecomposition::level)
      .def_readonly("block_sizes", &BlockDecomposition::block_sizes)
      .def_readonly("dimension", &BlockDecomposition::dimension);

  m.def("block_decomposition", &block_decomposition);
  m.def("af_tower", [](const Diagram& d, int levels) {
    py::list out;
    for (const auto& level : af_tower(d, levels)) {
      py::dict entry;
      entry["N"] = level.blocks.level;
      entry["sizes"] = level.blocks.block_sizes;
      entry["dim"] = level.blocks.dimension;
      entry["mult"] = level.incl.multiplicity;
      out.append(entry);
    }
    return out;
  });

  // operator model
  m.def("check_all",
        [](const Diagram& d, int depth, std::optional<long long> n_max) {
          py::list out;
          for (const auto& r : check_all(d, depth, n_max)) out.append(report_dict(d, r));
          return out;
        },
        py::arg("diagram"), py::arg("depth"), py::arg("n_max") = std::nullopt);
  m.def("truncation_basis", [](const Diagram& d, int depth) {
    py::list out;
    for (const Path& p : make_space(d, depth).basis) out.append(from_path(d, p));
    return out;
  });
  m.def("phi_times_pi",
        [](const Diagram& d, const CrossedElement& x, int depth) {
          Generators g = build_generators(d, depth);
          auto mat = phi_times_pi(g, x);
          py::list out;
          for (int j = 0; j < mat.cols(); ++j)
            for (const auto& [i, c] : mat.col(j))
              out.append(py::make_tuple(path_string(d, g.space.basis[i]),
                                        path_string(d, g.space.basis[j]), rational_string(c)));
          return out;
        },
        py::arg("diagram"), py::arg("element"), py::arg("depth"),
        "nonzero entries as (row path, column path, coefficient) triples");

  // equivalence
  m.def("find_equivalence",
        [](const Diagram& a, const Diagram& b) -> py::object {
          auto result = find_equivalence(a, b);
          if (!result.equivalent()) return py::none();
          return py::cast(result.certificate->mapping);
        });
  m.def("check_certificate",
        [](const Diagram& a, const Diagram& b, const std::map<std::string, std::string>& t) {
          auto check = check_certificate(a, b, t);
          return py::make_tuple(check.valid, check.violations);
        });
}
