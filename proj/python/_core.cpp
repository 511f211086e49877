// Thin bindings: structured results cross the boundary as JSON text and
// are decoded on the Python side.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "diagbase/base_suite.hpp"
#include "diagbase/errors.hpp"
#include "diagbase/k2.hpp"
#include "diagbase/partition.hpp"
#include "diagbase/rc.hpp"
#include "diagbase/report.hpp"
#include "diagbase/verify.hpp"

namespace py = pybind11;
using namespace diagbase;
using json = nlohmann::json;

namespace {

DiagonalConfig config_from(const std::string& config_json) { return DiagonalConfig::from_json(json::parse(config_json)); }

std::string base_stats(const std::string& config_json, bool irr, std::uint64_t cap_omega) {
  py::gil_scoped_release release;
  auto G = build_group(config_from(config_json));
  auto chain = G.realize(cap_omega);
  auto r = verify_paper_case(G, chain, {true, true, irr});
  auto j = r.to_json(false);
  j["config"] = G.describe();
  return j.dump();
}

std::string rc(const std::string& config_json, std::uint32_t max_len, std::uint64_t cap_omega) {
  py::gil_scoped_release release;
  auto G = build_group(config_from(config_json));
  auto chain = G.realize(cap_omega);
  auto b = rc_bounds(chain, max_len, std::nullopt, witness_rc4(G, chain));
  return b.to_json(&G).dump();
}

std::string run(const std::string& name, const std::string& options_json) {
  py::gil_scoped_release release;
  return run_suite(name, VerifyOptions::from_json(json::parse(options_json))).to_json().dump();
}

std::string sim(std::uint64_t n, std::uint64_t k, const std::string& q) {
  auto r = greedy_refine_sim(n, k, parse_q(q));
  json steps = json::array();
  for (const auto& s : r.steps) steps.push_back(s.str());
  return json{{"n", r.n},         {"k", r.k},         {"Q", q_name(r.q)}, {"ell", r.ell}, {"value", r.value},
              {"steps", steps}, {"in_range", r.in_range}, {"largest_part_invariant", r.largest_part_invariant}}
      .dump();
}

std::pair<std::uint32_t, std::uint32_t> closed_forms(std::uint64_t tsize, const std::string& k, const std::string& P,
                                                     const std::string& Q, const std::string& T, bool full) {
  ClosedFormInput in;
  in.tsize = tsize;
  in.k = BigInt(k);
  in.P_label = P;
  in.Q_label = Q;
  in.T_label = T;
  in.G_is_full = full;
  return {closed_form_base(in), closed_form_greedy(in)};
}

std::pair<std::string, std::string> qtilde(const std::string& T, const std::string& y_class) {
  auto cat = catalog_get(parse_group_spec(T));
  const auto y = class_rep_by_label(*cat.T, y_class);
  return {to_string(qtilde_exact(*cat.aut, y)), to_string(qtilde_oracle(*cat.aut, y).by_centralisers)};
}

std::string criterion(const std::string& family, std::uint32_t dim, std::uint64_t q) {
  const auto f = parse_lie_family(family);
  if (f == LieFamily::OmegaPlus) return oplus_check(dim, q).to_json().dump();
  auto row = lie_table_params(f, dim, q);
  auto j = evaluate_criterion(row).to_json();
  j["parameters"] = row.to_json();
  return j.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bases and relational complexity of diagonal type permutation groups";
#ifdef DIAGBASE_VERSION
  m.attr("__version__") = DIAGBASE_VERSION;
#endif
  m.attr("REPORT_SCHEMA_VERSION") = kReportSchemaVersion;

  auto base_error = py::register_exception<Error>(m, "DiagbaseError", PyExc_RuntimeError);
  py::register_exception<ResourceError>(m, "ResourceError", base_error.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base_error.ptr());
  py::register_exception<DomainError>(m, "DomainError", base_error.ptr());
  py::register_exception<MissingDataError>(m, "MissingDataError", base_error.ptr());

  m.def("suite_names", &suite_names);
  m.def("_run_suite", &run, py::arg("name"), py::arg("options_json"));
  m.def("_base_stats", &base_stats, py::arg("config_json"), py::arg("irr"), py::arg("cap_omega"));
  m.def("_rc_bounds", &rc, py::arg("config_json"), py::arg("max_len"), py::arg("cap_omega"));
  m.def("_greedy_refine_sim", &sim, py::arg("n"), py::arg("k"), py::arg("q"));
  m.def("_closed_forms", &closed_forms);
  m.def("_qtilde", &qtilde, py::arg("T"), py::arg("y_class"));
  m.def("_criterion", &criterion, py::arg("family"), py::arg("dim"), py::arg("q"));
  m.def("ceil_chain", [](std::uint64_t m_, std::uint64_t n, std::uint64_t r) { return ceil_chain(m_, n, r); });
  m.def("catalog", [] {
    std::vector<std::string> out;
    for (const auto& s : catalog_listing()) out.push_back(s.name());
    return out;
  });
}
