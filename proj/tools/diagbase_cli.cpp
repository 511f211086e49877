// Command-line front end: verification suites, single-group statistics and
// the k = 2 numerical criteria.
//
// Exit codes: 0 every checked claim holds, 1 a computed value disagrees
// with its prediction, 2 a resource cap was hit, 3 bad input or I/O error.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "diagbase/base_suite.hpp"
#include "diagbase/errors.hpp"
#include "diagbase/k2.hpp"
#include "diagbase/partition.hpp"
#include "diagbase/rc.hpp"
#include "diagbase/report.hpp"
#include "diagbase/verify.hpp"

using namespace diagbase;
using json = nlohmann::json;

namespace {

constexpr int kExitHard = 3;

// Writes to a file, or to stdout for "-". Returns the path for the manifest.
void emit(const std::string& path, const std::string& text, RunManifest& manifest) {
  if (path.empty()) return;
  if (path == "-") {
    std::cout << text;
    return;
  }
  write_text_file(path, text);
  manifest.outputs.push_back(path);
}

DiagonalConfig group_config(const std::string& config_path, const std::string& T, std::uint32_t k,
                            const std::string& preset) {
  if (!config_path.empty()) {
    json j;
    try {
      j = json::parse(read_text_file(config_path));
    } catch (const json::parse_error& e) {
      throw ConfigError(config_path + ": " + e.what());
    }
    return DiagonalConfig::from_json(j.contains("group") ? j["group"] : j);
  }
  DiagonalConfig c;
  c.T = parse_group_spec(T);
  c.k = k;
  c.preset = preset;
  return c;
}

struct Common {
  std::string json_path, csv_path, manifest_path;
};

void add_outputs(CLI::App* app, Common& c, bool csv) {
  app->add_option("--json", c.json_path, "write the JSON result here ('-' for stdout)");
  if (csv) app->add_option("--csv", c.csv_path, "write a CSV table here ('-' for stdout)");
  app->add_option("--manifest", c.manifest_path, "write a run manifest (command line, versions, timings)");
}

// Human-readable output moves to stderr when a machine-readable result is
// going to stdout.
std::ostream& human(const Common& c) { return c.json_path == "-" || c.csv_path == "-" ? std::cerr : std::cout; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"diagbase: bases, greedy bases and relational complexity of diagonal type groups"};
  app.require_subcommand(1);
  RunManifest manifest = RunManifest::begin(argc, argv);
  int code = 0;

  // verify -----------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite, vconfig;
  Common vout;
  std::vector<std::string> vT;
  std::vector<std::uint64_t> vn;
  std::optional<std::uint64_t> k_max, cap_omega, cap_order;
  std::optional<std::uint32_t> max_len;
  std::optional<unsigned> threads;
  bool include_optional = false;
  verify->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--config", vconfig, "JSON file of suite options; flags override it");
  verify->add_option("--T", vT, "simple groups to restrict to, e.g. A5 L2_8")->delimiter(',');
  verify->add_option("--n", vn, "degrees for the partition lemmas")->delimiter(',');
  verify->add_option("--k-max", k_max, "largest k for the partition lemmas (default 3n)");
  verify->add_option("--cap-omega", cap_omega, "largest |Omega| that will be realised");
  verify->add_option("--cap-order", cap_order, "largest |T| the catalog will build");
  verify->add_option("--max-len", max_len, "longest tuple searched for relational complexity witnesses");
  verify->add_option("--threads", threads, "worker threads (0: all cores)");
  verify->add_flag("--include-optional", include_optional, "also run the slow optional instances");
  add_outputs(verify, vout, true);
  verify->callback([&] {
    VerifyOptions o;
    if (!vconfig.empty()) {
      try {
        o = VerifyOptions::from_json(json::parse(read_text_file(vconfig)));
      } catch (const json::parse_error& e) {
        throw ConfigError(vconfig + ": " + e.what());
      }
    }
    if (!vT.empty()) o.T = vT;
    if (!vn.empty()) o.n = vn;
    if (k_max) o.k_max = *k_max;
    if (cap_omega) o.cap_omega = *cap_omega;
    if (cap_order) o.cap_order = *cap_order;
    if (max_len) o.max_len = *max_len;
    if (threads) o.threads = *threads;
    if (include_optional) o.include_optional = true;
    Stopwatch sw;
    SuiteReport r = run_suite(suite, o);
    manifest.record(r, sw.ms());
    for (const auto& a : r.assertions)
      human(vout) << (a.pass ? "PASS " : "FAIL ") << a.id << "  computed: " << a.computed
                << "  predicted: " << a.predicted << "\n";
    if (!r.resource_error.empty()) human(vout) << "RESOURCE " << r.resource_error << "\n";
    human(vout) << suite << ": " << r.assertions.size() - r.failures() << "/" << r.assertions.size() << " passed\n";
    emit(vout.json_path, canonical_dump(r.to_json()), manifest);
    emit(vout.csv_path, to_csv(assertions_csv(r)), manifest);
    code = r.exit_code();
  });

  // report -----------------------------------------------------------------
  auto* report = app.add_subcommand("report", "convert a saved JSON suite report");
  std::string report_in;
  Common rout;
  report->add_option("input", report_in, "JSON report written by 'verify --json'; omit for an empty report");
  add_outputs(report, rout, true);
  report->callback([&] {
    SuiteReport r;
    if (!report_in.empty()) {
      try {
        r = SuiteReport::from_json(json::parse(read_text_file(report_in)));
      } catch (const json::exception& e) {
        throw ConfigError(report_in + ": " + e.what());
      }
    } else {
      r.suite = "empty";
    }
    emit(rout.json_path, canonical_dump(r.to_json()), manifest);
    emit(rout.csv_path, to_csv(assertions_csv(r)), manifest);
    code = r.exit_code();
  });

  // base -------------------------------------------------------------------
  auto* base = app.add_subcommand("base", "b, greedy base sizes and I for one diagonal type group");
  std::string bT = "A5", bpreset = "socle", bconfig;
  std::uint32_t bk = 2;
  std::uint64_t bcap = kDefaultOmegaCap;
  bool no_irr = false;
  Common bout;
  base->add_option("--T", bT, "simple group");
  base->add_option("--k", bk, "number of factors");
  base->add_option("--preset", bpreset, "socle or full_W")->check(CLI::IsMember({"socle", "full_W"}));
  base->add_option("--config", bconfig, "JSON group configuration (overrides --T, --k, --preset)");
  base->add_option("--cap-omega", bcap, "largest |Omega| that will be realised");
  base->add_flag("--no-irr", no_irr, "skip the maximal irredundant base search");
  add_outputs(base, bout, false);
  base->callback([&] {
    auto G = build_group(group_config(bconfig, bT, bk, bpreset));
    auto chain = G.realize(bcap);
    auto r = verify_paper_case(G, chain, {true, true, !no_irr});
    human(bout) << G.describe() << "\n|G| = " << r.order << ", |Omega| = " << r.omega << "\n";
    human(bout) << "b = " << *r.b << " (predicted " << (r.predicted_b ? std::to_string(*r.predicted_b) : "n/a")
              << ")\ngreedy sizes:";
    for (auto s : r.greedy_sizes) human(bout) << " " << s;
    human(bout) << " (predicted " << (r.predicted_greedy ? std::to_string(*r.predicted_greedy) : "n/a") << ")\n";
    if (r.I) human(bout) << "I = " << *r.I << "\n";
    for (const auto& f : r.failures) human(bout) << "FAIL " << f << "\n";
    auto j = r.to_json(false);
    j["config"] = G.config.to_json();
    emit(bout.json_path, canonical_dump(j), manifest);
    code = r.match() ? 0 : 1;
  });

  // catalog ----------------------------------------------------------------
  auto* catalog = app.add_subcommand("catalog", "the small simple groups available");
  catalog->require_subcommand(1);
  auto* cat_list = catalog->add_subcommand("list", "list the catalog");
  cat_list->callback([&] {
    for (const auto& s : catalog_listing()) std::cout << s.name() << "\t" << s.key() << "\n";
  });
  auto* cat_show = catalog->add_subcommand("show", "classes and automorphisms of one group");
  std::string cT = "A5";
  Common cout_;
  cat_show->add_option("--T", cT, "simple group")->required();
  add_outputs(cat_show, cout_, false);
  cat_show->callback([&] {
    auto e = catalog_get(parse_group_spec(cT));
    human(cout_) << e.T->name << ": |T| = " << e.T->order() << ", |Out(T)| = " << e.aut->out_order
              << ", digest " << e.T->digest << "\n";
    for (const auto& c : e.T->classes)
      human(cout_) << "  " << c.label << "  order " << c.order << "  size " << c.size << "\n";
    emit(cout_.json_path, snapshot_json(e), manifest);
  });

  // partition --------------------------------------------------------------
  auto* partition = app.add_subcommand("partition", "partition refinement combinatorics");
  partition->require_subcommand(1);
  auto* psim = partition->add_subcommand("sim", "simulate greedy refinement of the factor partition");
  std::uint64_t pn = 60, pk = 61;
  std::optional<std::uint64_t> pk_to;
  std::string pq = "S";
  Common pout;
  psim->add_option("--n", pn, "|T|")->required();
  psim->add_option("--k", pk, "number of factors (first k with --k-to)")->required();
  psim->add_option("--k-to", pk_to, "simulate every k up to this value and tabulate");
  psim->add_option("--q", pq, "Q = A_k or S_k")->check(CLI::IsMember({"A", "S"}));
  add_outputs(psim, pout, true);
  psim->callback([&] {
    if (pk_to) {
      std::vector<std::uint64_t> ks;
      for (auto k = pk; k <= *pk_to; ++k) ks.push_back(k);
      auto rows = closed_form_vs_sim(pn, ks, {parse_q(pq)});
      std::size_t bad = 0;
      for (const auto& r : rows) bad += !r.agrees_prop();
      human(pout) << rows.size() << " values of k, " << bad << " disagree with the closed form\n";
      emit(pout.csv_path, sim_rows_csv(rows), manifest);
      code = bad ? 1 : 0;
      return;
    }
    auto r = greedy_refine_sim(pn, pk, parse_q(pq));
    human(pout) << "n=" << r.n << " k=" << r.k << " Q=" << q_name(r.q) << " ell=" << r.ell << " value=" << r.value
              << "\n";
    json steps = json::array();
    for (const auto& s : r.steps) {
      human(pout) << "  " << s.str() << "\n";
      steps.push_back(s.str());
    }
    emit(pout.json_path,
         canonical_dump({{"n", r.n}, {"k", r.k}, {"Q", q_name(r.q)}, {"ell", r.ell}, {"value", r.value},
                         {"steps", steps}, {"largest_part_invariant", r.largest_part_invariant},
                         {"in_range", r.in_range}}),
         manifest);
    code = r.in_range && r.largest_part_invariant ? 0 : 1;
  });
  auto* pcheck = partition->add_subcommand("check", "check the two stabiliser lemmas for one (n, k, Q)");
  pcheck->add_option("--n", pn, "number of parts")->required();
  pcheck->add_option("--k", pk, "points")->required();
  pcheck->add_option("--q", pq, "Q = A_k or S_k")->check(CLI::IsMember({"A", "S"}));
  pcheck->callback([&] {
    const auto q = parse_q(pq);
    auto a = verify_min_part(pk, pn, q), b = verify_part_sigma(pk, pn, q);
    std::cout << "minimal part: " << (a.holds ? "holds" : "fails " + a.detail) << "\n";
    std::cout << "Sigma: " << (b.holds ? "holds" : "fails " + b.detail) << "\n";
    if (b.counterexample) std::cout << "  counterexample " << b.counterexample->str() << "\n";
    code = a.holds && b.holds ? 0 : 1;
  });

  // rc ---------------------------------------------------------------------
  auto* rc = app.add_subcommand("rc", "relational complexity bounds and witnesses");
  std::string rT = "L2_8", rpreset = "socle", rconfig;
  std::uint32_t rk = 2, rmax = 4;
  std::uint64_t rcap = kDefaultOmegaCap;
  Common rcout;
  rc->add_option("--T", rT, "simple group");
  rc->add_option("--k", rk, "number of factors");
  rc->add_option("--preset", rpreset, "socle or full_W")->check(CLI::IsMember({"socle", "full_W"}));
  rc->add_option("--config", rconfig, "JSON group configuration");
  rc->add_option("--max-len", rmax, "longest witness tuple searched");
  rc->add_option("--cap-omega", rcap, "largest |Omega| that will be realised");
  add_outputs(rc, rcout, false);
  rc->callback([&] {
    auto G = build_group(group_config(rconfig, rT, rk, rpreset));
    auto chain = G.realize(rcap);
    std::optional<WitnessPair> seed;
    if (rk >= 2) seed = witness_rc4(G, chain);
    auto b = rc_bounds(chain, rmax, std::nullopt, seed);
    human(rcout) << G.describe() << "\nI = " << b.I << "\nRC in [" << b.lower << ", " << b.upper << "] ("
              << b.upper_source << ")" << (b.exact() ? ", exact" : "") << "\n";
    emit(rcout.json_path, canonical_dump(b.to_json(&G)), manifest);
  });

  // k2 ---------------------------------------------------------------------
  auto* k2 = app.add_subcommand("k2", "two-factor criteria");
  k2->require_subcommand(1);
  auto* qt = k2->add_subcommand("qtilde", "Q~(T, y) and its brute-force check");
  std::string kT = "A5", ycls;
  Common kout;
  qt->add_option("--T", kT, "simple group")->required();
  qt->add_option("--y-class", ycls, "class label of y, e.g. 5A")->required();
  add_outputs(qt, kout, false);
  qt->callback([&] {
    auto cat = catalog_get(parse_group_spec(kT));
    const auto y = class_rep_by_label(*cat.T, ycls);
    const Rational q = qtilde_exact(*cat.aut, y);
    const auto o = qtilde_oracle(*cat.aut, y);
    human(kout) << "Q~ = " << to_string(q) << " (" << to_double(q) << ")\nrecount = " << to_string(o.by_centralisers)
              << "\nworst bad-conjugate fraction = " << to_string(o.worst_bad_fraction) << "\n";
    emit(kout.json_path,
         canonical_dump({{"T", cat.T->name}, {"y_class", ycls}, {"qtilde", to_string(q)},
                         {"recount", to_string(o.by_centralisers)},
                         {"worst_bad_fraction", to_string(o.worst_bad_fraction)}}),
         manifest);
    code = q == o.by_centralisers && q >= o.worst_bad_fraction ? 0 : 1;
  });
  auto* crit = k2->add_subcommand("criterion", "the class-counting inequality for a classical group");
  std::string family = "PSp";
  std::uint32_t dim = 3;
  std::uint64_t lq = 5;
  crit->add_option("--family", family, "L, U, PSp, O, O-, O+ or an exceptional family")->required();
  crit->add_option("--m,--n", dim, "n for L and U, m for the others");
  crit->add_option("--q", lq, "field size")->required();
  add_outputs(crit, kout, false);
  crit->callback([&] {
    const auto f = parse_lie_family(family);
    CriterionResult r;
    json j;
    if (f == LieFamily::OmegaPlus) {
      r = oplus_check(dim, lq);
      j = r.to_json();
    } else {
      const auto row = lie_table_params(f, dim, lq);
      r = evaluate_criterion(row);
      j = r.to_json();
      j["parameters"] = row.to_json();
    }
    human(kout) << r.name << ": value " << to_double(r.value) << " (" << r.omega_source << "), "
              << (r.holds ? "holds" : "fails") << "\n";
    emit(kout.json_path, canonical_dump(j), manifest);
    code = r.holds ? 0 : 1;
  });
  auto* exc = k2->add_subcommand("exceptional", "class size inequality for an exceptional group");
  std::optional<std::string> min_class;
  exc->add_option("--family", family, "E7, E8, F4, ...")->required();
  exc->add_option("--q", lq, "field size")->required();
  exc->add_option("--min-class-size", min_class, "lower bound for non-identity class sizes");
  add_outputs(exc, kout, false);
  exc->callback([&] {
    std::optional<BigInt> m;
    if (min_class) m = BigInt(*min_class);
    auto r = exceptional_check(parse_lie_family(family), lq, m);
    human(kout) << r.name << ": min class " << r.min_class_size << " vs required " << r.required << ", "
              << (r.holds ? "holds" : "fails") << "\n";
    emit(kout.json_path, canonical_dump(r.to_json()), manifest);
    code = r.holds ? 0 : 1;
  });
  auto* proc = k2->add_subcommand("procedure-A", "invertiliser partners for a small group");
  proc->add_option("--T", kT, "simple group")->required();
  add_outputs(proc, kout, false);
  proc->callback([&] {
    auto r = procedure_lemma_A(catalog_get(parse_group_spec(kT)));
    human(kout) << r.T << ": v = " << r.v << ", |Out| = " << r.out_order << "\n";
    for (const auto& e : r.S)
      human(kout) << "  " << e.x_class << "  |I(x)| = " << e.invertiliser_size
                << "  partner " << (e.partner ? std::to_string(*e.partner) : "none") << "  full-group partner "
                << (e.full_partner ? std::to_string(*e.full_partner) : "none") << "\n";
    human(kout) << "success " << r.success << ", full " << r.full_success << ", minimal " << r.minimal_success
              << "\n";
    emit(kout.json_path, canonical_dump(r.to_json()), manifest);
    code = r.success ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitHard;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    code = 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitHard;
  }
  for (const Common* c : {&vout, &rout, &bout, &cout_, &pout, &rcout, &kout})
    if (!c->manifest_path.empty()) {
      try {
        write_text_file(c->manifest_path, canonical_dump(manifest.to_json()));
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitHard;
      }
    }
  return code;
}
