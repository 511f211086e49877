#include <doctest.h>

#include "diagbase/errors.hpp"
#include "diagbase/k2.hpp"

using namespace diagbase;

namespace {
DiagonalGroup make(const std::string& T, const std::string& preset) {
  DiagonalConfig c;
  c.T = parse_group_spec(T);
  c.k = 2;
  c.preset = preset;
  return build_group(c);
}

std::uint32_t first_of_order(const SimpleGroup& T, std::uint32_t order, std::size_t skip = 0) {
  for (const auto& c : T.classes)
    if (c.order == order && skip-- == 0) return c.rep;
  FAIL("no such class");
  return 0;
}
}  // namespace

TEST_CASE("two-point stabiliser: direct and formula paths agree") {
  auto socle = make("A5", "socle");
  auto chain = socle.realize();
  const std::uint32_t inv = first_of_order(socle.t(), 2);
  auto s = two_point_stab(socle, chain, inv);
  CHECK(s.direct_order == 4);
  CHECK(s.agree);
  CHECK(s.inverting == 0);

  auto full = make("A5", "full_W");
  auto fchain = full.realize();
  auto f = two_point_stab(full, fchain, first_of_order(full.t(), 5));
  CHECK(f.agree);
  CHECK(f.inverting > 0);

  // x = 1 collapses to the point stabiliser
  auto id = two_point_stab(full, fchain, 0);
  CHECK(id.agree);
  CHECK(id.direct_order == point_stabilizer(fchain, 0).order());

  for (const char* T : {"A5", "L2(7)"}) {
    for (const auto& cfg : enumerate_overgroups(parse_group_spec(T))) {
      auto G = build_group(cfg);
      auto ch = G.realize();
      for (const auto& c : G.t().classes) {
        auto r = two_point_stab(G, ch, c.rep);
        CHECK_MESSAGE(r.agree, G.describe() << " x=" << c.label);
        CHECK(two_point_stab_formula_order(G, c.rep) == r.formula_order());
      }
    }
  }
}

TEST_CASE("base triples from invertilisers") {
  auto G = make("A5", "full_W");
  auto chain = G.realize();
  const auto& T = G.t();
  const std::uint32_t x = first_of_order(T, 5);
  CHECK_FALSE(base_triple_test(G, chain, x, x).invertiliser_test);
  std::size_t positives = 0, gaps = 0;
  for (const auto& c : T.classes)
    for (std::uint32_t y = 1; y < T.order(); ++y) {
      auto r = base_triple_test(G, chain, c.rep, y);
      CHECK(r.consistent());
      CHECK_FALSE(r.direct_trivial);  // b = 4 for the full group
      CHECK(r.formula_trivial == triple_is_base_for_full(G.aut(), c.rep, y));
      positives += r.invertiliser_test;
      gaps += r.invertiliser_test && r.sigma_gap;
    }
  // Pairs of involutions pass the invertiliser test, yet sigma fixes the
  // triple, so none of them is a base.
  CHECK(positives == 8);
  CHECK(gaps == 8);

  // Without sigma in G the same involution pairs do give bases.
  for (const auto& cfg : enumerate_overgroups(parse_group_spec("A5"))) {
    auto H = build_group(cfg);
    auto hc = H.realize();
    const std::uint32_t i = first_of_order(H.t(), 2);
    for (std::uint32_t y = 1; y < H.t().order(); ++y) {
      auto r = base_triple_test(H, hc, i, y);
      CHECK(r.consistent());
    }
  }

  auto L = make("L2(7)", "full_W");
  auto lchain = L.realize();
  const std::uint32_t x3 = first_of_order(L.t(), 3);
  bool found = false;
  for (std::uint32_t y = 1; y < L.t().order() && !found; ++y) {
    if (L.t().elem_order(y) != 3) continue;
    auto r = base_triple_test(L, lchain, x3, y);
    CHECK(r.consistent());
    found = r.invertiliser_test && r.direct_trivial;
  }
  CHECK(found);
}

TEST_CASE("minimal two-point stabiliser has small invertiliser") {
  for (const char* T : {"A5", "A6", "L2(7)", "L2(8)"}) {
    for (const auto& cfg : enumerate_overgroups(parse_group_spec(T))) {
      auto G = build_group(cfg);
      if (G.P_elements.size() != 2) {
        CHECK_THROWS_AS(check_minimal_stab_inequality(G), DomainError);
        continue;
      }
      auto r = check_minimal_stab_inequality(G);
      CHECK_MESSAGE(r.holds, G.describe() << ": " << r.detail);
      CHECK_FALSE(r.minimisers.empty());
    }
  }
}

TEST_CASE("finite procedure for small groups") {
  // The invertiliser test fails for some class in each of these groups
  // (for L2(7), every y meets I(7A) in exactly one involution). The exact
  // test for the full group finds partners precisely for the allowed
  // orders, and those are the only classes that ever minimise |G_{1,x}|.
  for (const char* T : {"L2(7)", "L2(8)", "L2(11)"}) {
    auto cat = catalog_get(parse_group_spec(T));
    auto r = procedure_lemma_A(cat);
    CHECK_MESSAGE(!r.success, T);
    CHECK_MESSAGE(!r.full_success, T);
    CHECK_MESSAGE(r.minimal_success, T);
    const auto allowed = l2_allowed_orders(cat.T->q);
    for (const auto& e : r.S) {
      const bool ok = std::binary_search(allowed.begin(), allowed.end(), cat.T->elem_order(e.x));
      CHECK_MESSAGE(e.full_partner.has_value() == ok, T << " " << e.x_class);
    }
    CHECK_FALSE(r.S.empty());
    for (const auto& e : r.S) CHECK(e.invertiliser_size <= r.v * r.out_order);
  }
  // b = 4 for the full group over A5, so no class can have a partner.
  auto a5 = procedure_lemma_A(catalog_get(parse_group_spec("A5")));
  CHECK_FALSE(a5.full_success);
  for (const auto& e : a5.S) CHECK_FALSE(e.full_partner);
}

TEST_CASE("Q~ against element-wise recount and bad-conjugate fractions") {
  for (const char* T : {"A5", "L2(7)"}) {
    auto cat = catalog_get(parse_group_spec(T));
    const auto& A = *cat.aut;
    auto classes = aut_classes(A);
    std::uint64_t total = 0;
    for (auto s : classes.size) total += s;
    CHECK(total == A.order());
    int tested = 0;
    for (const auto& c : cat.T->classes) {
      if (c.rep == 0 || tested == 3) continue;
      ++tested;
      const Rational q = qtilde_exact(A, classes, c.rep);
      auto o = qtilde_oracle(A, c.rep);
      CHECK_MESSAGE(q == o.by_centralisers, T << " " << c.label);
      CHECK_MESSAGE(q >= o.worst_bad_fraction, T << " " << c.label);
    }
    CHECK(tested == 3);
  }
  auto L13 = catalog_get(parse_group_spec("L2(13)"));
  const std::uint32_t y6 = first_of_order(*L13.T, 6);
  const Rational q = qtilde_exact(*L13.aut, y6);
  CHECK(q > 0);
  CHECK(q == qtilde_oracle(*L13.aut, y6).by_centralisers);
}

TEST_CASE("corollary inequality on table rows") {
  auto row = lie_table_params(LieFamily::PSp, 3, 5);
  const BigInt p13 = ipow(BigInt(5), 13);
  CHECK(row.params.c == 126);
  CHECK(row.params.a == 2);
  CHECK(row.params.b0 == Rational(p13, 24));
  CHECK(row.params.b1 == Rational(p13, 12));
  CHECK(row.params.b2 == Rational(p13, 24));
  CHECK(row.params.omega >= 2 * log2_lower(Rational(5)));
  CHECK(to_double(row.params.omega) == doctest::Approx(2 * 2.321928094887362).epsilon(1e-9));
  CHECK(evaluate_criterion(row).holds);
  CHECK_FALSE(row.in_small_list);

  auto l49 = lie_table_params(LieFamily::L, 4, 9);
  CHECK(l49.params.c == 820);
  CHECK(l49.in_small_list);

  CriterionParams trivial{1, 1, Rational(BigInt(10) << 40), Rational(BigInt(10) << 40), Rational(1), Rational(1)};
  CHECK(criterion_cor311(trivial));
  CriterionParams tiny{5, 2, Rational(1, 1000), Rational(1000), Rational(1000), Rational(1)};
  CHECK_FALSE(criterion_cor311(tiny));
  CriterionParams bad{0, 1, 1, 1, 1, 1};
  CHECK_THROWS_AS(criterion_cor311(bad), DomainError);

  // odd n uses a half-integer power: q^(n^2/2 - 1) for L5(3) is 3^11.5
  auto l53 = lie_table_params(LieFamily::L, 5, 3);
  CHECK(l53.params.b1 == Rational(pow_lower(3, 23, 2)));
  CHECK(pow_lower(3, 23, 2) == 306827);  // floor(3^11.5)
  CHECK_THROWS_AS(lie_table_params(LieFamily::OmegaOdd, 3, 4), DomainError);
  CHECK_THROWS_AS(lie_table_params(LieFamily::L, 3, 6), DomainError);
}

TEST_CASE("torus orders of the exceptional table") {
  CHECK(exceptional_torus_order(LieFamily::E7, 2) == 129);
  CHECK(exceptional_torus_order(LieFamily::F4, 2) == 17);
  CHECK(exceptional_torus_order(LieFamily::E7, 3) == 1406);
  CHECK(exceptional_torus_order(LieFamily::B2tw, 8) == 13);
  CHECK(exceptional_torus_order(LieFamily::G2tw, 27) == 37);
  CHECK(exceptional_torus_order(LieFamily::F4tw, 2) == 4 + 4 + 2 + 2 + 1);
  CHECK(exceptional_torus_order(LieFamily::E6, 4) == (4096 + 64 + 1) / 3);
  CHECK(lie_table_params(LieFamily::E7, 0, 2).torus_order == BigInt(129));
}

TEST_CASE("plus-type bound") {
  for (auto [m, q] : std::vector<std::pair<std::uint32_t, std::uint64_t>>{{4, 5}, {4, 4}, {5, 2}, {6, 2}, {5, 3}}) {
    auto r = oplus_check(m, q);
    CHECK_MESSAGE(r.holds, r.name << " " << to_double(r.value));
  }
  CHECK(oplus_check(4, 4).omega_source == "exact |Out|");
  CHECK(oplus_check(4, 5).omega_source == "24 log q");
  // |Out(POmega10+(2))| = 2 gives 2 * 62^2 / 19840
  CHECK(oplus_check(5, 2).value == Rational(2 * 62 * 62, 19840));
  CHECK_THROWS_AS(oplus_check(4, 2), DomainError);
  CHECK_THROWS_AS(oplus_check(3, 5), DomainError);
}

TEST_CASE("exceptional class size inequality") {
  for (std::uint64_t q : {3, 4, 5}) {
    auto r = exceptional_check(LieFamily::E7, q);
    CHECK(r.holds);
    CHECK(r.min_class_size == ipow(BigInt(q), 34));
    REQUIRE(r.displayed_rhs);
    CHECK(Rational(r.min_class_size) > *r.displayed_rhs);
  }
  CHECK_THROWS_AS(exceptional_check(LieFamily::E8, 2), MissingDataError);
  CHECK(exceptional_check(LieFamily::E8, 2, ipow(BigInt(2), 100)).holds);
  CHECK_FALSE(exceptional_check(LieFamily::G2, 3, BigInt(10)).holds);
}

TEST_CASE("order comparison for L2(q), small q") {
  CHECK(l2_allowed_orders(7) == std::vector<std::uint64_t>{1, 3, 7});
  CHECK(l2_allowed_orders(13) == std::vector<std::uint64_t>{1, 2, 3, 6, 13});
  for (const char* T : {"L2(7)", "L2(8)"}) {
    for (const auto& cfg : enumerate_overgroups(parse_group_spec(T))) {
      auto G = build_group(cfg);
      auto r = l2_order_comparison(G);
      CHECK_MESSAGE(r.holds, G.describe());
      CHECK_FALSE(r.x_stabs.empty());
    }
  }
}
