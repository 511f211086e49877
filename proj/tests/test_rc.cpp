#include <doctest.h>

#include "diagbase/base_suite.hpp"
#include "diagbase/rc.hpp"

using namespace diagbase;

namespace {
DiagonalGroup make(const std::string& T, std::uint32_t k, const std::string& preset) {
  DiagonalConfig c;
  c.T = parse_group_spec(T);
  c.k = k;
  c.preset = preset;
  return build_group(c);
}
}  // namespace

TEST_CASE("trivial pairs and degenerate lengths") {
  auto G = make("A5", 2, "socle");
  auto chain = G.realize();
  WitnessPair w{{0, 5, 9}, {0, 5, 9}, 2, "custom"};
  CHECK(subtuple_complete(chain, w));
  CHECK(same_orbit(chain, w.lam, w.sig));
  w.s = 3;
  CHECK_THROWS_AS(subtuple_complete(chain, w), DomainError);
}

TEST_CASE("coset points normalise the first coordinate") {
  auto G = make("A5", 3, "socle");
  const auto& T = G.t();
  CHECK(coset_point(G, {0, 0, 0}) == 0);
  for (std::uint32_t t = 0; t < T.order(); t += 7) {
    // D(t, t, t) = D
    CHECK(coset_point(G, {t, t, t}) == 0);
    auto p = G.point(first_coordinate_point(G, t));
    CHECK(p.coords == std::vector<std::uint32_t>{T.inv(t), T.inv(t)});
  }
}

TEST_CASE("four-point construction for A5 cubed") {
  auto G = make("A5", 3, "full_W");
  auto chain = G.realize();
  auto w = witness_rc4(G, chain);
  CHECK(w.provenance == "four-point");
  auto c = check_witness(chain, w);
  CHECK(c.complete);
  CHECK(c.distinct_orbits);
  CHECK(c.certified_lower() == 4);
  // monotone in s
  WitnessPair w2 = w;
  w2.s = 2;
  CHECK(subtuple_complete(chain, w2));
  // the explicit elements of the construction realise the 3-subtuple moves
  auto choice = rc4_choice(G, chain);
  REQUIRE(choice);
  const auto& T = G.t();
  const std::uint32_t x = choice->x, y = choice->y;
  WElement ex = G.identity(), ey = G.identity(), ez = G.identity();
  ex.tvec.assign(3, x);
  ey.tvec.assign(3, y);
  ez.tvec.assign(3, T.mul(x, T.inv(y)));
  ez.tvec[0] = T.mul(T.inv(y), x);
  CHECK(G.act_index(w.lam[3], ex) == w.sig[3]);
  CHECK(G.act_index(w.lam[1], ex) == w.lam[1]);
  CHECK(G.act_index(w.lam[3], ey) == w.sig[3]);
  CHECK(G.act_index(w.lam[2], ey) == w.lam[2]);
  CHECK(G.act_index(w.lam[1], ez) == w.lam[1]);
  CHECK(G.act_index(w.lam[2], ez) == w.lam[2]);
  CHECK(G.act_index(w.lam[3], ez) == w.sig[3]);
}

TEST_CASE("four-point construction for L2(8) squared and exact RC") {
  auto G = make("L2(8)", 2, "socle");
  auto chain = G.realize();
  auto w = witness_rc4(G, chain);
  CHECK(w.provenance == "four-point");
  CHECK(check_witness(chain, w).passes());
  auto r = rc_bounds(chain, 4, std::nullopt, w);
  CHECK(r.I == 3);
  CHECK(r.lower == 4);
  CHECK(r.upper == 4);
  CHECK(r.exact());
}

TEST_CASE("small-case search for A5 and A6 squared") {
  for (const std::string preset : {"full_W", "socle"}) {
    auto G = make("A5", 2, preset);
    auto chain = G.realize();
    auto w = witness_rc4(G, chain);
    CHECK(w.provenance == "search");
    CHECK(check_witness(chain, w).certified_lower() == 4);
  }
  auto G6 = make("A6", 2, "full_W");
  auto c6 = G6.realize();
  CHECK(check_witness(c6, witness_rc4(G6, c6)).certified_lower() == 4);
}

TEST_CASE("A5 squared socle RC bounds") {
  auto G = make("A5", 2, "socle");
  auto chain = G.realize();
  auto r = rc_bounds(chain, 4);
  CHECK(r.lower >= 4);
  CHECK(r.upper == r.I + 1);
  CHECK(r.lower <= r.upper);
  MESSAGE("RC(A5^2) in [" << r.lower << ", " << r.upper << "], I = " << r.I);
}

TEST_CASE("search agrees with the definition on small lengths") {
  // a length-2 witness exists iff some point stabiliser splits an orbit of G
  auto G = make("A5", 2, "socle");
  auto chain = G.realize();
  auto w = search_witness(chain, 2);
  REQUIRE(w);
  auto c = check_witness(chain, *w);
  CHECK(c.passes());
  CHECK(c.certified_lower() == 2);
}

TEST_CASE("Alt(m+2) tuples") {
  auto G = build_group(alt_tuple_config(3, 3));
  auto chain = G.realize();
  auto w = witness_prop53(G);
  CHECK(w.lam.size() == 3);
  CHECK(w.s == 2);
  auto c = check_witness(chain, w);
  CHECK(c.complete);
  CHECK(c.distinct_orbits);
  CHECK(c.certified_lower() == 3);
  // the explicit transporters move each 2-subtuple of I onto J
  auto trs = alt_tuple_transporters(G);
  REQUIRE(trs.size() == c.subsets.size());
  for (std::size_t i = 0; i < trs.size(); ++i)
    for (auto pos : c.subsets[i]) CHECK(G.act_index(w.lam[pos], trs[i]) == w.sig[pos]);

  auto G4 = build_group(alt_tuple_config(3, 4));
  auto c4 = check_witness(G4.realize(), witness_prop53(G4));
  CHECK(c4.passes());
}

TEST_CASE("Alt(6) tuples at k = 3") {
  auto G = build_group(alt_tuple_config(4, 3));
  auto chain = G.realize();
  auto w = witness_prop53(G);
  auto c = check_witness(chain, w);
  CHECK(c.passes());
  CHECK(c.certified_lower() == 4);
  auto trs = alt_tuple_transporters(G);
  for (std::size_t i = 0; i < trs.size(); ++i)
    for (auto pos : c.subsets[i]) CHECK(G.act_index(w.lam[pos], trs[i]) == w.sig[pos]);
}

TEST_CASE("logarithm chain") {
  CHECK(thm14_arithmetic(1000).holds);
  CHECK(thm14_arithmetic(64).holds);
  auto small = thm14_arithmetic(3);
  CHECK_FALSE(small.asserted);
  CHECK(small.links.size() == 6);
  CHECK(small.log2_n > 0);
}
