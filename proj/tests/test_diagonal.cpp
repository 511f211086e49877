#include "doctest.h"

#include <random>

#include "diagbase/diagonal.hpp"

using namespace diagbase;

namespace {
DiagonalConfig cfg(GroupSpec T, std::uint32_t k, std::string preset) {
  DiagonalConfig c;
  c.T = T;
  c.k = k;
  c.preset = std::move(preset);
  return c;
}
const GroupSpec A5{Family::Alt, 5};
}  // namespace

TEST_CASE("orders and realisation") {
  auto full = build_group(cfg(A5, 2, "full_W"));
  // |T|^2 |Out(T)| |S_2| = 3600 * 2 * 2
  CHECK(full.order() == 14400);
  CHECK(full.omega_size == 60);
  auto chain = full.realize();
  CHECK(chain.order() == 14400);
  CHECK(point_stabilizer(chain, 0).order() == 240);
  CHECK(orbits(chain.generators(), 60).size() == 1);
  CHECK(full.is_full);
  CHECK(full.k2_case() == "d");

  auto soc = build_group(cfg(A5, 2, "socle"));
  auto sc = soc.realize();
  CHECK(sc.order() == 3600);
  CHECK(orbits(sc.generators(), 60).size() == 1);
  CHECK(soc.k2_case() == "a");

  auto s3 = build_group(cfg(A5, 3, "socle"));
  CHECK(s3.order() == 216000);
  CHECK(s3.omega_size == 3600);
  auto c3 = s3.realize();
  CHECK(c3.order() == 216000);
  CHECK(orbits(c3.generators(), 3600).size() == 1);

  auto l28 = build_group(cfg({Family::PSL2, 8}, 2, "socle"));
  auto lc = l28.realize();
  CHECK(lc.order() == 504 * 504);
  CHECK(l28.omega_size == 504);
}

TEST_CASE("imprimitive top groups are rejected") {
  DiagonalConfig c = cfg(A5, 4, "custom");
  c.top = "explicit";
  c.top_gens = {Perm::from_cycles(4, {{0, 1}, {2, 3}}), Perm::from_cycles(4, {{0, 2}, {1, 3}})};
  CHECK_THROWS_AS(build_group(c), PrimitivityError);
  DiagonalConfig big = cfg(A5, 5, "socle");
  auto g = build_group(big);
  CHECK_THROWS_AS(g.realize(), ResourceError);
}

TEST_CASE("the action formula on small examples") {
  auto G = build_group(cfg(A5, 2, "full_W"));
  const auto& T = G.t();
  OmegaPoint D{{0}};
  std::mt19937_64 rng(11);
  // Elements (t,t)phi sigma of D fix the point D.
  for (int i = 0; i < 50; ++i) {
    WElement w = G.random_element(rng);
    std::uint32_t t = w.tvec[0];
    w.tvec[1] = t;
    CHECK(G.act(D, w) == D);
  }
  for (std::uint32_t t = 0; t < T.order(); ++t) {
    CHECK(G.act(D, G.translation(0, t)).coords[0] == T.inv(t));
    OmegaPoint p{{t}};
    CHECK(G.act(p, G.pure_top(Perm::from_cycles(2, {{0, 1}}))).coords[0] == T.inv(t));
  }
  // k = 3: (t,1,1) sends D to D(t^-1, ..., normalised) = (t^-1, t^-1) after normalising.
  auto G3 = build_group(cfg(A5, 3, "full_W"));
  for (std::uint32_t t = 0; t < 60; ++t) {
    auto p = G3.act(OmegaPoint{{0, 0}}, G3.translation(0, t));
    CHECK(p.coords == std::vector<std::uint32_t>{T.inv(t), T.inv(t)});
  }
}

TEST_CASE("the action is a right action") {
  for (std::uint32_t k : {2U, 3U, 4U}) {
    auto G = build_group(cfg(A5, k, "full_W"));
    std::mt19937_64 rng(100 + k);
    for (int i = 0; i < 200; ++i) {
      WElement g = G.random_element(rng), h = G.random_element(rng);
      OmegaPoint p = G.point(rng() % static_cast<std::uint64_t>(G.omega_size));
      CHECK(G.act(G.act(p, g), h) == G.act(p, G.compose(g, h)));
      CHECK(G.contains(G.compose(g, h)));
    }
    CHECK(G.index_of(G.point(7)) == 7);
  }
}

TEST_CASE("stabiliser of D consists of diagonal elements") {
  auto G = build_group(cfg(A5, 3, "full_W"));
  auto chain = G.realize();
  CHECK(point_stabilizer(chain, 0).order() == chain.order() / 3600);
  std::mt19937_64 rng(5);
  OmegaPoint D{{0, 0}};
  int fixed = 0;
  for (int i = 0; i < 4000; ++i) {
    WElement w = G.random_element(rng);
    // Force a fixed point about half the time.
    if (i % 2) w.tvec = {w.tvec[0], w.tvec[0], w.tvec[0]};
    if (G.act(D, w) == D) {
      ++fixed;
      CHECK(w.tvec[0] == w.tvec[1]);
      CHECK(w.tvec[1] == w.tvec[2]);
    }
  }
  CHECK(fixed >= 2000);
}

TEST_CASE("k = 2 agrees with the holomorph construction") {
  auto G = build_group(cfg(A5, 2, "full_W"));
  auto hol = holomorph(G.aut(), true);
  auto hc = bsgs_build(hol.all_generators(), 60);
  auto gc = G.realize();
  CHECK(hc.order() == gc.order());
  for (const auto& g : hol.all_generators()) CHECK(gc.contains(g));
  // translation by (g,1) is t -> g^-1 t, exactly the holomorph translation.
  for (std::size_t i = 0; i < G.t().generators.size(); ++i)
    CHECK(G.induced(G.translation(0, G.t().generators[i])) == hol.translations[i]);
}

TEST_CASE("overgroups of T^2") {
  CHECK(enumerate_overgroups(A5).size() == 5);
  CHECK(enumerate_overgroups({Family::Alt, 6}).size() == 16);
  CHECK(enumerate_overgroups({Family::PSL2, 8}).size() == 4);
  auto cfgs = enumerate_overgroups(A5);
  std::vector<std::string> cases;
  int full = 0;
  for (const auto& c : cfgs) {
    auto G = build_group(c);
    cases.push_back(G.k2_case());
    full += G.is_full;
  }
  CHECK(full == 1);
  CHECK(std::count(cases.begin(), cases.end(), "a") == 2);
  CHECK(std::count(cases.begin(), cases.end(), "d") == 2);
  // L2(7): Out = PGL2(7)/L2(7), so a sigma-coset through Out is case (c).
  std::vector<std::string> l27;
  for (const auto& c : enumerate_overgroups({Family::PSL2, 7})) l27.push_back(build_group(c).k2_case());
  CHECK(std::count(l27.begin(), l27.end(), "c") == 1);
  CHECK(std::count(l27.begin(), l27.end(), "b") == 0);
}

TEST_CASE("twisted top groups and Q") {
  DiagonalConfig c = cfg(A5, 3, "custom");
  c.top = "S";
  c.q = "A";
  auto G = build_group(c);
  CHECK(G.P_label == "S");
  CHECK(G.Q_label == "A");
  CHECK(G.order() == 216000 * 6);
  auto chain = G.realize();
  auto q = G.realized_q(chain);
  CHECK(q.size() == 3);
  DiagonalConfig s = cfg(A5, 3, "custom");
  s.top = "S";
  s.q = "S";
  auto GS = build_group(s);
  CHECK(GS.realized_q(GS.realize()).size() == 6);
}

TEST_CASE("config JSON round trip") {
  auto j = nlohmann::json::parse(R"({"T":{"family":"Alt","n":5},"k":2,"preset":"full_W","out_part":"full","top":"S","q":"S"})");
  auto c = DiagonalConfig::from_json(j);
  CHECK(c.T == A5);
  CHECK(c.preset == "full_W");
  auto back = DiagonalConfig::from_json(c.to_json());
  CHECK(back.to_json() == c.to_json());
  auto e = enumerate_overgroups(A5)[3];
  CHECK(DiagonalConfig::from_json(e.to_json()).to_json() == e.to_json());
  CHECK_THROWS_AS(DiagonalConfig::from_json(nlohmann::json::parse(R"({"k":2})")), ConfigError);
  CHECK_THROWS_AS(DiagonalConfig::from_json(nlohmann::json::parse(R"({"T":"A5","preset":"weird"})")), ConfigError);
}

TEST_CASE("primitivity test") {
  CHECK(is_primitive(symmetric_generators(5), 5));
  CHECK(is_primitive(alternating_generators(3), 3));
  CHECK_FALSE(is_primitive({Perm::from_cycles(4, {{0, 1, 2, 3}})}, 4));
  CHECK_FALSE(is_primitive({Perm::from_cycles(4, {{0, 1}})}, 4));
  CHECK(is_primitive({Perm::from_cycles(5, {{0, 1, 2, 3, 4}})}, 5));
}
