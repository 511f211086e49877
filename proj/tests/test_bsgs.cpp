#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <unordered_set>

#include "diagbase/bsgs.hpp"

using namespace diagbase;

namespace {

Perm cyc(std::size_t n, std::vector<std::vector<Point>> c) { return Perm::from_cycles(n, c); }

std::vector<Perm> a5_gens() { return {cyc(5, {{0, 1, 2}}), cyc(5, {{0, 1, 2, 3, 4}})}; }
std::vector<Perm> s5_gens() { return {cyc(5, {{0, 1}}), cyc(5, {{0, 1, 2, 3, 4}})}; }

// Brute-force closure, the oracle for every order check below.
std::vector<Perm> closure(const std::vector<Perm>& gens, std::size_t n) {
  std::vector<Perm> all{Perm(n)};
  std::unordered_set<Perm, PermHash> seen{Perm(n)};
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (const auto& g : gens) {
      Perm h = all[i] * g;
      if (seen.insert(h).second) all.push_back(h);
    }
  }
  return all;
}

Perm random_perm(std::size_t n, std::mt19937& rng) {
  std::vector<Point> v(n);
  for (Point i = 0; i < n; ++i) v[i] = i;
  std::shuffle(v.begin(), v.end(), rng);
  return Perm::from_images(v);
}

}  // namespace

TEST_CASE("orders of small groups") {
  CHECK(bsgs_build(a5_gens(), 5).order() == 60);
  CHECK(bsgs_build(s5_gens(), 5).order() == 120);
  CHECK(bsgs_build({}, 4).order() == 1);
  CHECK(bsgs_build({Perm(4)}, 4).order() == 1);
}

TEST_CASE("chain invariants hold") {
  auto chain = bsgs_build(s5_gens(), 5);
  BigInt prod = 1;
  for (std::size_t i = 0; i < chain.depth(); ++i) {
    const auto& L = chain.level(i);
    prod *= L.orbit.size();
    for (const auto& g : L.gens) {
      for (std::size_t j = 0; j < i; ++j) CHECK(g[chain.level(j).base] == chain.level(j).base);
    }
  }
  CHECK(prod == chain.order());
  for (const auto& g : s5_gens()) CHECK(chain.contains(g));
}

TEST_CASE("membership") {
  auto a5 = bsgs_build(a5_gens(), 5);
  CHECK(membership(a5, cyc(5, {{1, 3, 4}})));
  CHECK_FALSE(membership(a5, cyc(5, {{1, 3}})));
  auto triv = bsgs_build({}, 3);
  CHECK(membership(triv, Perm(3)));
  CHECK_FALSE(membership(triv, cyc(3, {{0, 1}})));
  CHECK_THROWS_AS(membership(a5, Perm(6)), DegreeMismatch);
}

TEST_CASE("orbits are ordered by length then least point") {
  auto o = orbits(a5_gens(), 5);
  REQUIRE(o.size() == 1);
  CHECK(o[0].size() == 5);
  auto t = orbits({}, 3);
  CHECK(t == std::vector<std::vector<Point>>{{0}, {1}, {2}});
  auto stab = point_stabilizer(bsgs_build(a5_gens(), 5), 0);
  auto so = orbits(stab.generators(), 5);
  CHECK(so == std::vector<std::vector<Point>>{{1, 2, 3, 4}, {0}});
  auto mixed = orbits({cyc(6, {{4, 5}}), cyc(6, {{1, 2, 3}})}, 6);
  CHECK(mixed == std::vector<std::vector<Point>>{{1, 2, 3}, {4, 5}, {0}});
}

TEST_CASE("point stabilisers") {
  auto s5 = bsgs_build(s5_gens(), 5);
  CHECK(point_stabilizer(s5, 0).order() == 24);
  CHECK(point_stabilizer(s5, 3).order() == 24);
  CHECK(point_stabilizer(bsgs_build({}, 4), 2).order() == 1);
  auto a5 = bsgs_build(a5_gens(), 5);
  auto st = point_stabilizer(a5, 0);
  CHECK(st.order() == 12);
  for (const auto& g : st.generators()) CHECK(g[0] == 0);
  CHECK_THROWS_AS(point_stabilizer(a5, 7), DomainError);

  // A point outside the first basic orbit goes through the Schreier path.
  std::vector<Perm> gens{cyc(7, {{0, 1, 2}}), cyc(7, {{3, 4, 5, 6}}), cyc(7, {{3, 4}})};
  auto g = bsgs_build(gens, 7);
  CHECK(g.order() == 3 * 24);
  auto h = point_stabilizer(g, 5);
  CHECK(h.order() == 18);
  for (const auto& x : h.generators()) CHECK(x[5] == 5);
}

TEST_CASE("pointwise stabiliser of a full base is trivial") {
  std::mt19937 rng(7);
  for (int t = 0; t < 20; ++t) {
    std::vector<Perm> gens{random_perm(8, rng), random_perm(8, rng)};
    auto c = bsgs_build(gens, 8);
    auto stab = pointwise_stabilizer(c, c.base());
    CHECK(stab.is_trivial());
    for (const auto& orb : orbits(stab.generators(), 8)) CHECK(orb.size() == 1);
  }
}

TEST_CASE("bsgs order agrees with brute-force closure") {
  std::mt19937 rng(2024);
  int checked = 0;
  for (int t = 0; t < 300 && checked < 40; ++t) {
    std::size_t n = 4 + t % 5;
    std::vector<Perm> gens{random_perm(n, rng)};
    if (t % 3) gens.push_back(random_perm(n, rng).pow(2 + t % 3));
    auto chain = bsgs_build(gens, n);
    if (chain.order() > 5000) continue;
    auto all = closure(gens, n);
    CHECK(chain.order() == all.size());
    std::size_t counted = 0;
    chain.for_each_element([&](const Perm&) { ++counted; });
    CHECK(counted == all.size());
    ++checked;
  }
  CHECK(checked >= 20);
  // PSL(2,7) on 8 points
  std::vector<Perm> l27{cyc(8, {{0, 1, 2, 3, 4, 5, 6}}), cyc(8, {{0, 7}, {1, 6}, {2, 3}, {4, 5}})};
  CHECK(bsgs_build(l27, 8).order() == closure(l27, 8).size());
}

TEST_CASE("closure under products of random elements") {
  std::mt19937 rng(99);
  auto chain = bsgs_build(a5_gens(), 5);
  std::vector<Perm> elems;
  chain.for_each_element([&](const Perm& g) { elems.push_back(g); });
  for (int t = 0; t < 200; ++t) {
    const Perm& a = elems[rng() % elems.size()];
    const Perm& b = elems[rng() % elems.size()];
    CHECK(chain.contains(a * b));
  }
}

TEST_CASE("known-order builder stops at the target") {
  auto chain = bsgs_build_known(s5_gens(), 5, 120);
  CHECK(chain.order() == 120);
  CHECK_THROWS_AS(bsgs_build_known(a5_gens(), 5, 120), InternalConsistencyError);
}

TEST_CASE("transporters") {
  auto a5 = bsgs_build(a5_gens(), 5);
  auto g = transporter_tuple(a5, {0, 1}, {1, 2});
  REQUIRE(g.has_value());
  CHECK((*g)[0] == 1);
  CHECK((*g)[1] == 2);
  CHECK(a5.contains(*g));
  auto id = transporter_tuple(a5, {0}, {0});
  REQUIRE(id.has_value());
  CHECK((*id)[0] == 0);
  CHECK_FALSE(transporter_tuple(bsgs_build({}, 3), {0}, {1}).has_value());
  CHECK_THROWS_AS(transporter_tuple(a5, {0}, {1, 2}), DomainError);
}

TEST_CASE("descent transporter agrees with tuple-orbit enumeration") {
  std::mt19937 rng(5);
  std::vector<Perm> gens{cyc(7, {{0, 1, 2}}), cyc(7, {{3, 4, 5, 6}}), cyc(7, {{3, 4}}),
                         cyc(7, {{0, 3}, {1, 4}, {2, 5}})};
  auto chain = bsgs_build(gens, 7);
  Transporter tr(chain);
  for (int t = 0; t < 300; ++t) {
    std::size_t len = 1 + t % 4;
    std::vector<Point> src(len), dst(len);
    for (auto& x : src) x = rng() % 7;
    for (auto& x : dst) x = rng() % 7;
    auto d = tr.find(src, dst);
    auto b = transporter_tuple_bfs(chain, src, dst);
    CHECK(d.has_value() == b.has_value());
    if (d) {
      CHECK(chain.contains(*d));
      for (std::size_t i = 0; i < len; ++i) CHECK((*d)[src[i]] == dst[i]);
    }
  }
}

TEST_CASE("tuple BFS honours its memory cap") {
  auto s5 = bsgs_build(s5_gens(), 5);
  CHECK_THROWS_AS(transporter_tuple_bfs(s5, {0, 1, 2}, {4, 4, 4}, 10), ResourceError);
  CHECK(tuple_orbit_size(s5, {0, 1, 2}) == 60);
}

TEST_CASE("conjugacy classes") {
  auto a5 = bsgs_build(a5_gens(), 5);
  auto cls = conjugacy_classes(a5);
  // Oracle: brute-force class partition of the 60 elements.
  auto all = closure(a5_gens(), 5);
  std::multiset<std::size_t> brute;
  std::set<Perm> done;
  for (const auto& x : all) {
    if (done.count(x)) continue;
    std::set<Perm> cl;
    for (const auto& g : all) cl.insert(x.conjugate(g));
    done.insert(cl.begin(), cl.end());
    brute.insert(cl.size());
  }
  std::multiset<std::size_t> got;
  for (const auto& c : cls) got.insert(c.size);
  CHECK(got == brute);
  CHECK(got == std::multiset<std::size_t>{1, 15, 20, 12, 12});
  CHECK(cls.size() == 5);
  std::vector<std::string> labels;
  for (const auto& c : cls) labels.push_back(c.label);
  CHECK(labels == std::vector<std::string>{"1A", "2A", "3A", "5A", "5B"});

  CHECK(conjugacy_classes(bsgs_build(s5_gens(), 5)).size() == 7);
  auto triv = conjugacy_classes(bsgs_build({}, 3));
  REQUIRE(triv.size() == 1);
  CHECK(triv[0].size == 1);
  CHECK_THROWS_AS(conjugacy_classes(a5, 10), ResourceError);
}

TEST_CASE("centralisers") {
  auto s5 = bsgs_build(s5_gens(), 5);
  auto c = centralizer(s5, cyc(5, {{0, 1, 2, 3, 4}}));
  CHECK(c.order() == 5);
  auto a5 = bsgs_build(a5_gens(), 5);
  Perm inv = cyc(5, {{0, 1}, {2, 3}});
  auto ci = centralizer(a5, inv);
  CHECK(ci.order() == 4);
  for (const auto& g : ci.generators()) CHECK(g * inv == inv * g);
  CHECK(centralizer(a5, Perm(5)).order() == 60);
  CHECK_THROWS_AS(centralizer(a5, cyc(5, {{0, 1}})), DomainError);
}

TEST_CASE("chain conjugation") {
  auto a5 = bsgs_build(a5_gens(), 5);
  Perm g = cyc(5, {{0, 3}});
  auto c = a5.conjugated(g);
  CHECK(c.order() == 60);
  for (const auto& x : a5.generators()) CHECK(c.contains(x.conjugate(g)));
  CHECK(c.base()[0] == g[a5.base()[0]]);
}
