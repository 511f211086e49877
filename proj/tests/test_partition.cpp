#include <doctest.h>

#include <map>
#include <random>
#include <tuple>

#include "diagbase/partition.hpp"

using namespace diagbase;

namespace {
PartitionType T(std::initializer_list<std::pair<std::uint64_t, std::uint64_t>> p) {
  PartitionType t;
  t.parts.assign(p.begin(), p.end());
  return t;
}
}  // namespace

TEST_CASE("gamma types") {
  CHECK(gamma_type(7, 3) == T({{2, 2}, {3, 1}}));
  CHECK(gamma_type(6, 3) == T({{2, 3}}));
  CHECK(gamma_type(61, 60) == T({{1, 59}, {2, 1}}));
  CHECK(gamma_type(2, 4) == T({{0, 2}, {1, 2}}));
  for (std::uint64_t k = 1; k < 40; ++k)
    for (std::uint64_t n = 1; n < 9; ++n) {
      auto g = gamma_type(k, n);
      CHECK(g.total() == k);
      CHECK(g.num_parts() == n);
      CHECK(g.largest() - g.smallest() <= 1);
    }
}

TEST_CASE("sigma types") {
  CHECK(sigma_type(30, 6) == T({{4, 2}, {5, 2}, {6, 2}}));
  CHECK(sigma_type(13, 6) == T({{1, 1}, {2, 3}, {3, 2}}));
  CHECK(sigma_type(15, 6) == gamma_type(15, 6));
  CHECK(sigma_type(16, 6) == T({{2, 3}, {3, 2}, {4, 1}}));
  CHECK(sigma_type(3600, 60) == T({{59, 2}, {60, 56}, {61, 2}}));
  for (std::uint64_t n = 5; n < 12; ++n)
    for (std::uint64_t k = n + 1; k < 6 * n; ++k) {
      auto s = sigma_type(k, n);
      CHECK(s.total() == k);
      CHECK(s.num_parts() == n);
    }
  CHECK_THROWS_AS(sigma_type(6, 6), DomainError);
  CHECK_THROWS_AS(sigma_type(10, 4), DomainError);
}

TEST_CASE("stabiliser orders") {
  CHECK(stab_order(T({{2, 2}, {3, 1}}), QKind::S) == 24);
  CHECK(stab_order(T({{2, 2}, {3, 1}}), QKind::A) == 12);
  CHECK(stab_order(T({{1, 7}}), QKind::S) == 1);
  CHECK(stab_order(T({{1, 7}}), QKind::A) == 1);
  CHECK(stab_trivial(T({{1, 5}, {2, 1}}), QKind::A));
  CHECK_FALSE(stab_trivial(T({{1, 5}, {2, 1}}), QKind::S));
  CHECK_FALSE(stab_trivial(T({{2, 2}}), QKind::A));
}

TEST_CASE("stabiliser orders against labelled brute force for k <= 8") {
  std::mt19937_64 rng(7);
  for (std::uint32_t k = 1; k <= 8; ++k)
    for (int trial = 0; trial < 6; ++trial) {
      std::uniform_int_distribution<std::uint32_t> lab(0, k);
      std::vector<std::uint32_t> labels(k);
      std::map<std::uint32_t, std::uint64_t> sizes;
      for (auto& l : labels) ++sizes[l = lab(rng)];
      std::vector<std::uint64_t> sz;
      for (auto [l, s] : sizes) sz.push_back(s);
      auto t = PartitionType::from_sizes(sz);
      for (QKind q : {QKind::A, QKind::S}) CHECK(BigInt(stab_order_bruteforce(labels, q)) == stab_order(t, q));
    }
}

TEST_CASE("minimal part lemma by exhaustion") {
  for (auto [k, n, q] : std::vector<std::tuple<int, int, QKind>>{
           {7, 3, QKind::S}, {13, 6, QKind::A}, {7, 6, QKind::S}, {61, 60, QKind::S}, {20, 6, QKind::S}}) {
    auto r = verify_min_part(k, n, q);
    CHECK_MESSAGE(r.holds, k << " " << n << " " << r.detail);
    CHECK(r.types_checked > 0);
  }
}

TEST_CASE("Sigma lemma by exhaustion") {
  for (auto [k, n, q] : std::vector<std::tuple<int, int, QKind>>{
           {30, 6, QKind::S}, {13, 6, QKind::A}, {31, 6, QKind::S}, {28, 6, QKind::S}, {29, 6, QKind::A},
           {22, 7, QKind::S}}) {
    auto r = verify_part_sigma(k, n, q);
    CHECK_MESSAGE(r.holds, k << " " << n << " " << r.detail);
  }
}

TEST_CASE("Sigma lemma counterexamples found by exhaustion") {
  // k = (m-1)n + 2: the type [(m-1)^(n-1), (m+1)^1] has a smaller stabiliser than Sigma
  for (QKind q : {QKind::A, QKind::S}) {
    auto r = verify_part_sigma(14, 6, q);
    CHECK_FALSE(r.holds);
    REQUIRE(r.counterexample);
    CHECK(*r.counterexample == T({{2, 5}, {4, 1}}));
    CHECK(stab_order(T({{2, 5}, {4, 1}}), QKind::S) == 768);
    CHECK(stab_order(sigma_type(14, 6), QKind::S) == 864);
  }
  // k = 2n: |H_Sigma| = (3/2)^2 |H_Gamma| breaks the factor-2 bound
  auto r = verify_part_sigma(12, 6, QKind::S);
  CHECK_FALSE(r.holds);
  CHECK(stab_order(sigma_type(12, 6), QKind::S) * 4 == stab_order(gamma_type(12, 6), QKind::S) * 9);
  for (std::uint64_t n : {5, 6, 7, 8})
    for (std::uint64_t k = n + 1; k <= 5 * n; ++k) {
      const std::uint64_t m = (k + n - 1) / n;
      const bool expected_fail = k == (m - 1) * n + 2 || k == 2 * n;
      CHECK_MESSAGE(verify_part_sigma(k, n, QKind::S).holds != expected_fail, n << " " << k);
    }
}

TEST_CASE("ceiling chain") {
  CHECK(ceil_chain(11, 3, 1));
  CHECK(ceil_chain(8, 2, 2));
  CHECK(ceil_chain(0, 5, 3));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    std::uint64_t m = rng() % 100000, n = 1 + rng() % 20, r = rng() % 5;
    CHECK(ceil_chain(m, n, r));
  }
}

TEST_CASE("refinement simulator") {
  auto r = greedy_refine_sim(60, 3600, QKind::S);
  CHECK(r.value == 4);
  CHECK(r.ell == 2);
  CHECK(r.largest_part_invariant);
  CHECK(greedy_refine_sim(60, 3600, QKind::A).value == 4);
  CHECK(greedy_refine_sim(60, 100, QKind::S).value == 3);
  auto a = greedy_refine_sim(60, 61, QKind::A);
  CHECK((a.value == 3 || a.value == 4));
  auto small = greedy_refine_sim(6, 13, QKind::S);
  CHECK(small.value >= 2);
  CHECK(greedy_refine_sim(60, 3599, QKind::S).value == 4);
  CHECK(greedy_refine_sim(60, 3599, QKind::A).value == 3);
  CHECK(greedy_refine_sim(60, 3598, QKind::S).value == 4);
  CHECK(greedy_refine_sim(60, 3598, QKind::A).value == 3);
}

TEST_CASE("simulation stays in range and agrees with the proposition reading") {
  std::vector<std::uint64_t> ks;
  for (std::uint64_t k = 61; k <= 4000; ++k) ks.push_back(k);
  auto rows = closed_form_vs_sim(60, ks, {QKind::A, QKind::S});
  int thm_disagree = 0;
  for (const auto& row : rows) {
    CHECK(row.agrees_prop());
    CHECK((row.sim == row.ell + 1 || row.sim == row.ell + 2));
    if (!row.agrees_thm()) ++thm_disagree;
  }
  CHECK(thm_disagree == 4);  // k = 3598, 3599 for each Q
  for (std::uint64_t n : {6, 7, 10})
    for (std::uint64_t k = n + 1; k <= n * n * n + 2; ++k)
      for (QKind q : {QKind::A, QKind::S}) {
        auto s = greedy_refine_sim(n, k, q);
        CHECK(s.in_range);
        CHECK_MESSAGE(s.largest_part_invariant, n << " " << k);
      }
  auto csv = sim_rows_csv(closed_form_vs_sim(60, {3598, 3599, 3600}, {QKind::A, QKind::S}));
  CHECK(csv.rfind("n,k,Q,ell,sim,thm_reading,prop_reading,agree_flags\n", 0) == 0);
  CHECK(csv.find("60,3600,A,2,4,4,4,thm+prop") != std::string::npos);
}
