#include <doctest.h>

#include <functional>

#include "diagbase/base_suite.hpp"

using namespace diagbase;

namespace {

StabilizerChain sym(std::uint32_t n) {
  return bsgs_build({Perm::from_cycles(n, {{0, 1}}), Perm::from_cycles(n, {[n] {
                                                                        std::vector<Point> c(n);
                                                                        for (Point i = 0; i < n; ++i) c[i] = i;
                                                                        return c;
                                                                      }()})},
                    n);
}

// Brute force over every point of every longest orbit, without the
// one-representative reduction.
std::set<std::uint32_t> greedy_brute(const StabilizerChain& G) {
  std::set<std::uint32_t> out;
  std::function<void(const StabilizerChain&, std::uint32_t)> rec = [&](const StabilizerChain& H, std::uint32_t d) {
    if (H.is_trivial()) {
      out.insert(d);
      return;
    }
    auto orbs = orbits(H.generators(), H.degree());
    for (const auto& o : orbs) {
      if (o.size() != orbs.front().size()) break;
      for (Point p : o) rec(point_stabilizer(H, p), d + 1);
    }
  };
  rec(G, 0);
  return out;
}

// Brute force b(G) over all point sequences of increasing length.
std::uint32_t min_base_brute(const StabilizerChain& G) {
  const std::uint32_t n = G.degree();
  for (std::uint32_t d = 0;; ++d) {
    std::vector<Point> seq(d, 0);
    while (true) {
      if (is_base(G, seq)) return d;
      std::uint32_t i = 0;
      while (i < d && ++seq[i] == n) seq[i++] = 0;
      if (i == d) break;
    }
  }
}

DiagonalGroup a5(const std::string& preset, int k = 2) {
  DiagonalConfig c;
  c.T = parse_group_spec("A5");
  c.k = k;
  c.preset = preset;
  return build_group(c);
}

}  // namespace

TEST_CASE("trivial group has empty statistics") {
  StabilizerChain triv = bsgs_build({}, 4);
  CHECK(min_base(triv).size == 0);
  CHECK(max_irredundant(triv).size == 0);
  CHECK(greedy_sizes(triv).sizes == std::set<std::uint32_t>{0});
}

TEST_CASE("natural symmetric groups against brute force") {
  for (std::uint32_t n : {3u, 4u, 5u}) {
    auto S = sym(n);
    CHECK(greedy_sizes(S).sizes == greedy_brute(S));
    CHECK(min_base(S).size == min_base_brute(S));
    CHECK(max_irredundant(S).size == n - 1);
  }
  CHECK(greedy_sizes(sym(5)).sizes == std::set<std::uint32_t>{4});
}

TEST_CASE("small intransitive and imprimitive groups against brute force") {
  // <(0 1 2), (3 4)> and the dihedral group of order 8 on 4 points
  auto G1 = bsgs_build({Perm::from_cycles(5, {{0, 1, 2}}), Perm::from_cycles(5, {{3, 4}})}, 5);
  auto D8 = bsgs_build({Perm::from_cycles(4, {{0, 1, 2, 3}}), Perm::from_cycles(4, {{0, 2}})}, 4);
  for (const auto* G : {&G1, &D8}) {
    CHECK(greedy_sizes(*G).sizes == greedy_brute(*G));
    CHECK(min_base(*G).size == min_base_brute(*G));
    CHECK(is_base(*G, min_base(*G).base));
    CHECK(is_base(*G, max_irredundant(*G).base));
  }
  CHECK(min_base(D8).size == 2);
}

TEST_CASE("A5 squared, socle and full W") {
  auto soc = a5("socle");
  auto cs = soc.realize();
  CHECK(greedy_sizes(cs).sizes == std::set<std::uint32_t>{3});
  auto mb = min_base(cs);
  CHECK(mb.size == 3);
  CHECK(is_base(cs, mb.base));
  auto irr = max_irredundant(cs);
  CHECK(irr.size >= 3);
  CHECK(irr.size <= 3 * 6);
  CHECK(is_base(cs, irr.base));
  MESSAGE("I(A5^2 socle) = " << irr.size);

  auto full = a5("full_W");
  auto cf = full.realize();
  auto gr = greedy_sizes(cf);
  CHECK(gr.sizes == std::set<std::uint32_t>{4});
  CHECK(is_base(cf, gr.witnesses.at(4)));
  CHECK(min_base(cf).size == 4);
}

TEST_CASE("A5 cubed has a regular suborbit") {
  auto G = a5("full_W", 3);
  auto c = G.realize();
  CHECK(min_base(c).size == 2);
  CHECK(greedy_sizes(c).sizes == std::set<std::uint32_t>{2});
  CHECK(regular_suborbit(c, 0).has_value());
  auto soc = a5("socle", 3).realize();
  CHECK(min_base(soc).size == 2);
}

TEST_CASE("L2(8) squared socle has I equal to b") {
  DiagonalConfig c;
  c.T = parse_group_spec("L2(8)");
  c.k = 2;
  c.preset = "socle";
  auto G = build_group(c);
  auto chain = G.realize();
  CHECK(min_base(chain).size == 3);
  CHECK(max_irredundant(chain).size == 3);
}

TEST_CASE("closed forms") {
  ClosedFormInput in;
  in.tsize = 60;
  in.k = 2;
  in.T_label = "A5";
  in.G_is_full = true;
  CHECK(closed_form_greedy(in) == 4);
  CHECK(closed_form_base(in) == 4);
  in.G_is_full = false;
  CHECK(closed_form_greedy(in) == 3);
  CHECK(closed_form_base(in) == 3);
  in.T_label = "L2(7)";
  in.tsize = 168;
  in.G_is_full = true;
  CHECK(closed_form_base(in) == 3);

  in = {};
  in.tsize = 60;
  in.k = 7;
  in.P_label = "other";
  CHECK(closed_form_greedy(in) == 2);
  CHECK(closed_form_base(in) == 2);

  in.P_label = "S";
  in.Q_label = "S";
  in.k = 3600;
  CHECK(closed_form_greedy(in) == 4);
  in.Q_label = "A";
  CHECK(closed_form_greedy(in) == 4);
  CHECK(closed_form_base(in) == 3);

  in.k = 60;
  CHECK(closed_form_base(in) == 3);
  in.k = 58;
  in.Q_label = "S";
  CHECK(closed_form_base(in) == 3);
  in.Q_label = "A";
  CHECK(closed_form_base(in) == 2);

  // the two readings disagree only at k = n^l - 1, n^l - 2
  in.k = 3599;
  in.Q_label = "S";
  CHECK(closed_form_greedy(in, BoundaryReading::PropCor) == 4);
  CHECK(closed_form_greedy(in, BoundaryReading::Literal) == 3);
  in.Q_label = "A";
  CHECK(closed_form_greedy(in, BoundaryReading::PropCor) == 3);
  CHECK(closed_form_greedy(in, BoundaryReading::Literal) == 4);

  in.k = 1;
  CHECK_THROWS_AS(closed_form_base(in), DomainError);
  in.k = 5;
  in.P_label = "bogus";
  CHECK_THROWS_AS(closed_form_greedy(in), DomainError);
}

TEST_CASE("verify_paper_case on every A5 k=2 overgroup") {
  auto all = enumerate_overgroups(parse_group_spec("A5"), 2);
  int fours = 0;
  for (const auto& cfg : all) {
    auto r = verify_paper_case(cfg);
    CHECK_MESSAGE(r.match(), r.label);
    CHECK(r.greedy_sizes.size() == 1);
    if (*r.greedy_sizes.begin() == 4) {
      ++fours;
      CHECK(build_group(cfg).is_full);
    }
  }
  CHECK(fours == 1);
}
