#include "doctest.h"

#include <random>

#include "diagbase/errors.hpp"
#include "diagbase/perm.hpp"

using namespace diagbase;

TEST_CASE("products apply the left factor first") {
  Perm p = Perm::from_images({1, 2, 0});  // 0->1->2->0
  Perm q = Perm::from_images({0, 2, 1});  // swaps 1 and 2
  Perm pq = p * q;
  // 0^p = 1, 1^q = 2
  CHECK(pq[0] == 2);
  CHECK(pq[1] == 1);
  CHECK(pq[2] == 0);
}

TEST_CASE("inverse, powers and order") {
  Perm p = Perm::from_cycles(7, {{0, 1, 2}, {3, 4}});
  CHECK((p * p.inverse()).is_identity());
  CHECK(p.order() == 6);
  CHECK(p.pow(6).is_identity());
  CHECK(p.pow(-1) == p.inverse());
  CHECK(p.cycle_type() == std::vector<std::size_t>{2, 3});
  CHECK(p.smallest_moved() == 0);
  CHECK(Perm(4).smallest_moved() == 4);
  CHECK(p.cycle_string() == "(0,1,2)(3,4)");
}

TEST_CASE("conjugation relabels cycles") {
  Perm p = Perm::from_cycles(5, {{0, 1, 2}});
  Perm g = Perm::from_cycles(5, {{0, 3}, {1, 4}});
  Perm c = p.conjugate(g);
  CHECK(c == g.inverse() * p * g);
  CHECK(c == Perm::from_cycles(5, {{3, 4, 2}}));
}

TEST_CASE("malformed image sequences are rejected") {
  CHECK_THROWS_AS(Perm::from_images({0, 0, 1}), MalformedPermutation);
  CHECK_THROWS_AS(Perm::from_images({0, 3}), MalformedPermutation);
  CHECK_THROWS_AS(Perm::from_cycles(3, {{0, 1}, {1, 2}}), MalformedPermutation);
  CHECK_THROWS_AS(Perm(3) * Perm(4), DegreeMismatch);
}

TEST_CASE("random products are associative and inverses cancel") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Point> a(9), b(9), c(9);
    for (Point i = 0; i < 9; ++i) a[i] = b[i] = c[i] = i;
    std::shuffle(a.begin(), a.end(), rng);
    std::shuffle(b.begin(), b.end(), rng);
    std::shuffle(c.begin(), c.end(), rng);
    Perm x = Perm::from_images(a), y = Perm::from_images(b), z = Perm::from_images(c);
    CHECK((x * y) * z == x * (y * z));
    CHECK((x * y).inverse() == y.inverse() * x.inverse());
    CHECK(x.conjugate(y) == y.inverse() * x * y);
  }
}
