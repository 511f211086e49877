#include "diagbase/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "diagbase/errors.hpp"

namespace diagbase {

Perm::Perm(std::size_t degree) : img_(degree) {
  std::iota(img_.begin(), img_.end(), Point{0});
}

Perm Perm::from_images(std::vector<Point> images) {
  std::vector<char> seen(images.size(), 0);
  for (Point x : images) {
    if (x >= images.size() || seen[x]) {
      throw MalformedPermutation("image sequence is not a bijection of 0.." +
                                 std::to_string(images.size()) + "-1");
    }
    seen[x] = 1;
  }
  Perm p;
  p.img_ = std::move(images);
  return p;
}

Perm Perm::from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  std::vector<char> used(degree, 0);
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      Point a = c[i];
      if (a >= degree || used[a]) throw MalformedPermutation("bad cycle notation");
      used[a] = 1;
      img[a] = c[(i + 1) % c.size()];
    }
  }
  return from_images(std::move(img));
}

Perm Perm::operator*(const Perm& q) const {
  if (q.degree() != degree()) throw DegreeMismatch("product of permutations of different degree");
  Perm r;
  r.img_.resize(img_.size());
  const Point* qi = q.img_.data();
  for (std::size_t x = 0; x < img_.size(); ++x) r.img_[x] = qi[img_[x]];
  return r;
}

Perm& Perm::operator*=(const Perm& q) {
  if (q.degree() != degree()) throw DegreeMismatch("product of permutations of different degree");
  const Point* qi = q.img_.data();
  for (auto& v : img_) v = qi[v];
  return *this;
}

Perm Perm::inverse() const {
  Perm r;
  r.img_.resize(img_.size());
  for (std::size_t x = 0; x < img_.size(); ++x) r.img_[img_[x]] = static_cast<Point>(x);
  return r;
}

Perm Perm::conjugate(const Perm& g) const {
  if (g.degree() != degree()) throw DegreeMismatch("conjugation by permutation of different degree");
  // (g^-1 p g)[x^g] = p[x]^g
  Perm r;
  r.img_.resize(img_.size());
  for (std::size_t x = 0; x < img_.size(); ++x) r.img_[g.img_[x]] = g.img_[img_[x]];
  return r;
}

Perm Perm::pow(std::int64_t e) const {
  Perm base = e < 0 ? inverse() : *this;
  std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
  Perm result(degree());
  while (n) {
    if (n & 1U) result *= base;
    base = base * base;
    n >>= 1U;
  }
  return result;
}

bool Perm::is_identity() const {
  for (std::size_t x = 0; x < img_.size(); ++x)
    if (img_[x] != x) return false;
  return true;
}

std::vector<std::size_t> Perm::cycle_type() const {
  std::vector<std::size_t> lens;
  std::vector<char> seen(img_.size(), 0);
  for (std::size_t x = 0; x < img_.size(); ++x) {
    if (seen[x]) continue;
    std::size_t len = 0;
    for (Point y = static_cast<Point>(x); !seen[y]; y = img_[y]) {
      seen[y] = 1;
      ++len;
    }
    if (len > 1) lens.push_back(len);
  }
  std::sort(lens.begin(), lens.end());
  return lens;
}

std::uint64_t Perm::order() const {
  std::uint64_t o = 1;
  for (std::size_t len : cycle_type()) o = std::lcm(o, static_cast<std::uint64_t>(len));
  return o;
}

Point Perm::smallest_moved() const {
  for (std::size_t x = 0; x < img_.size(); ++x)
    if (img_[x] != x) return static_cast<Point>(x);
  return static_cast<Point>(img_.size());
}

std::string Perm::cycle_string() const {
  std::ostringstream os;
  std::vector<char> seen(img_.size(), 0);
  bool any = false;
  for (std::size_t x = 0; x < img_.size(); ++x) {
    if (seen[x] || img_[x] == x) continue;
    any = true;
    os << '(';
    Point y = static_cast<Point>(x);
    bool first = true;
    while (!seen[y]) {
      seen[y] = 1;
      if (!first) os << ',';
      os << y;
      first = false;
      y = img_[y];
    }
    os << ')';
  }
  if (!any) os << "()";
  return os.str();
}

std::size_t hash_points(const std::vector<Point>& v) noexcept {
  // FNV-1a over the 32-bit words.
  std::uint64_t h = 1469598103934665603ULL;
  for (Point x : v) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

std::size_t PermHash::operator()(const Perm& p) const noexcept { return hash_points(p.images()); }

}  // namespace diagbase
