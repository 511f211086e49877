#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace diagbase {

using Point = std::uint32_t;

// A permutation of {0, ..., n-1} stored as its image sequence. Points act on
// the right: x^p = p[x], and the product p * q applies p first, then q.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::size_t degree);

  static Perm from_images(std::vector<Point> images);
  // Cycles are given with 0-based points.
  static Perm from_cycles(std::size_t degree,
                          const std::vector<std::vector<Point>>& cycles);

  std::size_t degree() const { return img_.size(); }
  Point operator[](Point x) const { return img_[x]; }
  const std::vector<Point>& images() const { return img_; }

  Perm operator*(const Perm& q) const;
  Perm& operator*=(const Perm& q);
  Perm inverse() const;
  // g^-1 * this * g
  Perm conjugate(const Perm& g) const;
  Perm pow(std::int64_t e) const;

  bool is_identity() const;
  std::uint64_t order() const;
  std::vector<std::size_t> cycle_type() const;  // sorted, fixed points omitted
  // Returns degree() for the identity.
  Point smallest_moved() const;
  std::string cycle_string() const;

  friend bool operator==(const Perm& a, const Perm& b) { return a.img_ == b.img_; }
  friend bool operator!=(const Perm& a, const Perm& b) { return a.img_ != b.img_; }
  friend bool operator<(const Perm& a, const Perm& b) { return a.img_ < b.img_; }

 private:
  std::vector<Point> img_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept;
};

std::size_t hash_points(const std::vector<Point>& v) noexcept;

struct PointsHash {
  std::size_t operator()(const std::vector<Point>& v) const noexcept { return hash_points(v); }
};

}  // namespace diagbase
