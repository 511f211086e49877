#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "diagbase/errors.hpp"
#include "diagbase/numeric.hpp"
#include "diagbase/perm.hpp"

namespace diagbase {

// One level of a stabiliser chain. `gens` generate the pointwise stabiliser
// of the earlier base points; the Schreier tree over `orbit` is stored as
// the generator index on the edge into each point.
struct ChainLevel {
  Point base = 0;
  std::vector<Perm> gens;
  std::vector<Perm> inv_gens;
  std::vector<Point> orbit;
  std::vector<std::int32_t> edge;  // -1: not in orbit, -2: the base point
  // Optional explicit transversal, indexed through `slot` (orbit position).
  std::vector<Perm> explicit_transversal;
  std::vector<std::uint32_t> slot;

  bool in_orbit(Point p) const { return edge[p] != -1; }
  Point predecessor(Point p) const { return inv_gens[edge[p]][p]; }
};

class StabilizerChain {
 public:
  StabilizerChain() = default;
  explicit StabilizerChain(std::size_t degree) : degree_(degree) {}

  std::size_t degree() const { return degree_; }
  std::size_t depth() const { return levels_.size(); }
  bool is_trivial() const { return levels_.empty(); }
  const ChainLevel& level(std::size_t i) const { return *levels_[i]; }
  std::vector<Point> base() const;
  BigInt order() const;
  // Generators of the whole group (level 0 strong generators).
  const std::vector<Perm>& generators() const;
  std::vector<Perm> strong_generators() const;

  // u with base[i]^u = p; p must lie in the level orbit.
  Perm transversal(std::size_t i, Point p) const;
  // h * u^-1 where u is the level-i transversal element for p.
  void strip(Perm& h, std::size_t i, Point p) const;
  // Returns the residue; `failed_level` is set to depth() when sifting
  // succeeded all the way down.
  Perm sift(const Perm& g, std::size_t* failed_level = nullptr) const;
  bool contains(const Perm& g) const;

  StabilizerChain tail() const;
  // Chain for g^-1 G g.
  StabilizerChain conjugated(const Perm& g) const;

  // Visit every element exactly once (product of transversals).
  template <class F>
  void for_each_element(F&& f) const;

 private:
  friend class ChainBuilder;
  std::size_t degree_ = 0;
  std::vector<std::shared_ptr<const ChainLevel>> levels_;
};

// Deterministic incremental Schreier-Sims. When a target order is given the
// construction stops as soon as the product of basic orbit lengths reaches
// it; the target must then be exactly the order of the generated group or
// an over-estimate (in which case the full algorithm runs).
class ChainBuilder {
 public:
  explicit ChainBuilder(std::size_t degree, std::optional<BigInt> target = std::nullopt);
  // Returns true if g was not already in the group built so far.
  bool add_generator(const Perm& g);
  bool reached_target() const { return done_; }
  BigInt order() const;
  StabilizerChain finish() const;

 private:
  struct Level {
    ChainLevel data;
    std::vector<std::uint32_t> cursor;
  };
  void add_to_level(std::size_t i, const Perm& g);
  Perm sift_from(Perm h, std::size_t start, std::size_t* failed) const;
  Perm trace(const Level& L, Point p) const;
  void strip(const Level& L, Perm& h, Point p) const;
  void run(std::size_t start);
  void check_target();

  std::size_t degree_;
  std::optional<BigInt> target_;
  std::vector<Level> levels_;
  bool done_ = false;
};

// Order of the group generated by `generators` on {0..degree-1}.
StabilizerChain bsgs_build(const std::vector<Perm>& generators, std::size_t degree);
StabilizerChain bsgs_build_known(const std::vector<Perm>& generators, std::size_t degree,
                                 const BigInt& order);

bool membership(const StabilizerChain& chain, const Perm& g);

// Orbits sorted by decreasing length, then by smallest element; each orbit
// is sorted ascending.
std::vector<std::vector<Point>> orbits(const std::vector<Perm>& generators, std::size_t domain_size);

// Breadth-first orbit of a single point with a Schreier tree.
class PointOrbit {
 public:
  PointOrbit(const std::vector<Perm>& gens, Point root, std::size_t degree);
  const std::vector<Point>& points() const { return points_; }
  bool contains(Point p) const { return edge_[p] != -1; }
  // u with root^u = p
  Perm element(Point p) const;

 private:
  const std::vector<Perm>* gens_;
  std::vector<Perm> inv_;
  std::vector<Point> points_;
  std::vector<std::int32_t> edge_;
  std::size_t degree_;
};

StabilizerChain point_stabilizer(const StabilizerChain& chain, Point point);
StabilizerChain pointwise_stabilizer(const StabilizerChain& chain, const std::vector<Point>& points);

// Finds g with src[i]^g = dst[i] for all i by descending through the point
// stabilisers of the prefixes of dst. Stabilisers are cached per prefix.
class Transporter {
 public:
  explicit Transporter(const StabilizerChain& chain);
  std::optional<Perm> find(const std::vector<Point>& src, const std::vector<Point>& dst);

 private:
  const StabilizerChain* chain_;
  std::unordered_map<std::vector<Point>, std::shared_ptr<StabilizerChain>, PointsHash> cache_;
};

std::optional<Perm> transporter_tuple(const StabilizerChain& chain, const std::vector<Point>& src,
                                      const std::vector<Point>& dst);

// Oracle version: breadth-first search over the tuple orbit of src, storing
// a parent pointer per state. Throws ResourceError once more than
// memory_cap states have been visited.
std::optional<Perm> transporter_tuple_bfs(const StabilizerChain& chain,
                                          const std::vector<Point>& src,
                                          const std::vector<Point>& dst,
                                          std::size_t memory_cap = 5000000);

// Full tuple orbit (oracle use).
std::size_t tuple_orbit_size(const StabilizerChain& chain, const std::vector<Point>& src,
                             std::size_t memory_cap = 5000000);

struct ConjClass {
  Perm representative;  // lexicographically least member
  std::uint64_t size = 0;
  std::uint64_t element_order = 0;
  std::string label;  // e.g. "5A"
};

inline constexpr std::uint64_t kDefaultClassOrderCap = 10000000;

std::vector<ConjClass> conjugacy_classes(const StabilizerChain& chain,
                                         std::uint64_t order_cap = kDefaultClassOrderCap);

StabilizerChain centralizer(const StabilizerChain& chain, const Perm& g,
                            std::uint64_t order_cap = kDefaultClassOrderCap);

// Stabiliser of `start` under an arbitrary right action of the group. The
// orbit is enumerated explicitly; the stabiliser is rebuilt from Schreier
// generators until it reaches |G| / |orbit|.
template <class State, class Hash, class Act>
StabilizerChain stabilizer_in_action(const StabilizerChain& G, const State& start, Act act,
                                     std::size_t orbit_cap = 50000000);

// ---------------------------------------------------------------------------

template <class F>
void StabilizerChain::for_each_element(F&& f) const {
  const std::size_t d = levels_.size();
  if (d == 0) {
    f(Perm(degree_));
    return;
  }
  // Element = u_{d-1} * ... * u_0 (deepest level first), which enumerates
  // each element exactly once.
  std::vector<std::vector<Perm>> trans(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (Point p : levels_[i]->orbit) trans[i].push_back(transversal(i, p));
  }
  std::vector<std::size_t> idx(d, 0);
  std::vector<Perm> partial(d + 1, Perm(degree_));
  // partial[i] = u_{d-1} ... u_i
  for (std::size_t i = d; i-- > 0;) partial[i] = partial[i + 1] * trans[i][0];
  while (true) {
    f(partial[0]);
    std::size_t i = 0;
    while (i < d && ++idx[i] == trans[i].size()) {
      idx[i] = 0;
      ++i;
    }
    if (i == d) break;
    for (std::size_t j = i + 1; j-- > 0;) partial[j] = partial[j + 1] * trans[j][idx[j]];
  }
}

template <class State, class Hash, class Act>
StabilizerChain stabilizer_in_action(const StabilizerChain& G, const State& start, Act act,
                                     std::size_t orbit_cap) {
  const auto& gens = G.generators();
  if (G.is_trivial()) return G;
  std::vector<State> states{start};
  std::vector<std::uint32_t> parent{0};
  std::vector<std::int32_t> via{-1};
  std::unordered_map<State, std::uint32_t, Hash> index;
  index.emplace(start, 0);
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t s = 0; s < gens.size(); ++s) {
      State img = act(states[i], gens[s]);
      if (index.find(img) != index.end()) continue;
      if (states.size() >= orbit_cap) throw ResourceError("orbit exceeds cap in stabiliser computation");
      index.emplace(img, static_cast<std::uint32_t>(states.size()));
      states.push_back(std::move(img));
      parent.push_back(static_cast<std::uint32_t>(i));
      via.push_back(static_cast<std::int32_t>(s));
    }
  }
  const BigInt full = G.order();
  const BigInt osize = states.size();
  if (full % osize != 0) throw InternalConsistencyError("orbit length does not divide group order");
  const BigInt target = full / osize;
  if (target == 1) return StabilizerChain(G.degree());

  const std::size_t n = G.degree();
  const bool cache = states.size() * n <= 20000000;
  std::vector<Perm> cached;
  auto build_u = [&](std::uint32_t i) {
    std::vector<std::int32_t> path;
    for (std::uint32_t j = i; j != 0; j = parent[j]) path.push_back(via[j]);
    Perm u(n);
    for (std::size_t t = path.size(); t-- > 0;) u *= gens[path[t]];
    return u;
  };
  if (cache) {
    cached.reserve(states.size());
    cached.emplace_back(n);
    for (std::uint32_t i = 1; i < states.size(); ++i) cached.push_back(cached[parent[i]] * gens[via[i]]);
  }
  ChainBuilder builder(n, target);
  for (std::uint32_t i = 0; i < states.size() && !builder.reached_target(); ++i) {
    Perm ui = cache ? cached[i] : build_u(i);
    for (std::size_t s = 0; s < gens.size(); ++s) {
      std::uint32_t j = index.at(act(states[i], gens[s]));
      if (j != 0 && parent[j] == i && via[j] == static_cast<std::int32_t>(s)) continue;
      Perm h = ui * gens[s];
      h *= (cache ? cached[j] : build_u(j)).inverse();
      if (h.is_identity()) continue;
      builder.add_generator(h);
      if (builder.reached_target()) break;
    }
  }
  if (!builder.reached_target()) throw InternalConsistencyError("Schreier generators did not reach the stabiliser order");
  return builder.finish();
}

}  // namespace diagbase
