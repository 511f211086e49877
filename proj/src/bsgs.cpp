#include "diagbase/bsgs.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace diagbase {

namespace {

constexpr std::size_t kExplicitTransversalLimit = 4000000;

void extend_orbit(ChainLevel& L, std::size_t new_gen) {
  const std::size_t old = L.orbit.size();
  auto visit = [&](Point p, std::size_t gi) {
    Point q = L.gens[gi][p];
    if (L.edge[q] == -1) {
      L.edge[q] = static_cast<std::int32_t>(gi);
      L.orbit.push_back(q);
    }
  };
  for (std::size_t i = 0; i < old; ++i) visit(L.orbit[i], new_gen);
  for (std::size_t i = old; i < L.orbit.size(); ++i) {
    for (std::size_t gi = 0; gi < L.gens.size(); ++gi) visit(L.orbit[i], gi);
  }
}

Perm trace_level(const ChainLevel& L, Point p, std::size_t degree) {
  if (!L.slot.empty()) return L.explicit_transversal[L.slot[p]];
  std::vector<std::int32_t> path;
  while (L.edge[p] >= 0) {
    path.push_back(L.edge[p]);
    p = L.predecessor(p);
  }
  Perm u(degree);
  for (std::size_t t = path.size(); t-- > 0;) u *= L.gens[path[t]];
  return u;
}

void strip_level(const ChainLevel& L, Perm& h, Point p) {
  if (!L.slot.empty()) {
    h *= L.explicit_transversal[L.slot[p]].inverse();
    return;
  }
  while (L.edge[p] >= 0) {
    std::int32_t e = L.edge[p];
    h *= L.inv_gens[e];
    p = L.inv_gens[e][p];
  }
}

void materialize(ChainLevel& L, std::size_t degree) {
  if (L.orbit.size() * degree > kExplicitTransversalLimit) return;
  L.slot.assign(degree, 0);
  L.explicit_transversal.clear();
  L.explicit_transversal.reserve(L.orbit.size());
  for (std::size_t i = 0; i < L.orbit.size(); ++i) {
    Point p = L.orbit[i];
    L.slot[p] = static_cast<std::uint32_t>(i);
    if (L.edge[p] < 0) {
      L.explicit_transversal.emplace_back(degree);
    } else {
      // BFS order guarantees the predecessor was materialised first.
      Point q = L.predecessor(p);
      L.explicit_transversal.push_back(L.explicit_transversal[L.slot[q]] * L.gens[L.edge[p]]);
    }
  }
}

}  // namespace

// ---------------------------------------------------------------- chain

std::vector<Point> StabilizerChain::base() const {
  std::vector<Point> b;
  for (const auto& L : levels_) b.push_back(L->base);
  return b;
}

BigInt StabilizerChain::order() const {
  BigInt o = 1;
  for (const auto& L : levels_) o *= L->orbit.size();
  return o;
}

const std::vector<Perm>& StabilizerChain::generators() const {
  static const std::vector<Perm> kEmpty;
  return levels_.empty() ? kEmpty : levels_[0]->gens;
}

std::vector<Perm> StabilizerChain::strong_generators() const {
  std::vector<Perm> out;
  std::unordered_map<Perm, char, PermHash> seen;
  for (const auto& L : levels_) {
    for (const auto& g : L->gens) {
      if (seen.emplace(g, 1).second) out.push_back(g);
    }
  }
  return out;
}

Perm StabilizerChain::transversal(std::size_t i, Point p) const {
  const ChainLevel& L = *levels_.at(i);
  if (p >= degree_ || !L.in_orbit(p)) throw DomainError("point not in basic orbit");
  return trace_level(L, p, degree_);
}

void StabilizerChain::strip(Perm& h, std::size_t i, Point p) const { strip_level(*levels_[i], h, p); }

Perm StabilizerChain::sift(const Perm& g, std::size_t* failed_level) const {
  if (g.degree() != degree_) throw DegreeMismatch("element degree differs from chain degree");
  Perm h = g;
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    const ChainLevel& L = *levels_[i];
    Point b = h[L.base];
    if (!L.in_orbit(b)) {
      if (failed_level) *failed_level = i;
      return h;
    }
    strip_level(L, h, b);
  }
  if (failed_level) *failed_level = levels_.size();
  return h;
}

bool StabilizerChain::contains(const Perm& g) const {
  std::size_t lvl = 0;
  Perm r = sift(g, &lvl);
  return lvl == levels_.size() && r.is_identity();
}

StabilizerChain StabilizerChain::tail() const {
  StabilizerChain c(degree_);
  if (levels_.size() > 1) c.levels_.assign(levels_.begin() + 1, levels_.end());
  return c;
}

StabilizerChain StabilizerChain::conjugated(const Perm& g) const {
  if (g.degree() != degree_) throw DegreeMismatch("conjugating element has wrong degree");
  StabilizerChain c(degree_);
  for (const auto& Lp : levels_) {
    const ChainLevel& L = *Lp;
    auto N = std::make_shared<ChainLevel>();
    N->base = g[L.base];
    N->gens.reserve(L.gens.size());
    for (const auto& s : L.gens) N->gens.push_back(s.conjugate(g));
    for (const auto& s : L.inv_gens) N->inv_gens.push_back(s.conjugate(g));
    N->orbit.reserve(L.orbit.size());
    N->edge.assign(degree_, -1);
    for (Point p : L.orbit) {
      Point q = g[p];
      N->orbit.push_back(q);
      N->edge[q] = L.edge[p];
    }
    if (!L.slot.empty()) {
      N->slot.assign(degree_, 0);
      for (Point p : L.orbit) N->slot[g[p]] = L.slot[p];
      N->explicit_transversal.reserve(L.explicit_transversal.size());
      for (const auto& u : L.explicit_transversal) N->explicit_transversal.push_back(u.conjugate(g));
    }
    c.levels_.push_back(std::move(N));
  }
  return c;
}

// ---------------------------------------------------------------- builder

ChainBuilder::ChainBuilder(std::size_t degree, std::optional<BigInt> target)
    : degree_(degree), target_(std::move(target)) {
  if (target_ && *target_ == 1) done_ = true;
}

BigInt ChainBuilder::order() const {
  BigInt o = 1;
  for (const auto& L : levels_) o *= L.data.orbit.size();
  return o;
}

Perm ChainBuilder::trace(const Level& L, Point p) const { return trace_level(L.data, p, degree_); }

void ChainBuilder::strip(const Level& L, Perm& h, Point p) const { strip_level(L.data, h, p); }

Perm ChainBuilder::sift_from(Perm h, std::size_t start, std::size_t* failed) const {
  for (std::size_t i = start; i < levels_.size(); ++i) {
    const ChainLevel& L = levels_[i].data;
    Point b = h[L.base];
    if (!L.in_orbit(b)) {
      *failed = i;
      return h;
    }
    strip_level(L, h, b);
  }
  *failed = levels_.size();
  return h;
}

void ChainBuilder::add_to_level(std::size_t i, const Perm& g) {
  if (i == levels_.size()) {
    Level L;
    L.data.base = g.smallest_moved();
    L.data.edge.assign(degree_, -1);
    L.data.edge[L.data.base] = -2;
    L.data.orbit.push_back(L.data.base);
    levels_.push_back(std::move(L));
  }
  ChainLevel& d = levels_[i].data;
  d.gens.push_back(g);
  d.inv_gens.push_back(g.inverse());
  extend_orbit(d, d.gens.size() - 1);
}

void ChainBuilder::check_target() {
  if (!target_) return;
  BigInt o = order();
  if (o == *target_) done_ = true;
  if (o > *target_) throw InternalConsistencyError("group order exceeds the stated target");
}

bool ChainBuilder::add_generator(const Perm& g) {
  if (g.degree() != degree_) throw DegreeMismatch("generator degree differs from builder degree");
  if (done_) return false;
  std::size_t failed = 0;
  Perm r = sift_from(g, 0, &failed);
  if (failed == levels_.size() && r.is_identity()) return false;
  for (std::size_t i = 0; i <= failed; ++i) add_to_level(i, r);
  check_target();
  if (!done_) run(failed);
  return true;
}

void ChainBuilder::run(std::size_t start) {
  std::int64_t i = static_cast<std::int64_t>(start);
  while (i >= 0 && !done_) {
    Level& L = levels_[static_cast<std::size_t>(i)];
    bool grew = false;
    for (std::size_t idx = 0; !grew && idx < L.data.orbit.size(); ++idx) {
      if (L.cursor.size() < L.data.orbit.size()) L.cursor.resize(L.data.orbit.size(), 0);
      if (L.cursor[idx] >= L.data.gens.size()) continue;
      const Point beta = L.data.orbit[idx];
      Perm u = trace(L, beta);
      while (L.cursor[idx] < L.data.gens.size()) {
        const std::size_t s = L.cursor[idx]++;
        const Point gamma = L.data.gens[s][beta];
        if (L.data.edge[gamma] == static_cast<std::int32_t>(s) && L.data.predecessor(gamma) == beta) continue;
        Perm h = u * L.data.gens[s];
        strip(L, h, gamma);
        if (h.is_identity()) continue;
        std::size_t failed = 0;
        Perm r = sift_from(std::move(h), static_cast<std::size_t>(i) + 1, &failed);
        if (failed == levels_.size() && r.is_identity()) continue;
        for (std::size_t j = static_cast<std::size_t>(i) + 1; j <= failed; ++j) add_to_level(j, r);
        check_target();
        i = static_cast<std::int64_t>(failed);
        grew = true;
        break;
      }
    }
    if (!grew) --i;
  }
}

StabilizerChain ChainBuilder::finish() const {
  StabilizerChain c(degree_);
  for (const auto& L : levels_) {
    auto d = std::make_shared<ChainLevel>(L.data);
    materialize(*d, degree_);
    c.levels_.push_back(std::move(d));
  }
  return c;
}

// ---------------------------------------------------------------- free ops

namespace {
void check_gens(const std::vector<Perm>& gens, std::size_t degree) {
  for (const auto& g : gens)
    if (g.degree() != degree) throw DegreeMismatch("generators do not share one degree");
}
}  // namespace

StabilizerChain bsgs_build(const std::vector<Perm>& generators, std::size_t degree) {
  if (degree == 0) throw DomainError("degree must be at least 1");
  check_gens(generators, degree);
  ChainBuilder b(degree);
  for (const auto& g : generators) b.add_generator(g);
  return b.finish();
}

StabilizerChain bsgs_build_known(const std::vector<Perm>& generators, std::size_t degree,
                                 const BigInt& order) {
  check_gens(generators, degree);
  ChainBuilder b(degree, order);
  for (const auto& g : generators) {
    b.add_generator(g);
    if (b.reached_target()) break;
  }
  if (!b.reached_target()) {
    throw InternalConsistencyError("generated group has order " + b.order().str() + ", expected " +
                                   order.str());
  }
  return b.finish();
}

bool membership(const StabilizerChain& chain, const Perm& g) { return chain.contains(g); }

std::vector<std::vector<Point>> orbits(const std::vector<Perm>& generators, std::size_t domain_size) {
  check_gens(generators, domain_size);
  std::vector<char> seen(domain_size, 0);
  std::vector<std::vector<Point>> out;
  for (std::size_t x = 0; x < domain_size; ++x) {
    if (seen[x]) continue;
    std::vector<Point> orb{static_cast<Point>(x)};
    seen[x] = 1;
    for (std::size_t i = 0; i < orb.size(); ++i) {
      for (const auto& g : generators) {
        Point y = g[orb[i]];
        if (!seen[y]) {
          seen[y] = 1;
          orb.push_back(y);
        }
      }
    }
    std::sort(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  return out;
}

PointOrbit::PointOrbit(const std::vector<Perm>& gens, Point root, std::size_t degree)
    : gens_(&gens), edge_(degree, -1), degree_(degree) {
  for (const auto& g : gens) inv_.push_back(g.inverse());
  edge_[root] = -2;
  points_.push_back(root);
  for (std::size_t i = 0; i < points_.size(); ++i) {
    for (std::size_t s = 0; s < gens.size(); ++s) {
      Point q = gens[s][points_[i]];
      if (edge_[q] == -1) {
        edge_[q] = static_cast<std::int32_t>(s);
        points_.push_back(q);
      }
    }
  }
}

Perm PointOrbit::element(Point p) const {
  if (!contains(p)) throw DomainError("point not in orbit");
  std::vector<std::int32_t> path;
  while (edge_[p] >= 0) {
    path.push_back(edge_[p]);
    p = inv_[edge_[p]][p];
  }
  Perm u(degree_);
  for (std::size_t t = path.size(); t-- > 0;) u *= (*gens_)[path[t]];
  return u;
}

StabilizerChain point_stabilizer(const StabilizerChain& chain, Point point) {
  if (point >= chain.degree()) throw DomainError("point out of range");
  if (chain.is_trivial()) return chain;
  const auto& gens = chain.generators();
  bool fixed = std::all_of(gens.begin(), gens.end(), [&](const Perm& g) { return g[point] == point; });
  if (fixed) return chain;
  const ChainLevel& L0 = chain.level(0);
  if (point == L0.base) return chain.tail();
  if (L0.in_orbit(point)) return chain.tail().conjugated(chain.transversal(0, point));
  return stabilizer_in_action<Point, std::hash<Point>>(
      chain, point, [](Point p, const Perm& g) { return g[p]; });
}

StabilizerChain pointwise_stabilizer(const StabilizerChain& chain, const std::vector<Point>& points) {
  StabilizerChain c = chain;
  for (Point p : points) c = point_stabilizer(c, p);
  return c;
}

// ---------------------------------------------------------------- transporter

Transporter::Transporter(const StabilizerChain& chain) : chain_(&chain) {}

std::optional<Perm> Transporter::find(const std::vector<Point>& src, const std::vector<Point>& dst) {
  if (src.size() != dst.size()) throw DomainError("tuples of different length");
  const std::size_t n = chain_->degree();
  for (std::size_t i = 0; i < src.size(); ++i)
    if (src[i] >= n || dst[i] >= n) throw DomainError("tuple entry out of range");
  Perm g(n);
  std::vector<Point> prefix;
  std::shared_ptr<StabilizerChain> H = std::make_shared<StabilizerChain>(*chain_);
  for (std::size_t i = 0; i < src.size(); ++i) {
    Point a = g[src[i]];
    if (a != dst[i]) {
      if (H->is_trivial()) return std::nullopt;
      PointOrbit orb(H->generators(), a, n);
      if (!orb.contains(dst[i])) return std::nullopt;
      g *= orb.element(dst[i]);
    }
    prefix.push_back(dst[i]);
    auto it = cache_.find(prefix);
    if (it == cache_.end()) {
      auto next = std::make_shared<StabilizerChain>(point_stabilizer(*H, dst[i]));
      it = cache_.emplace(prefix, std::move(next)).first;
    }
    H = it->second;
  }
  return g;
}

std::optional<Perm> transporter_tuple(const StabilizerChain& chain, const std::vector<Point>& src,
                                      const std::vector<Point>& dst) {
  Transporter t(chain);
  return t.find(src, dst);
}

namespace {
struct TupleBfs {
  std::vector<std::vector<Point>> states;
  std::vector<std::uint32_t> parent;
  std::vector<std::int32_t> via;
  std::unordered_map<std::vector<Point>, std::uint32_t, PointsHash> index;
};

// Runs the BFS; stops early when `stop` is reached. Returns its index or -1.
std::int64_t tuple_bfs(const StabilizerChain& chain, const std::vector<Point>& src,
                       const std::vector<Point>* stop, std::size_t cap, TupleBfs& B) {
  const auto& gens = chain.generators();
  B.states.push_back(src);
  B.parent.push_back(0);
  B.via.push_back(-1);
  B.index.emplace(src, 0);
  if (stop && *stop == src) return 0;
  for (std::size_t i = 0; i < B.states.size(); ++i) {
    for (std::size_t s = 0; s < gens.size(); ++s) {
      std::vector<Point> img(B.states[i].size());
      for (std::size_t j = 0; j < img.size(); ++j) img[j] = gens[s][B.states[i][j]];
      if (B.index.count(img)) continue;
      if (B.states.size() >= cap) throw ResourceError("tuple orbit exceeds memory cap");
      auto id = static_cast<std::uint32_t>(B.states.size());
      B.index.emplace(img, id);
      B.parent.push_back(static_cast<std::uint32_t>(i));
      B.via.push_back(static_cast<std::int32_t>(s));
      bool hit = stop && *stop == img;
      B.states.push_back(std::move(img));
      if (hit) return id;
    }
  }
  return -1;
}
}  // namespace

std::optional<Perm> transporter_tuple_bfs(const StabilizerChain& chain, const std::vector<Point>& src,
                                          const std::vector<Point>& dst, std::size_t memory_cap) {
  if (src.size() != dst.size()) throw DomainError("tuples of different length");
  TupleBfs B;
  std::int64_t hit = tuple_bfs(chain, src, &dst, memory_cap, B);
  if (hit < 0) return std::nullopt;
  std::vector<std::int32_t> path;
  for (auto j = static_cast<std::uint32_t>(hit); j != 0; j = B.parent[j]) path.push_back(B.via[j]);
  Perm g(chain.degree());
  for (std::size_t t = path.size(); t-- > 0;) g *= chain.generators()[path[t]];
  return g;
}

std::size_t tuple_orbit_size(const StabilizerChain& chain, const std::vector<Point>& src,
                             std::size_t memory_cap) {
  TupleBfs B;
  tuple_bfs(chain, src, nullptr, memory_cap, B);
  return B.states.size();
}

// ---------------------------------------------------------------- classes

std::vector<ConjClass> conjugacy_classes(const StabilizerChain& chain, std::uint64_t order_cap) {
  const BigInt ord = chain.order();
  if (ord > order_cap) throw ResourceError("group order " + ord.str() + " exceeds class enumeration cap");
  std::vector<Perm> elems;
  chain.for_each_element([&](const Perm& g) { elems.push_back(g); });
  std::sort(elems.begin(), elems.end());
  std::unordered_map<Perm, std::uint32_t, PermHash> index;
  index.reserve(elems.size() * 2);
  for (std::uint32_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], i);
  std::vector<char> done(elems.size(), 0);
  const auto& gens = chain.generators();
  std::vector<ConjClass> classes;
  for (std::uint32_t i = 0; i < elems.size(); ++i) {
    if (done[i]) continue;
    // elems is sorted, so the first unvisited element is the least of its class.
    std::vector<std::uint32_t> members{i};
    done[i] = 1;
    for (std::size_t t = 0; t < members.size(); ++t) {
      for (const auto& s : gens) {
        std::uint32_t j = index.at(elems[members[t]].conjugate(s));
        if (!done[j]) {
          done[j] = 1;
          members.push_back(j);
        }
      }
    }
    ConjClass c;
    c.representative = elems[i];
    c.size = members.size();
    c.element_order = elems[i].order();
    classes.push_back(std::move(c));
  }
  std::stable_sort(classes.begin(), classes.end(), [](const ConjClass& a, const ConjClass& b) {
    if (a.element_order != b.element_order) return a.element_order < b.element_order;
    if (a.size != b.size) return a.size < b.size;
    return a.representative < b.representative;
  });
  std::map<std::uint64_t, int> letters;
  for (auto& c : classes) {
    int n = letters[c.element_order]++;
    std::string suffix;
    do {
      suffix.insert(suffix.begin(), static_cast<char>('A' + n % 26));
      n = n / 26 - 1;
    } while (n >= 0);
    c.label = std::to_string(c.element_order) + suffix;
  }
  return classes;
}

StabilizerChain centralizer(const StabilizerChain& chain, const Perm& g, std::uint64_t order_cap) {
  if (chain.order() > order_cap) throw ResourceError("group order exceeds centraliser cap");
  if (!chain.contains(g)) throw DomainError("element is not in the group");
  return stabilizer_in_action<Perm, PermHash>(chain, g,
                                               [](const Perm& x, const Perm& s) { return x.conjugate(s); });
}

}  // namespace diagbase
