#include "diagbase/rc.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <unordered_map>

#include "diagbase/base_suite.hpp"

namespace diagbase {

namespace {

std::vector<std::vector<std::uint32_t>> subsets_of_size(std::uint32_t t, std::uint32_t s) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur;
  std::function<void(std::uint32_t)> rec = [&](std::uint32_t from) {
    if (cur.size() == s) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t i = from; i < t; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<Point> pick(const std::vector<Point>& v, const std::vector<std::uint32_t>& idx) {
  std::vector<Point> out;
  for (auto i : idx) out.push_back(v.at(i));
  return out;
}

void check_pair(const WitnessPair& pair) {
  if (pair.lam.size() != pair.sig.size()) throw DomainError("witness tuples must have equal length");
  if (pair.s >= pair.lam.size()) throw DomainError("s must be smaller than the tuple length");
}

std::vector<std::uint32_t> orbit_labels(const StabilizerChain& H) {
  std::vector<std::uint32_t> lab(H.degree(), 0);
  std::uint32_t id = 0;
  for (const auto& orb : orbits(H.generators(), H.degree())) {
    for (Point p : orb) lab[p] = id;
    ++id;
  }
  return lab;
}

nlohmann::json tuple_json(const std::vector<Point>& v, const DiagonalGroup* G) {
  nlohmann::json a = nlohmann::json::array();
  for (Point p : v) {
    if (G)
      a.push_back(G->point(p).coords);
    else
      a.push_back(p);
  }
  return a;
}

}  // namespace

bool subtuple_complete(const StabilizerChain& chain, const WitnessPair& pair,
                       std::vector<std::optional<Perm>>* transporters) {
  check_pair(pair);
  Transporter tr(chain);
  for (const auto& sub : subsets_of_size(static_cast<std::uint32_t>(pair.lam.size()), pair.s)) {
    auto g = tr.find(pick(pair.lam, sub), pick(pair.sig, sub));
    if (transporters) transporters->push_back(g);
    if (!g) return false;
  }
  return true;
}

bool same_orbit(const StabilizerChain& chain, const std::vector<Point>& lam, const std::vector<Point>& sig) {
  if (lam.size() != sig.size()) throw DomainError("tuples must have equal length");
  return transporter_tuple(chain, lam, sig).has_value();
}

Certificate check_witness(const StabilizerChain& chain, const WitnessPair& pair) {
  Certificate c;
  c.pair = pair;
  c.base = chain.base();
  std::vector<std::optional<Perm>> trs;
  c.complete = subtuple_complete(chain, pair, &trs);
  c.subsets = subsets_of_size(static_cast<std::uint32_t>(pair.lam.size()), pair.s);
  for (const auto& g : trs) {
    std::vector<Point> img;
    if (g)
      for (Point b : c.base) img.push_back((*g)[b]);
    c.transporter_base_images.push_back(img);
  }
  c.distinct_orbits = !same_orbit(chain, pair.lam, pair.sig);
  return c;
}

nlohmann::json Certificate::to_json(const DiagonalGroup* G) const {
  nlohmann::json j;
  j["provenance"] = pair.provenance;
  j["s"] = pair.s;
  j["I"] = tuple_json(pair.lam, G);
  j["J"] = tuple_json(pair.sig, G);
  j["I_index"] = pair.lam;
  j["J_index"] = pair.sig;
  j["subtuple_complete"] = complete;
  j["distinct_orbits"] = distinct_orbits;
  j["certified_lower"] = certified_lower();
  j["base"] = base;
  nlohmann::json t = nlohmann::json::array();
  for (std::size_t i = 0; i < subsets.size() && i < transporter_base_images.size(); ++i)
    t.push_back({{"subset", subsets[i]}, {"base_images", transporter_base_images[i]}});
  j["transporters"] = t;
  return j;
}

Point coset_point(const DiagonalGroup& G, const std::vector<std::uint32_t>& t) {
  if (t.size() != G.k) throw DegreeMismatch("coset tuple length differs from k");
  const auto& T = G.t();
  OmegaPoint p;
  const std::uint32_t inv1 = T.inv(t[0]);
  for (std::uint32_t j = 1; j < G.k; ++j) p.coords.push_back(T.mul(inv1, t[j]));
  return static_cast<Point>(G.index_of(p));
}

Point first_coordinate_point(const DiagonalGroup& G, std::uint32_t t) {
  std::vector<std::uint32_t> v(G.k, 0);
  v[0] = t;
  return coset_point(G, v);
}

std::optional<Rc4Choice> rc4_choice(const DiagonalGroup& G, const StabilizerChain& chain) {
  const auto& T = G.t();
  if (G.k == 2) {
    for (const auto& cls : T.classes) {
      if (cls.rep == 0) continue;
      const std::uint32_t x = cls.rep;
      auto H = pointwise_stabilizer(chain, {0, first_coordinate_point(G, x)});
      for (std::uint32_t y = 1; y < T.order(); ++y) {
        if (y == x) continue;
        if (point_stabilizer(H, first_coordinate_point(G, y)).is_trivial()) return Rc4Choice{x, y, "base triple"};
      }
    }
    return std::nullopt;
  }
  for (const auto& cls : T.classes) {
    if (cls.rep == 0) continue;
    for (std::uint32_t y = 1; y < T.order(); ++y)
      if (T.generates({cls.rep, y})) return Rc4Choice{cls.rep, y, "generating pair"};
  }
  return std::nullopt;
}

WitnessPair witness_rc4(const DiagonalGroup& G, const StabilizerChain& chain) {
  const std::string tname = G.t().name;
  if (G.k == 2 && (tname == "A5" || tname == "A6")) {
    auto w = search_witness(chain, 4);
    if (!w) throw InternalConsistencyError("no length-4 witness found for " + G.describe());
    return *w;
  }
  auto choice = rc4_choice(G, chain);
  if (!choice) throw InternalConsistencyError("no base triple or generating pair found for " + G.describe());
  const auto& T = G.t();
  const std::uint32_t x = choice->x, y = choice->y;
  const std::uint32_t d1 = T.mul(x, T.inv(y)), d2 = T.mul(T.inv(y), x);
  if (d1 == d2) throw InternalConsistencyError("x y^-1 equals y^-1 x for the chosen pair");
  WitnessPair w;
  w.s = 3;
  w.provenance = "four-point";
  const Point a = first_coordinate_point(G, 0), b = first_coordinate_point(G, x), c = first_coordinate_point(G, y);
  w.lam = {a, b, c, first_coordinate_point(G, d1)};
  w.sig = {a, b, c, first_coordinate_point(G, d2)};
  return w;
}

DiagonalConfig alt_tuple_config(std::uint32_t m, std::uint32_t k) {
  if (m < 3 || k < 3) throw DomainError("the Alt(m+2) construction needs m >= 3 and k >= 3");
  DiagonalConfig c;
  c.T = GroupSpec{Family::Alt, m + 2};
  c.k = k;
  c.preset = "custom";
  c.out_part = "none";
  c.top = "S";
  c.q = "P";
  c.label = "A" + std::to_string(m + 2) + "^" + std::to_string(k) + ":S" + std::to_string(k);
  return c;
}

namespace {
std::uint32_t m_of(const DiagonalGroup& G) {
  if (G.t().spec.family != Family::Alt || G.t().spec.param < 5)
    throw DomainError("the Alt(m+2) construction needs T alternating");
  if (G.k < 3) throw DomainError("the Alt(m+2) construction needs k >= 3");
  return G.t().spec.param - 2;
}
// 3-cycle (a, b, c) of Alt(m+2) in 1-based point labels.
std::uint32_t three_cycle(const SimpleGroup& T, Point a, Point b, Point c) {
  return T.index_of(Perm::from_cycles(static_cast<std::uint32_t>(T.degree), {{a - 1, b - 1, c - 1}}));
}
}  // namespace

WitnessPair witness_prop53(const DiagonalGroup& G) {
  const std::uint32_t m = m_of(G);
  const auto& T = G.t();
  auto t = [&](std::uint32_t i) { return three_cycle(T, 1, 2, i + 1); };
  WitnessPair w;
  w.s = m - 1;
  w.provenance = "alt-tuples";
  w.lam.push_back(first_coordinate_point(G, 0));
  for (std::uint32_t i = 2; i <= m - 1; ++i) w.lam.push_back(first_coordinate_point(G, t(i)));
  w.sig = w.lam;
  w.lam.push_back(first_coordinate_point(G, t(m)));
  w.sig.push_back(first_coordinate_point(G, t(m + 1)));
  return w;
}

std::vector<WElement> alt_tuple_transporters(const DiagonalGroup& G) {
  const std::uint32_t m = m_of(G);
  const auto& T = G.t();
  auto s = [&](std::uint32_t i) { return three_cycle(T, i, m + 1, m + 2); };
  std::vector<WElement> out;
  // subsets of size m-1 of positions {0..m-1}, lexicographic: the j-th
  // omits position m-1-j
  for (std::uint32_t j = 0; j < m; ++j) {
    const std::uint32_t omitted = m - 1 - j;
    WElement g = G.identity();
    if (omitted == m - 1) {
      // first m-1 entries agree
    } else if (omitted == 0) {
      g.tvec.assign(G.k, s(1));
      g.tvec[0] = s(2);
    } else {
      // position p holds alpha_{p+1}
      g.tvec.assign(G.k, s(omitted + 2));
    }
    out.push_back(g);
  }
  return out;
}

std::optional<WitnessPair> search_witness(const StabilizerChain& chain, std::uint32_t t, SearchStats* stats) {
  if (t < 2) throw DomainError("witness length must be at least 2");
  SearchStats local;
  SearchStats& st = stats ? *stats : local;
  const std::size_t n = chain.degree();
  std::unordered_map<std::vector<Point>, std::vector<std::uint32_t>, PointsHash> label_cache;
  auto labels_for = [&](std::vector<Point> pts) -> const std::vector<std::uint32_t>& {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    auto it = label_cache.find(pts);
    if (it != label_cache.end()) return it->second;
    if (label_cache.size() > 20000) label_cache.clear();
    return label_cache.emplace(pts, orbit_labels(pointwise_stabilizer(chain, pts))).first->second;
  };

  std::optional<WitnessPair> found;
  std::vector<Point> prefix;
  std::function<void(const StabilizerChain&)> rec = [&](const StabilizerChain& H) {
    if (found) return;
    if (prefix.size() + 1 == t) {
      const auto labK = orbit_labels(H);
      std::vector<const std::vector<std::uint32_t>*> labs;
      for (std::size_t i = 0; i < prefix.size(); ++i) {
        std::vector<Point> sub = prefix;
        sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(i));
        labs.push_back(&labels_for(sub));
      }
      std::unordered_map<std::vector<std::uint32_t>, std::pair<std::uint32_t, Point>, PointsHash> seen;
      std::vector<std::uint32_t> key(labs.size());
      for (Point a = 0; a < n; ++a) {
        for (std::size_t i = 0; i < labs.size(); ++i) key[i] = (*labs[i])[a];
        auto [it, fresh] = seen.emplace(key, std::make_pair(labK[a], a));
        if (!fresh && it->second.first != labK[a]) {
          WitnessPair w;
          w.s = t - 1;
          w.provenance = "search";
          w.lam = prefix;
          w.lam.push_back(it->second.second);
          w.sig = prefix;
          w.sig.push_back(a);
          found = w;
          return;
        }
      }
      return;
    }
    for (const auto& orb : orbits(H.generators(), n)) {
      const Point rep = orb.front();
      if (orb.size() == 1 && std::find(prefix.begin(), prefix.end(), rep) != prefix.end()) continue;
      if (++st.prefixes > st.max_prefixes) throw ResourceError("witness search exceeded its prefix budget");
      prefix.push_back(rep);
      rec(point_stabilizer(H, rep));
      prefix.pop_back();
      if (found) return;
    }
  };
  rec(chain);
  return found;
}

nlohmann::json RCBound::to_json(const DiagonalGroup* G) const {
  nlohmann::json j;
  j["lower"] = lower;
  j["upper"] = upper;
  j["upper_source"] = upper_source;
  j["search_length_bound"] = search_length_bound;
  j["I"] = I;
  j["exact"] = exact();
  j["lower_certificate"] = lower_certificate ? lower_certificate->to_json(G) : nlohmann::json(nullptr);
  return j;
}

RCBound rc_bounds(const StabilizerChain& chain, std::uint32_t max_len, std::optional<std::uint32_t> I,
                  const std::optional<WitnessPair>& seed) {
  if (max_len < 3) throw DomainError("max_len must be at least 3");
  RCBound r;
  r.I = I ? *I : max_irredundant(chain).size;
  r.upper = r.I + 1;
  r.upper_source = "I_plus_1";
  r.search_length_bound = max_len;
  if (seed) {
    auto c = check_witness(chain, *seed);
    if (c.passes() && c.certified_lower() > r.lower) {
      r.lower = c.certified_lower();
      r.lower_certificate = c;
    }
  }
  // Witnesses for RC(G) > r can be taken of length r + 1, and none exist
  // beyond length I + 1, so searching every length down to the current
  // lower bound settles RC exactly when max_len reaches I + 1.
  const std::uint32_t top = std::min(max_len, r.upper);
  for (std::uint32_t t = top; t > r.lower; --t) {
    auto w = search_witness(chain, t);
    if (w) {
      r.lower = t;
      r.lower_certificate = check_witness(chain, *w);
      break;
    }
  }
  if (max_len >= r.upper) {
    r.upper = r.lower;
    r.upper_source = "exhaustive_to_length_" + std::to_string(max_len);
  }
  return r;
}

nlohmann::json LogChainCheck::to_json() const {
  nlohmann::json j;
  j["m"] = m;
  j["log2_n"] = static_cast<double>(log2_n);
  nlohmann::json l = nlohmann::json::array();
  for (const auto& [name, ok] : links) l.push_back({{"link", name}, {"holds", ok}});
  j["links"] = l;
  j["holds"] = holds;
  j["asserted"] = asserted;
  return j;
}

LogChainCheck thm14_arithmetic(std::uint32_t m, std::uint32_t m0) {
  LogChainCheck c;
  c.m = m;
  c.asserted = m >= m0;
  using LD = long double;
  LD logfact = 0;
  for (std::uint32_t i = 2; i <= m + 2; ++i) logfact += std::log2(static_cast<LD>(i));
  const LD L = 2 * (logfact - 1);  // |A_{m+2}| = (m+2)!/2
  c.log2_n = L;
  const LD d = m + 2, log2e = std::log2(std::exp(static_cast<LD>(1)));
  const LD lowerS = 2 * (d * std::log2(d) - (m + 1) * log2e - 1);
  const LD upperS = 2 * ((d + 1) * std::log2(d) - (m + 1) * log2e - 1);
  auto add = [&](const std::string& name, bool ok) {
    c.links.emplace_back(name, ok);
    c.holds = c.holds && ok;
  };
  add("log n >= 2((m+2)log(m+2) - (m+1)log e - 1)", L >= lowerS);
  add("log n <= 2((m+3)log(m+2) - (m+1)log e - 1)", L <= upperS);
  add("2((m+3)log(m+2) - (m+1)log e - 1) <= 2m log(m+2)", upperS <= 2 * m * std::log2(d));
  add("(2m+4)log(m+2) - (2m+2)log e - 2 >= 2m+4", lowerS >= 2 * d);
  add("log log n >= log(m+2)", L > 1 && std::log2(L) >= std::log2(d));
  add("log n / log log n <= 2m", L > 1 && L / std::log2(L) <= 2 * static_cast<LD>(m));
  return c;
}

}  // namespace diagbase
