#include "diagbase/diagonal.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace diagbase {

namespace {

using HKey = std::pair<std::uint32_t, std::vector<Point>>;

HKey key_of(const HElement& h) { return {h.out, h.top.images()}; }

HElement h_mul(const AutGroup& A, const HElement& a, const HElement& b) {
  return {A.out_mul(a.out, b.out), a.top * b.top};
}

std::vector<HElement> h_closure(const AutGroup& A, std::uint32_t k, const std::vector<HElement>& gens) {
  std::vector<HElement> all{{0, Perm(k)}};
  std::set<HKey> seen{key_of(all[0])};
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (const auto& g : gens) {
      HElement h = h_mul(A, all[i], g);
      if (seen.insert(key_of(h)).second) all.push_back(std::move(h));
    }
  }
  std::sort(all.begin(), all.end(), [](const HElement& a, const HElement& b) { return key_of(a) < key_of(b); });
  return all;
}

bool is_even(const Perm& p) {
  std::size_t transpositions = 0;
  for (auto len : p.cycle_type()) transpositions += len - 1;
  return transpositions % 2 == 0;
}

std::string sym_label(const std::vector<Perm>& elems, std::uint32_t k) {
  const BigInt full = factorial(k);
  if (BigInt(elems.size()) == full) return "S";
  if (BigInt(elems.size()) * 2 == full && std::all_of(elems.begin(), elems.end(), is_even)) return "A";
  return "other";
}

std::vector<Perm> dedup(std::vector<Perm> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

Perm parse_top_perm(const nlohmann::json& j, std::uint32_t k) {
  auto v = j.get<std::vector<Point>>();
  if (v.size() != k) throw ConfigError("top permutation must list k images");
  return Perm::from_images(v);
}

}  // namespace

// ------------------------------------------------------------------ helpers

std::vector<Perm> alternating_generators(std::uint32_t k) {
  if (k < 3) return {};
  std::vector<Perm> g{Perm::from_cycles(k, {{0, 1, 2}})};
  if (k > 3) {
    std::vector<Point> c;
    for (Point i = (k % 2 ? 0 : 1); i < k; ++i) c.push_back(i);
    g.push_back(Perm::from_cycles(k, {c}));
  }
  return g;
}

std::vector<Perm> symmetric_generators(std::uint32_t k) {
  if (k < 2) return {};
  std::vector<Point> c(k);
  std::iota(c.begin(), c.end(), Point{0});
  std::vector<Perm> g{Perm::from_cycles(k, {{0, 1}})};
  if (k > 2) g.push_back(Perm::from_cycles(k, {c}));
  return g;
}

bool is_primitive(const std::vector<Perm>& gens, std::size_t degree) {
  if (degree <= 1) return true;
  auto orb = orbits(gens, degree);
  if (orb.size() != 1) return false;
  for (Point j = 1; j < degree; ++j) {
    std::vector<Point> parent(degree);
    std::iota(parent.begin(), parent.end(), Point{0});
    auto find = [&](Point x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::vector<std::pair<Point, Point>> queue{{0, j}};
    parent[j] = 0;
    std::size_t classes = degree - 1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (const auto& g : gens) {
        Point x = find(g[queue[i].first]), y = find(g[queue[i].second]);
        if (x == y) continue;
        parent[y] = x;
        --classes;
        queue.emplace_back(x, y);
      }
    }
    if (classes != 1) return false;
  }
  return true;
}

// ------------------------------------------------------------------ config

nlohmann::json DiagonalConfig::to_json() const {
  nlohmann::json j;
  if (T.family == Family::Alt)
    j["T"] = {{"family", "Alt"}, {"n", T.param}};
  else
    j["T"] = {{"family", "PSL2"}, {"q", T.param}};
  j["k"] = k;
  j["preset"] = preset;
  if (out_part == "explicit")
    j["out_part"] = out_gens;
  else
    j["out_part"] = out_part;
  if (top == "explicit") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : top_gens) arr.push_back(p.images());
    j["top"] = arr;
  } else {
    j["top"] = top;
  }
  j["q"] = q;
  if (twist) j["twist"] = *twist;
  if (!h_gens.empty()) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& h : h_gens) arr.push_back({{"out", h.out}, {"top", h.top.images()}});
    j["h_gens"] = arr;
  }
  if (!label.empty()) j["label"] = label;
  return j;
}

DiagonalConfig DiagonalConfig::from_json(const nlohmann::json& j) {
  DiagonalConfig c;
  try {
    const auto& t = j.at("T");
    if (t.is_string()) {
      c.T = parse_group_spec(t.get<std::string>());
    } else {
      std::string fam = t.at("family").get<std::string>();
      if (fam == "Alt" || fam == "A") {
        c.T = {Family::Alt, t.at("n").get<std::uint32_t>()};
      } else if (fam == "PSL2" || fam == "L2") {
        c.T = {Family::PSL2, t.at("q").get<std::uint32_t>()};
      } else {
        throw ConfigError("unknown family '" + fam + "'");
      }
    }
    c.k = j.value("k", 2U);
    if (c.k < 2) throw ConfigError("k must be at least 2");
    c.preset = j.value("preset", std::string("custom"));
    if (j.contains("out_part")) {
      const auto& o = j["out_part"];
      if (o.is_array()) {
        c.out_part = "explicit";
        c.out_gens = o.get<std::vector<std::uint32_t>>();
      } else {
        c.out_part = o.get<std::string>();
      }
    }
    if (j.contains("top")) {
      const auto& tp = j["top"];
      if (tp.is_array()) {
        c.top = "explicit";
        for (const auto& p : tp) c.top_gens.push_back(parse_top_perm(p, c.k));
      } else {
        c.top = tp.get<std::string>();
      }
    }
    c.q = j.value("q", std::string("P"));
    if (j.contains("twist")) c.twist = j["twist"].get<std::uint32_t>();
    if (j.contains("h_gens")) {
      for (const auto& h : j["h_gens"]) c.h_gens.push_back({h.at("out").get<std::uint32_t>(), parse_top_perm(h.at("top"), c.k)});
    }
    c.label = j.value("label", std::string());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed diagonal config: ") + e.what());
  }
  static const std::set<std::string> presets{"socle", "full_W", "custom"};
  if (!presets.count(c.preset)) throw ConfigError("unknown preset '" + c.preset + "'");
  return c;
}

// ------------------------------------------------------------------ group

BigInt DiagonalGroup::order() const { return ipow(BigInt(t().order()), k) * h_elements.size(); }

bool DiagonalGroup::contains_h(const HElement& h) const {
  return std::binary_search(h_elements.begin(), h_elements.end(), h,
                            [](const HElement& a, const HElement& b) { return key_of(a) < key_of(b); });
}

bool DiagonalGroup::contains(const WElement& w) const { return contains_h({aut().out_of[w.aut], w.top}); }

std::uint64_t DiagonalGroup::index_of(const OmegaPoint& p) const {
  const std::uint64_t n = t().order();
  std::uint64_t idx = 0;
  for (std::size_t j = p.coords.size(); j-- > 0;) idx = idx * n + p.coords[j];
  return idx;
}

OmegaPoint DiagonalGroup::point(std::uint64_t index) const {
  const std::uint64_t n = t().order();
  OmegaPoint p;
  p.coords.resize(k - 1);
  for (std::uint32_t j = 0; j + 1 < k; ++j) {
    p.coords[j] = static_cast<std::uint32_t>(index % n);
    index /= n;
  }
  return p;
}

OmegaPoint DiagonalGroup::act(const OmegaPoint& p, const WElement& g) const {
  const SimpleGroup& T = t();
  const Perm& phi = aut().elements[g.aut];
  std::vector<std::uint32_t> y(k);
  for (std::uint32_t i = 0; i < k; ++i) {
    std::uint32_t c = i == 0 ? 0 : p.coords[i - 1];
    y[g.top[i]] = phi[T.mul(c, g.tvec[i])];
  }
  OmegaPoint r;
  r.coords.resize(k - 1);
  const std::uint32_t lead = T.inv(y[0]);
  for (std::uint32_t j = 1; j < k; ++j) r.coords[j - 1] = T.mul(lead, y[j]);
  return r;
}

std::uint64_t DiagonalGroup::act_index(std::uint64_t index, const WElement& g) const {
  return index_of(act(point(index), g));
}

WElement DiagonalGroup::identity() const { return {std::vector<std::uint32_t>(k, 0), 0, Perm(k)}; }

WElement DiagonalGroup::compose(const WElement& a, const WElement& b) const {
  const SimpleGroup& T = t();
  const Perm& phi_inv = aut().elements[aut().inv(a.aut)];
  WElement r;
  r.tvec.resize(k);
  for (std::uint32_t j = 0; j < k; ++j) r.tvec[j] = T.mul(a.tvec[j], phi_inv[b.tvec[a.top[j]]]);
  r.aut = aut().mul(a.aut, b.aut);
  r.top = a.top * b.top;
  return r;
}

WElement DiagonalGroup::translation(std::uint32_t coord, std::uint32_t tt) const {
  WElement w = identity();
  w.tvec.at(coord) = tt;
  return w;
}

WElement DiagonalGroup::pure_top(const Perm& sigma) const {
  WElement w = identity();
  w.top = sigma;
  return w;
}

WElement DiagonalGroup::diagonal_aut(std::uint32_t a) const {
  WElement w = identity();
  w.aut = a;
  return w;
}

WElement DiagonalGroup::random_element(std::mt19937_64& rng) const {
  WElement w;
  w.tvec.resize(k);
  for (auto& x : w.tvec) x = static_cast<std::uint32_t>(rng() % t().order());
  const HElement& h = h_elements[rng() % h_elements.size()];
  std::uint32_t inn = aut().inner[rng() % t().order()];
  w.aut = aut().mul(aut().out_rep[h.out], inn);
  w.top = h.top;
  return w;
}

Perm DiagonalGroup::induced(const WElement& g, std::uint64_t cap) const {
  if (omega_size > cap) throw ResourceError("|Omega| = " + omega_size.str() + " exceeds the realisation cap");
  const auto n = static_cast<std::uint64_t>(omega_size);
  std::vector<Point> img(n);
  for (std::uint64_t x = 0; x < n; ++x) img[x] = static_cast<Point>(act_index(x, g));
  return Perm::from_images(std::move(img));
}

StabilizerChain DiagonalGroup::realize(std::uint64_t cap) const {
  if (omega_size > cap) throw ResourceError("|Omega| = " + omega_size.str() + " exceeds the realisation cap");
  std::vector<Perm> perms;
  for (const auto& g : generators) perms.push_back(induced(g, cap));
  perms = dedup(std::move(perms));
  perms.erase(std::remove_if(perms.begin(), perms.end(), [](const Perm& p) { return p.is_identity(); }), perms.end());
  return bsgs_build_known(perms, static_cast<std::size_t>(omega_size), order());
}

std::vector<Perm> DiagonalGroup::realized_q(const StabilizerChain& chain) const {
  std::vector<Perm> q;
  std::vector<Point> images(k);
  std::iota(images.begin(), images.end(), Point{0});
  do {
    Perm s = Perm::from_images(images);
    if (chain.contains(induced(pure_top(s)))) q.push_back(s);
  } while (std::next_permutation(images.begin(), images.end()));
  return q;
}

std::string DiagonalGroup::k2_case() const {
  if (k != 2) throw DomainError("case tags are defined for k = 2 only");
  const Perm swap = Perm::from_cycles(2, {{0, 1}});
  bool any = false, pgl = false, sigma = false;
  for (const auto& h : h_elements) {
    if (h.top != swap) continue;
    any = true;
    if (h.out == 0) sigma = true;
    if (std::find(aut().pgl_outs.begin(), aut().pgl_outs.end(), h.out) != aut().pgl_outs.end()) pgl = true;
  }
  if (!any) return "a";
  if (sigma) return "d";
  if (t().spec.family != Family::PSL2) return "bc";
  return pgl ? "c" : "b";
}

std::string DiagonalGroup::describe() const {
  std::ostringstream os;
  os << t().name << "^" << k << ".H |H|=" << h_elements.size() << " P=" << P_label << " Q=" << Q_label;
  if (is_full) os << " full";
  return os.str();
}

DiagonalGroup build_group(const DiagonalConfig& cfg, const CatalogOptions& opts) {
  DiagonalGroup G;
  G.config = cfg;
  G.cat = catalog_get(cfg.T, opts);
  G.k = cfg.k;
  const std::uint32_t k = cfg.k;
  const AutGroup& A = *G.cat.aut;
  const SimpleGroup& T = *G.cat.T;
  G.omega_size = ipow(BigInt(T.order()), k - 1);

  std::vector<HElement> hg;
  auto all_out_gens = [&]() {
    std::vector<std::uint32_t> v;
    for (std::uint32_t o = 1; o < A.out_order; ++o) v.push_back(o);
    return v;
  };
  if (cfg.preset == "socle") {
    // H = 1
  } else if (cfg.preset == "full_W") {
    for (auto o : all_out_gens()) hg.push_back({o, Perm(k)});
    for (const auto& s : symmetric_generators(k)) hg.push_back({0, s});
  } else if (!cfg.h_gens.empty()) {
    hg = cfg.h_gens;
    for (const auto& h : hg) {
      if (h.out >= A.out_order) throw ConfigError("Out id out of range");
      if (h.top.degree() != k) throw ConfigError("top permutation has wrong degree");
    }
  } else {
    std::vector<std::uint32_t> outs;
    if (cfg.out_part == "full") {
      outs = all_out_gens();
    } else if (cfg.out_part == "pgl") {
      for (auto o : A.pgl_outs)
        if (o) outs.push_back(o);
      if (T.spec.family != Family::PSL2) throw ConfigError("out_part 'pgl' needs T = L2(q)");
    } else if (cfg.out_part == "explicit") {
      outs = cfg.out_gens;
      for (auto o : outs)
        if (o >= A.out_order) throw ConfigError("Out id out of range");
    } else if (cfg.out_part != "none") {
      throw ConfigError("unknown out_part '" + cfg.out_part + "'");
    }
    for (auto o : outs) hg.push_back({o, Perm(k)});

    std::vector<Perm> top;
    if (cfg.top == "S")
      top = symmetric_generators(k);
    else if (cfg.top == "A")
      top = alternating_generators(k);
    else if (cfg.top == "explicit")
      top = cfg.top_gens;
    else if (cfg.top != "trivial")
      throw ConfigError("unknown top '" + cfg.top + "'");

    std::string q = cfg.q;
    if (q == "trivial" && k == 2) q = "A";
    const bool twisted = cfg.top == "S" && q == "A";
    if (!twisted && !(q == "P" || q == cfg.top || (q == "S" && cfg.top == "S"))) {
      throw ConfigError("q = '" + cfg.q + "' is not supported with top = '" + cfg.top + "'; give h_gens instead");
    }
    if (!twisted) {
      for (const auto& s : top) hg.push_back({0, s});
    } else {
      std::set<std::uint32_t> in_o;
      for (const auto& h : h_closure(A, k, hg)) in_o.insert(h.out);
      std::uint32_t tw = 0;
      if (cfg.twist) {
        tw = *cfg.twist;
      } else {
        for (std::uint32_t o = 1; o < A.out_order && !tw; ++o)
          if (A.out_elem_order(o) == 2 && !in_o.count(o)) tw = o;
      }
      if (tw == 0 || tw >= A.out_order || A.out_elem_order(tw) != 2 || in_o.count(tw)) {
        throw ConfigError("no Out element of order 2 outside the Out part is available for twisting");
      }
      for (const auto& s : alternating_generators(k)) hg.push_back({0, s});
      hg.push_back({tw, Perm::from_cycles(k, {{0, 1}})});
    }
  }
  G.h_generators = hg;
  G.h_elements = h_closure(A, k, hg);

  std::set<std::uint32_t> outs;
  std::vector<Perm> P, Q;
  for (const auto& h : G.h_elements) {
    outs.insert(h.out);
    P.push_back(h.top);
    if (h.out == 0) Q.push_back(h.top);
  }
  G.O_elements.assign(outs.begin(), outs.end());
  G.P_elements = dedup(P);
  G.Q_elements = dedup(Q);
  G.P_label = sym_label(G.P_elements, k);
  G.Q_label = sym_label(G.Q_elements, k);
  G.is_full = BigInt(G.h_elements.size()) == factorial(k) * A.out_order;

  if (cfg.preset == "custom" && cfg.h_gens.empty() && cfg.q != "P" && cfg.q != "trivial" &&
      G.Q_label != cfg.q) {
    throw ConfigError("constructed Q is " + G.Q_label + ", config asked for " + cfg.q);
  }
  // The socle preset is admitted for any k as a building block; it is not
  // itself primitive when k >= 3.
  if (k >= 3 && cfg.preset == "custom" && !is_primitive(G.P_elements, k)) {
    throw PrimitivityError("top group P is not primitive on " + std::to_string(k) + " points, so G is not primitive");
  }

  // Socle generators in every coordinate, then lifts of the generators of H.
  for (std::uint32_t i = 0; i < k; ++i)
    for (auto g : T.generators) G.generators.push_back(G.translation(i, g));
  for (const auto& h : hg) {
    WElement w = G.identity();
    w.aut = A.out_rep[h.out];
    w.top = h.top;
    G.generators.push_back(w);
  }
  return G;
}

std::vector<DiagonalConfig> enumerate_overgroups(const GroupSpec& Tspec, std::uint32_t k, const CatalogOptions& opts) {
  if (k != 2) throw UnsupportedError("overgroup enumeration is implemented for k = 2");
  auto cat = catalog_get(Tspec, opts);
  const AutGroup& A = *cat.aut;
  std::vector<HElement> universe;
  for (std::uint32_t o = 0; o < A.out_order; ++o) {
    universe.push_back({o, Perm(2)});
    universe.push_back({o, Perm::from_cycles(2, {{0, 1}})});
  }
  std::map<std::vector<HKey>, std::vector<HElement>> found;
  std::vector<std::vector<HElement>> frontier{{}};
  auto keys_of = [&](const std::vector<HElement>& gens) {
    std::vector<HKey> ks;
    for (const auto& h : h_closure(A, 2, gens)) ks.push_back(key_of(h));
    return ks;
  };
  found.emplace(keys_of({}), std::vector<HElement>{});
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    for (const auto& x : universe) {
      auto gens = frontier[i];
      gens.push_back(x);
      auto ks = keys_of(gens);
      if (found.count(ks)) continue;
      found.emplace(ks, gens);
      frontier.push_back(gens);
    }
  }
  std::vector<std::pair<std::vector<HKey>, std::vector<HElement>>> subs(found.begin(), found.end());
  std::stable_sort(subs.begin(), subs.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  std::vector<DiagonalConfig> out;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    DiagonalConfig c;
    c.T = cat.T->spec;
    c.k = 2;
    c.preset = "custom";
    c.h_gens = subs[i].second;
    if (c.h_gens.empty()) c.preset = "socle";
    c.label = cat.T->name + "^2 H" + std::to_string(i) + " |H|=" + std::to_string(subs[i].first.size());
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace diagbase
