#include "diagbase/k2.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "diagbase/errors.hpp"

namespace diagbase {

namespace {

Perm swap2() { return Perm::from_cycles(2, {{0, 1}}); }

std::uint64_t checked_prime_power(std::uint64_t q, std::uint64_t* p_out = nullptr, std::uint64_t* f_out = nullptr) {
  std::uint64_t p = 0, f = 0;
  if (!prime_power(q, p, f)) throw DomainError("q = " + std::to_string(q) + " is not a prime power");
  if (p_out) *p_out = p;
  if (f_out) *f_out = f;
  return p;
}

}  // namespace

std::vector<std::uint32_t> invertiliser_elements(const AutGroup& aut, std::uint32_t t) {
  const std::uint32_t tinv = aut.T->inv(t);
  std::vector<std::uint32_t> out;
  for (std::uint32_t a = 0; a < aut.order(); ++a) {
    const Point img = aut.elements[a][t];
    if (img == t || img == tinv) out.push_back(a);
  }
  return out;
}

bool invertilisers_meet_trivially(const AutGroup& aut, std::uint32_t x, std::uint32_t y) {
  const std::uint32_t yinv = aut.T->inv(y);
  for (std::uint32_t a : invertiliser_elements(aut, x)) {
    if (a == 0) continue;
    const Point img = aut.elements[a][y];
    if (img == y || img == yinv) return false;
  }
  return true;
}

TwoPointStab two_point_stab(const DiagonalGroup& G, const StabilizerChain& chain, std::uint32_t x) {
  if (G.k != 2) throw DomainError("two-point stabilisers are implemented for k = 2");
  const AutGroup& A = G.aut();
  const auto px = static_cast<Point>(G.index_of(OmegaPoint{{x}}));
  TwoPointStab r;
  r.x = x;
  r.stab_chain = pointwise_stabilizer(chain, px == 0 ? std::vector<Point>{0} : std::vector<Point>{0, px});
  r.direct_order = r.stab_chain.order();

  const std::uint32_t xinv = G.t().inv(x);
  const Perm id(2), sw = swap2();
  auto record = [&](std::uint32_t a, const Perm& top, std::uint64_t& counter) {
    WElement w{{0, 0}, a, top};
    if (!G.contains(w)) return;
    ++counter;
    if (G.act_index(0, w) != 0 || G.act_index(px, w) != px) r.formula_elements_fix = false;
  };
  for (std::uint32_t a = 0; a < A.order(); ++a) {
    const Point img = A.elements[a][x];
    if (img == x) record(a, id, r.centralizing);
    if (img == xinv) record(a, sw, r.inverting);
  }
  r.agree = r.formula_elements_fix && r.direct_order == BigInt(r.formula_order());
  return r;
}

std::uint64_t two_point_stab_formula_order(const DiagonalGroup& G, std::uint32_t x) {
  if (G.k != 2) throw DomainError("two-point stabilisers are implemented for k = 2");
  const AutGroup& A = G.aut();
  const std::uint32_t xinv = G.t().inv(x);
  // Membership only depends on the Out class and the top part, so tabulate.
  std::vector<char> with_id(A.out_order, 0), with_swap(A.out_order, 0);
  const Perm sw = swap2();
  for (const auto& h : G.h_elements) (h.top == sw ? with_swap : with_id)[h.out] = 1;
  std::uint64_t n = 0;
  for (std::uint32_t a = 0; a < A.order(); ++a) {
    const Point img = A.elements[a][x];
    const std::uint32_t o = A.out_of[a];
    if (img == x && with_id[o]) ++n;
    if (img == xinv && with_swap[o]) ++n;
  }
  return n;
}

std::uint64_t triple_stab_formula_order(const DiagonalGroup& G, std::uint32_t x, std::uint32_t y) {
  if (G.k != 2) throw DomainError("base triples are implemented for k = 2");
  const AutGroup& A = G.aut();
  const SimpleGroup& T = G.t();
  std::vector<char> with_id(A.out_order, 0), with_swap(A.out_order, 0);
  const Perm sw = swap2();
  for (const auto& h : G.h_elements) (h.top == sw ? with_swap : with_id)[h.out] = 1;
  std::uint64_t n = 0;
  for (std::uint32_t a = 0; a < A.order(); ++a) {
    const Perm& phi = A.elements[a];
    const std::uint32_t o = A.out_of[a];
    if (with_id[o] && phi[x] == x && phi[y] == y) ++n;
    if (with_swap[o] && phi[x] == T.inv(x) && phi[y] == T.inv(y)) ++n;
  }
  return n;
}

bool triple_is_base_for_full(const AutGroup& aut, std::uint32_t x, std::uint32_t y) {
  const SimpleGroup& T = *aut.T;
  for (std::uint32_t a = 0; a < aut.order(); ++a) {
    const Perm& phi = aut.elements[a];
    if (a != 0 && phi[x] == x && phi[y] == y) return false;
    if (phi[x] == T.inv(x) && phi[y] == T.inv(y)) return false;
  }
  return true;
}

BaseTripleResult base_triple_test(const DiagonalGroup& G, const StabilizerChain& chain, std::uint32_t x,
                                  std::uint32_t y) {
  if (G.k != 2) throw DomainError("base triples are implemented for k = 2");
  const SimpleGroup& T = G.t();
  BaseTripleResult r;
  r.invertiliser_test = invertilisers_meet_trivially(G.aut(), x, y);
  r.sigma_gap = T.inv(x) == x && T.inv(y) == y && G.contains(WElement{{0, 0}, 0, swap2()});
  r.formula_trivial = triple_stab_formula_order(G, x, y) == 1;
  std::vector<Point> pts{0};
  for (std::uint32_t t : {x, y}) {
    const auto p = static_cast<Point>(G.index_of(OmegaPoint{{t}}));
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  }
  r.direct_trivial = pointwise_stabilizer(chain, pts).is_trivial();
  return r;
}

MinimalStabCheck check_minimal_stab_inequality(const DiagonalGroup& G) {
  if (G.k != 2 || G.P_elements.size() != 2) throw DomainError("the inequality is stated for P = S_2");
  const SimpleGroup& T = G.t();
  const AutGroup& A = G.aut();
  MinimalStabCheck r;
  r.min_stab = UINT64_MAX;
  std::uint64_t min_inv = UINT64_MAX;
  for (const auto& c : T.classes) {
    if (c.rep == 0) continue;
    const std::uint64_t s = two_point_stab_formula_order(G, c.rep);
    if (s < r.min_stab) {
      r.min_stab = s;
      r.minimisers.clear();
    }
    if (s == r.min_stab) r.minimisers.push_back(c.rep);
    const std::uint64_t isz = invertiliser_elements(A, c.rep).size();
    min_inv = std::min(min_inv, isz);
  }
  for (std::uint32_t x : r.minimisers) {
    const std::uint64_t ix = invertiliser_elements(A, x).size();
    if (ix > min_inv * A.out_order) {
      r.holds = false;
      r.detail = "|I(" + T.classes[T.class_of[x]].label + ")| = " + std::to_string(ix) + " exceeds " +
                 std::to_string(min_inv) + " * " + std::to_string(A.out_order);
    }
  }
  return r;
}

nlohmann::json ProcedureReport::to_json() const {
  nlohmann::json j;
  j["T"] = T;
  j["v"] = v;
  j["out_order"] = out_order;
  j["success"] = success;
  j["full_success"] = full_success;
  j["minimal_success"] = minimal_success;
  auto& arr = j["S"] = nlohmann::json::array();
  for (const auto& e : S) {
    nlohmann::json row{{"class", e.x_class}, {"x", e.x}, {"invertiliser", e.invertiliser_size}};
    row["partner"] = e.partner ? nlohmann::json(*e.partner) : nlohmann::json(nullptr);
    row["full_partner"] = e.full_partner ? nlohmann::json(*e.full_partner) : nlohmann::json(nullptr);
    row["minimal_in"] = e.minimal_in;
    arr.push_back(row);
  }
  return j;
}

ProcedureReport procedure_lemma_A(const CatalogEntry& cat, const CatalogOptions& opts) {
  const SimpleGroup& T = *cat.T;
  const AutGroup& A = *cat.aut;
  ProcedureReport r;
  r.T = T.name;
  r.out_order = A.out_order;
  // |I(y)| is constant on Aut-classes, so T-class representatives suffice.
  std::vector<std::uint64_t> isz(T.classes.size(), 0);
  r.v = UINT64_MAX;
  for (std::size_t i = 0; i < T.classes.size(); ++i) {
    if (T.classes[i].rep == 0) continue;
    isz[i] = invertiliser_elements(A, T.classes[i].rep).size();
    r.v = std::min(r.v, isz[i]);
  }
  r.success = true;
  r.full_success = true;
  for (std::size_t i = 0; i < T.classes.size(); ++i) {
    const auto& c = T.classes[i];
    if (c.rep == 0 || isz[i] > r.v * r.out_order) continue;
    ProcedureEntry e;
    e.x_class = c.label;
    e.x = c.rep;
    e.invertiliser_size = isz[i];
    for (std::uint32_t x0 = 1; x0 < T.order() && !(e.partner && e.full_partner); ++x0) {
      if (!e.partner && invertilisers_meet_trivially(A, c.rep, x0)) e.partner = x0;
      if (!e.full_partner && triple_is_base_for_full(A, c.rep, x0)) e.full_partner = x0;
    }
    if (!e.partner) r.success = false;
    if (!e.full_partner) r.full_success = false;
    r.S.push_back(std::move(e));
  }
  for (const auto& cfg : enumerate_overgroups(T.spec, 2, opts)) {
    const DiagonalGroup G = build_group(cfg, opts);
    if (G.P_elements.size() != 2) continue;
    const auto mins = check_minimal_stab_inequality(G).minimisers;
    for (auto& e : r.S)
      if (std::find(mins.begin(), mins.end(), e.x) != mins.end())
        e.minimal_in.push_back(cfg.label.empty() ? G.describe() : cfg.label);
  }
  r.minimal_success = std::all_of(r.S.begin(), r.S.end(),
                                  [](const ProcedureEntry& e) { return e.minimal_in.empty() || e.full_partner; });
  return r;
}

AutClasses aut_classes(const AutGroup& aut) {
  const std::size_t n = aut.order();
  std::vector<std::uint32_t> gens;
  for (const auto& g : aut.aut_chain.generators()) gens.push_back(aut.index_of(g));
  std::vector<std::uint32_t> ginv;
  for (auto g : gens) ginv.push_back(aut.inv(g));
  AutClasses c;
  c.class_of.assign(n, UINT32_MAX);
  for (std::uint32_t s = 0; s < n; ++s) {
    if (c.class_of[s] != UINT32_MAX) continue;
    const auto id = static_cast<std::uint32_t>(c.rep.size());
    c.rep.push_back(s);
    c.order.push_back(aut.elements[s].order());
    std::uint64_t size = 0;
    std::deque<std::uint32_t> queue{s};
    c.class_of[s] = id;
    while (!queue.empty()) {
      const std::uint32_t z = queue.front();
      queue.pop_front();
      ++size;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const std::uint32_t w = aut.mul(aut.mul(ginv[i], z), gens[i]);
        if (c.class_of[w] == UINT32_MAX) {
          c.class_of[w] = id;
          queue.push_back(w);
        }
      }
    }
    c.size.push_back(size);
  }
  return c;
}

Rational qtilde_exact(const AutGroup& aut, const AutClasses& classes, std::uint32_t y) {
  const auto I = invertiliser_elements(aut, y);
  std::map<std::uint32_t, std::uint64_t> hits;
  for (std::uint32_t z : I) {
    const std::uint32_t c = classes.class_of[z];
    if (is_prime(classes.order[c])) ++hits[c];
  }
  Rational sum = 0;
  for (const auto& [c, cnt] : hits) sum += Rational(BigInt(cnt), BigInt(classes.size[c]));
  return Rational(BigInt(I.size()) * aut.out_order) * sum;
}

Rational qtilde_exact(const AutGroup& aut, std::uint32_t y) { return qtilde_exact(aut, aut_classes(aut), y); }

QtildeOracle qtilde_oracle(const AutGroup& aut, std::uint32_t y) {
  const SimpleGroup& T = *aut.T;
  const auto I = invertiliser_elements(aut, y);
  QtildeOracle r;
  for (std::uint32_t z : I) {
    if (!is_prime(aut.elements[z].order())) continue;
    std::uint64_t cent = 0;
    for (std::uint32_t g = 0; g < aut.order(); ++g)
      if (aut.mul(g, z) == aut.mul(z, g)) ++cent;
    r.by_centralisers += Rational(BigInt(cent), BigInt(aut.order()));
  }
  r.by_centralisers *= Rational(BigInt(I.size()) * aut.out_order);

  std::set<std::uint32_t> yclass;
  for (const auto& phi : aut.elements) yclass.insert(phi[y]);
  const std::uint64_t bound = I.size() * aut.out_order;
  r.worst_bad_fraction = 0;
  for (const auto& c : T.classes) {
    if (c.rep == 0 || invertiliser_elements(aut, c.rep).size() > bound) continue;
    std::uint64_t bad = 0;
    for (std::uint32_t y2 : yclass)
      if (!invertilisers_meet_trivially(aut, c.rep, y2)) ++bad;
    Rational frac(BigInt(bad), BigInt(yclass.size()));
    if (frac > r.worst_bad_fraction || r.worst_x == 0) {
      r.worst_bad_fraction = frac;
      r.worst_x = c.rep;
    }
  }
  return r;
}

std::uint32_t class_rep_by_label(const SimpleGroup& T, std::string_view label) {
  for (const auto& c : T.classes)
    if (c.label == label) return c.rep;
  throw ConfigError("no class labelled '" + std::string(label) + "' in " + T.name);
}

// ---------------------------------------------------------------------------

Rational criterion_value(const CriterionParams& p) {
  if (p.c <= 0 || p.a < 1 || p.b0 <= 0 || p.b1 <= 0 || p.b2 <= 0 || p.omega <= 0)
    throw DomainError("criterion parameters must be positive with a >= 1");
  const Rational c(p.c);
  return 2 * c * p.omega * (c / p.b0 + c / p.b1 + Rational(p.a - 1) / p.b2);
}

bool criterion_cor311(const CriterionParams& p) { return criterion_value(p) < 1; }

LieFamily parse_lie_family(std::string_view s) {
  static const std::vector<std::pair<std::string_view, LieFamily>> names = {
      {"L", LieFamily::L},         {"U", LieFamily::U},           {"PSp", LieFamily::PSp},
      {"O", LieFamily::OmegaOdd},  {"O-", LieFamily::OmegaMinus}, {"O+", LieFamily::OmegaPlus},
      {"2B2", LieFamily::B2tw},    {"2G2", LieFamily::G2tw},      {"2F4", LieFamily::F4tw},
      {"G2", LieFamily::G2},       {"3D4", LieFamily::D4tw},      {"F4", LieFamily::F4},
      {"E6", LieFamily::E6},       {"2E6", LieFamily::E6tw},      {"E7", LieFamily::E7},
      {"E8", LieFamily::E8}};
  for (const auto& [n, f] : names)
    if (n == s) return f;
  throw ConfigError("unknown Lie family '" + std::string(s) + "'");
}

std::string lie_family_name(LieFamily f) {
  switch (f) {
    case LieFamily::L: return "L";
    case LieFamily::U: return "U";
    case LieFamily::PSp: return "PSp";
    case LieFamily::OmegaOdd: return "O";
    case LieFamily::OmegaMinus: return "O-";
    case LieFamily::OmegaPlus: return "O+";
    case LieFamily::B2tw: return "2B2";
    case LieFamily::G2tw: return "2G2";
    case LieFamily::F4tw: return "2F4";
    case LieFamily::G2: return "G2";
    case LieFamily::D4tw: return "3D4";
    case LieFamily::F4: return "F4";
    case LieFamily::E6: return "E6";
    case LieFamily::E6tw: return "2E6";
    case LieFamily::E7: return "E7";
    case LieFamily::E8: return "E8";
  }
  return "?";
}

bool is_classical(LieFamily f) {
  return f == LieFamily::L || f == LieFamily::U || f == LieFamily::PSp || f == LieFamily::OmegaOdd ||
         f == LieFamily::OmegaMinus || f == LieFamily::OmegaPlus;
}

std::string lie_group_name(LieFamily f, std::uint32_t dim, std::uint64_t q) {
  const std::string qs = "(" + std::to_string(q) + ")";
  switch (f) {
    case LieFamily::L: return "L" + std::to_string(dim) + qs;
    case LieFamily::U: return "U" + std::to_string(dim) + qs;
    case LieFamily::PSp: return "PSp" + std::to_string(2 * dim) + qs;
    case LieFamily::OmegaOdd: return "O" + std::to_string(2 * dim + 1) + qs;
    case LieFamily::OmegaMinus: return "O-" + std::to_string(2 * dim) + qs;
    case LieFamily::OmegaPlus: return "O+" + std::to_string(2 * dim) + qs;
    default: return lie_family_name(f) + qs;
  }
}

bool in_small_list(LieFamily f, std::uint32_t d, std::uint64_t q) {
  switch (f) {
    case LieFamily::L:
      return (d == 3 && (q <= 25 || q == 64)) || (d == 4 && q <= 17) || (d == 5 && q == 2) || (d == 6 && q == 2);
    case LieFamily::U:
      return (d == 3 && q <= 32) || (d == 4 && q <= 5) || (d == 5 && q == 2) || (d == 6 && q == 2);
    case LieFamily::PSp:
      return (d == 2 && q >= 3 && q <= 5) || (d == 3 && (q == 2 || q == 3)) || (d == 4 && q == 2);
    case LieFamily::OmegaOdd: return d == 3 && q == 3;
    case LieFamily::OmegaMinus: return (d == 4 && q == 2) || (d == 5 && q == 2);
    case LieFamily::OmegaPlus: return d == 4 && (q == 2 || q == 3);
    case LieFamily::B2tw: return q == 8 || q == 32;
    case LieFamily::F4tw: return q == 2;
    case LieFamily::G2: return q == 3;
    case LieFamily::D4tw: return q == 2;
    default: return false;
  }
}

namespace {

Rational log_bound(std::uint64_t coeff, std::uint64_t q) { return Rational(coeff) * log2_upper(Rational(q)); }

// |Out| of the classical groups whose omega is the exact value.
std::uint64_t classical_out_exact(LieFamily f, std::uint32_t d, std::uint64_t q) {
  std::uint64_t p = 0, e = 0;
  checked_prime_power(q, &p, &e);
  if (f == LieFamily::L && d == 3) return 2 * e * gcd_u64(3, q - 1);
  if (f == LieFamily::U && d == 3) return 2 * e * gcd_u64(3, q + 1);
  if (f == LieFamily::U && d == 4) return 2 * e * gcd_u64(4, q + 1);
  // POmega^+_{2m}(q): graph automorphisms S_3 for m = 4 (a single one
  // otherwise), diagonal part (2,q-1)^2 for m even, field part f.
  if (f == LieFamily::OmegaPlus) {
    const std::uint64_t d2 = gcd_u64(2, q - 1);
    if (d == 4) return d2 * d2 * 6 * e;
    return (d % 2 == 0 ? d2 * d2 : gcd_u64(4, q - 1)) * 2 * e;
  }
  throw DomainError("no stored |Out| for this group");
}

}  // namespace

nlohmann::json LieTableRow::to_json() const {
  nlohmann::json j{{"family", lie_family_name(family)}, {"dim", dim}, {"q", q}, {"name", name},
                   {"in_small_list", in_small_list}};
  if (torus_order) {
    j["torus_order"] = torus_order->str();
  } else {
    j["c"] = params.c.str();
    j["a"] = params.a.str();
    j["b0"] = to_string(params.b0);
    j["b1"] = to_string(params.b1);
    j["b2"] = to_string(params.b2);
    j["omega"] = to_string(params.omega);
    j["omega_source"] = omega_source;
  }
  return j;
}

LieTableRow lie_table_params(LieFamily f, std::uint32_t d, std::uint64_t q) {
  std::uint64_t p = 0, e = 0;
  checked_prime_power(q, &p, &e);
  LieTableRow row;
  row.family = f;
  row.dim = d;
  row.q = q;
  row.name = lie_group_name(f, d, q);
  row.in_small_list = in_small_list(f, d, q);
  if (!is_classical(f)) {
    row.torus_order = exceptional_torus_order(f, q);
    return row;
  }
  if (f == LieFamily::OmegaPlus)
    throw DomainError("plus-type orthogonal groups are handled by oplus_check, not the tables");

  const BigInt Q(q);
  auto P = [&](std::uint64_t k) { return ipow(Q, k); };
  auto R = [](const BigInt& v) { return Rational(v); };
  CriterionParams& c = row.params;
  switch (f) {
    case LieFamily::L: {
      if (d < 3) throw DomainError("L_n(q) rows need n >= 3");
      if (d == 3 && q == 2) throw DomainError("L3(2) is L2(7), outside the classical tables");
      const BigInt alpha = Q - 1;
      c.a = Q - 1;
      if (d == 3) {
        c.c = (P(3) - 1) / alpha;
        c.b0 = R(P(2) * (P(3) - 1));
        c.b1 = R(P(3) * (P(2) - 1) * (Q - 1));
        c.b2 = c.b1 / 3;
      } else {
        c.c = (P(d) - 1) / alpha;
        c.b0 = R(P(d * (d + 1) / 2 - 1)) / R(2 * alpha);
        // q^(n^2/2 - 1) has a half-integer exponent for odd n.
        const Rational qpow = pow_lower(q, d * d - 2, 2);
        c.b1 = Rational(1, 2) * R(Q - 1) * qpow;
        c.b2 = Rational(1, 4) * R(Q - 1) * qpow;
      }
      if (d == 3 && q <= 73) {
        c.omega = Rational(classical_out_exact(f, d, q));
        row.omega_source = "exact |Out|";
      } else if (d == 3) {
        c.omega = log_bound(6, q);
        row.omega_source = "6 log q";
      } else if (d == 4) {
        c.omega = log_bound(8, q);
        row.omega_source = "8 log q";
      } else {
        c.omega = log_bound(2 * (q - 1), q);
        row.omega_source = "2(q-1) log q";
      }
      break;
    }
    case LieFamily::U: {
      if (d < 3) throw DomainError("U_n(q) rows need n >= 3");
      if (d == 3 && q == 2) throw DomainError("U3(2) is not simple");
      const BigInt alpha = Q + 1;
      c.a = Q + 1;
      if (d == 3) {
        c.c = (P(3) + 1) / alpha;
        c.b0 = R(P(2) * (P(3) + 1));
        c.b1 = R(P(3) * (P(2) - 1) * (Q + 1));
        c.b2 = c.b1 / 3;
      } else {
        if (d == 4) {
          c.c = P(3) + 1;
          c.b0 = Rational(1, 4) * R(P(2) * (P(3) + 1) * (P(4) - 1));
        } else {
          c.c = d % 2 == 1 ? (P(d) + 1) / alpha : P(d - 1) + 1;
          c.b0 = R(P(d * (d + 1) / 2 - 1)) / R(2 * alpha);
        }
        if (d % 2 == 1) {
          const Rational qpow = pow_lower(q, 2 * d * d, 3);
          c.b1 = Rational(1, 2) * qpow;
          c.b2 = Rational(1, 6) * qpow;
        } else {
          c.b1 = Rational(1, 4) * pow_lower(q, 2 * (d * d + d - 4), 3);
          c.b2 = R(P(d - 1) * (P(d) - 1)) / R(Q + 1);
        }
      }
      if ((d == 3 && q <= 73) || (d == 4 && (q == 7 || q == 8))) {
        c.omega = Rational(classical_out_exact(f, d, q));
        row.omega_source = "exact |Out|";
      } else if (d == 3) {
        c.omega = log_bound(6, q);
        row.omega_source = "6 log q";
      } else if (d == 4) {
        c.omega = log_bound(8, q);
        row.omega_source = "8 log q";
      } else {
        c.omega = log_bound(2 * (q + 1), q);
        row.omega_source = "2(q+1) log q";
      }
      break;
    }
    case LieFamily::PSp: {
      if (d < 2) throw DomainError("PSp_{2m}(q) rows need m >= 2");
      if (d == 2 && q == 2) throw DomainError("PSp4(2) is not simple");
      c.a = 2;
      c.c = P(d) + 1;
      if (d == 2) {
        c.b0 = Rational(1, 2) * R(P(3) * (P(2) + 1) * (Q - 1));
        c.b1 = R(P(3) * (P(2) + 1) * (Q - 1));
        c.b2 = c.b1 / 2;
      } else {
        const BigInt top = P(d * d + d + 1);
        c.b0 = R(top) / R(4 * (Q + 1));
        c.b1 = Rational(1, 2) * R(top) / R(Q + 1);
        c.b2 = Rational(1, 4) * R(top) / R(Q + 1);
      }
      c.omega = log_bound(2, q);
      row.omega_source = "2 log q";
      break;
    }
    case LieFamily::OmegaOdd: {
      if (d < 3) throw DomainError("Omega_{2m+1}(q) rows need m >= 3");
      if (q % 2 == 0) throw DomainError("Omega_{2m+1}(q) with q even is PSp_{2m}(q)");
      c.a = gcd_u64(2, q - 1);
      c.c = P(d) + 1;
      c.b0 = Rational(1, 4) * R(P(d * d + d));
      c.b1 = Rational(1, 2) * R(P(d * d + d + 1)) / R(Q + 1);
      c.b2 = Rational(1, 2) * R(P(d) * (P(d) - 1));
      c.omega = log_bound(2, q);
      row.omega_source = "2 log q";
      break;
    }
    case LieFamily::OmegaMinus: {
      if (d < 4) throw DomainError("POmega^-_{2m}(q) rows need m >= 4");
      c.a = gcd_u64(2, q - 1);
      c.c = P(d) + 1;
      c.b0 = Rational(1, 8) * R(P(d * d));
      c.b1 = Rational(1, 2) * R(P(d * d - d + 1)) / R(Q + 1);
      c.b2 = c.b1;
      c.omega = log_bound(8, q);
      row.omega_source = "8 log q";
      break;
    }
    default: break;
  }
  return row;
}

BigInt exceptional_torus_order(LieFamily f, std::uint64_t q) {
  std::uint64_t p = 0, e = 0;
  checked_prime_power(q, &p, &e);
  const BigInt Q(q);
  auto P = [&](std::uint64_t k) { return ipow(Q, k); };
  switch (f) {
    case LieFamily::B2tw:
    case LieFamily::F4tw: {
      if (p != 2 || e % 2 == 0) throw DomainError("Suzuki and Ree groups in characteristic 2 need q = 2^(2e+1)");
      const BigInt r2q = ipow(BigInt(2), (e + 1) / 2);        // sqrt(2q)
      const BigInt r2q3 = ipow(BigInt(2), (3 * e + 1) / 2);   // sqrt(2q^3)
      if (f == LieFamily::B2tw) {
        if (q == 2) throw DomainError("2B2(2) is not simple");
        return Q + r2q + 1;
      }
      return P(2) + r2q3 + Q + r2q + 1;
    }
    case LieFamily::G2tw: {
      if (p != 3 || e % 2 == 0) throw DomainError("2G2(q) needs q = 3^(2e+1)");
      if (q == 3) throw DomainError("2G2(3) is not simple");
      return Q + ipow(BigInt(3), (e + 1) / 2) + 1;
    }
    case LieFamily::G2:
      if (q == 2) throw DomainError("G2(2) is not simple");
      return P(2) - Q + 1;
    case LieFamily::D4tw: return P(4) - P(2) + 1;
    case LieFamily::F4: return q == 2 ? BigInt(17) : P(4) - P(2) + 1;
    case LieFamily::E6: return (P(6) + P(3) + 1) / gcd_u64(3, q - 1);
    case LieFamily::E6tw: return (P(6) - P(3) + 1) / gcd_u64(3, q + 1);
    case LieFamily::E7: return q == 2 ? BigInt(129) : (Q + 1) * (P(6) - P(3) + 1) / gcd_u64(2, q - 1);
    case LieFamily::E8: return P(8) + P(7) - P(5) - P(4) - P(3) + Q + 1;
    default: throw DomainError(lie_family_name(f) + " is not an exceptional family");
  }
}

std::uint64_t exceptional_diag_index(LieFamily f, std::uint64_t q) {
  switch (f) {
    case LieFamily::E6: return gcd_u64(3, q - 1);
    case LieFamily::E6tw: return gcd_u64(3, q + 1);
    case LieFamily::E7: return gcd_u64(2, q - 1);
    default: return 1;
  }
}

std::uint64_t exceptional_out_order(LieFamily f, std::uint64_t q) {
  std::uint64_t p = 0, e = 0;
  checked_prime_power(q, &p, &e);
  const std::uint64_t d = exceptional_diag_index(f, q);
  switch (f) {
    case LieFamily::B2tw:
    case LieFamily::G2tw:
    case LieFamily::F4tw:
    case LieFamily::E8: return e;
    case LieFamily::G2: return p == 3 ? 2 * e : e;
    case LieFamily::F4: return p == 2 ? 2 * e : e;
    case LieFamily::D4tw: return 3 * e;
    case LieFamily::E6:
    case LieFamily::E6tw: return 2 * d * e;
    case LieFamily::E7: return d * e;
    default: throw DomainError(lie_family_name(f) + " is not an exceptional family");
  }
}

nlohmann::json CriterionResult::to_json() const {
  return {{"name", name}, {"value", to_string(value)}, {"value_approx", to_double(value)},
          {"holds", holds},  {"omega_source", omega_source}};
}

CriterionResult evaluate_criterion(const LieTableRow& row) {
  if (row.torus_order) throw DomainError("the corollary applies to classical groups only");
  CriterionResult r;
  r.name = row.name;
  r.value = criterion_value(row.params);
  r.holds = r.value < 1;
  r.omega_source = row.omega_source;
  return r;
}

CriterionResult oplus_check(std::uint32_t m, std::uint64_t q) {
  checked_prime_power(q);
  if (m < 4) throw DomainError("plus-type bound needs m >= 4");
  if (m == 4 && (q == 2 || q == 3)) throw DomainError("POmega8+(2) and POmega8+(3) are in the small list");
  const BigInt Q(q);
  const BigInt qm1 = ipow(Q, m) - 1;
  const BigInt a = 2 * qm1;
  const Rational b = Rational(ipow(Q, 2 * m - 2) * qm1 * (ipow(Q, m - 1) - 1)) / Rational(2 * (Q + 1));
  CriterionResult r;
  r.name = lie_group_name(LieFamily::OmegaPlus, m, q);
  Rational omega;
  if ((m == 4 && q == 4) || (m == 5 && q == 2) || (m == 6 && q == 2)) {
    omega = Rational(classical_out_exact(LieFamily::OmegaPlus, m, q));
    r.omega_source = "exact |Out|";
  } else {
    omega = log_bound(24, q);
    r.omega_source = "24 log q";
  }
  r.value = omega * Rational(a * a) / b;
  r.holds = r.value < 1;
  return r;
}

nlohmann::json ExceptionalResult::to_json() const {
  nlohmann::json j{{"name", name},
                   {"torus_order", torus_order.str()},
                   {"d", d},
                   {"out_order", out_order},
                   {"min_class_size", min_class_size.str()},
                   {"required", required.str()},
                   {"holds", holds}};
  if (displayed_rhs) j["displayed_rhs_approx"] = to_double(*displayed_rhs);
  return j;
}

ExceptionalResult exceptional_check(LieFamily f, std::uint64_t q, std::optional<BigInt> min_class_size) {
  if (is_classical(f)) throw DomainError("exceptional_check takes an exceptional family");
  ExceptionalResult r;
  r.name = lie_group_name(f, 0, q);
  r.torus_order = exceptional_torus_order(f, q);
  r.d = exceptional_diag_index(f, q);
  r.out_order = exceptional_out_order(f, q);
  if (!min_class_size) {
    if (f != LieFamily::E7) throw MissingDataError("no class size lower bound supplied for " + r.name);
    min_class_size = ipow(BigInt(q), 34);
  }
  if (f == LieFamily::E7) {
    const BigInt Q(q);
    const BigInt w = ipow(Q, 6) - ipow(Q, 3) + 1;
    r.displayed_rhs = Rational(4 * (Q + 1) * (Q + 1) * w) * log2_upper(Rational(q));
  }
  r.min_class_size = *min_class_size;
  const BigInt bound_I = 2 * BigInt(r.d) * r.torus_order;
  r.required = BigInt(r.out_order) * bound_I * bound_I;
  r.holds = r.min_class_size > r.required;
  return r;
}

// ---------------------------------------------------------------------------

std::vector<std::uint64_t> l2_allowed_orders(std::uint64_t q) {
  std::uint64_t p = 0, e = 0;
  checked_prime_power(q, &p, &e);
  const std::uint64_t h = (q - 1) / gcd_u64(2, q - 1);
  std::set<std::uint64_t> s{p};
  for (std::uint64_t d = 1; d <= h; ++d)
    if (h % d == 0 && d != 2) s.insert(d);
  if (q % 4 == 1) s.insert(2);
  return {s.begin(), s.end()};
}

L2OrderComparison l2_order_comparison(const DiagonalGroup& G) {
  const SimpleGroup& T = G.t();
  if (T.spec.family != Family::PSL2 || G.k != 2) throw DomainError("order comparison is for L2(q)^2");
  const std::uint64_t q = T.q;
  const auto allowed = l2_allowed_orders(q);
  L2OrderComparison r;
  r.config = G.config.label.empty() ? G.describe() : G.config.label;
  r.k2_case = G.k2_case();
  r.y_order = (q - 1) / gcd_u64(2, q - 1);
  bool found_y = false;
  for (const auto& c : T.classes) {
    if (c.order != r.y_order) continue;
    found_y = true;
    r.max_y_stab = std::max(r.max_y_stab, two_point_stab_formula_order(G, c.rep));
  }
  if (!found_y) throw InternalConsistencyError("no element of order (q-1)/(2,q-1) in " + T.name);
  r.holds = true;
  for (const auto& c : T.classes) {
    if (c.rep == 0 || std::binary_search(allowed.begin(), allowed.end(), c.order)) continue;
    const std::uint64_t s = two_point_stab_formula_order(G, c.rep);
    r.x_stabs.emplace_back(c.label, s);
    if (s <= r.max_y_stab) r.holds = false;
  }
  return r;
}

}  // namespace diagbase
