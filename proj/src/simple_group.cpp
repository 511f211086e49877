#include "diagbase/simple_group.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace diagbase {

// ------------------------------------------------------------------ specs

std::string GroupSpec::name() const {
  if (family == Family::Alt) return "A" + std::to_string(param);
  return "L2(" + std::to_string(param) + ")";
}

std::string GroupSpec::key() const {
  if (family == Family::Alt) return "A" + std::to_string(param);
  return "L2_" + std::to_string(param);
}

GroupSpec parse_group_spec(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  auto number_after = [&](std::size_t pos) -> std::uint32_t {
    std::string digits;
    for (std::size_t i = pos; i < s.size(); ++i) {
      char c = s[i];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits.push_back(c);
      } else if (c == '(' || c == ')' || c == '_') {
        continue;
      } else {
        throw UnsupportedError("cannot parse group name '" + std::string(text) + "'");
      }
    }
    if (digits.empty() || digits.size() > 6) throw UnsupportedError("cannot parse group name '" + std::string(text) + "'");
    return static_cast<std::uint32_t>(std::stoul(digits));
  };
  GroupSpec g;
  if (s.rfind("PSL2", 0) == 0) {
    g.family = Family::PSL2;
    g.param = number_after(4);
  } else if (s.rfind("L2", 0) == 0) {
    g.family = Family::PSL2;
    g.param = number_after(2);
  } else if (s.rfind("Alt", 0) == 0) {
    g.family = Family::Alt;
    g.param = number_after(3);
  } else if (!s.empty() && s[0] == 'A') {
    g.family = Family::Alt;
    g.param = number_after(1);
  } else {
    throw UnsupportedError("unknown group family in '" + std::string(text) + "'");
  }
  return g;
}

std::uint64_t expected_out_order(const GroupSpec& spec) {
  if (spec.family == Family::Alt) {
    if (spec.param == 6) return 4;
    return 2;
  }
  std::uint64_t p = 0, f = 0;
  if (!prime_power(spec.param, p, f)) throw UnsupportedError("PSL2 parameter is not a prime power");
  return gcd_u64(2, spec.param - 1) * f;
}

std::vector<GroupSpec> catalog_listing() {
  return {{Family::Alt, 5},   {Family::Alt, 6},    {Family::Alt, 7},    {Family::Alt, 8},
          {Family::PSL2, 7},  {Family::PSL2, 8},   {Family::PSL2, 11},  {Family::PSL2, 13}};
}

// ------------------------------------------------------------------ GF(q)

namespace {

class FiniteField {
 public:
  explicit FiniteField(std::uint32_t q) : q_(q) {
    std::uint64_t p = 0, f = 0;
    if (!prime_power(q, p, f)) throw UnsupportedError("field order must be a prime power");
    p_ = static_cast<std::uint32_t>(p);
    f_ = static_cast<std::uint32_t>(f);
    add_.assign(q * q, 0);
    mul_.assign(q * q, 0);
    // Elements are polynomials over GF(p) of degree < f, written in base p.
    std::vector<std::uint32_t> modulus = irreducible();
    for (std::uint32_t a = 0; a < q; ++a) {
      for (std::uint32_t b = 0; b < q; ++b) {
        auto da = digits(a), db = digits(b);
        std::vector<std::uint32_t> s(f_);
        for (std::uint32_t i = 0; i < f_; ++i) s[i] = (da[i] + db[i]) % p_;
        add_[a * q + b] = value(s);
        std::vector<std::uint32_t> prod(2 * f_, 0);
        for (std::uint32_t i = 0; i < f_; ++i)
          for (std::uint32_t j = 0; j < f_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
        for (std::uint32_t d = 2 * f_ - 1; d >= f_; --d) {
          std::uint32_t c = prod[d];
          if (!c) continue;
          prod[d] = 0;
          // x^f = -(modulus lower terms)
          for (std::uint32_t i = 0; i < f_; ++i)
            prod[d - f_ + i] = (prod[d - f_ + i] + c * (p_ - modulus[i]) % p_) % p_;
        }
        prod.resize(f_);
        mul_[a * q + b] = value(prod);
      }
    }
    for (std::uint32_t a = 1; a < q; ++a) {
      if (mult_order(a) == q - 1) {
        primitive_ = a;
        break;
      }
    }
  }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return add_[a * q_ + b]; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[a * q_ + b]; }
  std::uint32_t inv(std::uint32_t a) const {
    for (std::uint32_t b = 1; b < q_; ++b)
      if (mul(a, b) == 1) return b;
    throw DomainError("zero has no inverse");
  }
  std::uint32_t primitive() const { return primitive_; }
  std::uint32_t frob(std::uint32_t a) const {
    std::uint32_t r = 1;
    for (std::uint32_t i = 0; i < p_; ++i) r = mul(r, a);
    return r;
  }
  std::uint32_t p() const { return p_; }
  std::uint32_t f() const { return f_; }

 private:
  std::vector<std::uint32_t> digits(std::uint32_t a) const {
    std::vector<std::uint32_t> d(f_);
    for (std::uint32_t i = 0; i < f_; ++i) {
      d[i] = a % p_;
      a /= p_;
    }
    return d;
  }
  std::uint32_t value(const std::vector<std::uint32_t>& d) const {
    std::uint32_t v = 0;
    for (std::uint32_t i = f_; i-- > 0;) v = v * p_ + d[i];
    return v;
  }
  // Lower coefficients c_0..c_{f-1} of a monic irreducible of degree f.
  std::vector<std::uint32_t> irreducible() const {
    if (f_ == 1) return {0};
    std::uint32_t count = 1;
    for (std::uint32_t i = 0; i < f_; ++i) count *= p_;
    for (std::uint32_t code = 0; code < count; ++code) {
      auto c = digits(code);
      if (c[0] == 0) continue;
      // No roots is enough for f <= 3; for larger f check all monic factors.
      if (has_factor(c)) continue;
      return c;
    }
    throw InternalConsistencyError("no irreducible polynomial found");
  }
  bool has_factor(const std::vector<std::uint32_t>& c) const {
    // Trial division by every monic polynomial of degree 1..f/2.
    std::vector<std::uint32_t> poly(c);
    poly.push_back(1);
    for (std::uint32_t deg = 1; deg <= f_ / 2; ++deg) {
      std::uint32_t count = 1;
      for (std::uint32_t i = 0; i < deg; ++i) count *= p_;
      for (std::uint32_t code = 0; code < count; ++code) {
        std::vector<std::uint32_t> d(deg + 1, 0);
        std::uint32_t x = code;
        for (std::uint32_t i = 0; i < deg; ++i) {
          d[i] = x % p_;
          x /= p_;
        }
        d[deg] = 1;
        std::vector<std::uint32_t> r(poly);
        for (std::size_t top = r.size() - 1; top >= deg; --top) {
          std::uint32_t coef = r[top];
          if (coef) {
            for (std::uint32_t i = 0; i <= deg; ++i)
              r[top - deg + i] = (r[top - deg + i] + (p_ - coef) * d[i]) % p_;
          }
          if (top == deg) break;
        }
        bool zero = true;
        for (std::uint32_t i = 0; i < deg; ++i) zero = zero && r[i] == 0;
        if (zero) return true;
      }
    }
    return false;
  }
  std::uint32_t mult_order(std::uint32_t a) const {
    std::uint32_t x = a, k = 1;
    while (x != 1) {
      x = mul(x, a);
      ++k;
    }
    return k;
  }

  std::uint32_t q_, p_ = 0, f_ = 0, primitive_ = 0;
  std::vector<std::uint32_t> add_, mul_;
};

// Projective line points: x in 0..q-1 is (x:1), q is (1:0). A matrix
// [[a,b],[c,d]] acts on row vectors: (x:y) -> (ax+cy : bx+dy).
Perm mobius(const FiniteField& F, std::uint32_t q, std::uint32_t a, std::uint32_t b, std::uint32_t c,
            std::uint32_t d) {
  std::vector<Point> img(q + 1);
  for (std::uint32_t x = 0; x <= q; ++x) {
    std::uint32_t u, v;
    if (x == q) {
      u = a;
      v = b;
    } else {
      u = F.add(F.mul(a, x), c);
      v = F.add(F.mul(b, x), d);
    }
    img[x] = v == 0 ? q : F.mul(u, F.inv(v));
  }
  return Perm::from_images(std::move(img));
}

std::string hex_digest(const std::vector<std::uint16_t>& table) {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto v : table) {
    h ^= v;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace

// ------------------------------------------------------------------ T

std::uint32_t SimpleGroup::index_of(const Perm& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) throw DomainError("permutation is not an element of " + name);
  return it->second;
}

bool SimpleGroup::generates(const std::vector<std::uint32_t>& gens) const {
  std::vector<char> seen(order(), 0);
  std::vector<std::uint32_t> queue{0};
  seen[0] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (auto g : gens) {
      auto y = mul(queue[i], g);
      if (!seen[y]) {
        seen[y] = 1;
        queue.push_back(y);
      }
    }
  }
  return queue.size() == order();
}

std::shared_ptr<SimpleGroup> SimpleGroup::from_generators(GroupSpec spec, std::string name,
                                                          const std::vector<Perm>& gens,
                                                          std::uint64_t order_cap) {
  auto G = std::make_shared<SimpleGroup>();
  G->spec = spec;
  G->name = std::move(name);
  G->degree = gens.at(0).degree();
  std::vector<Perm> all{Perm(G->degree)};
  std::unordered_map<Perm, std::uint32_t, PermHash> seen{{Perm(G->degree), 0}};
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (const auto& g : gens) {
      Perm h = all[i] * g;
      if (seen.count(h)) continue;
      if (all.size() >= order_cap) {
        throw ResourceError(G->name + " has order above the configured cap " + std::to_string(order_cap));
      }
      if (all.size() >= 65535) throw ResourceError("element tables are limited to 65535 entries");
      seen.emplace(h, 0);
      all.push_back(std::move(h));
    }
  }
  std::sort(all.begin(), all.end());
  G->elements = std::move(all);
  G->generators.assign(gens.size(), 0);
  G->finalize();
  for (std::size_t i = 0; i < gens.size(); ++i) G->generators[i] = G->index_of(gens[i]);
  return G;
}

void SimpleGroup::finalize() {
  const std::size_t n = elements.size();
  index_.clear();
  index_.reserve(2 * n);
  for (std::uint32_t i = 0; i < n; ++i) index_.emplace(elements[i], i);
  mult_.assign(n * n, 0);
  inv_.assign(n, 0);
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) mult_[a * n + b] = static_cast<std::uint16_t>(index_.at(elements[a] * elements[b]));
  }
  for (std::uint32_t a = 0; a < n; ++a) inv_[a] = static_cast<std::uint16_t>(index_.at(elements[a].inverse()));
  order_.assign(n, 0);
  for (std::uint32_t a = 0; a < n; ++a) order_[a] = static_cast<std::uint32_t>(elements[a].order());
  digest = hex_digest(mult_);

  // Classes: closure under conjugation by every element, least index first.
  class_of.assign(n, UINT32_MAX);
  std::vector<TClass> cls;
  for (std::uint32_t x = 0; x < n; ++x) {
    if (class_of[x] != UINT32_MAX) continue;
    TClass c;
    c.rep = x;
    c.order = order_[x];
    auto id = static_cast<std::uint32_t>(cls.size());
    for (std::uint32_t g = 0; g < n; ++g) {
      std::uint32_t y = conj(x, g);
      if (class_of[y] == UINT32_MAX) {
        class_of[y] = id;
        ++c.size;
      }
    }
    cls.push_back(c);
  }
  std::vector<std::uint32_t> perm(cls.size());
  std::iota(perm.begin(), perm.end(), 0U);
  std::stable_sort(perm.begin(), perm.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (cls[a].order != cls[b].order) return cls[a].order < cls[b].order;
    if (cls[a].size != cls[b].size) return cls[a].size < cls[b].size;
    return cls[a].rep < cls[b].rep;
  });
  std::vector<std::uint32_t> new_id(cls.size());
  classes.clear();
  std::map<std::uint32_t, int> letters;
  for (std::uint32_t i = 0; i < perm.size(); ++i) {
    new_id[perm[i]] = i;
    TClass c = cls[perm[i]];
    int k = letters[c.order]++;
    c.label = std::to_string(c.order) + std::string(1, static_cast<char>('A' + k));
    classes.push_back(c);
  }
  for (auto& c : class_of) c = new_id[c];
}

std::shared_ptr<const SimpleGroup> build_simple(const GroupSpec& spec_in, const CatalogOptions& opts) {
  GroupSpec spec = spec_in;
  if (spec.family == Family::PSL2 && (spec.param == 4 || spec.param == 5 || spec.param == 9)) {
    if (!opts.alias_exceptional) {
      throw UnsupportedError("L2(" + std::to_string(spec.param) +
                             ") is isomorphic to an alternating group; request it as A5/A6 or enable aliasing");
    }
    spec = GroupSpec{Family::Alt, spec.param == 9 ? 6U : 5U};
  }
  if (spec.family == Family::Alt) {
    const std::uint32_t n = spec.param;
    if (n < 5 || n > 12) throw UnsupportedError("Alt(n) is supported for 5 <= n <= 12");
    BigInt expected = factorial(n) / 2;
    if (expected > opts.order_cap) {
      throw ResourceError("A" + std::to_string(n) + " has order " + expected.str() + " above the cap " +
                          std::to_string(opts.order_cap));
    }
    std::vector<Perm> gens{Perm::from_cycles(n, {{0, 1, 2}})};
    std::vector<Point> cyc;
    for (Point i = (n % 2 ? 0 : 1); i < n; ++i) cyc.push_back(i);
    gens.push_back(Perm::from_cycles(n, {cyc}));
    auto G = SimpleGroup::from_generators(spec, spec.name(), gens, opts.order_cap);
    if (G->order() != expected) throw InternalConsistencyError("alternating group has the wrong order");
    return G;
  }
  const std::uint32_t q = spec.param;
  std::uint64_t p = 0, f = 0;
  if (!prime_power(q, p, f) || q < 7) throw UnsupportedError("PSL2(q) needs a prime power q >= 7");
  BigInt expected = BigInt(q) * (BigInt(q) * q - 1) / gcd_u64(2, q - 1);
  if (expected > opts.order_cap) {
    throw ResourceError(spec.name() + " has order " + expected.str() + " above the cap " +
                        std::to_string(opts.order_cap));
  }
  FiniteField F(q);
  const std::uint32_t w = F.primitive();
  const std::uint32_t winv = F.inv(w);
  std::vector<Perm> gens{mobius(F, q, 1, 1, 0, 1), mobius(F, q, 1, w, 0, 1), mobius(F, q, 1, 0, 1, 1),
                         mobius(F, q, w, 0, 0, winv)};
  auto G = SimpleGroup::from_generators(spec, spec.name(), gens, opts.order_cap);
  if (G->order() != expected) throw InternalConsistencyError("PSL2 construction has the wrong order");
  G->q = q;
  G->p = static_cast<std::uint32_t>(p);
  G->f = static_cast<std::uint32_t>(f);
  G->pgl_diag = mobius(F, q, w, 0, 0, 1);
  std::vector<Point> fr(q + 1);
  for (std::uint32_t x = 0; x < q; ++x) fr[x] = F.frob(x);
  fr[q] = q;
  G->frobenius = Perm::from_images(fr);
  return G;
}

// ------------------------------------------------------------------ Aut

std::uint32_t AutGroup::index_of(const Perm& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) throw DomainError("permutation is not in Aut(" + T->name + ")");
  return it->second;
}

std::uint32_t AutGroup::mul(std::uint32_t a, std::uint32_t b) const { return index_of(elements[a] * elements[b]); }

std::uint32_t AutGroup::inv(std::uint32_t a) const { return index_of(elements[a].inverse()); }

std::uint32_t AutGroup::out_inv(std::uint32_t a) const {
  for (std::uint32_t b = 0; b < out_order; ++b)
    if (out_mul(a, b) == 0) return b;
  throw InternalConsistencyError("Out element without inverse");
}

std::uint32_t AutGroup::out_elem_order(std::uint32_t a) const {
  std::uint32_t x = a, k = 1;
  while (x != 0) {
    x = out_mul(x, a);
    ++k;
  }
  return k;
}

bool AutGroup::is_automorphism(const Perm& phi) const {
  const std::size_t n = T->order();
  if (phi.degree() != n || phi[0] != 0) return false;
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      if (phi[T->mul(a, b)] != T->mul(phi[a], phi[b])) return false;
  return true;
}

StabilizerChain AutGroup::subgroup(const std::vector<std::uint32_t>& gens) const {
  std::vector<Perm> g;
  for (auto i : gens) g.push_back(elements.at(i));
  return bsgs_build(g, T->order());
}

std::shared_ptr<AutGroup> AutGroup::assemble(std::shared_ptr<const SimpleGroup> T, const std::vector<Perm>& extra,
                                             std::uint64_t expected_out) {
  auto A = std::make_shared<AutGroup>();
  A->T = T;
  const std::size_t n = T->order();
  auto inner_perm = [&](std::uint32_t t) {
    std::vector<Point> img(n);
    for (std::uint32_t x = 0; x < n; ++x) img[x] = T->conj(x, t);
    return Perm::from_images(std::move(img));
  };
  std::vector<Perm> inn_gens;
  for (auto g : T->generators) inn_gens.push_back(inner_perm(g));
  A->inn_chain = bsgs_build_known(inn_gens, n, BigInt(n));
  ChainBuilder builder(n);
  for (const auto& g : inn_gens) builder.add_generator(g);
  for (const auto& g : extra) {
    if (!A->is_automorphism(g)) throw InternalConsistencyError("search produced a map that is not an automorphism");
    if (builder.add_generator(g)) A->found_generators.push_back(g);
  }
  A->aut_chain = builder.finish();
  const BigInt aut_order = A->aut_chain.order();
  if (aut_order % n != 0) throw InternalConsistencyError("|Inn(T)| does not divide the automorphism group order");
  A->out_order = static_cast<std::uint64_t>(aut_order / n);
  if (A->out_order != expected_out) {
    throw InternalConsistencyError("automorphism search for " + T->name + " found |Out| = " +
                                   std::to_string(A->out_order) + ", expected " + std::to_string(expected_out));
  }
  A->aut_chain.for_each_element([&](const Perm& g) { A->elements.push_back(g); });
  std::sort(A->elements.begin(), A->elements.end());
  A->index_.reserve(2 * A->elements.size());
  for (std::uint32_t i = 0; i < A->elements.size(); ++i) A->index_.emplace(A->elements[i], i);
  A->inner.resize(n);
  for (std::uint32_t t = 0; t < n; ++t) A->inner[t] = A->index_of(inner_perm(t));
  // Out ids ordered by the least Aut index of each coset.
  A->out_of.assign(A->elements.size(), UINT32_MAX);
  for (std::uint32_t a = 0; a < A->elements.size(); ++a) {
    if (A->out_of[a] != UINT32_MAX) continue;
    auto id = static_cast<std::uint32_t>(A->out_rep.size());
    A->out_rep.push_back(a);
    for (std::uint32_t t = 0; t < n; ++t) A->out_of[A->index_of(A->elements[a] * A->elements[A->inner[t]])] = id;
  }
  const std::uint64_t o = A->out_order;
  A->out_mult.assign(o * o, 0);
  for (std::uint32_t a = 0; a < o; ++a)
    for (std::uint32_t b = 0; b < o; ++b) A->out_mult[a * o + b] = A->out_of[A->mul(A->out_rep[a], A->out_rep[b])];
  if (T->pgl_diag) {
    // The diagonal automorphism: conjugation by z -> omega z on the line.
    std::vector<Point> img(n);
    for (std::uint32_t x = 0; x < n; ++x) img[x] = T->index_of(T->elements[x].conjugate(*T->pgl_diag));
    A->pgl_outs.push_back(0);
    std::uint32_t d = A->out_of[A->index_of(Perm::from_images(img))];
    if (d != 0) A->pgl_outs.push_back(d);
  }
  return A;
}

std::shared_ptr<const AutGroup> build_aut(std::shared_ptr<const SimpleGroup> T) {
  const std::size_t n = T->order();
  const std::uint64_t expected = expected_out_order(T->spec);
  // Choose a generating pair (a, b). a runs over class representatives with
  // the smallest number of candidate images.
  auto fingerprint = [&](std::uint32_t x) {
    const TClass& c = T->classes[T->class_of[x]];
    return std::make_pair(c.order, c.size);
  };
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> fp_count;  // elements per fingerprint
  for (std::uint32_t x = 0; x < n; ++x) ++fp_count[fingerprint(x)];
  std::vector<std::uint32_t> cand;
  for (std::uint32_t x = 1; x < n; ++x) cand.push_back(x);
  std::stable_sort(cand.begin(), cand.end(),
                   [&](std::uint32_t x, std::uint32_t y) { return fp_count[fingerprint(x)] < fp_count[fingerprint(y)]; });
  std::uint32_t a = 0, b = 0;
  bool found = false;
  // a: class representative of the rarest fingerprint; b: first element in
  // rarity order that generates T together with a.
  std::vector<std::uint32_t> reps;
  for (const auto& c : T->classes)
    if (c.order > 1) reps.push_back(c.rep);
  std::stable_sort(reps.begin(), reps.end(),
                   [&](std::uint32_t x, std::uint32_t y) { return fp_count[fingerprint(x)] < fp_count[fingerprint(y)]; });
  for (auto ra : reps) {
    for (auto rb : cand) {
      if (T->generates({ra, rb})) {
        a = ra;
        b = rb;
        found = true;
        break;
      }
    }
    if (found) break;
  }
  if (!found) throw InternalConsistencyError("no generating pair found for " + T->name);

  // Words for every element over {a, b} via a Cayley graph BFS.
  std::vector<std::uint32_t> parent(n, UINT32_MAX), via(n, 0), order_bfs{0};
  parent[0] = 0;
  for (std::size_t i = 0; i < order_bfs.size(); ++i) {
    for (std::uint32_t s = 0; s < 2; ++s) {
      std::uint32_t y = T->mul(order_bfs[i], s == 0 ? a : b);
      if (parent[y] == UINT32_MAX) {
        parent[y] = order_bfs[i];
        via[y] = s;
        order_bfs.push_back(y);
      }
    }
  }
  const auto fa = fingerprint(a), fb = fingerprint(b), fab = fingerprint(T->mul(a, b));
  std::vector<std::uint32_t> a_images, b_images;
  for (const auto& c : T->classes)
    if (std::make_pair(c.order, c.size) == fa) a_images.push_back(c.rep);
  for (std::uint32_t x = 0; x < n; ++x)
    if (fingerprint(x) == fb) b_images.push_back(x);

  std::vector<Perm> autos;
  std::vector<Point> img(n);
  std::vector<char> hit(n);
  for (auto a2 : a_images) {
    for (auto b2 : b_images) {
      if (fingerprint(T->mul(a2, b2)) != fab) continue;
      img[0] = 0;
      for (std::size_t i = 1; i < n; ++i) {
        std::uint32_t y = order_bfs[i];
        img[y] = T->mul(img[parent[y]], via[y] == 0 ? a2 : b2);
      }
      std::fill(hit.begin(), hit.end(), 0);
      bool ok = true;
      for (std::uint32_t x = 0; x < n && ok; ++x) {
        if (hit[img[x]]) ok = false;
        hit[img[x]] = 1;
        ok = ok && T->mul(img[x], a2) == img[T->mul(x, a)] && T->mul(img[x], b2) == img[T->mul(x, b)];
      }
      if (ok) autos.push_back(Perm::from_images(img));
    }
  }
  return AutGroup::assemble(std::move(T), autos, expected);
}

// ------------------------------------------------------------------ snapshots

std::string snapshot_json(const CatalogEntry& e) {
  nlohmann::json j;
  j["format"] = 1;
  j["name"] = e.T->name;
  j["key"] = e.T->spec.key();
  j["order"] = e.T->order();
  j["degree"] = e.T->degree;
  j["digest"] = e.T->digest;
  nlohmann::json gens = nlohmann::json::array();
  for (auto g : e.T->generators) gens.push_back(e.T->elements[g].images());
  j["generators"] = gens;
  nlohmann::json ag = nlohmann::json::array();
  for (const auto& g : e.aut->found_generators) ag.push_back(g.images());
  j["aut_generators"] = ag;
  j["out_order"] = e.aut->out_order;
  return j.dump();
}

CatalogEntry load_snapshot(const std::string& text, const CatalogOptions& opts) {
  auto j = nlohmann::json::parse(text);
  if (j.at("format").get<int>() != 1) throw MissingDataError("unknown snapshot format");
  GroupSpec spec = parse_group_spec(j.at("key").get<std::string>());
  std::vector<Perm> gens;
  for (const auto& g : j.at("generators")) gens.push_back(Perm::from_images(g.get<std::vector<Point>>()));
  auto T = SimpleGroup::from_generators(spec, spec.name(), gens, opts.order_cap);
  if (T->digest != j.at("digest").get<std::string>()) throw InternalConsistencyError("snapshot digest mismatch");
  if (spec.family == Family::PSL2) {
    // Rebuild the extra PSL2 data from scratch; it is cheap.
    auto fresh = build_simple(spec, opts);
    if (fresh->digest != T->digest) throw InternalConsistencyError("snapshot does not match the construction");
    T = std::const_pointer_cast<SimpleGroup>(fresh);
  }
  std::vector<Perm> extra;
  for (const auto& g : j.at("aut_generators")) extra.push_back(Perm::from_images(g.get<std::vector<Point>>()));
  auto A = AutGroup::assemble(T, extra, expected_out_order(spec));
  if (A->out_order != j.at("out_order").get<std::uint64_t>()) throw InternalConsistencyError("snapshot Out order mismatch");
  return {T, A};
}

CatalogEntry catalog_get(const GroupSpec& spec_in, const CatalogOptions& opts) {
  static std::mutex mu;
  static std::map<std::string, CatalogEntry> memo;
  GroupSpec spec = spec_in;
  if (spec.family == Family::PSL2 && opts.alias_exceptional && (spec.param == 4 || spec.param == 5 || spec.param == 9))
    spec = GroupSpec{Family::Alt, spec.param == 9 ? 6U : 5U};
  std::lock_guard<std::mutex> lock(mu);
  auto it = memo.find(spec.key());
  if (it != memo.end()) {
    if (it->second.T->order() > opts.order_cap) throw ResourceError(spec.name() + " has order above the configured cap");
    return it->second;
  }
  std::filesystem::path file;
  if (const char* dir = std::getenv("DIAGBASE_CACHE_DIR"); dir && *dir) {
    file = std::filesystem::path(dir) / (spec.key() + ".json");
    if (std::filesystem::exists(file)) {
      std::ifstream in(file);
      std::stringstream ss;
      ss << in.rdbuf();
      try {
        CatalogEntry e = load_snapshot(ss.str(), opts);
        memo[spec.key()] = e;
        return e;
      } catch (const nlohmann::json::exception&) {
        // Unreadable snapshot: rebuild and overwrite below.
      } catch (const InternalConsistencyError&) {
      }
    }
  }
  CatalogEntry e;
  e.T = build_simple(spec, opts);
  e.aut = build_aut(e.T);
  memo[spec.key()] = e;
  if (!file.empty()) {
    std::filesystem::create_directories(file.parent_path());
    std::ofstream out(file);
    out << snapshot_json(e);
  }
  return e;
}

// ------------------------------------------------------------------ derived

StabilizerChain invertiliser(const AutGroup& aut, const StabilizerChain& A, std::uint32_t t) {
  const SimpleGroup& T = *aut.T;
  if (t >= T.order()) throw DomainError("element index out of range");
  std::uint32_t start = std::min(t, T.inv(t));
  return stabilizer_in_action<std::uint32_t, std::hash<std::uint32_t>>(A, start, [&](std::uint32_t s, const Perm& phi) {
    std::uint32_t u = phi[s];
    return std::min(u, T.inv(u));
  });
}

std::vector<Perm> HolomorphAction::all_generators() const {
  std::vector<Perm> g = translations;
  g.insert(g.end(), automorphisms.begin(), automorphisms.end());
  if (inversion) g.push_back(*inversion);
  return g;
}

HolomorphAction holomorph(const AutGroup& aut, bool include_inversion) {
  const SimpleGroup& T = *aut.T;
  const std::size_t n = T.order();
  HolomorphAction h;
  h.degree = n;
  for (auto g : T.generators) {
    std::vector<Point> img(n);
    for (std::uint32_t t = 0; t < n; ++t) img[t] = T.mul(T.inv(g), t);
    h.translations.push_back(Perm::from_images(img));
  }
  h.automorphisms = aut.aut_chain.generators();
  if (include_inversion) {
    std::vector<Point> img(n);
    for (std::uint32_t t = 0; t < n; ++t) img[t] = T.inv(t);
    h.inversion = Perm::from_images(img);
  }
  return h;
}

}  // namespace diagbase
