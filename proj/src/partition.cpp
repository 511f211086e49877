#include "diagbase/partition.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "diagbase/errors.hpp"

namespace diagbase {

QKind parse_q(const std::string& s) {
  if (s == "A" || s == "Alt" || s == "A_k") return QKind::A;
  if (s == "S" || s == "Sym" || s == "S_k") return QKind::S;
  throw ConfigError("Q must be A or S, got '" + s + "'");
}

const char* q_name(QKind q) { return q == QKind::A ? "A" : "S"; }

PartitionType PartitionType::from_sizes(const std::vector<std::uint64_t>& sizes) {
  std::map<std::uint64_t, std::uint64_t> m;
  for (auto s : sizes) ++m[s];
  PartitionType t;
  t.parts.assign(m.begin(), m.end());
  return t;
}

std::uint64_t PartitionType::total() const {
  std::uint64_t s = 0;
  for (auto [a, b] : parts) s += a * b;
  return s;
}

std::uint64_t PartitionType::num_parts() const {
  std::uint64_t s = 0;
  for (auto [a, b] : parts) s += b;
  return s;
}

std::uint64_t PartitionType::largest() const { return parts.empty() ? 0 : parts.back().first; }
std::uint64_t PartitionType::smallest() const { return parts.empty() ? 0 : parts.front().first; }

std::uint64_t PartitionType::count(std::uint64_t size) const {
  for (auto [a, b] : parts)
    if (a == size) return b;
  return 0;
}

std::string PartitionType::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) os << ',';
    os << parts[i].first << '^' << parts[i].second;
  }
  os << ']';
  return os.str();
}

namespace {
PartitionType make(std::initializer_list<std::pair<std::uint64_t, std::uint64_t>> raw) {
  std::map<std::uint64_t, std::uint64_t> m;
  for (auto [a, b] : raw)
    if (b) m[a] += b;
  PartitionType t;
  t.parts.assign(m.begin(), m.end());
  return t;
}
}  // namespace

PartitionType gamma_type(std::uint64_t k, std::uint64_t n) {
  if (n == 0) throw DomainError("a partition into zero parts is undefined");
  const std::uint64_t m = (k + n - 1) / n;
  if (m == 0) return make({{0, n}});
  const std::uint64_t big = k - (m - 1) * n;  // parts of size m
  return make({{m - 1, n - big}, {m, big}});
}

PartitionType sigma_type(std::uint64_t k, std::uint64_t n) {
  if (n < 5) throw DomainError("Sigma needs at least five parts");
  if (k <= n) throw DomainError("Sigma is defined only for k > n");
  const std::uint64_t m = (k + n - 1) / n;
  const std::uint64_t lo = (m - 1) * n;
  if (k == lo + 1) return make({{m - 2, 1}, {m - 1, n - 3}, {m, 2}});
  if (k == lo + 2) return make({{m - 2, 1}, {m - 1, n - 4}, {m, 3}});
  if (k == m * n - 2) return make({{m - 1, 3}, {m, n - 4}, {m + 1, 1}});
  if (k == m * n - 1) return make({{m - 1, 2}, {m, n - 3}, {m + 1, 1}});
  if (k == m * n) return make({{m - 1, 2}, {m, n - 4}, {m + 1, 2}});
  return gamma_type(k, n);
}

BigInt stab_order(const PartitionType& t, QKind q) {
  BigInt r = 1;
  bool has_pair = false;
  for (auto [a, b] : t.parts) {
    if (a >= 2) has_pair = true;
    BigInt f = factorial(a);
    for (std::uint64_t i = 0; i < b; ++i) r *= f;
  }
  if (q == QKind::A && has_pair) r /= 2;
  return r;
}

bool stab_trivial(const PartitionType& t, QKind q) {
  std::uint64_t twos = 0;
  for (auto [a, b] : t.parts) {
    if (a >= 3) return false;
    if (a == 2) twos += b;
  }
  return twos == 0 || (q == QKind::A && twos == 1);
}

std::uint64_t stab_order_bruteforce(const std::vector<std::uint32_t>& labels, QKind q) {
  const std::size_t k = labels.size();
  if (k > 10) throw ResourceError("brute-force stabiliser order is limited to k <= 10");
  std::vector<std::uint32_t> p(k);
  std::iota(p.begin(), p.end(), 0u);
  std::uint64_t count = 0;
  do {
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) ok = labels[p[i]] == labels[i];
    if (!ok) continue;
    if (q == QKind::A) {
      std::size_t inversions = 0;
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) inversions += p[i] > p[j];
      if (inversions % 2) continue;
    }
    ++count;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

std::vector<PartitionType> all_types(std::uint64_t k, std::uint64_t n, std::uint64_t cap) {
  std::vector<PartitionType> out;
  std::vector<std::uint64_t> cur;
  std::function<void(std::uint64_t, std::uint64_t)> rec = [&](std::uint64_t rem, std::uint64_t maxpart) {
    if (rem == 0) {
      if (out.size() >= cap) throw ResourceError("partition type enumeration exceeded its cap");
      std::vector<std::uint64_t> sizes = cur;
      sizes.resize(n, 0);
      out.push_back(PartitionType::from_sizes(sizes));
      return;
    }
    if (cur.size() == n) return;
    for (std::uint64_t a = std::min(rem, maxpart); a >= 1; --a) {
      cur.push_back(a);
      rec(rem - a, a);
      cur.pop_back();
    }
  };
  rec(k, k);
  return out;
}

LemmaCheck verify_min_part(std::uint64_t k, std::uint64_t n, QKind q, std::uint64_t cap) {
  if (k < n + 1) throw DomainError("the minimal-part lemma needs k >= n + 1");
  LemmaCheck res;
  const std::uint64_t m = (k + n - 1) / n;
  const PartitionType gamma = gamma_type(k, n);
  const BigInt hg = stab_order(gamma, q);
  for (const auto& t : all_types(k, n, cap)) {
    ++res.types_checked;
    if (t == gamma) continue;
    const BigInt h = stab_order(t, q);
    const std::uint64_t d = t.smallest(), e = t.largest();
    // |H_Pi| >= e/(d+1) |H_Gamma| > |H_Gamma|, compared as integers
    const BigInt lhs = h * (d + 1), rhs = hg * e;
    std::vector<std::uint64_t> odd;
    for (auto [a, b] : t.parts)
      if (a != m && a + 1 != m)
        for (std::uint64_t i = 0; i < b; ++i) odd.push_back(a);
    const bool predicted_equal = (odd.size() == 1 && (odd[0] + 2 == m || odd[0] == m + 1)) ||
                                 (odd.size() == 2 && odd[0] + 2 == m && odd[1] == m + 1);
    std::string bad;
    if (lhs < rhs) bad = "ratio bound fails";
    else if (h <= hg) bad = "Gamma is not the unique minimum";
    else if ((lhs == rhs) != predicted_equal) bad = "equality case differs from the stated condition";
    if (!bad.empty()) {
      res.holds = false;
      res.counterexample = t;
      res.detail = bad;
      return res;
    }
  }
  return res;
}

LemmaCheck verify_part_sigma(std::uint64_t k, std::uint64_t n, QKind q, std::uint64_t cap) {
  if (k < n + 1) throw DomainError("the Sigma lemma needs k >= n + 1");
  LemmaCheck res;
  const std::uint64_t m = (k + n - 1) / n;
  const PartitionType gamma = gamma_type(k, n), sigma = sigma_type(k, n);
  const PartitionType skip = make({{m - 1, 1}, {m, n - 2}, {m + 1, 1}});
  const BigInt hs = stab_order(sigma, q), hg = stab_order(gamma, q);
  if (hs > 2 * hg) {
    res.holds = false;
    res.counterexample = sigma;
    res.detail = "|H_Sigma| exceeds 2|H_Gamma|";
    return res;
  }
  for (const auto& t : all_types(k, n, cap)) {
    ++res.types_checked;
    if (t == gamma || t == sigma || t == skip) continue;
    if (stab_order(t, q) <= hs) {
      res.holds = false;
      res.counterexample = t;
      res.detail = "a type other than Gamma, Sigma and the excluded one has stabiliser at most |H_Sigma|";
      return res;
    }
  }
  return res;
}

bool ceil_chain(const BigInt& m, const BigInt& n, std::uint64_t r) {
  if (n < 1) throw DomainError("ceil_chain needs n >= 1");
  auto cdiv = [](const BigInt& a, const BigInt& b) { return (a + b - 1) / b; };
  const BigInt nr = ipow(n, r);
  return cdiv(cdiv(m, nr), n) == cdiv(m, nr * n);
}

namespace {
std::uint64_t ell_for(std::uint64_t n, std::uint64_t k) { return ceil_log(BigInt(k), n); }

PartitionType refine(const PartitionType& t, std::uint64_t n) {
  std::map<std::uint64_t, std::uint64_t> m;
  for (auto [a, b] : t.parts)
    for (auto [c, d] : gamma_type(a, n).parts) m[c] += b * d;
  PartitionType out;
  out.parts.assign(m.begin(), m.end());
  return out;
}
}  // namespace

SimResult greedy_refine_sim(std::uint64_t n, std::uint64_t k, QKind q) {
  if (n < 6) throw DomainError("the refinement simulator needs n >= 6");
  SimResult r;
  r.n = n;
  r.k = k;
  r.q = q;
  r.ell = ell_for(n, k);
  r.m = (k + n - 1) / n;
  r.m_prime = k + 2 >= r.m * n ? r.m + 1 : r.m;
  PartitionType cur = sigma_type(k, n);
  BigInt npow = 1;
  for (std::uint64_t i = 1;; ++i) {
    r.steps.push_back(cur);
    if (i <= r.ell + 1) {
      const BigInt expect = (BigInt(r.m_prime) + npow - 1) / npow;
      if (BigInt(cur.largest()) != expect) r.largest_part_invariant = false;
    }
    if (stab_trivial(cur, q)) {
      r.value = static_cast<std::uint32_t>(i + 1);
      break;
    }
    cur = refine(cur, n);
    npow *= n;
  }
  r.in_range = r.value == r.ell + 1 || r.value == r.ell + 2;
  return r;
}

namespace {
std::uint32_t reading(std::uint64_t n, std::uint64_t k, QKind q, QKind boundary_q) {
  const std::uint64_t l = ell_for(n, k);
  const BigInt nl = ipow(BigInt(n), l);
  const BigInt K = k;
  if (K == nl || ((K == nl - 1 || K == nl - 2) && q == boundary_q)) return static_cast<std::uint32_t>(l + 2);
  return static_cast<std::uint32_t>(l + 1);
}
}  // namespace

std::uint32_t prop_reading(std::uint64_t n, std::uint64_t k, QKind q) { return reading(n, k, q, QKind::S); }
std::uint32_t thm_reading(std::uint64_t n, std::uint64_t k, QKind q) { return reading(n, k, q, QKind::A); }

std::string SimRow::agree_flags() const {
  std::string s;
  if (agrees_thm()) s += "thm";
  if (agrees_prop()) s += s.empty() ? "prop" : "+prop";
  return s.empty() ? "none" : s;
}

std::vector<SimRow> closed_form_vs_sim(std::uint64_t n, const std::vector<std::uint64_t>& ks,
                                       const std::vector<QKind>& qs) {
  std::vector<SimRow> rows;
  for (auto k : ks)
    for (auto q : qs) {
      auto s = greedy_refine_sim(n, k, q);
      rows.push_back({n, k, q, s.ell, s.value, thm_reading(n, k, q), prop_reading(n, k, q)});
    }
  return rows;
}

std::string sim_rows_csv(const std::vector<SimRow>& rows) {
  std::ostringstream os;
  os << "n,k,Q,ell,sim,thm_reading,prop_reading,agree_flags\n";
  for (const auto& r : rows)
    os << r.n << ',' << r.k << ',' << q_name(r.q) << ',' << r.ell << ',' << r.sim << ',' << r.thm << ',' << r.prop
       << ',' << r.agree_flags() << '\n';
  return os.str();
}

}  // namespace diagbase
