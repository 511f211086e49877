#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diagbase/errors.hpp"
#include "diagbase/numeric.hpp"

namespace diagbase {

enum class QKind { A, S };
QKind parse_q(const std::string& s);
const char* q_name(QKind q);

// Multiset of part sizes, stored as (size, multiplicity) with strictly
// increasing sizes. Empty parts are kept as size 0.
struct PartitionType {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> parts;

  static PartitionType from_sizes(const std::vector<std::uint64_t>& sizes);
  std::uint64_t total() const;
  std::uint64_t num_parts() const;
  std::uint64_t largest() const;
  std::uint64_t smallest() const;
  std::uint64_t count(std::uint64_t size) const;
  std::string str() const;  // e.g. "[1^1,2^3,3^2]"
  bool operator==(const PartitionType&) const = default;
};

PartitionType gamma_type(std::uint64_t k, std::uint64_t n);
PartitionType sigma_type(std::uint64_t k, std::uint64_t n);

BigInt stab_order(const PartitionType& t, QKind q);
// True iff stab_order(t, q) == 1, without forming factorials.
bool stab_trivial(const PartitionType& t, QKind q);

// Order of the subgroup of S_k or A_k fixing every labelled part setwise,
// by enumerating all k! permutations. labels[i] is the part of point i.
std::uint64_t stab_order_bruteforce(const std::vector<std::uint32_t>& labels, QKind q);

// All types of partitions of k into exactly n possibly empty parts.
std::vector<PartitionType> all_types(std::uint64_t k, std::uint64_t n, std::uint64_t cap = 2000000);

struct LemmaCheck {
  bool holds = true;
  std::uint64_t types_checked = 0;
  std::optional<PartitionType> counterexample;
  std::string detail;
};

LemmaCheck verify_min_part(std::uint64_t k, std::uint64_t n, QKind q, std::uint64_t cap = 2000000);
LemmaCheck verify_part_sigma(std::uint64_t k, std::uint64_t n, QKind q, std::uint64_t cap = 2000000);

bool ceil_chain(const BigInt& m, const BigInt& n, std::uint64_t r);

struct SimResult {
  std::uint64_t n = 0, k = 0;
  QKind q = QKind::S;
  std::uint64_t ell = 0;
  std::uint64_t m = 0, m_prime = 0;
  std::uint32_t value = 0;                   // simulated greedy base size
  std::vector<PartitionType> steps;          // Pi_1, Pi_2, ...
  bool largest_part_invariant = true;        // largest part of Pi_i = ceil(m'/n^(i-1))
  bool in_range = true;                      // value in {ell+1, ell+2}
};

SimResult greedy_refine_sim(std::uint64_t n, std::uint64_t k, QKind q);

// The greedy theorem's boundary condition under the proposition reading
// (Q = S at n^l - 1, n^l - 2) and under the literal reading (Q = A there).
std::uint32_t prop_reading(std::uint64_t n, std::uint64_t k, QKind q);
std::uint32_t thm_reading(std::uint64_t n, std::uint64_t k, QKind q);

struct SimRow {
  std::uint64_t n, k;
  QKind q;
  std::uint64_t ell;
  std::uint32_t sim, thm, prop;
  bool agrees_thm() const { return sim == thm; }
  bool agrees_prop() const { return sim == prop; }
  std::string agree_flags() const;
};

std::vector<SimRow> closed_form_vs_sim(std::uint64_t n, const std::vector<std::uint64_t>& ks,
                                       const std::vector<QKind>& qs);
std::string sim_rows_csv(const std::vector<SimRow>& rows);

}  // namespace diagbase
