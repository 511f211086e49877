#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diagbase/bsgs.hpp"
#include "diagbase/diagonal.hpp"
#include "json.hpp"

namespace diagbase {

// Two tuples of points of Omega (as indices) that agree on every
// s-subtuple up to G, offered as evidence that RC(G) > s.
struct WitnessPair {
  std::vector<Point> lam, sig;
  std::uint32_t s = 0;
  std::string provenance;  // four-point | alt-tuples | search | custom
};

bool subtuple_complete(const StabilizerChain& chain, const WitnessPair& pair,
                       std::vector<std::optional<Perm>>* transporters = nullptr);
bool same_orbit(const StabilizerChain& chain, const std::vector<Point>& lam, const std::vector<Point>& sig);

struct Certificate {
  WitnessPair pair;
  bool complete = false;         // lam ~_s sig
  bool distinct_orbits = false;  // lam not in sig^G
  std::vector<Point> base;       // base of the realised chain
  // For each s-subset in lexicographic order, the base images of the
  // transporter found.
  std::vector<std::vector<std::uint32_t>> subsets;
  std::vector<std::vector<Point>> transporter_base_images;

  bool passes() const { return complete && distinct_orbits; }
  // Certifies RC(G) >= s + 1.
  std::uint32_t certified_lower() const { return passes() ? pair.s + 1 : 0; }
  nlohmann::json to_json(const DiagonalGroup* G = nullptr) const;
};

Certificate check_witness(const StabilizerChain& chain, const WitnessPair& pair);

// Point D(t_1, ..., t_k) of Omega from a tuple of T-element indices.
Point coset_point(const DiagonalGroup& G, const std::vector<std::uint32_t>& t);
// D(t, 1, ..., 1)
Point first_coordinate_point(const DiagonalGroup& G, std::uint32_t t);

struct Rc4Choice {
  std::uint32_t x = 0, y = 0;
  std::string how;  // "base triple" or "generating pair"
};

// The pair (x, y) used by the four-point construction: a base triple
// (D, D(x,1), D(y,1)) for k = 2, a generating pair of T for k >= 3.
std::optional<Rc4Choice> rc4_choice(const DiagonalGroup& G, const StabilizerChain& chain);

// The I, J tuples of the RC >= 4 construction. For k = 2 and T in {A5, A6}
// (where the construction does not apply in general) the pair comes from
// an exhaustive search of length-4 witnesses instead.
WitnessPair witness_rc4(const DiagonalGroup& G, const StabilizerChain& chain);

DiagonalConfig alt_tuple_config(std::uint32_t m, std::uint32_t k);
// Tuples of length m with s = m - 1 for T = Alt(m+2), built from the
// 3-cycles t_i = (1, 2, i+1).
WitnessPair witness_prop53(const DiagonalGroup& G);
// The explicit elements (s_{i+1}, ..., s_{i+1}) and (s_2, s_1, ..., s_1)
// that realise each (m-1)-subtuple equivalence, in the same subset order as
// Certificate::subsets.
std::vector<WElement> alt_tuple_transporters(const DiagonalGroup& G);

struct SearchStats {
  std::uint64_t prefixes = 0;
  std::uint64_t max_prefixes = 5000000;
};

// Exhaustive search for a pair of length t with s = t - 1, enumerating
// prefixes up to G-equivalence. Any witness for RC(G) > r restricts to one
// of length r' + 1 with s = r' >= r, so these lengths suffice.
std::optional<WitnessPair> search_witness(const StabilizerChain& chain, std::uint32_t t, SearchStats* stats = nullptr);

struct RCBound {
  std::uint32_t lower = 2;
  std::uint32_t upper = 0;
  std::optional<Certificate> lower_certificate;
  std::string upper_source;  // I_plus_1 | exhaustive_to_length_L
  std::uint32_t search_length_bound = 0;
  std::uint32_t I = 0;
  bool exact() const { return lower == upper; }
  nlohmann::json to_json(const DiagonalGroup* G = nullptr) const;
};

RCBound rc_bounds(const StabilizerChain& chain, std::uint32_t max_len, std::optional<std::uint32_t> I = std::nullopt,
                  const std::optional<WitnessPair>& seed = std::nullopt);

struct LogChainCheck {
  std::uint32_t m = 0;
  long double log2_n = 0;  // n = |A_{m+2}|^2
  std::vector<std::pair<std::string, bool>> links;
  bool holds = true;
  bool asserted = true;  // false below the sufficiency threshold m0
  nlohmann::json to_json() const;
};

// Logarithms are base 2, matching the explicit "log e" terms in the chain.
LogChainCheck thm14_arithmetic(std::uint32_t m, std::uint32_t m0 = 64);

}  // namespace diagbase
