#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "diagbase/bsgs.hpp"
#include "diagbase/simple_group.hpp"
#include "json.hpp"

namespace diagbase {

// Canonical coset representative D(1, c_2, ..., c_k): the k-1 coordinates
// after the first has been normalised to the identity.
struct OmegaPoint {
  std::vector<std::uint32_t> coords;
  friend bool operator==(const OmegaPoint&, const OmegaPoint&) = default;
};

// (t_1, ..., t_k) (phi, ..., phi) sigma, with phi given as an index into
// AutGroup::elements and sigma a permutation of {0..k-1}.
struct WElement {
  std::vector<std::uint32_t> tvec;
  std::uint32_t aut = 0;
  Perm top;
  friend bool operator==(const WElement&, const WElement&) = default;
};

// An element of Out(T) x S_k.
struct HElement {
  std::uint32_t out = 0;
  Perm top;
  friend bool operator==(const HElement&, const HElement&) = default;
};

inline constexpr std::uint64_t kDefaultOmegaCap = 1000000;

// Describes G = T^k.H with H <= Out(T) x S_k.
//
// preset "socle" gives H = 1 and "full_W" gives H = Out(T) x S_k. With
// preset "custom", H is either given by `h_gens` or assembled from
// out_part x top, where `q` = "A" with top = "S" twists the odd top
// elements by the Out element `twist` so that Q = A_k.
struct DiagonalConfig {
  GroupSpec T;
  std::uint32_t k = 2;
  std::string preset = "socle";
  std::string out_part = "none";          // none | full | pgl | explicit
  std::vector<std::uint32_t> out_gens;    // when out_part == explicit
  std::string top = "trivial";            // trivial | A | S | explicit
  std::vector<Perm> top_gens;             // when top == explicit
  std::string q = "P";                    // P | A | S | trivial
  std::optional<std::uint32_t> twist;
  std::vector<HElement> h_gens;
  std::string label;

  nlohmann::json to_json() const;
  static DiagonalConfig from_json(const nlohmann::json& j);
};

class DiagonalGroup {
 public:
  DiagonalConfig config;
  CatalogEntry cat;
  std::uint32_t k = 2;
  BigInt omega_size;
  std::vector<WElement> generators;
  std::vector<HElement> h_elements;  // all of H, sorted
  std::vector<HElement> h_generators;
  std::vector<Perm> P_elements;      // projection of H to S_k
  std::vector<Perm> Q_elements;      // {sigma : (1, sigma) in H}
  std::vector<std::uint32_t> O_elements;  // projection of H to Out(T)
  std::string P_label, Q_label;      // "A", "S" or "other"
  bool is_full = false;              // H = Out(T) x S_k

  const SimpleGroup& t() const { return *cat.T; }
  const AutGroup& aut() const { return *cat.aut; }
  BigInt order() const;
  bool contains_h(const HElement& h) const;
  bool contains(const WElement& w) const;

  std::uint64_t index_of(const OmegaPoint& p) const;
  OmegaPoint point(std::uint64_t index) const;
  OmegaPoint act(const OmegaPoint& p, const WElement& g) const;
  std::uint64_t act_index(std::uint64_t index, const WElement& g) const;

  WElement identity() const;
  WElement compose(const WElement& a, const WElement& b) const;
  WElement translation(std::uint32_t coord, std::uint32_t t) const;
  WElement pure_top(const Perm& sigma) const;
  WElement diagonal_aut(std::uint32_t aut_index) const;
  WElement random_element(std::mt19937_64& rng) const;

  Perm induced(const WElement& g, std::uint64_t cap = kDefaultOmegaCap) const;
  StabilizerChain realize(std::uint64_t cap = kDefaultOmegaCap) const;
  // Q recomputed from the realised group: every sigma in S_k whose pure
  // top element lies in the chain.
  std::vector<Perm> realized_q(const StabilizerChain& chain) const;

  // Lemma case tag for k = 2: "a" no sigma-coset, "b" sigma-coset only
  // outside PGL2, "c" sigma-coset through PGL2 but sigma not in G, "d"
  // sigma in G. Non-PSL2 groups report "bc" for the middle cases.
  std::string k2_case() const;
  std::string describe() const;
};

DiagonalGroup build_group(const DiagonalConfig& config, const CatalogOptions& opts = {});

// Every subgroup H of Out(T) x S_2, one config each, sorted by |H|.
std::vector<DiagonalConfig> enumerate_overgroups(const GroupSpec& T, std::uint32_t k = 2,
                                                 const CatalogOptions& opts = {});

bool is_primitive(const std::vector<Perm>& gens, std::size_t degree);

// Generators of A_k and S_k on {0..k-1}.
std::vector<Perm> alternating_generators(std::uint32_t k);
std::vector<Perm> symmetric_generators(std::uint32_t k);

}  // namespace diagbase
