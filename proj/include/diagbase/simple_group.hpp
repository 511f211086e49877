#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "diagbase/bsgs.hpp"
#include "diagbase/perm.hpp"

namespace diagbase {

enum class Family { Alt, PSL2 };

struct GroupSpec {
  Family family = Family::Alt;
  std::uint32_t param = 5;  // n for Alt(n), q for PSL2(q)

  std::string name() const;  // "A5", "L2(8)"
  std::string key() const;   // "A5", "L2_8" (file-name safe)
  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

// Accepts "A5", "Alt5", "Alt(5)", "L2_8", "L2(8)", "PSL2(8)".
GroupSpec parse_group_spec(std::string_view text);

struct CatalogOptions {
  std::uint64_t order_cap = 1200;
  // Build Alt(5) for PSL2(4), PSL2(5) and Alt(6) for PSL2(9) instead of failing.
  bool alias_exceptional = false;
};

struct TClass {
  std::uint32_t rep = 0;  // least element index in the class
  std::uint32_t size = 0;
  std::uint32_t order = 0;
  std::string label;
};

// A small simple group with an indexed element table. Index 0 is the
// identity; elements are sorted by their image sequence in the natural
// action (n points for Alt(n), the q+1 points of the projective line for
// PSL2(q)).
class SimpleGroup {
 public:
  GroupSpec spec;
  std::string name;
  std::size_t degree = 0;
  std::vector<Perm> elements;
  std::vector<std::uint32_t> generators;  // indices of the defining generators
  std::vector<TClass> classes;
  std::vector<std::uint32_t> class_of;
  std::string digest;  // hash of the multiplication table
  // PSL2 only: permutations of the projective line normalising T. `diag`
  // is z -> omega z, `frobenius` is z -> z^p.
  std::optional<Perm> pgl_diag;
  std::optional<Perm> frobenius;
  std::uint32_t q = 0, p = 0, f = 0;

  std::size_t order() const { return elements.size(); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mult_[a * elements.size() + b]; }
  std::uint32_t inv(std::uint32_t a) const { return inv_[a]; }
  std::uint32_t elem_order(std::uint32_t a) const { return order_[a]; }
  // g^-1 x g
  std::uint32_t conj(std::uint32_t x, std::uint32_t g) const { return mul(mul(inv(g), x), g); }
  std::uint32_t index_of(const Perm& p) const;
  bool generates(const std::vector<std::uint32_t>& gens) const;

  static std::shared_ptr<SimpleGroup> from_generators(GroupSpec spec, std::string name,
                                                      const std::vector<Perm>& gens,
                                                      std::uint64_t order_cap);

 private:
  void finalize();
  std::vector<std::uint16_t> mult_;
  std::vector<std::uint16_t> inv_;
  std::vector<std::uint32_t> order_;
  std::unordered_map<Perm, std::uint32_t, PermHash> index_;
};

// Aut(T) acting on the element indices of T.
class AutGroup {
 public:
  std::shared_ptr<const SimpleGroup> T;
  StabilizerChain aut_chain;
  StabilizerChain inn_chain;
  std::uint64_t out_order = 1;
  std::vector<Perm> elements;        // sorted, index 0 is the identity
  std::vector<std::uint32_t> inner;  // inner[t] = index of x -> t^-1 x t
  std::vector<std::uint32_t> out_of;
  std::vector<std::uint32_t> out_rep;   // least element index in each coset
  std::vector<std::uint32_t> out_mult;  // out_order x out_order
  std::vector<std::uint32_t> pgl_outs;  // PSL2 only: Out ids in PGL2(q)/T
  std::vector<Perm> found_generators;   // automorphisms produced by the search

  std::size_t order() const { return elements.size(); }
  std::uint32_t index_of(const Perm& p) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t out_mul(std::uint32_t a, std::uint32_t b) const { return out_mult[a * out_order + b]; }
  std::uint32_t out_inv(std::uint32_t a) const;
  std::uint32_t out_elem_order(std::uint32_t a) const;
  bool is_automorphism(const Perm& p) const;
  // Chain of the subgroup generated by the given element indices.
  StabilizerChain subgroup(const std::vector<std::uint32_t>& gens) const;

  static std::shared_ptr<AutGroup> assemble(std::shared_ptr<const SimpleGroup> T,
                                            const std::vector<Perm>& extra, std::uint64_t expected_out);

 private:
  std::unordered_map<Perm, std::uint32_t, PermHash> index_;
};

std::uint64_t expected_out_order(const GroupSpec& spec);

std::shared_ptr<const SimpleGroup> build_simple(const GroupSpec& spec, const CatalogOptions& opts = {});
std::shared_ptr<const AutGroup> build_aut(std::shared_ptr<const SimpleGroup> T);

// Both of the above, memoised per process and backed by JSON snapshots in
// $DIAGBASE_CACHE_DIR when that variable is set.
struct CatalogEntry {
  std::shared_ptr<const SimpleGroup> T;
  std::shared_ptr<const AutGroup> aut;
};
CatalogEntry catalog_get(const GroupSpec& spec, const CatalogOptions& opts = {});

std::string snapshot_json(const CatalogEntry& e);
CatalogEntry load_snapshot(const std::string& json_text, const CatalogOptions& opts = {});

// I_A(t) = {phi in A : t^phi in {t, t^-1}} for a subgroup A of Aut(T).
StabilizerChain invertiliser(const AutGroup& aut, const StabilizerChain& A, std::uint32_t t);

struct HolomorphAction {
  std::size_t degree = 0;
  std::vector<Perm> translations;  // t -> g^-1 t for generators g of T
  std::vector<Perm> automorphisms;
  std::optional<Perm> inversion;
  std::vector<Perm> all_generators() const;
};

HolomorphAction holomorph(const AutGroup& aut, bool include_inversion);

std::vector<GroupSpec> catalog_listing();

}  // namespace diagbase
