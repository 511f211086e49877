#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "diagbase/bsgs.hpp"
#include "diagbase/diagonal.hpp"
#include "diagbase/numeric.hpp"
#include "json.hpp"

namespace diagbase {

// ---------------------------------------------------------------------------
// Invertilisers and two-point stabilisers for k = 2.

// Indices (into AutGroup::elements) of I_Aut(T)(t), sorted.
std::vector<std::uint32_t> invertiliser_elements(const AutGroup& aut, std::uint32_t t);

// True iff I(x) and I(y) meet only in the identity.
bool invertilisers_meet_trivially(const AutGroup& aut, std::uint32_t x, std::uint32_t y);

// Stabiliser of the points D and D(1, x) of a k = 2 group, computed twice:
// from the realised chain, and from the description as the elements
// phi (centralising x) and phi.sigma (inverting x) that lie in G.
struct TwoPointStab {
  std::uint32_t x = 0;
  StabilizerChain stab_chain;
  BigInt direct_order;
  std::uint64_t centralizing = 0;  // |C_Aut(x) as diagonal elements, within G|
  std::uint64_t inverting = 0;     // |{phi.sigma in G : x^phi = x^-1}|
  bool formula_elements_fix = true;
  bool agree = false;

  std::uint64_t formula_order() const { return centralizing + inverting; }
};

TwoPointStab two_point_stab(const DiagonalGroup& G, const StabilizerChain& chain, std::uint32_t x);

// |G_{1,x}| from the formula alone, no chain needed.
std::uint64_t two_point_stab_formula_order(const DiagonalGroup& G, std::uint32_t x);

// Order of the stabiliser of D, D(1,x), D(1,y): the phi centralising both
// plus the phi.sigma inverting both, restricted to G.
std::uint64_t triple_stab_formula_order(const DiagonalGroup& G, std::uint32_t x, std::uint32_t y);

// (D, D(1,x), D(1,y)) is a base for T^2.(Out(T) x S_2), hence for every
// group with socle T^2.
bool triple_is_base_for_full(const AutGroup& aut, std::uint32_t x, std::uint32_t y);

struct BaseTripleResult {
  bool invertiliser_test = false;  // I(x) and I(y) meet trivially
  // sigma itself fixes D, D(1,x), D(1,y) when x and y are both involutions,
  // so the invertiliser test alone does not certify a base in that case.
  bool sigma_gap = false;
  bool formula_trivial = false;  // no phi or phi.sigma in G fixes all three points
  bool direct_trivial = false;   // pointwise stabiliser from the chain is 1
  bool consistent() const {
    return formula_trivial == direct_trivial && (!invertiliser_test || sigma_gap || direct_trivial);
  }
};

BaseTripleResult base_triple_test(const DiagonalGroup& G, const StabilizerChain& chain, std::uint32_t x,
                                  std::uint32_t y);

// Among non-identity x minimising |G_{1,x}|, checks |I(x)| <= |I(y)|.|Out|
// for every non-identity y. Requires P = S_2.
struct MinimalStabCheck {
  std::uint64_t min_stab = 0;
  std::vector<std::uint32_t> minimisers;  // T-class representatives
  bool holds = true;
  std::string detail;
};
MinimalStabCheck check_minimal_stab_inequality(const DiagonalGroup& G);

// ---------------------------------------------------------------------------
// The finite computation that settles the groups in the exceptional list.

struct ProcedureEntry {
  std::string x_class;
  std::uint32_t x = 0;
  std::uint64_t invertiliser_size = 0;
  std::optional<std::uint32_t> partner;  // x0 with I(x) and I(x0) meeting trivially
  std::optional<std::uint32_t> full_partner;  // x0 making (1, x, x0) a base of the full group
  // Overgroups with P = S_2 in which x minimises |G_{1,x}|.
  std::vector<std::string> minimal_in;
};

struct ProcedureReport {
  std::string T;
  std::uint64_t v = 0;  // min over y != 1 of |I(y)|
  std::uint64_t out_order = 1;
  std::vector<ProcedureEntry> S;
  bool success = false;       // every x in S has an invertiliser partner
  bool full_success = false;  // every x in S has a partner for the full group
  // every x in S that minimises |G_{1,x}| for some overgroup has a full partner
  bool minimal_success = false;
  nlohmann::json to_json() const;
};

ProcedureReport procedure_lemma_A(const CatalogEntry& cat, const CatalogOptions& opts = {});

// ---------------------------------------------------------------------------
// Q~(T, y) = |I(y)|.|Out| . sum over prime-order Aut-classes C of |C n I(y)| / |C|.

struct AutClasses {
  std::vector<std::uint32_t> class_of;  // per Aut element
  std::vector<std::uint32_t> rep;
  std::vector<std::uint64_t> size;
  std::vector<std::uint64_t> order;
};
AutClasses aut_classes(const AutGroup& aut);

Rational qtilde_exact(const AutGroup& aut, std::uint32_t y);
Rational qtilde_exact(const AutGroup& aut, const AutClasses& classes, std::uint32_t y);

struct QtildeOracle {
  Rational by_centralisers;  // the same sum recomputed element by element
  // Largest fraction of y' in y^Aut with I(x) n I(y') != 1, over x with
  // |I(x)| <= |I(y)|.|Out|.
  Rational worst_bad_fraction;
  std::uint32_t worst_x = 0;
};
QtildeOracle qtilde_oracle(const AutGroup& aut, std::uint32_t y);

// Element index of the representative of the T-class with this label.
std::uint32_t class_rep_by_label(const SimpleGroup& T, std::string_view label);

// ---------------------------------------------------------------------------
// Numerical criteria for groups of Lie type.

struct CriterionParams {
  BigInt c;
  BigInt a;
  Rational b0, b1, b2;
  Rational omega;  // upper bound for |Out(T)|
};

Rational criterion_value(const CriterionParams& p);
bool criterion_cor311(const CriterionParams& p);

enum class LieFamily { L, U, PSp, OmegaOdd, OmegaMinus, OmegaPlus, B2tw, G2tw, F4tw, G2, D4tw, F4, E6, E6tw, E7, E8 };

LieFamily parse_lie_family(std::string_view s);
std::string lie_family_name(LieFamily f);
bool is_classical(LieFamily f);

// `dim` is n for L and U, m for PSp_{2m}, Omega_{2m+1}, POmega^-_{2m} and
// POmega^+_{2m}; it is ignored for exceptional families.
std::string lie_group_name(LieFamily f, std::uint32_t dim, std::uint64_t q);

// Membership of the finite list of small groups handled by direct
// computation instead of the inequalities.
bool in_small_list(LieFamily f, std::uint32_t dim, std::uint64_t q);

struct LieTableRow {
  LieFamily family = LieFamily::L;
  std::uint32_t dim = 0;
  std::uint64_t q = 0;
  std::string name;
  CriterionParams params;  // classical families
  std::string omega_source;
  std::optional<BigInt> torus_order;  // exceptional families
  bool in_small_list = false;
  nlohmann::json to_json() const;
};

LieTableRow lie_table_params(LieFamily f, std::uint32_t dim, std::uint64_t q);

// |y| for the exceptional families.
BigInt exceptional_torus_order(LieFamily f, std::uint64_t q);
// |Out(T)| and |Inndiag(T):T| for the exceptional families.
std::uint64_t exceptional_out_order(LieFamily f, std::uint64_t q);
std::uint64_t exceptional_diag_index(LieFamily f, std::uint64_t q);

struct CriterionResult {
  std::string name;
  Rational value;
  bool holds = false;
  std::string omega_source;
  nlohmann::json to_json() const;
};

CriterionResult evaluate_criterion(const LieTableRow& row);

// POmega^+_{2m}(q): omega.a^2/b < 1 with a = 2(q^m - 1).
CriterionResult oplus_check(std::uint32_t m, std::uint64_t q);

struct ExceptionalResult {
  std::string name;
  BigInt torus_order;
  std::uint64_t d = 1;
  std::uint64_t out_order = 1;
  BigInt min_class_size;
  BigInt required;  // |Out|.(2d|y|)^2
  bool holds = false;
  // The E7 display compares q^34 with 4(q+1)^2(q^6-q^3+1) log q; recorded
  // alongside for comparison.
  std::optional<Rational> displayed_rhs;
  nlohmann::json to_json() const;
};

ExceptionalResult exceptional_check(LieFamily f, std::uint64_t q,
                                    std::optional<BigInt> min_class_size = std::nullopt);

// ---------------------------------------------------------------------------
// Order comparison for T = L2(q): every x of an order outside the allowed
// set has a larger two-point stabiliser than any y of order (q-1)/(2,q-1).

struct L2OrderComparison {
  std::string config;
  std::string k2_case;
  std::uint64_t y_order = 0;
  std::uint64_t max_y_stab = 0;
  std::vector<std::pair<std::string, std::uint64_t>> x_stabs;  // class label, |G_{1,x}|
  bool holds = false;
};

std::vector<std::uint64_t> l2_allowed_orders(std::uint64_t q);
L2OrderComparison l2_order_comparison(const DiagonalGroup& G);

}  // namespace diagbase
