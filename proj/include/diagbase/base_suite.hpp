#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "diagbase/bsgs.hpp"
#include "diagbase/diagonal.hpp"
#include "json.hpp"

namespace diagbase {

struct SearchBudget {
  // Number of stabiliser computations a single search may perform.
  std::uint64_t max_nodes = 20000000;
};

struct GreedyResult {
  std::set<std::uint32_t> sizes;
  std::map<std::uint32_t, std::vector<Point>> witnesses;  // one greedy base per size
  std::uint64_t nodes = 0;
  std::uint32_t max() const { return sizes.empty() ? 0 : *sizes.rbegin(); }
  std::uint32_t min() const { return sizes.empty() ? 0 : *sizes.begin(); }
};

struct BaseWitness {
  std::uint32_t size = 0;
  std::vector<Point> base;
  std::uint64_t nodes = 0;
};

// Sizes of all greedy bases. Branches on one representative of every
// orbit of maximal length: points in one orbit give conjugate stabilisers.
GreedyResult greedy_sizes(const StabilizerChain& chain, const SearchBudget& budget = {});

// Exact b(G) by iterative deepening over orbit representatives.
BaseWitness min_base(const StabilizerChain& chain, const SearchBudget& budget = {});

// Exact I(G): longest sequence of points with strictly decreasing
// pointwise stabilisers ending in the trivial group.
BaseWitness max_irredundant(const StabilizerChain& chain, const SearchBudget& budget = {});

// Representative of an orbit of the stabiliser of `point` whose length is
// the stabiliser order, if one exists.
std::optional<Point> regular_suborbit(const StabilizerChain& chain, Point point);

bool is_base(const StabilizerChain& chain, const std::vector<Point>& points);

// The two textual readings of the boundary case of the greedy theorem for
// k >= 3: the proposition/corollary reading (Q = S_k at k = n^l - 1, n^l - 2)
// and the literal statement (Q = A_k there).
enum class BoundaryReading { PropCor, Literal };

struct ClosedFormInput {
  std::uint64_t tsize = 60;
  BigInt k = 2;
  std::string P_label;  // "A", "S", or "other"
  std::string Q_label;  // "A", "S", or "other"
  std::string T_label;  // e.g. "A5"
  bool G_is_full = false;
};

std::uint64_t ell_of(std::uint64_t tsize, const BigInt& k);
std::uint32_t closed_form_greedy(const ClosedFormInput& in, BoundaryReading reading = BoundaryReading::PropCor);
std::uint32_t closed_form_base(const ClosedFormInput& in);
std::string greedy_source(const ClosedFormInput& in);
std::string base_source(const ClosedFormInput& in);

struct BaseStatsRequest {
  bool b = true;
  bool greedy = true;
  bool irr = true;
};

struct BaseReport {
  std::string label;
  BigInt order;
  BigInt omega;
  std::optional<std::uint32_t> b;
  std::set<std::uint32_t> greedy_sizes;
  std::optional<std::uint32_t> I;
  std::map<std::string, std::vector<Point>> witnesses;
  std::optional<std::uint32_t> predicted_b, predicted_greedy;
  std::string predicted_b_source, predicted_greedy_source;
  std::vector<std::string> failures;  // every violated claim, empty when all hold
  double elapsed_ms = 0;

  bool match() const { return failures.empty(); }
  nlohmann::json to_json(bool with_timing) const;
};

ClosedFormInput closed_form_input(const DiagonalGroup& G);

BaseReport verify_paper_case(const DiagonalGroup& G, const StabilizerChain& chain,
                             const BaseStatsRequest& req = {}, const SearchBudget& budget = {});
BaseReport verify_paper_case(const DiagonalConfig& config, const CatalogOptions& opts = {},
                             std::uint64_t omega_cap = kDefaultOmegaCap);

}  // namespace diagbase
