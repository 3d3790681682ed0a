#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "harmsum/bignum.hpp"
#include "harmsum/residue.hpp"
#include "harmsum/series.hpp"

namespace harmsum {

enum class SearchStatus { Complete, PrecisionExhausted, NodeBudgetExceeded };

std::string to_string(SearchStatus status);
/// Inverse of to_string; throws std::invalid_argument on unknown names.
SearchStatus parse_status(const std::string& text);

struct SearchConfig {
  int initial_precision = 24;
  /// The doubling ladder stops here. J_13(9) alone needs about 380 digits.
  int max_precision = 1024;
  std::uint64_t max_nodes = 10'000'000;
  std::uint64_t max_elements = 10'000'000;

  void validate() const;
};

/// A member n of the solution set, addressed by its base-p digits.
struct SearchNode {
  std::vector<std::uint32_t> digits;
  /// G_n(y^p) mod p^{s₀−depth+1}.
  ResidueValue value;
  int depth = 1;

  BigNatural n(std::uint32_t p) const { return from_base_digits(digits, p); }
};

struct SearchResult {
  std::uint32_t p = 0;
  /// Base as requested, and the base actually searched (1 is replaced by 1+p).
  mpz_class y;
  mpz_class base;
  SearchStatus status = SearchStatus::Complete;
  std::vector<BigNatural> elements;
  std::vector<std::uint64_t> level_profile;
  /// One more than the number of nonempty levels.
  std::uint64_t m_p = 1;
  /// residues[i] is G_{elements[i]}(base^p) with whatever precision was left at that node.
  std::vector<ResidueValue> residues;
  int precision_used = 0;
  std::uint64_t nodes_expanded = 0;

  bool complete() const { return status == SearchStatus::Complete; }
  std::size_t count() const { return elements.size(); }
  /// Stored residue for n, if n is an element.
  std::optional<ResidueValue> residue_of(const BigNatural& n) const;
};

/// J_p(y) for 1 ≤ y ≤ p−1. y = 1 is searched through the base 1+p, which has the same set.
SearchResult search(std::uint32_t p, std::uint32_t y, const SearchConfig& config = {});

/// Same algorithm for any base coprime to p, e.g. a p-th root of a residue class mod p^s.
SearchResult search_base(std::uint32_t p, const mpz_class& base, const SearchConfig& config = {});

/// The children pn+k (0 ≤ k < p) whose value vanishes mod p, at one digit less precision.
/// Throws PrecisionExhausted when the node has fewer than two digits left.
std::vector<SearchNode> expand_node(const SearchNode& node, const CoefficientSet& coeffs);

/// Level-1 nodes: k < p with G_k(y^p) ≡ 0 (mod p), valued at the coefficient precision.
std::vector<SearchNode> root_nodes(const CoefficientSet& coeffs);

/// Every element n ≥ p has ⌊n/p⌋ among the elements.
bool verify_tree_property(const SearchResult& result);

}  // namespace harmsum
