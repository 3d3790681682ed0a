#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "harmsum/io.hpp"
#include "harmsum/tree_search.hpp"

namespace harmsum {

/// Published |J_p(y)| for p < 50, including the p = 2 cell.
const GridCells& table1_reference();
std::string_view table1_text();

struct Table2Row {
  std::uint32_t p = 0;
  std::uint64_t m_p = 0;
  std::uint64_t count = 0;
  std::vector<std::uint64_t> profile;

  /// M_p − 1 equals the number of listed levels and the levels sum to the count.
  bool consistent() const;
};

/// Published rows (p, M_p(2), |J_p(2)|, level sizes) for p < 550 with J_p(2) nonempty.
const std::vector<Table2Row>& table2_reference();
std::string_view table2_text();
std::vector<Table2Row> parse_table2(std::string_view text);
std::optional<Table2Row> table2_row(std::uint32_t p);

struct CellDiff {
  std::uint32_t p = 0;
  std::uint32_t y = 0;
  std::optional<std::uint64_t> expected;
  std::optional<std::uint64_t> actual;
};

/// Cells of `computed` that are missing from or differ from `reference`.
std::vector<CellDiff> diff_grid(const GridCells& reference, const GridCells& computed);

/// p = 2 is outside the series method; its single cell comes from brute_scan up to n_max.
SearchResult p2_oracle_result(std::uint64_t n_max = 10'000);

using GridProgress = std::function<void(const SearchResult&, double seconds)>;

/// search(p, y) for every odd prime p < pmax and 1 ≤ y < p, ordered by (p, y), spread over
/// `jobs` worker threads. Output is independent of the job count.
std::vector<SearchResult> compute_grid(std::uint32_t pmax, const SearchConfig& config = {}, unsigned jobs = 1,
                                       const GridProgress& progress = {});

GridCells cells_of(const std::vector<SearchResult>& results);

}  // namespace harmsum
