#include "harmsum/reference_tables.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "harmsum/oracle.hpp"

namespace harmsum {

namespace detail {
extern const std::string_view kTable1Text;
extern const std::string_view kTable2Text;
}  // namespace detail

std::string_view table1_text() { return detail::kTable1Text; }
std::string_view table2_text() { return detail::kTable2Text; }

const GridCells& table1_reference() {
  static const GridCells cells = grid_from_csv(table1_text());
  return cells;
}

bool Table2Row::consistent() const {
  return profile.size() + 1 == m_p && std::accumulate(profile.begin(), profile.end(), std::uint64_t{0}) == count;
}

std::vector<Table2Row> parse_table2(std::string_view text) {
  std::vector<Table2Row> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    Table2Row row;
    std::string profile;
    if (!(fields >> row.p >> row.m_p >> row.count >> profile)) throw std::invalid_argument("bad table row: " + line);
    std::istringstream levels(profile);
    std::string cell;
    while (std::getline(levels, cell, ',')) row.profile.push_back(std::stoull(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

const std::vector<Table2Row>& table2_reference() {
  static const std::vector<Table2Row> rows = parse_table2(table2_text());
  return rows;
}

std::optional<Table2Row> table2_row(std::uint32_t p) {
  for (const auto& row : table2_reference()) {
    if (row.p == p) return row;
  }
  return std::nullopt;
}

std::vector<CellDiff> diff_grid(const GridCells& reference, const GridCells& computed) {
  std::vector<CellDiff> out;
  for (const auto& [key, count] : computed) {
    const auto it = reference.find(key);
    if (it == reference.end()) {
      out.push_back({key.first, key.second, std::nullopt, count});
    } else if (it->second != count) {
      out.push_back({key.first, key.second, it->second, count});
    }
  }
  return out;
}

SearchResult p2_oracle_result(std::uint64_t n_max) {
  const ScanReport scan = brute_scan(2, mpz_class(1), n_max, 1);
  SearchResult r;
  r.p = 2;
  r.y = 1;
  r.base = 1;
  r.status = SearchStatus::Complete;
  for (auto n : scan.hits) {
    r.elements.emplace_back(static_cast<unsigned long>(n));
    r.residues.emplace_back(2, 1, 0L);
  }
  r.m_p = 1;
  if (!r.elements.empty()) {
    r.level_profile.push_back(r.elements.size());
    r.m_p = 2;
  }
  return r;
}

std::vector<SearchResult> compute_grid(std::uint32_t pmax, const SearchConfig& config, unsigned jobs,
                                       const GridProgress& progress) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> cells;
  for (auto p : primes_below(pmax)) {
    if (p == 2) continue;
    for (std::uint32_t y = 1; y < p; ++y) cells.emplace_back(p, y);
  }
  std::vector<SearchResult> results(cells.size());
  std::atomic<std::size_t> next{0};
  std::mutex report;
  std::exception_ptr failure;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      try {
        const auto start = std::chrono::steady_clock::now();
        results[i] = search(cells[i].first, cells[i].second, config);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (progress) {
          std::lock_guard lock(report);
          progress(results[i], seconds);
        }
      } catch (...) {
        std::lock_guard lock(report);
        if (!failure) failure = std::current_exception();
        next = cells.size();
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(cells.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

GridCells cells_of(const std::vector<SearchResult>& results) {
  GridCells cells;
  for (const auto& r : results) cells[{r.p, static_cast<std::uint32_t>(r.y.get_ui())}] = r.elements.size();
  return cells;
}

}  // namespace harmsum
