// harmsum: solution sets of Σ y^j/j ≡ 0 (mod p) from the command line.

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "harmsum/errors.hpp"
#include "harmsum/fibonacci.hpp"
#include "harmsum/io.hpp"
#include "harmsum/oracle.hpp"
#include "harmsum/post_analysis.hpp"
#include "harmsum/reference_tables.hpp"
#include "harmsum/tree_search.hpp"

namespace {

using namespace harmsum;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIncomplete = 3;
constexpr int kExitMismatch = 4;

struct Options {
  std::string config_file;
  SearchConfig search;
  unsigned jobs = 1;
  bool quiet = false;
};

// key=value lines; '#' starts a comment.
void apply_config_file(const std::string& path, Options& opt) {
  std::istringstream in(read_text_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw CLI::ValidationError("config", "expected key=value, got '" + line + "'");
    }
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "initial_precision") opt.search.initial_precision = std::stoi(value);
    else if (key == "max_precision") opt.search.max_precision = std::stoi(value);
    else if (key == "max_nodes") opt.search.max_nodes = std::stoull(value);
    else if (key == "max_elements") opt.search.max_elements = std::stoull(value);
    else if (key == "jobs") opt.jobs = static_cast<unsigned>(std::stoul(value));
    else throw CLI::ValidationError("config", "unknown key '" + key + "'");
  }
}

std::string join(const std::vector<std::uint64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

std::string join(const std::vector<BigNatural>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + to_decimal(v[i]);
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

RunManifest manifest_for(const std::string& command, json parameters, const Options& opt) {
  RunManifest m;
  m.command = command;
  m.parameters = std::move(parameters);
  m.config = to_json(opt.search);
  m.config["jobs"] = opt.jobs;
  m.timestamp = utc_timestamp();
  return m;
}

void print_summary(const SearchResult& r, bool all_elements) {
  std::cout << "J_" << r.p << "(" << r.y << "): " << to_string(r.status) << "\n"
            << "  |J| = " << r.count() << ", M_p = " << r.m_p << ", precision = " << r.precision_used << "\n"
            << "  levels: " << (r.level_profile.empty() ? "-" : join(r.level_profile)) << "\n";
  if (r.elements.empty()) return;
  if (all_elements) {
    std::cout << "  elements: " << join(r.elements) << "\n";
  } else {
    std::cout << "  smallest " << r.elements.front() << ", largest " << r.elements.back() << " ("
              << decimal_digits(r.elements.back()) << " digits)\n";
  }
}

int cmd_search(std::uint32_t p, std::uint32_t y, bool all, const std::string& json_out, const std::string& csv_out,
               const Options& opt) {
  const auto start = std::chrono::steady_clock::now();
  const SearchResult r = search(p, y, opt.search);
  print_summary(r, all);
  RunManifest m = manifest_for("search", {{"p", p}, {"y", y}}, opt);
  m.wall_seconds = seconds_since(start);
  if (!json_out.empty()) write_text_file(json_out, with_manifest(to_json(r), m).dump(2) + "\n");
  if (!csv_out.empty()) {
    std::string csv = "level,n\n";
    std::size_t level = 0, seen = 0;
    for (const auto& n : r.elements) {
      while (level < r.level_profile.size() && seen >= r.level_profile[level]) {
        seen -= r.level_profile[level];
        ++level;
      }
      csv += std::to_string(level + 1) + "," + to_decimal(n) + "\n";
      ++seen;
    }
    write_text_file(csv_out, csv);
  }
  return r.complete() ? kExitOk : kExitIncomplete;
}

int cmd_table1(std::uint32_t pmax, std::uint64_t p2_bound, const std::string& out, const std::string& json_out,
               const Options& opt) {
  const auto start = std::chrono::steady_clock::now();
  GridProgress progress;
  if (!opt.quiet) {
    progress = [](const SearchResult& r, double secs) {
      std::cerr << "  p=" << r.p << " y=" << r.y << " |J|=" << r.count() << " (" << to_string(r.status) << ", "
                << secs << " s)\n";
    };
  }
  std::vector<SearchResult> results = compute_grid(pmax, opt.search, opt.jobs, progress);
  results.insert(results.begin(), p2_oracle_result(p2_bound));
  const GridCells cells = cells_of(results);

  std::vector<std::uint32_t> primes = primes_below(pmax);
  const std::string csv = grid_to_csv(cells, primes);
  std::cout << csv;
  if (!out.empty()) write_text_file(out, csv);

  bool incomplete = false;
  for (const auto& r : results) {
    if (!r.complete()) {
      incomplete = true;
      std::cerr << "incomplete: p=" << r.p << " y=" << r.y << " (" << to_string(r.status) << ")\n";
    }
  }
  const DensityStats d = incomplete ? DensityStats{} : density_stats(results);
  if (!incomplete) std::cout << "# empty sets: " << d.empty << " of " << d.total << "\n";

  int code = incomplete ? kExitIncomplete : kExitOk;
  if (pmax == 50) {
    const auto diffs = diff_grid(table1_reference(), cells);
    for (const auto& c : diffs) {
      std::cerr << "mismatch: p=" << c.p << " y=" << c.y << " published "
                << (c.expected ? std::to_string(*c.expected) : "-") << ", computed "
                << (c.actual ? std::to_string(*c.actual) : "-") << "\n";
    }
    std::cout << "# table diff: " << diffs.size() << " of " << cells.size() << " cells differ\n";
    if (!diffs.empty()) code = kExitMismatch;
  }
  if (!json_out.empty()) {
    json grid = json::array();
    for (const auto& r : results) {
      grid.push_back({{"p", r.p}, {"y", r.y.get_str()}, {"status", to_string(r.status)}, {"count", r.count()},
                      {"m_p", r.m_p}, {"level_profile", r.level_profile}, {"precision_used", r.precision_used}});
    }
    RunManifest m = manifest_for("table1", {{"pmax", pmax}, {"p2_bound", p2_bound}}, opt);
    m.wall_seconds = seconds_since(start);
    write_text_file(json_out, with_manifest({{"cells", grid}, {"empty", d.empty}, {"total", d.total}}, m).dump(2) + "\n");
  }
  return code;
}

int cmd_table2(std::uint32_t pmax, std::uint32_t y, const std::string& out, const Options& opt) {
  std::vector<std::uint32_t> primes;
  for (auto p : primes_below(pmax)) {
    if (p > 2 && p > y) primes.push_back(p);
  }
  std::vector<SearchResult> results(primes.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < primes.size(); i = next++) results[i] = search(primes[i], y, opt.search);
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < std::max(1u, opt.jobs); ++t) pool.emplace_back(worker);
    worker();
  }

  std::ostringstream table;
  table << "p M_p |J| levels\n";
  int code = kExitOk;
  std::size_t mismatches = 0;
  for (const auto& r : results) {
    if (!r.complete()) {
      code = kExitIncomplete;
      std::cerr << "incomplete: p=" << r.p << " (" << to_string(r.status) << ")\n";
    }
    if (!r.elements.empty()) table << r.p << " " << r.m_p << " " << r.count() << " " << join(r.level_profile) << "\n";
    if (y != 2) continue;
    const auto ref = table2_row(r.p);
    const bool agree = ref ? (ref->m_p == r.m_p && ref->count == r.count() && ref->profile == r.level_profile)
                           : r.elements.empty();
    if (!agree) {
      ++mismatches;
      std::cerr << "mismatch: p=" << r.p << " published ";
      if (ref) {
        std::cerr << ref->m_p << " " << ref->count << " " << join(ref->profile)
                  << (ref->consistent() ? "" : " (row is internally inconsistent)");
      } else {
        std::cerr << "absent";
      }
      std::cerr << ", computed " << r.m_p << " " << r.count() << " " << join(r.level_profile) << "\n";
    }
  }
  std::cout << table.str();
  if (y == 2) std::cout << "# table diff: " << mismatches << " of " << results.size() << " primes differ\n";
  if (!out.empty()) write_text_file(out, table.str());
  if (mismatches > 0 && code == kExitOk) code = kExitMismatch;
  return code;
}

int cmd_prime_power(std::uint32_t p, std::uint32_t y, const std::string& x, int s, const Options& opt) {
  PrimePowerResult r;
  if (!x.empty()) {
    r = prime_power_set(p, from_decimal(x), s, opt.search);
  } else {
    const SearchResult parent = search(p, y, opt.search);
    if (!parent.complete()) {
      std::cerr << "parent search incomplete (" << to_string(parent.status) << ")\n";
      return kExitIncomplete;
    }
    r = prime_power_filter(parent, s);
  }
  std::cout << "J_" << prime_power(p, s) << "(" << r.base_residue << ") with " << r.base_description << "\n"
            << "  " << (r.complete ? "complete" : "incomplete") << ", " << r.elements.size() << " elements\n"
            << "  {" << join(r.elements) << "}\n";
  if (!r.undecided.empty()) std::cout << "  undecided: {" << join(r.undecided) << "}\n";
  return r.complete ? kExitOk : kExitIncomplete;
}

int cmd_wieferich(std::uint32_t pmax) {
  const auto found = wieferich_scan(pmax);
  std::cout << "Wieferich primes below " << pmax << ":";
  for (auto p : found) std::cout << " " << p;
  std::cout << "\n";
  return kExitOk;
}

int cmd_fib(std::uint32_t p, bool conjecture2, std::uint64_t nmax) {
  if (conjecture2) {
    const Conjecture2Report r = conjecture2_scan(nmax);
    std::cout << "f_{4n} ≡ 0 (mod 5) for n ≤ " << nmax << ": " << (r.holds ? "holds" : "fails");
    if (r.counterexample) std::cout << " (first counterexample n = " << *r.counterexample << ")";
    std::cout << "\n";
    return r.holds ? kExitOk : kExitMismatch;
  }
  FibSearchConfig config;
  config.budget = nmax;
  const SearchResult r = fib_search(p, config);
  std::cout << "f_n ≡ 0 (mod " << p << "): " << to_string(r.status) << "\n"
            << "  " << r.count() << " elements, levels " << (r.level_profile.empty() ? "-" : join(r.level_profile))
            << "\n  {" << join(r.elements) << "}\n";
  return r.complete() ? kExitOk : kExitIncomplete;
}

int cmd_verify(std::uint32_t p, std::uint32_t y, std::uint64_t nmax, const Options& opt) {
  const SearchResult tree = search(p, y, opt.search);
  const ScanReport scan = brute_scan(p, mpz_class(y), nmax, 1);
  std::vector<std::uint64_t> below;
  for (const auto& n : tree.elements) {
    if (n <= nmax) below.push_back(n.get_ui());
  }
  const bool agree = below == scan.hits;
  std::cout << "tree: " << below.size() << " elements ≤ " << nmax << " (" << to_string(tree.status)
            << "), oracle: " << scan.hits.size() << " hits, " << (agree ? "agree" : "DISAGREE") << "\n";
  if (!agree) return kExitMismatch;
  return tree.complete() ? kExitOk : kExitIncomplete;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solution sets of G_n(y) = Σ y^j/j ≡ 0 (mod p) by p-adic tree search"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--config", opt.config_file, "key=value file with budget defaults")->check(CLI::ExistingFile);
  app.add_flag("-q,--quiet", opt.quiet, "no progress output");

  std::uint32_t p = 0, y = 0, pmax = 50, s = 2;
  std::uint64_t nmax = 1'000'000, p2_bound = 10'000;
  int precision = 0, max_precision = 0;
  std::uint64_t max_nodes = 0;
  unsigned jobs = 0;
  std::string json_out, csv_out, out, x;
  bool all = false, conjecture2 = false;

  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--precision", precision, "initial p-adic precision")->check(CLI::Range(2, 1 << 16));
    sub->add_option("--max-precision", max_precision, "top of the precision doubling ladder")
        ->check(CLI::Range(2, 1 << 16));
    sub->add_option("--max-nodes", max_nodes, "node expansion budget");
  };

  auto* search_cmd = app.add_subcommand("search", "compute J_p(y)");
  search_cmd->add_option("--p", p, "odd prime")->required();
  search_cmd->add_option("--y", y, "base, 1 ≤ y < p")->required();
  search_cmd->add_flag("--elements", all, "list every element");
  search_cmd->add_option("--json", json_out, "write the result as JSON");
  search_cmd->add_option("--csv", csv_out, "write (level, n) rows as CSV");
  add_budget(search_cmd);

  auto* table1_cmd = app.add_subcommand("table1", "grid of |J_p(y)| for odd p < pmax");
  table1_cmd->add_option("--pmax", pmax, "prime bound")->check(CLI::Range(3u, 200u));
  table1_cmd->add_option("--out", out, "write the grid as CSV");
  table1_cmd->add_option("--json", json_out, "write per-cell results as JSON");
  table1_cmd->add_option("--p2-bound", p2_bound, "brute-force bound for the p = 2 cell");
  table1_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 256u));
  add_budget(table1_cmd);

  auto* table2_cmd = app.add_subcommand("table2", "primes p < pmax with J_p(y) nonempty");
  table2_cmd->add_option("--pmax", pmax, "prime bound")->check(CLI::Range(3u, 100000u));
  table2_cmd->add_option("--y", y, "base")->default_val(2);
  table2_cmd->add_option("--out", out, "write the rows to a file");
  table2_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 256u));
  add_budget(table2_cmd);

  auto* pp_cmd = app.add_subcommand("prime-power", "J_{p^s}(y^p) from a completed search");
  pp_cmd->add_option("--p", p, "odd prime")->required();
  auto* y_opt = pp_cmd->add_option("--y", y, "base of the parent search J_p(y)");
  auto* x_opt = pp_cmd->add_option("--x", x, "residue x; J_{p^s}(x) is found through a p-th root of x");
  y_opt->excludes(x_opt);
  pp_cmd->add_option("--s", s, "exponent")->check(CLI::Range(1u, 1000u));
  add_budget(pp_cmd);

  auto* wief_cmd = app.add_subcommand("wieferich", "primes with 2^{p-1} ≡ 1 (mod p²)");
  wief_cmd->add_option("--pmax", pmax, "prime bound")->check(CLI::Range(3u, 100'000'000u));

  auto* fib_cmd = app.add_subcommand("fib", "Fibonacci sums f_n = Σ F_j/j");
  fib_cmd->add_option("--p", p, "odd prime other than 5");
  fib_cmd->add_flag("--conjecture2", conjecture2, "check f_{4n} ≡ 0 (mod 5)");
  fib_cmd->add_option("--nmax", nmax, "summation budget or scan bound");

  auto* verify_cmd = app.add_subcommand("verify", "compare the tree search with a brute-force scan");
  verify_cmd->add_option("--p", p, "odd prime")->required();
  verify_cmd->add_option("--y", y, "base")->required();
  verify_cmd->add_option("--nmax", nmax, "scan bound")->check(CLI::Range(std::uint64_t{1}, kScanGuard));
  add_budget(verify_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (!opt.config_file.empty()) apply_config_file(opt.config_file, opt);
    if (precision) opt.search.initial_precision = precision;
    if (max_precision) opt.search.max_precision = max_precision;
    if (max_nodes) opt.search.max_nodes = max_nodes;
    if (jobs) opt.jobs = jobs;
    opt.search.max_precision = std::max(opt.search.max_precision, opt.search.initial_precision);

    if (*search_cmd) return cmd_search(p, y, all, json_out, csv_out, opt);
    if (*table1_cmd) return cmd_table1(pmax, p2_bound, out, json_out, opt);
    if (*table2_cmd) return cmd_table2(pmax, y, out, opt);
    if (*pp_cmd) {
      if (x.empty() && y == 0) throw CLI::ValidationError("prime-power", "one of --y or --x is required");
      return cmd_prime_power(p, y, x, static_cast<int>(s), opt);
    }
    if (*wief_cmd) return cmd_wieferich(pmax);
    if (*fib_cmd) {
      if (!conjecture2 && p == 0) throw CLI::ValidationError("fib", "--p is required unless --conjecture2 is given");
      return cmd_fib(p, conjecture2, nmax);
    }
    if (*verify_cmd) return cmd_verify(p, y, nmax, opt);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnsupportedPrime& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidBase& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnreachableBase& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
