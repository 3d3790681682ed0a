#include "harmsum/tree_search.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "harmsum/errors.hpp"

namespace harmsum {

namespace {

struct Frontier {
  mpz_class n;
  mpz_class g;  // G_n(w) mod p^prec
  int prec;
  mpz_class xn;  // x^n mod p^{prec+V}
  mpz_class wn;  // w^n mod p^{prec+V}
};

struct Powers {
  std::vector<mpz_class> x;  // x^k mod p^{s+V}, k < p
  std::vector<mpz_class> w;
};

Powers small_powers(const CoefficientSet& coeffs) {
  const std::uint32_t p = coeffs.prime();
  const mpz_class& mod = prime_power(p, coeffs.precision() + coeffs.scale());
  Powers out;
  out.x.assign(p, mpz_class(1));
  out.w.assign(p, mpz_class(1));
  for (std::uint32_t k = 1; k < p; ++k) {
    out.x[k] = out.x[k - 1] * coeffs.x() % mod;
    out.w[k] = out.w[k - 1] * coeffs.w() % mod;
  }
  return out;
}

mpz_class reduced(const mpz_class& v, const mpz_class& mod) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), mod.get_mpz_t());
  return r;
}

std::vector<Frontier> seeds(const CoefficientSet& coeffs, const Powers& pw) {
  const std::uint32_t p = coeffs.prime();
  const int s = coeffs.precision();
  const mpz_class& mod = prime_power(p, s);
  std::vector<Frontier> out;
  mpz_class g = 0, inv;
  for (std::uint32_t k = 1; k < p; ++k) {
    const mpz_class kk(k);
    mpz_invert(inv.get_mpz_t(), kk.get_mpz_t(), mod.get_mpz_t());
    g = (g + pw.w[k] * inv) % mod;
    if (mpz_divisible_ui_p(g.get_mpz_t(), p)) out.push_back({kk, g, s, pw.x[k], pw.w[k]});
  }
  return out;
}

void expand(const Frontier& node, const CoefficientSet& coeffs, const Powers& pw, std::vector<Frontier>& out) {
  const std::uint32_t p = coeffs.prime();
  const int child_prec = node.prec - 1;
  if (child_prec < 1) {
    throw PrecisionExhausted("node " + node.n.get_str() + " has no digit of precision left to descend");
  }
  const int scale = coeffs.scale();
  const mpz_class& mod = prime_power(p, child_prec);
  const mpz_class& wide = prime_power(p, child_prec + scale);

  const mpz_class n_mod = reduced(node.n, wide);
  const mpz_class xn = reduced(node.xn, wide);
  const mpz_class wn = reduced(node.wn, wide);
  mpz_class g;
  mpz_divexact_ui(g.get_mpz_t(), node.g.get_mpz_t(), p);
  g += coeffs.delta_raw(n_mod, xn, wn, child_prec);
  mpz_fdiv_r(g.get_mpz_t(), g.get_mpz_t(), mod.get_mpz_t());

  mpz_class xp, wp;
  const mpz_class pp(p);
  mpz_powm(xp.get_mpz_t(), xn.get_mpz_t(), pp.get_mpz_t(), wide.get_mpz_t());
  mpz_powm(wp.get_mpz_t(), wn.get_mpz_t(), pp.get_mpz_t(), wide.get_mpz_t());

  // One inversion for all p−1 denominators pn+k.
  const mpz_class base = node.n * p;
  std::vector<mpz_class> prefix(p);
  prefix[0] = 1;
  for (std::uint32_t k = 1; k < p; ++k) {
    prefix[k] = prefix[k - 1] * (base + k);
    mpz_tdiv_r(prefix[k].get_mpz_t(), prefix[k].get_mpz_t(), mod.get_mpz_t());
  }
  mpz_class running;
  mpz_invert(running.get_mpz_t(), prefix[p - 1].get_mpz_t(), mod.get_mpz_t());
  std::vector<mpz_class> inv(p);
  for (std::uint32_t k = p - 1; k >= 1; --k) {
    inv[k] = running * prefix[k - 1];
    mpz_tdiv_r(inv[k].get_mpz_t(), inv[k].get_mpz_t(), mod.get_mpz_t());
    running *= base + k;
    mpz_tdiv_r(running.get_mpz_t(), running.get_mpz_t(), mod.get_mpz_t());
  }

  mpz_class wk, term;
  for (std::uint32_t k = 0; k < p; ++k) {
    if (k > 0) {
      wk = wp * pw.w[k];
      mpz_tdiv_r(wk.get_mpz_t(), wk.get_mpz_t(), mod.get_mpz_t());
      term = wk * inv[k];
      g += term;
      mpz_tdiv_r(g.get_mpz_t(), g.get_mpz_t(), mod.get_mpz_t());
    }
    if (!mpz_divisible_ui_p(g.get_mpz_t(), p)) continue;
    Frontier child{base + k, g, child_prec, xp * pw.x[k], wp * pw.w[k]};
    mpz_tdiv_r(child.xn.get_mpz_t(), child.xn.get_mpz_t(), wide.get_mpz_t());
    mpz_tdiv_r(child.wn.get_mpz_t(), child.wn.get_mpz_t(), wide.get_mpz_t());
    out.push_back(std::move(child));
  }
}

struct RunOutcome {
  SearchResult result;
  bool exhausted = false;
};

RunOutcome run_once(std::uint32_t p, const mpz_class& base, int s0, const SearchConfig& config) {
  const CoefficientSet coeffs = compute_coefficients(p, base, s0);
  const Powers pw = small_powers(coeffs);

  RunOutcome out;
  SearchResult& r = out.result;
  r.p = p;
  r.base = base;
  r.precision_used = s0;

  std::vector<Frontier> level = seeds(coeffs, pw);
  while (!level.empty()) {
    r.level_profile.push_back(level.size());
    for (const auto& node : level) {
      r.elements.push_back(node.n);
      r.residues.emplace_back(p, node.prec, node.g);
    }
    if (r.elements.size() > config.max_elements) {
      r.status = SearchStatus::NodeBudgetExceeded;
      break;
    }
    std::vector<Frontier> next;
    try {
      for (const auto& node : level) {
        if (r.nodes_expanded >= config.max_nodes) {
          r.status = SearchStatus::NodeBudgetExceeded;
          break;
        }
        expand(node, coeffs, pw, next);
        ++r.nodes_expanded;
      }
    } catch (const PrecisionExhausted&) {
      r.status = SearchStatus::PrecisionExhausted;
      out.exhausted = true;
    }
    if (r.status != SearchStatus::Complete) break;
    level = std::move(next);
  }
  r.m_p = r.level_profile.size() + 1;
  return out;
}

}  // namespace

std::string to_string(SearchStatus status) {
  switch (status) {
    case SearchStatus::Complete:
      return "Complete";
    case SearchStatus::PrecisionExhausted:
      return "PrecisionExhausted";
    case SearchStatus::NodeBudgetExceeded:
      return "NodeBudgetExceeded";
  }
  return "Unknown";
}

SearchStatus parse_status(const std::string& text) {
  for (auto s : {SearchStatus::Complete, SearchStatus::PrecisionExhausted, SearchStatus::NodeBudgetExceeded}) {
    if (to_string(s) == text) return s;
  }
  throw std::invalid_argument("unknown search status '" + text + "'");
}

void SearchConfig::validate() const {
  if (initial_precision < 2) throw std::invalid_argument("initial precision must be at least 2");
  if (max_precision < initial_precision) throw std::invalid_argument("max precision is below the initial precision");
}

std::optional<ResidueValue> SearchResult::residue_of(const BigNatural& n) const {
  const auto it = std::lower_bound(elements.begin(), elements.end(), n);
  if (it == elements.end() || *it != n) return std::nullopt;
  return residues[static_cast<std::size_t>(it - elements.begin())];
}

SearchResult search(std::uint32_t p, std::uint32_t y, const SearchConfig& config) {
  if (p == 2) throw UnsupportedPrime("p = 2 is handled by the oracle only");
  if (!is_prime(p)) throw UnsupportedPrime(std::to_string(p) + " is not prime");
  if (y < 1 || y >= p) {
    throw InvalidBase("y = " + std::to_string(y) + " lies outside 1.." + std::to_string(p - 1));
  }
  const mpz_class base = y == 1 ? mpz_class(p + 1) : mpz_class(y);
  SearchResult r = search_base(p, base, config);
  r.y = y;
  return r;
}

SearchResult search_base(std::uint32_t p, const mpz_class& base, const SearchConfig& config) {
  config.validate();
  int s0 = config.initial_precision;
  while (true) {
    RunOutcome run = run_once(p, base, s0, config);
    if (!run.exhausted || s0 >= config.max_precision) {
      run.result.y = base;
      return std::move(run.result);
    }
    s0 = std::min(2 * s0, config.max_precision);
  }
}

std::vector<SearchNode> root_nodes(const CoefficientSet& coeffs) {
  std::vector<SearchNode> out;
  for (const auto& f : seeds(coeffs, small_powers(coeffs))) {
    out.push_back({{static_cast<std::uint32_t>(f.n.get_ui())}, ResidueValue(coeffs.prime(), f.prec, f.g), 1});
  }
  return out;
}

std::vector<SearchNode> expand_node(const SearchNode& node, const CoefficientSet& coeffs) {
  const std::uint32_t p = coeffs.prime();
  if (node.value.prime() != p) throw std::invalid_argument("node and coefficients use different primes");
  if (!mpz_divisible_ui_p(node.value.residue().get_mpz_t(), p)) {
    throw std::invalid_argument("only nodes with G_n ≡ 0 (mod p) can be expanded");
  }
  if (node.value.precision() > coeffs.precision() + 1) {
    throw std::invalid_argument("node carries more precision than the coefficient set supports");
  }
  const int prec = node.value.precision();
  if (prec < 2) throw PrecisionExhausted("node " + node.n(p).get_str() + " has no digit of precision left to descend");
  const mpz_class& wide = prime_power(p, prec - 1 + coeffs.scale());
  const mpz_class n = node.n(p);
  const mpz_class e = reduce_exponent(n, p, prec - 1 + coeffs.scale());
  Frontier f{n, node.value.residue(), prec, 0, 0};
  mpz_powm(f.xn.get_mpz_t(), coeffs.x().get_mpz_t(), e.get_mpz_t(), wide.get_mpz_t());
  mpz_powm(f.wn.get_mpz_t(), coeffs.w().get_mpz_t(), e.get_mpz_t(), wide.get_mpz_t());

  std::vector<Frontier> children;
  expand(f, coeffs, small_powers(coeffs), children);
  std::vector<SearchNode> out;
  for (auto& c : children) {
    SearchNode child{node.digits, ResidueValue(p, c.prec, c.g), node.depth + 1};
    mpz_class k;
    mpz_fdiv_r_ui(k.get_mpz_t(), c.n.get_mpz_t(), p);
    child.digits.push_back(static_cast<std::uint32_t>(k.get_ui()));
    out.push_back(std::move(child));
  }
  return out;
}

bool verify_tree_property(const SearchResult& result) {
  std::vector<BigNatural> sorted = result.elements;
  std::sort(sorted.begin(), sorted.end());
  mpz_class parent;
  for (const auto& n : sorted) {
    if (n < result.p) continue;
    mpz_fdiv_q_ui(parent.get_mpz_t(), n.get_mpz_t(), result.p);
    if (!std::binary_search(sorted.begin(), sorted.end(), parent)) return false;
  }
  return true;
}

}  // namespace harmsum
