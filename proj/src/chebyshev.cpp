#include "pnt/chebyshev.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>

#include "pnt/error.hpp"
#include "pnt/exact.hpp"
#include "pnt/pow8.hpp"
#include "pnt/primality.hpp"

namespace pnt {
namespace {

// Relative slack below which a log-space comparison is re-decided exactly.
constexpr long double kTieTolerance = 1e-9L;

bool near_tie(long double slack, long double scale) {
  return std::fabs(slack) <= kTieTolerance * std::max<long double>(1.0L, std::fabs(scale));
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

BigInt power(std::uint64_t base, std::uint64_t exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), to_big(base).get_mpz_t(), exp);
  return r;
}

}  // namespace

LogFactorials::LogFactorials(std::uint64_t max) : table_(max + 1, 0.0L) {
  long double sum = 0, carry = 0;  // Kahan compensation
  for (std::uint64_t k = 2; k <= max; ++k) {
    const long double y = std::log(static_cast<long double>(k)) - carry;
    const long double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
    table_[k] = sum;
  }
}

long double LogFactorials::log_factorial(std::uint64_t m) const {
  if (m >= table_.size()) raise(ErrorKind::RangeTooLarge, "log factorial table ends at " + std::to_string(max()));
  return table_[m];
}

long double LogFactorials::log_binom(std::uint64_t n, std::uint64_t k) const {
  if (k > n) raise(ErrorKind::InvalidRange, "binomial with k > n");
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

unsigned legendre_multiplicity(std::uint64_t p, std::uint64_t n) {
  if (n < 1) raise(ErrorKind::InvalidRange, "n must be positive");
  if (!is_prime(p)) raise(ErrorKind::CompositeModulus, std::to_string(p) + " is not prime");
  const std::uint64_t m = 2 * n;
  unsigned total = 0;
  for (std::uint64_t pk = p; pk <= m; pk *= p) {
    const std::uint64_t term = m / pk - 2 * (n / pk);
    if (term > 1) raise(ErrorKind::ConstructionBug, "Legendre summand exceeds 1");
    total += static_cast<unsigned>(term);
    if (pk > m / p) break;
  }
  return total;
}

BinomialAudit binomial_audit(std::uint64_t n, const LogFactorials& lf, bool exact_product) {
  if (n < 1) raise(ErrorKind::InvalidRange, "n must be positive");
  if (2 * n > 0xFFFFFFFFull) raise(ErrorKind::RangeTooLarge, "2n exceeds 32 bits");
  BinomialAudit a;
  a.n = n;
  a.log_binom = lf.log_binom(2 * n, n);
  BigInt product = 1;
  for (std::uint32_t p : primes_up_to(static_cast<std::uint32_t>(2 * n))) {
    const unsigned e = legendre_multiplicity(p, n);
    unsigned nu = 0;
    for (std::uint64_t pk = p; pk <= 2 * n; pk *= p) ++nu;
    a.within_nu = a.within_nu && e <= nu;
    if (e == 0) continue;
    a.multiplicities.emplace_back(p, e);
    a.log_from_multiplicities += e * std::log(static_cast<long double>(p));
    if (exact_product) product *= power(p, e);
  }
  a.stirling_estimate = 2.0L * n * std::log(2.0L);
  a.stirling_error = a.log_binom - a.stirling_estimate;
  if (exact_product) a.product_matches = product == binomial(2 * n, n);
  return a;
}

long double beta(long double sigma) {
  if (!(sigma > 1.0L) || !(sigma <= 16.0L)) {
    raise(ErrorKind::SigmaOutOfRange, "sigma must lie in (1, 16]");
  }
  return sigma * std::log(sigma) - (sigma - 1) * std::log(sigma - 1);
}

ChebyshevContext::ChebyshevContext(std::uint64_t limit, const SieveConfig& config)
    : pi_(prime_pi_table(limit, config)), lf_(limit) {}

std::uint64_t ChebyshevContext::pi(std::uint64_t n) const {
  if (n >= pi_.size()) raise(ErrorKind::RangeTooLarge, "pi table ends at " + std::to_string(limit()));
  return pi_[n];
}

BoundVerdict lower_binomial_inequality(std::uint64_t n, const ChebyshevContext& ctx) {
  if (n < 1) raise(ErrorKind::InvalidRange, "n must be positive");
  if (2 * n > ctx.limit()) raise(ErrorKind::RangeTooLarge, "2n beyond the prepared prime table");
  BoundVerdict v;
  v.kind = "binomial-lower";
  v.x = static_cast<double>(n);
  v.lower = 1;
  v.upper = 2 * n;
  v.count = ctx.pi(2 * n);
  v.lhs = ctx.log_factorials().log_binom(2 * n, n);
  v.bound_value = std::log(static_cast<long double>(2 * n)) * static_cast<long double>(v.count);
  v.slack = v.bound_value - v.lhs;
  v.holds = v.slack >= 0;
  if (near_tie(v.slack, v.bound_value)) {
    v.exact_tiebreak = true;
    v.holds = binomial(2 * n, n) <= power(2 * n, v.count);
  }
  return v;
}

BoundVerdict upper_binomial_inequality(std::uint64_t x, double sigma, const ChebyshevContext& ctx) {
  if (!(sigma > 1.0) || !(sigma <= 16.0)) raise(ErrorKind::SigmaOutOfRange, "sigma must lie in (1, 16]");
  if (x < 1) raise(ErrorKind::InvalidRange, "x must be positive");
  const long double scaled = std::floor(static_cast<long double>(sigma) * static_cast<long double>(x));
  const auto X = static_cast<std::uint64_t>(scaled);
  if (X > ctx.limit()) raise(ErrorKind::RangeTooLarge, "sigma x beyond the prepared prime table");
  BoundVerdict v;
  v.kind = "binomial-upper";
  v.x = static_cast<double>(x);
  v.param = sigma;
  v.lower = x;
  v.upper = X;
  v.count = ctx.pi(X) - ctx.pi(x);
  v.lhs = ctx.log_factorials().log_binom(X, x);
  v.bound_value = std::log(static_cast<long double>(x)) * static_cast<long double>(v.count);
  v.slack = v.lhs - v.bound_value;
  v.holds = v.slack >= 0;
  if (near_tie(v.slack, v.lhs)) {
    v.exact_tiebreak = true;
    v.holds = binomial(X, x) >= power(x, v.count);
  }
  return v;
}

BoundVerdict window_lower_bound(double x, const SieveConfig& config) {
  if (!(x >= 1.0)) raise(ErrorKind::Precondition, "x must be >= 1");
  BoundVerdict v;
  v.kind = "window-lower";
  v.x = x;
  v.param = 1.0;
  const auto c = census_pow8(x, x + 1.0, false, config);
  v.lower = c.lower;
  v.upper = c.upper;
  v.count = c.count;
  v.lhs = static_cast<long double>(c.count);
  v.bound_value = pow8(x) / x;
  v.slack = v.lhs - v.bound_value;
  v.holds = v.slack >= 0;
  return v;
}

BoundVerdict window_upper_bound(double x, double eps, const SieveConfig& config, double eps_max) {
  if (!(eps > 0.0) || !(eps <= eps_max)) {
    raise(ErrorKind::EpsilonOutOfRange, "epsilon must lie in (0, " + std::to_string(eps_max) + "]");
  }
  if (!(x >= 1.0)) raise(ErrorKind::Precondition, "x must be >= 1");
  BoundVerdict v;
  v.kind = "window-upper";
  v.x = x;
  v.param = eps;
  const auto c = census_pow8(x, x + eps, false, config);
  v.lower = c.lower;
  v.upper = c.upper;
  v.count = c.count;
  v.lhs = static_cast<long double>(c.count);
  v.bound_value = std::sqrt(static_cast<long double>(eps)) * pow8(x) / x;
  v.slack = v.bound_value - v.lhs;
  v.holds = v.slack >= 0;
  return v;
}

namespace {

// Least grid value from which every later row holds.
std::optional<double> onward_threshold(const std::vector<BoundVerdict>& rows) {
  std::optional<double> from;
  for (auto it = rows.rbegin(); it != rows.rend() && it->holds; ++it) from = it->x;
  return from;
}

}  // namespace

Calibration calibrate_x0_eps0(std::vector<double> x_grid, std::vector<double> eps_grid, const SieveConfig& config) {
  std::sort(x_grid.begin(), x_grid.end());
  std::sort(eps_grid.begin(), eps_grid.end());
  Calibration cal;
  for (double x : x_grid) cal.lower_rows.push_back(window_lower_bound(x, config));
  cal.x0 = onward_threshold(cal.lower_rows);
  for (double eps : eps_grid) {
    EpsThreshold t;
    t.eps = eps;
    for (double x : x_grid) t.rows.push_back(window_upper_bound(x, eps, config, std::max(eps, 0.5)));
    t.x_from = onward_threshold(t.rows);
    cal.upper.push_back(std::move(t));
  }
  return cal;
}

StirlingAudit stirling_audit(const LogFactorials& lf, std::uint64_t max_m) {
  if (max_m > lf.max()) raise(ErrorKind::RangeTooLarge, "Stirling audit beyond log factorial table");
  StirlingAudit s;
  s.max_m = max_m;
  for (std::uint64_t m = 2; m <= max_m; ++m) {
    const long double lm = std::log(static_cast<long double>(m));
    const long double err = std::fabs(lf.log_factorial(m) - (m * lm - m));
    s.max_abs_error = std::max(s.max_abs_error, err);
    s.c_st = std::max(s.c_st, err / lm);
    if (err > 2 * lm + 2) ++s.violations;
  }
  return s;
}

DyadicDecomposition dyadic_decomposition(unsigned x, const SieveConfig& config) {
  if (x < 1 || 3 * (x + 1) > 60) raise(ErrorKind::RangeTooLarge, "dyadic decomposition needs 1 <= x <= 19");
  const std::uint64_t base = std::uint64_t{1} << (3 * x);
  const std::uint64_t top = base << 3;
  auto count = [&](std::uint64_t lo, std::uint64_t hi) -> std::uint64_t {
    lo = std::max<std::uint64_t>(lo, 1);
    return hi > lo ? census_int(lo, hi, false, config).count : 0;
  };
  DyadicDecomposition d;
  d.x = x;
  d.total = count(1, top);
  d.direct = count(base, top);
  for (unsigned n = 0; n <= 3 * x; ++n) {
    DyadicPiece piece;
    piece.upper = base >> n;
    piece.lower = base >> (n + 1);
    piece.count = count(piece.lower, piece.upper);
    piece.sigma2_estimate = static_cast<long double>(base) / std::ldexp(1.0L, static_cast<int>(n + 1)) / x;
    d.pieces_sum += piece.count;
    d.pieces.push_back(piece);
  }
  d.identity_holds = d.total - d.pieces_sum == d.direct;
  return d;
}

std::vector<long double> sqrt_eps_beta_ratios(const std::vector<double>& eps) {
  std::vector<long double> out;
  out.reserve(eps.size());
  for (double e : eps) {
    out.push_back(std::sqrt(static_cast<long double>(e)) / beta(pow8(e)));
  }
  return out;
}

}  // namespace pnt
