#include "pnt/theorem_checks.hpp"

#include <algorithm>
#include <cmath>

#include "pnt/error.hpp"
#include "pnt/primality.hpp"
#include "pnt/simd.hpp"

namespace pnt {
namespace {

constexpr std::size_t kHistSlots = 64;  // Omega(n) < 63 below 2^63

OmegaHistogram histogram_of(std::span<const std::uint8_t> omega, std::uint64_t N) {
  OmegaHistogram h;
  h.N = N;
  h.hist.assign(kHistSlots, 0);
  simd::histogram(omega, h.hist);
  while (h.hist.size() > 1 && h.hist.back() == 0) h.hist.pop_back();
  return h;
}

ArithmeticTable table_to(std::uint64_t N, const SieveConfig& config) {
  if (N < 1) raise(ErrorKind::InvalidRange, "N must be positive");
  return sieve_range(1, N + 1, config);
}

std::uint64_t grid_max(const std::vector<std::uint64_t>& grid) {
  if (grid.empty()) raise(ErrorKind::InvalidRange, "empty grid");
  return *std::max_element(grid.begin(), grid.end());
}

}  // namespace

OmegaHistogram omega_histogram(std::uint64_t N, const SieveConfig& config) {
  const auto table = table_to(N, config);
  return histogram_of(table.omega(), N);
}

OmegaHistogram omega_histogram(const ArithmeticTable& table, std::uint64_t N) {
  if (N < 1 || table.lo() != 1 || table.hi() <= N) {
    raise(ErrorKind::OutOfRange, "table does not cover [1, " + std::to_string(N) + "]");
  }
  return histogram_of(table.slice(1, N + 1), N);
}

Complex omega_sum(const OmegaHistogram& h, const TestFunction& g, unsigned shift) {
  Complex s = 0;
  for (std::size_t v = 0; v < h.hist.size(); ++v) {
    if (h.hist[v] != 0) s += static_cast<double>(h.hist[v]) * g(v + shift);
  }
  return s;
}

ShiftDiscrepancy shift_discrepancy(const TestFunction& f, std::uint64_t N, const SieveConfig& config) {
  return shift_discrepancy(f, omega_histogram(N, config));
}

ShiftDiscrepancy shift_discrepancy(const TestFunction& f, const OmegaHistogram& h) {
  ShiftDiscrepancy r;
  r.f_id = f.id();
  r.N = h.N;
  r.sup = f.sup();
  if (f.integer_valued()) {
    std::int64_t num = 0;
    for (std::size_t v = 0; v < h.hist.size(); ++v) {
      const auto d = std::llround(f(v + 1).real()) - std::llround(f(v).real());
      num += static_cast<std::int64_t>(h.hist[v]) * d;
    }
    r.numerator = num;
    r.value = static_cast<double>(num < 0 ? -num : num) / static_cast<double>(h.N);
  } else {
    Complex d = 0;
    for (std::size_t v = 0; v < h.hist.size(); ++v) {
      if (h.hist[v] != 0) d += static_cast<double>(h.hist[v]) * (f(v + 1) - f(v));
    }
    r.value = std::abs(d) / static_cast<double>(h.N);
  }
  return r;
}

std::vector<MeanRow> liouville_mean_trace(const std::vector<std::uint64_t>& N_grid, const SieveConfig& config) {
  std::vector<MeanRow> rows;
  for (std::uint64_t N : N_grid) {
    MeanRow r;
    r.N = N;
    r.L = liouville_summatory(N, config);
    r.mean = static_cast<double>(r.L) / static_cast<double>(N);
    rows.push_back(r);
  }
  return rows;
}

bool non_increasing_within(std::span<const double> values, double slack) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (std::abs(values[i]) > slack * std::abs(values[i - 1])) return false;
  }
  return true;
}

DensityReport pillai_selberg_density(unsigned m, std::uint64_t N, const SieveConfig& config) {
  if (m < 1) raise(ErrorKind::InvalidRange, "modulus must be >= 1");
  return pillai_selberg_density(m, omega_histogram(N, config));
}

DensityReport pillai_selberg_density(unsigned m, const OmegaHistogram& h) {
  if (m < 1) raise(ErrorKind::InvalidRange, "modulus must be >= 1");
  DensityReport r;
  r.m = m;
  r.N = h.N;
  r.counts.assign(m, 0);
  for (std::size_t v = 0; v < h.hist.size(); ++v) r.counts[v % m] += h.hist[v];
  Rational total = 0;
  for (std::uint64_t c : r.counts) {
    r.densities.push_back(make_rational(c, h.N));
    total += r.densities.back();
    r.max_deviation = std::max(r.max_deviation, std::abs(to_double(r.densities.back()) - 1.0 / m));
  }
  r.sums_to_one = total == 1;
  return r;
}

std::vector<WeylRow> erdos_delange_weyl(const std::string& alpha, const std::vector<std::uint64_t>& N_grid,
                                        const SieveConfig& config) {
  const TestFunction g = TestFunction::parse("exp:" + alpha);
  const auto table = table_to(grid_max(N_grid), config);
  std::vector<WeylRow> rows;
  for (std::uint64_t N : N_grid) {
    const auto h = omega_histogram(table, N);
    rows.push_back({N, std::abs(omega_sum(h, g)) / static_cast<double>(N)});
  }
  return rows;
}

SelbergRow selberg_formula(std::uint64_t x, std::span<const std::uint8_t> is_prime) {
  if (x < 2) raise(ErrorKind::InvalidRange, "x must be >= 2");
  if (is_prime.size() <= x) raise(ErrorKind::OutOfRange, "prime flags do not reach x");
  // theta[y] = sum of log p over p <= y
  std::vector<long double> theta(x + 1, 0.0L);
  long double sq = 0;
  for (std::uint64_t n = 2; n <= x; ++n) {
    theta[n] = theta[n - 1];
    if (is_prime[n]) {
      const long double l = std::log(static_cast<long double>(n));
      theta[n] += l;
      sq += l * l;
    }
  }
  long double pairs = 0;
  for (std::uint64_t p = 2; p <= x / 2; ++p) {
    if (is_prime[p]) pairs += std::log(static_cast<long double>(p)) * theta[x / p];
  }
  SelbergRow r;
  r.x = x;
  r.lhs = sq + pairs;
  r.main = 2.0L * static_cast<long double>(x) * std::log(static_cast<long double>(x));
  r.ratio = r.lhs / r.main;
  r.error_over_x = std::fabs(r.lhs - r.main) / static_cast<long double>(x);
  return r;
}

std::vector<SelbergRow> selberg_formula_trace(const std::vector<std::uint64_t>& x_grid, const SieveConfig& config) {
  const auto flags = prime_flags(grid_max(x_grid), config);
  std::vector<SelbergRow> rows;
  for (std::uint64_t x : x_grid) rows.push_back(selberg_formula(x, flags));
  return rows;
}

std::vector<PiRow> pi_log_trace(const std::vector<std::uint64_t>& N_grid, const SieveConfig& config) {
  std::vector<PiRow> rows;
  for (std::uint64_t N : N_grid) {
    if (N < 2) raise(ErrorKind::InvalidRange, "N must be >= 2");
    PiRow r;
    r.N = N;
    r.pi = census_int(1, N, false, config).count;
    r.value = static_cast<double>(r.pi) * std::log(static_cast<double>(N)) / static_cast<double>(N);
    rows.push_back(r);
  }
  return rows;
}

TransferAudit transfer_audit(const WeightedSet& B, const TestFunction& g, std::uint64_t N,
                             const SieveConfig& config) {
  if (B.elements.empty()) raise(ErrorKind::EmptySet, "B must be non-empty");
  const std::uint64_t q_max = B.elements.back();
  if (q_max > 0xFFFFFFFFull || N / q_max < q_max) raise(ErrorKind::Precondition, "need N >= max(B)^2");
  return transfer_audit(B, g, table_to(N, config), N);
}

TransferAudit transfer_audit(const WeightedSet& B, const TestFunction& g, const ArithmeticTable& table,
                             std::uint64_t N) {
  if (B.elements.empty()) raise(ErrorKind::EmptySet, "B must be non-empty");
  const std::uint64_t q_max = B.elements.back();
  if (q_max > 0xFFFFFFFFull || N / q_max < q_max) raise(ErrorKind::Precondition, "need N >= max(B)^2");

  TransferAudit r;
  r.B = B.elements;
  r.g_id = g.id();
  r.N = N;
  r.lhs = omega_sum(omega_histogram(table, N), g) / static_cast<double>(N);

  // Same accumulation order in numerator and weight total, so g = 1 gives 1 exactly.
  Complex num = 0;
  double den = 0;
  for (std::uint64_t q : B.elements) {
    const std::uint64_t M = N / q;
    const auto shift = big_omega(q);
    const Complex A = omega_sum(omega_histogram(table, M), g, shift) / static_cast<double>(M);
    const double w = 1.0 / static_cast<double>(q);
    num += w * A;
    den += w;
  }
  r.rhs = num / den;
  r.difference = std::abs(r.lhs - r.rhs);

  const auto tk = tk_identity_check(B, N);
  const double a = to_double(B.logweight_total);
  const double size = static_cast<double>(B.elements.size());
  const double sqrtN = std::sqrt(static_cast<double>(N));
  r.tk_averaged = to_double(tk.averaged_rhs);
  r.bound = g.sup() * (std::sqrt(r.tk_averaged) + (std::sqrt(3.0) + 1.0) * size / a / sqrtN);
  r.tight_bound = g.sup() * (std::sqrt(to_double(tk.averaged_lhs)) + size / (a * static_cast<double>(N)));
  r.holds = r.difference <= r.bound;
  return r;
}

PairingAudit pairing_transfer_audit(std::span<const BigInt> B1, std::span<const BigInt> B2, unsigned k, double eta,
                                    const TestFunction& g, std::uint64_t N, const SieveConfig& config) {
  if (B1.size() != B2.size()) {
    raise(ErrorKind::PairingMissing,
          "sets have sizes " + std::to_string(B1.size()) + " and " + std::to_string(B2.size()));
  }
  if (B1.empty()) raise(ErrorKind::EmptySet, "sets must be non-empty");
  if (!(eta >= 0.0) || !(eta < 1.0)) raise(ErrorKind::Precondition, "eta must lie in [0, 1)");

  const BigInt bigN = to_big(N);
  auto quotient = [&](const BigInt& q) -> std::uint64_t {
    if (q < 1 || q > bigN) raise(ErrorKind::InvalidRange, "element " + q.get_str() + " outside [1, N]");
    const BigInt m = bigN / q;
    return static_cast<std::uint64_t>(m.get_ui());
  };
  std::vector<std::uint64_t> M1(B1.size()), M2(B2.size());
  std::uint64_t max_M = 0, min_M = N;
  for (std::size_t j = 0; j < B1.size(); ++j) {
    M1[j] = quotient(B1[j]);
    M2[j] = quotient(B2[j]);
    max_M = std::max({max_M, M1[j], M2[j]});
    min_M = std::min({min_M, M1[j], M2[j]});
  }

  // prefix[M] = sum over n <= M of g(Omega(n) + k)
  const auto table = table_to(max_M, config);
  std::vector<Complex> prefix(max_M + 1, 0.0);
  const auto omega = table.omega();
  for (std::uint64_t n = 1; n <= max_M; ++n) prefix[n] = prefix[n - 1] + g(omega[n - 1] + k);
  auto A = [&](std::uint64_t M) { return prefix[M] / static_cast<double>(M); };

  PairingAudit r;
  r.g_id = g.id();
  r.N = N;
  r.k = k;
  r.eta = eta;
  r.size = B1.size();
  r.min_M = min_M;
  Complex s1 = 0, s2 = 0;
  double w1 = 0, w2 = 0;
  for (std::size_t j = 0; j < B1.size(); ++j) {
    const double a = 1.0 / B1[j].get_d();
    const double b = 1.0 / B2[j].get_d();
    const Complex x = A(M1[j]), y = A(M2[j]);
    s1 += a * x;
    w1 += a;
    s2 += b * y;
    w2 += b;
    r.max_pair_gap = std::max(r.max_pair_gap, std::abs(x - y));
  }
  r.avg_B1 = s1 / w1;
  r.avg_B2 = s2 / w2;
  r.difference = std::abs(r.avg_B1 - r.avg_B2);
  r.C = 2.0 + 2.0 / (1.0 - eta);
  r.bound = r.C * eta + (2.0 + 2.0 * eta) * g.sup() / static_cast<double>(min_M);
  r.holds = r.difference <= r.bound;
  return r;
}

PairingAudit pairing_transfer_audit(const SetPair& pair, const TestFunction& g, std::uint64_t N,
                                    const SieveConfig& config) {
  std::vector<BigInt> b1, b2;
  b1.reserve(pair.B1.size());
  b2.reserve(pair.B2.size());
  for (const auto& m : pair.B1) b1.push_back(m.norm);
  for (const auto& m : pair.B2) b2.push_back(m.norm);
  return pairing_transfer_audit(b1, b2, pair.k, pair.eta, g, N, config);
}

}  // namespace pnt
