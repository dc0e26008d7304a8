#include "pnt/averages.hpp"

#include <algorithm>
#include <numeric>

#include "pnt/error.hpp"
#include "pnt/rng.hpp"

namespace pnt {
namespace {

void require_nonempty(std::span<const std::uint64_t> A) {
  if (A.empty()) raise(ErrorKind::EmptySet, "average over an empty set");
}

template <typename T, typename F>
T value_at(const F& f, std::uint64_t n) {
  auto v = f(n);
  if (!v) raise(ErrorKind::UndefinedValue, "function undefined at " + std::to_string(n));
  return *v;
}

// floor(N / lcm(q, r)) without overflow.
std::uint64_t floor_over_lcm(std::uint64_t N, std::uint64_t q, std::uint64_t r) {
  const std::uint64_t g = std::gcd(q, r);
  const unsigned __int128 l = static_cast<unsigned __int128>(q / g) * r;
  return l > N ? 0 : static_cast<std::uint64_t>(N / static_cast<std::uint64_t>(l));
}

bool lcm_divides(const std::vector<std::uint64_t>& B, std::uint64_t N) {
  return std::all_of(B.begin(), B.end(), [N](std::uint64_t q) { return N % q == 0; });
}

}  // namespace

WeightedSet WeightedSet::make(std::vector<std::uint64_t> elements) {
  if (elements.empty()) raise(ErrorKind::EmptySet, "weighted set must be non-empty");
  std::sort(elements.begin(), elements.end());
  if (elements.front() == 0) raise(ErrorKind::InvalidRange, "weighted set elements must be >= 1");
  if (std::adjacent_find(elements.begin(), elements.end()) != elements.end()) {
    raise(ErrorKind::InvalidRange, "weighted set elements must be distinct");
  }
  WeightedSet w;
  w.logweight_total = sum_reciprocals(std::span<const std::uint64_t>(elements));
  w.elements = std::move(elements);
  return w;
}

std::vector<std::uint64_t> initial_segment(std::uint64_t x) {
  std::vector<std::uint64_t> out(x);
  std::iota(out.begin(), out.end(), std::uint64_t{1});
  return out;
}

Complex cesaro_avg(const FunctionTable& f, std::span<const std::uint64_t> A) {
  require_nonempty(A);
  std::complex<long double> sum = 0;
  for (std::uint64_t n : A) {
    const Complex v = value_at<Complex>(f, n);
    sum += std::complex<long double>(v.real(), v.imag());
  }
  sum /= static_cast<long double>(A.size());
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

Complex log_avg(const FunctionTable& f, std::span<const std::uint64_t> A) {
  require_nonempty(A);
  std::complex<long double> num = 0;
  long double den = 0;
  for (std::uint64_t n : A) {
    if (n == 0) raise(ErrorKind::UndefinedValue, "logarithmic weight undefined at 0");
    const Complex v = value_at<Complex>(f, n);
    const long double w = 1.0L / static_cast<long double>(n);
    num += std::complex<long double>(v.real(), v.imag()) * w;
    den += w;
  }
  num /= den;
  return {static_cast<double>(num.real()), static_cast<double>(num.imag())};
}

Rational cesaro_avg_exact(const RationalFunction& f, std::span<const std::uint64_t> A) {
  require_nonempty(A);
  Rational sum = 0;
  for (std::uint64_t n : A) sum += value_at<Rational>(f, n);
  return sum / Rational(to_big(static_cast<std::uint64_t>(A.size())));
}

Rational log_avg_exact(const RationalFunction& f, std::span<const std::uint64_t> A) {
  require_nonempty(A);
  std::vector<BigInt> num, den;
  num.reserve(A.size());
  den.reserve(A.size());
  for (std::uint64_t n : A) {
    if (n == 0) raise(ErrorKind::UndefinedValue, "logarithmic weight undefined at 0");
    const Rational v = value_at<Rational>(f, n);
    num.push_back(v.get_num());
    den.push_back(v.get_den() * to_big(n));
  }
  return tree_sum(num, den) / sum_reciprocals(A);
}

std::uint64_t phi(std::uint64_t m, std::uint64_t n) {
  if (m == 0 || n == 0) raise(ErrorKind::InvalidRange, "phi needs positive arguments");
  return std::gcd(m, n) - 1;
}

DeviationReport tk_identity_check(const WeightedSet& B, std::uint64_t N, std::size_t precision_bits) {
  if (N < 1) raise(ErrorKind::InvalidRange, "N must be positive");
  const auto& q = B.elements;
  const std::size_t m = q.size();
  DeviationReport r;
  r.N = N;
  r.B = q;
  r.a = B.logweight_total;

  // sum_n c(n) = sum_q floor(N/q); sum_n c(n)^2 = sum_{q,q'} floor(N / lcm(q,q')).
  BigInt s1 = 0, s2 = 0;
  std::vector<BigInt> lcms;
  lcms.reserve(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    s1 += to_big(N / q[i]);
    for (std::size_t j = 0; j < m; ++j) {
      s2 += to_big(floor_over_lcm(N, q[i], q[j]));
      const std::uint64_t g = std::gcd(q[i], q[j]);
      lcms.push_back(to_big(static_cast<unsigned __int128>(q[i] / g) * q[j]));
    }
  }
  const Rational Nq(to_big(N));
  r.lhs = (Rational(s2) - 2 * r.a * Rational(s1)) / Nq + r.a * r.a;
  r.lhs.canonicalize();
  // Phi(q,q')/(qq') = 1/lcm(q,q') - 1/(qq'), summed over ordered pairs.
  r.phi_double_sum = sum_reciprocals(lcms) - r.a * r.a;
  check_precision(r.lhs, precision_bits, "tk lhs");
  check_precision(r.phi_double_sum, precision_bits, "tk phi double sum");

  r.difference = r.lhs - r.phi_double_sum;
  r.error_budget = Rational(to_big(static_cast<std::uint64_t>(3 * m * m)), to_big(N));
  r.error_budget.canonicalize();
  const Rational a2 = r.a * r.a;
  r.averaged_lhs = r.lhs / a2;
  r.averaged_rhs = r.phi_double_sum / a2;
  r.lcm_divides_N = lcm_divides(q, N);
  r.within_budget = abs(r.difference) <= r.error_budget;
  return r;
}

Rational tk_lhs_direct(const WeightedSet& B, std::uint64_t N) {
  if (N < 1) raise(ErrorKind::InvalidRange, "N must be positive");
  std::vector<std::uint64_t> hist(B.elements.size() + 1, 0);
  for (std::uint64_t n = 1; n <= N; ++n) {
    std::size_t c = 0;
    for (std::uint64_t q : B.elements) c += (n % q == 0);
    ++hist[c];
  }
  Rational total = 0;
  for (std::size_t c = 0; c < hist.size(); ++c) {
    if (hist[c] == 0) continue;
    const Rational d = Rational(static_cast<unsigned long>(c)) - B.logweight_total;
    total += Rational(to_big(hist[c])) * d * d;
  }
  return total / Rational(to_big(N));
}

TkAuditReport tk_error_constant_audit(std::size_t trials, std::uint64_t seed, const TkAuditParams& params) {
  if (trials < 1) raise(ErrorKind::Precondition, "trials must be >= 1");
  if (params.max_element < 1 || params.max_size < 1 || params.max_N < 1) {
    raise(ErrorKind::Precondition, "audit parameters must be positive");
  }
  Rng rng(seed);
  TkAuditReport report;
  for (std::size_t t = 0; t < trials; ++t) {
    TkAuditInstance inst;
    inst.N = rng.uniform(1, params.max_N);
    std::vector<std::uint64_t> pool;
    if (t % 2 == 1) {
      for (std::uint64_t d = 1; d <= std::min(params.max_element, inst.N); ++d) {
        if (inst.N % d == 0) pool.push_back(d);
      }
    } else {
      pool.resize(params.max_element);
      std::iota(pool.begin(), pool.end(), std::uint64_t{1});
    }
    const std::size_t want = static_cast<std::size_t>(rng.uniform(1, std::min(params.max_size, pool.size())));
    // Partial Fisher-Yates draw of `want` distinct elements.
    for (std::size_t i = 0; i < want; ++i) {
      const auto j = static_cast<std::size_t>(rng.uniform(i, pool.size() - 1));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(want);
    const auto B = WeightedSet::make(pool);
    const auto rep = tk_identity_check(B, inst.N);
    inst.B = B.elements;
    inst.difference = rep.difference;
    inst.error_budget = rep.error_budget;
    inst.lcm_divides_N = rep.lcm_divides_N;
    inst.within_budget = rep.within_budget;
    inst.zero_when_required = !rep.lcm_divides_N || rep.difference == 0;
    const double scale = static_cast<double>(want * want) / static_cast<double>(inst.N);
    inst.ratio = std::abs(to_double(rep.difference)) / scale;

    report.max_ratio = std::max(report.max_ratio, inst.ratio);
    report.lcm_instances += inst.lcm_divides_N;
    report.all_within = report.all_within && inst.within_budget;
    report.all_zero_when_lcm_divides = report.all_zero_when_lcm_divides && inst.zero_when_required;
    report.instances.push_back(std::move(inst));
  }
  return report;
}

}  // namespace pnt
