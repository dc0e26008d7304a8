#include <algorithm>
#include <cmath>

#include "pnt/construction.hpp"
#include "pnt/error.hpp"

namespace pnt {
namespace {

Rational exact(double v) { return from_double(v); }

Rational pow4(const Rational& e) { return e * e * e * e; }

bool gap_ok(double x, double y, const Rational& e, const Rational& e4) {
  const Rational g = exact(y) - exact(x);
  return g > e4 && g < e;
}

}  // namespace

FiniteMemberSet::FiniteMemberSet(std::vector<double> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool FiniteMemberSet::contains(double x) const { return std::binary_search(members_.begin(), members_.end(), x); }

std::optional<double> FiniteMemberSet::first_in(double lo, double hi) const {
  const auto it = std::upper_bound(members_.begin(), members_.end(), lo);
  if (it == members_.end() || !(*it < hi)) return std::nullopt;
  return *it;
}

std::optional<std::pair<double, double>> FiniteMemberSet::pair_in(std::int64_t n, double eps) const {
  const double lo = static_cast<double>(n), hi = lo + 1.0;
  const auto first = std::lower_bound(members_.begin(), members_.end(), lo);
  const auto last = std::lower_bound(members_.begin(), members_.end(), hi);
  const Rational e = exact(eps), e4 = pow4(e);
  for (auto i = first; i != last; ++i) {
    for (auto j = i + 1; j != last; ++j) {
      if (exact(*j) - exact(*i) >= e) break;
      if (gap_ok(*i, *j, e, e4)) return std::make_pair(*i, *j);
    }
  }
  return std::nullopt;
}

std::uint64_t min_k_for(double eps) {
  if (!(eps > 0.0)) raise(ErrorKind::Precondition, "eps must be positive");
  const Rational q = Rational(2) / pow4(exact(eps));
  BigInt c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  if (!c.fits_ulong_p()) raise(ErrorKind::Overflow, "ceil(2/eps^4) exceeds 64 bits");
  return c.get_ui();
}

SumWitness solve_sums(const MemberSet& X, double eps, unsigned k, const std::vector<std::int64_t>& ns,
                      bool enforce_k_bound) {
  if (!(eps > 0.0)) raise(ErrorKind::Precondition, "eps must be positive");
  if (k < 1 || ns.size() != k) raise(ErrorKind::Precondition, "need exactly k levels");
  if (enforce_k_bound && k < min_k_for(eps)) {
    raise(ErrorKind::Precondition,
          "k = " + std::to_string(k) + " is below ceil(2/eps^4) = " + std::to_string(min_k_for(eps)));
  }
  SumWitness w;
  w.eps = eps;
  w.k = k;
  w.ns = ns;
  for (std::int64_t n : ns) {
    const auto p = X.pair_in(n, eps);
    if (!p) raise(ErrorKind::HypothesisViolation, "no admissible pair in [" + std::to_string(n) + ", n+1)");
    w.xs.push_back(p->first);
    w.ys.push_back(p->second);
  }

  // u_i = x_1 + ... + x_i + y_{i+1} + ... + y_k, exact; decreasing in i.
  std::vector<Rational> u(k + 1);
  u[0] = 0;
  for (double y : w.ys) u[0] += exact(y);
  for (unsigned i = 1; i <= k; ++i) u[i] = u[i - 1] - exact(w.ys[i - 1]) + exact(w.xs[i - 1]);
  for (const auto& v : u) w.u.push_back(to_double(v));
  const Rational e = exact(eps);
  if (enforce_k_bound && u[0] - u[k] < Rational(k) * pow4(e)) {
    raise(ErrorKind::ConstructionBug, "u_0 - u_k below k eps^4");
  }

  // Smallest member strictly inside (u_k, u_0); the double bounds are refined
  // until the candidate clears u_k exactly.
  double lo = std::nextafter(to_double(u[k]), -INFINITY);
  const double hi = std::nextafter(to_double(u[0]), INFINITY);
  std::optional<double> z;
  while (true) {
    z = X.first_in(lo, hi);
    if (!z) raise(ErrorKind::NoZ, "no member of X between u_k and u_0");
    const Rational zq = exact(*z);
    if (zq <= u[k]) {
      lo = *z;
      continue;
    }
    if (zq >= u[0]) raise(ErrorKind::NoZ, "no member of X between u_k and u_0");
    break;
  }
  w.z = *z;
  const Rational zq = exact(w.z);

  std::size_t i0 = 0;
  for (std::size_t i = 0; i <= k; ++i) {
    if (u[i] >= zq) i0 = i;
  }
  if (!(u[i0] < zq + e)) raise(ErrorKind::ConstructionBug, "u-sequence step exceeds eps");
  w.i0 = i0;
  for (unsigned i = 1; i <= k; ++i) w.zs.push_back(i <= i0 ? w.xs[i - 1] : w.ys[i - 1]);
  return w;
}

SumCheck validate_sum_witness(const MemberSet& X, const SumWitness& w) {
  SumCheck c;
  c.membership = X.contains(w.z) && std::all_of(w.zs.begin(), w.zs.end(), [&](double v) { return X.contains(v); });
  c.property_I = w.zs.size() == w.ns.size();
  Rational sum = 0;
  for (std::size_t i = 0; i < w.zs.size() && c.property_I; ++i) {
    const double lo = static_cast<double>(w.ns[i]);
    c.property_I = w.zs[i] >= lo && w.zs[i] < lo + 1.0;
    sum += exact(w.zs[i]);
  }
  const Rational z = exact(w.z);
  c.property_II = c.property_I && sum >= z && sum < z + exact(w.eps);
  return c;
}

}  // namespace pnt
