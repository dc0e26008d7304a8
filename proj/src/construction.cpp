#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pnt/construction.hpp"
#include "pnt/error.hpp"

namespace pnt {
namespace {

constexpr std::uint64_t kDirectSeparationLimit = 1'000'000;

// Rational from a double parameter; parameters are taken at their binary value.
Rational exact(double v) { return from_double(v); }

bool gen_less(const GenInt& a, const GenInt& b) {
  if (a.norm != b.norm) return a.norm < b.norm;
  return a.ids < b.ids;
}

bool gen_equal(const GenInt& a, const GenInt& b) { return a.norm == b.norm && a.ids == b.ids; }

// Saturating product of set sizes.
std::uint64_t tuple_count(const std::vector<std::vector<std::uint64_t>>& A) {
  std::uint64_t n = 1;
  for (const auto& a : A) {
    if (a.empty()) return 0;
    if (n > std::numeric_limits<std::uint64_t>::max() / a.size()) return std::numeric_limits<std::uint64_t>::max();
    n *= a.size();
  }
  return n;
}

// Calls visit(tuple) for every element of A_1 x ... x A_k, last index fastest.
template <typename Visit>
void for_each_tuple(const std::vector<std::vector<std::uint64_t>>& A, Visit&& visit) {
  const std::size_t k = A.size();
  std::vector<std::size_t> idx(k, 0);
  std::vector<std::int64_t> ns(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) ns[i] = static_cast<std::int64_t>(A[i][idx[i]]);
    visit(ns);
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (++idx[i] < A[i].size()) break;
      idx[i] = 0;
      if (i == 0) return;
    }
  }
}

// Lower estimate of log10 N_target at D = 1 from the two sufficient
// conditions of the (c) argument:
//   B1: N^k / 8^(2k+1) >= 1/eta
//   B2: (1 + 1/N)^k - 1 <= eta 8^(-6k), i.e. N >= about k 8^(6k) / eta.
double log10_N_estimate(unsigned k, double eta) {
  const double l8 = std::log10(8.0);
  const double b1 = (2.0 * k + 1.0) / k * l8 - std::log10(eta) / k;
  const double b2 = std::log10(static_cast<double>(k)) + 6.0 * k * l8 - std::log10(eta);
  return std::max(b1, b2);
}

}  // namespace

IndexFamily build_index_family(unsigned k, double x0, const Rational& N_target, std::uint64_t budget,
                               bool require_target_at_least_one) {
  if (k < 1) raise(ErrorKind::Precondition, "k must be >= 1");
  if (N_target <= 0 || (require_target_at_least_one && N_target < 1)) {
    raise(ErrorKind::Precondition, "N_target must be >= 1");
  }
  IndexFamily f;
  f.k = k;
  f.x0 = x0;
  f.N_target = N_target;
  const long double target = static_cast<long double>(to_double(N_target));
  std::uint64_t used = 0;
  std::uint64_t stride = static_cast<std::uint64_t>(std::floor(std::max(x0, 2.0 * k))) + 1;

  for (unsigned i = 0; i < k; ++i) {
    // sum_{j <= J} 1/(j s) = H_J / s, so J is the least index with H_J >= N s.
    const long double need = target * static_cast<long double>(stride);
    const long double est = std::exp(std::min(need - 0.5772156649L, 4000.0L));
    if (est > static_cast<long double>(budget - used) * 1.01L) {
      raise(ErrorKind::BudgetExceeded, "A_" + std::to_string(i + 1) + " needs about " +
                                           std::to_string(static_cast<double>(est)) + " elements; budget leaves " +
                                           std::to_string(budget - used));
    }
    std::vector<std::uint64_t> A;
    long double h = 0;
    std::uint64_t J = 0;
    // Float scan with a small safety margin, then settled exactly below.
    while (h < need * (1.0L - 1e-15L) && used + J < budget) {
      ++J;
      h += 1.0L / static_cast<long double>(J);
    }
    for (std::uint64_t j = 1; j <= J; ++j) A.push_back(j * stride);
    Rational H = sum_reciprocals(std::span<const std::uint64_t>(A));
    while (H < N_target) {
      if (used + A.size() >= budget) {
        raise(ErrorKind::BudgetExceeded, "A_" + std::to_string(i + 1) + " reached budget with harmonic sum " +
                                             std::to_string(to_double(H)) + " < " + to_string(N_target));
      }
      A.push_back((A.size() + 1) * stride);
      H += Rational(1, 1) / Rational(to_big(A.back()));
    }
    used += A.size();
    f.s.push_back(stride);
    f.harmonic.push_back(H);
    f.A.push_back(std::move(A));

    // Next stride exceeds max(A_1 + ... + A_i).
    std::uint64_t top = 0;
    for (const auto& a : f.A) {
      if (top > std::numeric_limits<std::uint64_t>::max() - a.back()) {
        raise(ErrorKind::Overflow, "index family sums exceed 64 bits");
      }
      top += a.back();
    }
    stride = top + 1;
  }

  // Property (A): distinct tuples have sums at least 2k apart.
  const std::uint64_t tuples = tuple_count(f.A);
  if (tuples <= kDirectSeparationLimit) {
    std::vector<std::uint64_t> sums;
    sums.reserve(tuples);
    for_each_tuple(f.A, [&](const std::vector<std::int64_t>& ns) {
      sums.push_back(static_cast<std::uint64_t>(std::accumulate(ns.begin(), ns.end(), std::int64_t{0})));
    });
    std::sort(sums.begin(), sums.end());
    f.min_gap = std::numeric_limits<std::uint64_t>::max();  // stays max for a single tuple
    for (std::size_t i = 1; i < sums.size(); ++i) f.min_gap = std::min(f.min_gap, sums[i] - sums[i - 1]);
    f.separation_checked_directly = true;
  } else {
    // Tuples first differing (from the top) at index i differ by at least
    // s_i minus the spread of the lower coordinates.
    f.min_gap = f.s[0];
    std::uint64_t spread = 0;
    for (unsigned i = 1; i < k; ++i) {
      spread += f.A[i - 1].back() - f.A[i - 1].front();
      f.min_gap = std::min(f.min_gap, f.s[i] > spread ? f.s[i] - spread : 0);
    }
  }
  f.separation_ok = f.min_gap >= 2 * static_cast<std::uint64_t>(k);
  return f;
}

double choose_eps(const Universe& universe, double eta) {
  if (!(eta > 0.0) || !(eta < 1.0)) raise(ErrorKind::Precondition, "eta must lie in (0, 1)");
  const double bound = std::min({universe.eps0(), universe.eps1(), std::log1p(eta) / std::log(64.0)});
  const double m = std::ceil(bound * static_cast<double>(kDQuantum)) - 1.0;
  if (!(m >= 1.0)) raise(ErrorKind::Precondition, "no eps = m/1024 below " + std::to_string(bound));
  return m / static_cast<double>(kDQuantum);
}

BuildOutcome build_set_pair(const Universe& universe, const BuildParams& params) {
  const double eta = params.eta;
  if (!(eta > 0.0) || !(eta < 1.0)) raise(ErrorKind::Precondition, "eta must lie in (0, 1)");

  BuildOutcome out;
  FeasibilityPlan& plan = out.plan;
  double eps = 0;
  unsigned k = 0;
  if (params.relaxed) {
    if (!params.eps || !params.k || !params.N_target) {
      raise(ErrorKind::Precondition, "relaxed mode needs explicit eps, k and N_target");
    }
    eps = *params.eps;
    k = *params.k;
    if (!(eps > 0.0) || eps > universe.eps1()) raise(ErrorKind::Precondition, "eps outside (0, eps1]");
    if (k < 1) raise(ErrorKind::Precondition, "k must be >= 1");
    plan.k0 = min_k_for(eps);
  } else {
    eps = params.eps.value_or(choose_eps(universe, eta));
    const double bound = std::min({universe.eps0(), universe.eps1(), std::log1p(eta) / std::log(64.0)});
    if (!(eps > 0.0) || !(eps < bound)) {
      raise(ErrorKind::Precondition, "eps must lie in (0, " + std::to_string(bound) + ")");
    }
    plan.k0 = min_k_for(eps);
    if (plan.k0 > std::numeric_limits<unsigned>::max()) raise(ErrorKind::Overflow, "k0 exceeds 32 bits");
    k = params.k.value_or(static_cast<unsigned>(plan.k0));
    if (k < plan.k0) {
      raise(ErrorKind::Precondition, "k = " + std::to_string(k) + " is below k0 = " + std::to_string(plan.k0));
    }
  }
  plan.eps = eps;
  plan.k = k;
  plan.delta = eps / k;
  plan.s1 = static_cast<std::uint64_t>(std::floor(std::max(universe.x0(), 2.0 * k))) + 1;
  plan.log10_N_target = params.N_target ? std::log10(*params.N_target) : log10_N_estimate(k, eta);
  plan.log10_log10_A1_size =
      std::log10(static_cast<double>(plan.s1)) + plan.log10_N_target - std::log10(std::log(10.0));
  // Every tuple sum is at least k s1, and its z-window sits up to k + 1 levels higher.
  plan.required_exponent = static_cast<double>(k) * static_cast<double>(plan.s1) + k + 1;

  auto infeasible = [&](const std::string& why) {
    plan.diagnosis = why;
    out.status = BuildStatus::InfeasibleScale;
    return out;
  };
  if (plan.required_exponent + plan.delta > universe.max_exponent()) {
    return infeasible("smallest product needs 8-adic level " + std::to_string(plan.required_exponent) +
                      ", universe stops at " + std::to_string(universe.max_exponent()));
  }
  if (!params.N_target) {
    return infeasible("N_target of about 10^" + std::to_string(plan.log10_N_target) +
                      " cannot be materialized");
  }

  SetPair pair;
  pair.eta = eta;
  pair.k = k;
  pair.eps = eps;
  pair.delta = plan.delta;
  pair.N_target = exact(*params.N_target);
  pair.hypotheses_relaxed = params.relaxed;
  pair.universe = universe.kind();

  try {
    pair.family = build_index_family(k, universe.x0(), pair.N_target, params.budget, !params.relaxed);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BudgetExceeded && e.kind() != ErrorKind::Overflow) throw;
    return infeasible(e.what());
  }
  if (!pair.family.separation_ok) raise(ErrorKind::ConstructionBug, "index family separation below 2k");

  std::uint64_t max_sum = 0;
  for (const auto& a : pair.family.A) max_sum += a.back();
  const auto n_lo = static_cast<std::int64_t>(pair.family.s[0]);
  const auto n_hi = static_cast<std::int64_t>(max_sum) + k;
  if (static_cast<double>(n_hi) + 1.0 + eps + plan.delta > universe.max_exponent()) {
    return infeasible("windows needed up to level " + std::to_string(n_hi) + ", universe stops at " +
                      std::to_string(universe.max_exponent()));
  }
  try {
    pair.windows = build_window_family(universe, n_lo, n_hi, eps, plan.delta);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::RangeTooLarge) throw;
    return infeasible(e.what());
  }
  pair.D_num = pair.windows.D_num;
  const WindowMemberSet X(universe, pair.windows);

  const std::uint64_t tuples = tuple_count(pair.family.A);
  if (tuples > params.budget) return infeasible(std::to_string(tuples) + " index tuples exceed the budget");

  std::uint64_t elements = 0;
  for (const auto& a : pair.family.A) elements += a.size();
  try {
  for_each_tuple(pair.family.A, [&](const std::vector<std::int64_t>& ns) {
    TupleRecord rec;
    rec.ns = ns;
    rec.witness = solve_sums(X, eps, k, ns, !params.relaxed);
    const SumWitness& w = rec.witness;

    std::vector<std::vector<Generator>> blocks(k);
    rec.product_size = 1;
    for (unsigned i = 0; i < k; ++i) {
      const std::uint64_t want = block_size(pair.D_num, ns[i]);
      blocks[i] = universe.list(w.zs[i], w.zs[i] + plan.delta, want);
      if (blocks[i].size() != want) {
        raise(ErrorKind::ConstructionBug, "block at z = " + std::to_string(w.zs[i]) + " has " +
                                              std::to_string(blocks[i].size()) + " of " + std::to_string(want));
      }
      rec.block_sizes.push_back(want);
      if (want != 0 && rec.product_size > params.budget / want) {
        rec.product_size = params.budget + 1;
      } else {
        rec.product_size *= want;
      }
    }
    elements += 2 * rec.product_size;
    if (elements > params.budget) {
      raise(ErrorKind::BudgetExceeded, "B1 and B2 exceed the element budget of " + std::to_string(params.budget));
    }

    const auto level = static_cast<std::int64_t>(std::floor(w.z));
    if (rec.product_size > block_size(pair.D_num, level)) {
      raise(ErrorKind::ConstructionBug, "product block larger than P_z at z = " + std::to_string(w.z));
    }
    rec.z_window_count = universe.count(w.z, w.z + plan.delta);
    const auto Q = universe.list(w.z, w.z + plan.delta, rec.product_size);
    if (Q.size() != rec.product_size) raise(ErrorKind::ConstructionBug, "window at z too small for Q");
    for (const Generator& g : Q) {
      GenInt m;
      m.ids = {g.id};
      m.factor_norms = {g.norm};
      m.norm = to_big(g.norm);
      pair.B1.push_back(std::move(m));
    }

    // Products P_{z_1} ... P_{z_k}, odometer over the block indices.
    std::vector<std::size_t> idx(k, 0);
    for (std::uint64_t c = 0; c < rec.product_size; ++c) {
      std::vector<std::pair<std::uint64_t, std::pair<std::uint64_t, FactorOrigin>>> f;
      f.reserve(k);
      for (unsigned i = 0; i < k; ++i) {
        const Generator& g = blocks[i][idx[i]];
        f.push_back({g.id, {g.norm, FactorOrigin{i, ns[i]}}});
      }
      std::sort(f.begin(), f.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      GenInt m;
      std::vector<FactorOrigin> origin;
      for (const auto& [id, rest] : f) {
        m.ids.push_back(id);
        m.factor_norms.push_back(rest.first);
        m.norm *= to_big(rest.first);
        origin.push_back(rest.second);
      }
      pair.B2.push_back(std::move(m));
      pair.B2_origins.push_back(std::move(origin));
      for (unsigned i = k; i-- > 0;) {
        if (++idx[i] < blocks[i].size()) break;
        idx[i] = 0;
      }
    }
    pair.tuples.push_back(std::move(rec));
  });
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BudgetExceeded) throw;
    return infeasible(e.what());
  }

  std::sort(pair.B1.begin(), pair.B1.end(), gen_less);
  {
    std::vector<std::size_t> order(pair.B2.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return gen_less(pair.B2[a], pair.B2[b]); });
    std::vector<GenInt> b2;
    std::vector<std::vector<FactorOrigin>> origins;
    b2.reserve(order.size());
    origins.reserve(order.size());
    for (std::size_t i : order) {
      b2.push_back(std::move(pair.B2[i]));
      origins.push_back(std::move(pair.B2_origins[i]));
    }
    pair.B2 = std::move(b2);
    pair.B2_origins = std::move(origins);
  }

  // (a)
  pair.prop_a = std::all_of(pair.B1.begin(), pair.B1.end(), [](const GenInt& m) { return m.omega() == 1; }) &&
                std::all_of(pair.B2.begin(), pair.B2.end(), [&](const GenInt& m) { return m.omega() == k; });
  // Distinct tuples give disjoint blocks, so neither list may repeat an element.
  pair.disjoint = std::adjacent_find(pair.B1.begin(), pair.B1.end(), gen_equal) == pair.B1.end() &&
                  std::adjacent_find(pair.B2.begin(), pair.B2.end(), gen_equal) == pair.B2.end();
  // (b)
  const Rational eta_q = exact(eta);
  pair.prop_b = !pair.B1.empty() && pair.B1.size() == pair.B2.size();
  if (pair.prop_b) {
    pair.pair_ratios.reserve(pair.B1.size());
    for (std::size_t j = 0; j < pair.B1.size(); ++j) {
      Rational r(pair.B2[j].norm, pair.B1[j].norm);
      r.canonicalize();
      if (r < 1 - eta_q || r > 1 + eta_q) pair.prop_b = false;
      pair.pair_ratios.push_back(std::move(r));
    }
  }
  if (!pair.prop_a || !pair.prop_b || !pair.disjoint) {
    raise(ErrorKind::ConstructionBug, std::string("set pair fails") + (pair.prop_a ? "" : " (a)") +
                                          (pair.prop_b ? "" : " (b)") + (pair.disjoint ? "" : " disjointness"));
  }

  // (c) and the reciprocal-sum bound for B1.
  pair.phi_B1 = check_phi_logavg(std::span<const GenInt>(pair.B1), eta_q);
  pair.phi_B2 = check_phi_logavg(std::span<const GenInt>(pair.B2), eta_q,
                                 std::span<const std::vector<FactorOrigin>>(pair.B2_origins));
  Rational bound = 1;
  const Rational DN = pair.windows.D() * pair.N_target;
  for (unsigned i = 0; i < k; ++i) bound *= DN;
  BigInt p8;
  mpz_ui_pow_ui(p8.get_mpz_t(), 8, 2 * k + 1);
  bound /= Rational(p8);
  pair.B1_lower_bound = bound;
  pair.B1_bound_holds = pair.phi_B1.reciprocal_sum >= bound;
  if (!params.relaxed && (!pair.prop_c() || !pair.B1_bound_holds)) {
    raise(ErrorKind::ConstructionBug, "property (c) fails on a strict build");
  }

  plan.diagnosis = params.relaxed ? "built with relaxed hypotheses" : "built";
  out.status = BuildStatus::Built;
  out.pair = std::move(pair);
  return out;
}

}  // namespace pnt
