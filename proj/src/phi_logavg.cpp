#include <algorithm>
#include <map>
#include <numeric>

#include "pnt/construction.hpp"
#include "pnt/error.hpp"
#include "pnt/primality.hpp"

namespace pnt {
namespace {

// A prime (or generator) with its norm and multiplicity in one element.
struct Factor {
  std::uint64_t key;
  std::uint64_t norm;
  unsigned exp;
};

struct DivisorAcc {
  BigInt phi;                    // generalized totient of d
  std::vector<BigInt> dens;      // N(m) of every element m divisible by d
  std::size_t first_element = 0;
};

using DivisorKey = std::vector<std::pair<std::uint64_t, unsigned>>;

// Walks every divisor d of an element given by its factors, calling
// visit(key, phi(d)); d = 1 is skipped.
template <typename Visit>
void for_each_divisor(const std::vector<Factor>& f, Visit&& visit) {
  DivisorKey key;
  std::vector<unsigned> e(f.size(), 0);
  while (true) {
    std::size_t i = 0;
    while (i < f.size() && e[i] == f[i].exp) e[i++] = 0;
    if (i == f.size()) return;
    ++e[i];
    key.clear();
    BigInt phi = 1;
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (e[j] == 0) continue;
      key.emplace_back(f[j].key, e[j]);
      BigInt p;
      mpz_pow_ui(p.get_mpz_t(), to_big(f[j].norm).get_mpz_t(), e[j] - 1);
      phi *= p * (to_big(f[j].norm) - 1);
    }
    visit(key, phi);
  }
}

// sum over d != 1 of phi(d) T(d)^2 divided by S^2 where S = T(1).
PhiLogAvg finish(std::map<DivisorKey, DivisorAcc>& acc, const Rational& S, const Rational& eta) {
  std::vector<BigInt> num, den;
  num.reserve(acc.size());
  den.reserve(acc.size());
  for (auto& [key, a] : acc) {
    const Rational T = sum_reciprocals(a.dens);
    num.push_back(a.phi * T.get_num() * T.get_num());
    den.push_back(T.get_den() * T.get_den());
  }
  PhiLogAvg r;
  r.reciprocal_sum = S;
  r.value = tree_sum(num, den) / (S * S);
  r.holds = r.value <= eta;
  return r;
}

}  // namespace

PhiLogAvg check_phi_logavg(std::span<const std::uint64_t> B, const Rational& eta) {
  if (B.empty()) raise(ErrorKind::EmptySet, "B must be non-empty");
  std::vector<std::uint64_t> sorted(B.begin(), B.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() == 0) raise(ErrorKind::InvalidRange, "elements must be positive");
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    raise(ErrorKind::InvalidRange, "elements must be distinct");
  }
  std::map<DivisorKey, DivisorAcc> acc;
  for (std::size_t idx = 0; idx < sorted.size(); ++idx) {
    std::vector<Factor> f;
    for (auto [p, e] : factorize(sorted[idx])) f.push_back({p, p, e});
    const BigInt m = to_big(sorted[idx]);
    for_each_divisor(f, [&](const DivisorKey& key, const BigInt& phi) {
      auto [it, fresh] = acc.try_emplace(key);
      if (fresh) it->second.phi = phi;
      it->second.dens.push_back(m);
    });
  }
  return finish(acc, sum_reciprocals(std::span<const std::uint64_t>(sorted)), eta);
}

PhiLogAvg check_phi_logavg(std::span<const GenInt> B, const Rational& eta,
                           std::span<const std::vector<FactorOrigin>> origins) {
  if (B.empty()) raise(ErrorKind::EmptySet, "B must be non-empty");
  if (!origins.empty() && origins.size() != B.size()) {
    raise(ErrorKind::Precondition, "origins must be parallel to B");
  }
  std::map<DivisorKey, DivisorAcc> acc;
  std::vector<BigInt> norms;
  norms.reserve(B.size());
  for (std::size_t idx = 0; idx < B.size(); ++idx) {
    const GenInt& m = B[idx];
    if (m.ids.size() != m.factor_norms.size()) raise(ErrorKind::Precondition, "factor norms missing");
    std::vector<Factor> f;
    for (std::size_t j = 0; j < m.ids.size(); ++j) {
      if (!f.empty() && f.back().key == m.ids[j]) {
        ++f.back().exp;
      } else {
        f.push_back({m.ids[j], m.factor_norms[j], 1});
      }
    }
    norms.push_back(m.norm);
    for_each_divisor(f, [&](const DivisorKey& key, const BigInt& phi) {
      auto [it, fresh] = acc.try_emplace(key);
      if (fresh) {
        it->second.phi = phi;
        it->second.first_element = idx;
      } else if (!origins.empty()) {
        // Shared divisor: each of its generators must sit in the same slot
        // at the same level in both elements.
        const std::size_t other = it->second.first_element;
        for (const auto& [id, e] : key) {
          const auto pos_a = std::find(m.ids.begin(), m.ids.end(), id) - m.ids.begin();
          const auto& ids_b = B[other].ids;
          const auto pos_b = std::find(ids_b.begin(), ids_b.end(), id) - ids_b.begin();
          if (!(origins[idx][pos_a] == origins[other][pos_b])) {
            raise(ErrorKind::ConstructionBug, "shared generator " + std::to_string(id) +
                                                  " comes from different slots or levels");
          }
        }
      }
      it->second.dens.push_back(m.norm);
    });
  }
  return finish(acc, sum_reciprocals(norms), eta);
}

Rational phi_logavg_direct(std::span<const std::uint64_t> B) {
  if (B.empty()) raise(ErrorKind::EmptySet, "B must be non-empty");
  std::vector<BigInt> num, den;
  for (std::uint64_t m : B) {
    for (std::uint64_t n : B) {
      num.push_back(to_big(std::gcd(m, n) - 1));
      den.push_back(to_big(static_cast<unsigned __int128>(m) * n));
    }
  }
  const Rational S = sum_reciprocals(B);
  return tree_sum(num, den) / (S * S);
}

}  // namespace pnt
