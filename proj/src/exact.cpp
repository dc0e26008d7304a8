#include "pnt/exact.hpp"

#include <cmath>

#include "pnt/error.hpp"

namespace pnt {
namespace {

struct Frac {
  BigInt num;
  BigInt den;
};

Frac pair_sum(std::span<const BigInt> num, std::span<const BigInt> den, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return {num[lo], den[lo]};
  const std::size_t mid = lo + (hi - lo) / 2;
  Frac a = pair_sum(num, den, lo, mid);
  Frac b = pair_sum(num, den, mid, hi);
  if (a.den == b.den) return {a.num + b.num, std::move(a.den)};
  return {a.num * b.den + b.num * a.den, a.den * b.den};
}

}  // namespace

Rational make_rational(std::uint64_t num, std::uint64_t den) {
  if (den == 0) raise(ErrorKind::UndefinedValue, "zero denominator");
  Rational q(to_big(num), to_big(den));
  q.canonicalize();
  return q;
}

BigInt to_big(std::uint64_t v) {
  BigInt z;
  mpz_import(z.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
  return z;
}

BigInt to_big(unsigned __int128 v) {
  const std::uint64_t words[2] = {static_cast<std::uint64_t>(v), static_cast<std::uint64_t>(v >> 64)};
  BigInt z;
  mpz_import(z.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, words);
  return z;
}

Rational tree_sum(std::span<const BigInt> num, std::span<const BigInt> den) {
  if (num.size() != den.size()) raise(ErrorKind::Precondition, "tree_sum: length mismatch");
  if (num.empty()) return Rational(0);
  Frac f = pair_sum(num, den, 0, num.size());
  Rational q(f.num, f.den);
  q.canonicalize();
  return q;
}

Rational sum_reciprocals(std::span<const BigInt> den) {
  const std::vector<BigInt> ones(den.size(), BigInt(1));
  return tree_sum(ones, den);
}

Rational sum_reciprocals(std::span<const std::uint64_t> den) {
  std::vector<BigInt> big;
  big.reserve(den.size());
  for (std::uint64_t d : den) big.push_back(to_big(d));
  return sum_reciprocals(big);
}

Rational from_double(double v) {
  if (!std::isfinite(v)) raise(ErrorKind::UndefinedValue, "non-finite value has no exact rational");
  Rational q(v);  // GMP converts doubles exactly
  return q;
}

double to_double(const Rational& q) { return q.get_d(); }

void check_precision(const Rational& q, std::size_t max_bits, const char* what) {
  const std::size_t bits = std::max(bit_length(q.get_num()), bit_length(q.get_den()));
  if (bits > max_bits) {
    raise(ErrorKind::Overflow, std::string(what) + " needs " + std::to_string(bits) + " bits; precision budget is " +
                                   std::to_string(max_bits));
  }
}

std::string to_string(const Rational& q) { return q.get_str(10); }

std::size_t bit_length(const BigInt& v) { return v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2); }

}  // namespace pnt
