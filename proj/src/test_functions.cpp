#include "pnt/test_functions.hpp"

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pnt/error.hpp"

namespace pnt {
namespace {

using Values = std::vector<std::complex<double>>;
constexpr mpfr_prec_t kPhasePrec = 256;

// exp(2 pi i r) for r in [0, 1); quarter turns are returned exactly.
std::complex<double> unit_phase(double r) {
  if (r == 0.0) return {1.0, 0.0};
  if (r == 0.25) return {0.0, 1.0};
  if (r == 0.5) return {-1.0, 0.0};
  if (r == 0.75) return {0.0, -1.0};
  const double t = 2.0 * std::numbers::pi * r;
  return {std::cos(t), std::sin(t)};
}

// Phases of a rational p/q: frac(p n / q) computed in integers.
Values rational_phases(const mpq_class& alpha) {
  Values v(TestFunction::kMaxArgument);
  const mpz_class& p = alpha.get_num();
  const mpz_class& q = alpha.get_den();
  for (std::uint64_t n = 0; n < v.size(); ++n) {
    mpz_class r = p * static_cast<unsigned long>(n);
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), q.get_mpz_t());
    if (4 * r % q == 0) {
      v[n] = unit_phase(static_cast<double>(mpz_class(4 * r / q).get_si()) / 4.0);
    } else {
      v[n] = unit_phase(mpq_class(r, q).get_d());
    }
  }
  return v;
}

// Phases of an irrational alpha given as a 256-bit MPFR value.
Values mpfr_phases(mpfr_srcptr alpha) {
  Values v(TestFunction::kMaxArgument);
  mpfr_t t;
  mpfr_init2(t, kPhasePrec);
  for (std::uint64_t n = 0; n < v.size(); ++n) {
    mpfr_mul_ui(t, alpha, static_cast<unsigned long>(n), MPFR_RNDN);
    mpfr_frac(t, t, MPFR_RNDN);
    if (mpfr_sgn(t) < 0) mpfr_add_ui(t, t, 1, MPFR_RNDN);
    v[n] = unit_phase(mpfr_get_d(t, MPFR_RNDN));
  }
  mpfr_clear(t);
  return v;
}

std::size_t significant_digits(const std::string& s) {
  std::string digits;
  for (char c : s) {
    if (c >= '0' && c <= '9') digits.push_back(c);
  }
  const auto first = digits.find_first_not_of('0');
  return first == std::string::npos ? 0 : digits.size() - first;
}

Values parse_alpha(const std::string& text) {
  if (text == "sqrt2" || text == "golden") {
    mpfr_t a;
    mpfr_init2(a, kPhasePrec);
    if (text == "sqrt2") {
      mpfr_sqrt_ui(a, 2, MPFR_RNDN);
    } else {
      mpfr_sqrt_ui(a, 5, MPFR_RNDN);
      mpfr_add_ui(a, a, 1, MPFR_RNDN);
      mpfr_div_2ui(a, a, 1, MPFR_RNDN);
    }
    Values v = mpfr_phases(a);
    mpfr_clear(a);
    return v;
  }
  if (text.find('.') != std::string::npos) {
    if (significant_digits(text) < 30) {
      raise(ErrorKind::ConfigInvalid, "decimal alpha '" + text + "' needs at least 30 significant digits");
    }
    mpfr_t a;
    mpfr_init2(a, kPhasePrec);
    if (mpfr_set_str(a, text.c_str(), 10, MPFR_RNDN) != 0) {
      mpfr_clear(a);
      raise(ErrorKind::ConfigInvalid, "cannot parse alpha '" + text + "'");
    }
    Values v = mpfr_phases(a);
    mpfr_clear(a);
    return v;
  }
  mpq_class q;
  if (q.set_str(text, 10) != 0 || q.get_den() == 0) {
    raise(ErrorKind::ConfigInvalid, "cannot parse alpha '" + text + "'");
  }
  q.canonicalize();
  return rational_phases(q);
}

}  // namespace

TestFunction TestFunction::parse(const std::string& text) {
  TestFunction f;
  f.id_ = text;
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? std::string() : text.substr(colon + 1);
  Values v(kMaxArgument);

  if (head == "alt" || head == "one") {
    for (std::size_t n = 0; n < v.size(); ++n) v[n] = (head == "one" || n % 2 == 0) ? 1.0 : -1.0;
    f.integer_valued_ = true;
  } else if (head == "const") {
    double c = 0;
    try {
      std::size_t used = 0;
      c = std::stod(arg, &used);
      if (used != arg.size()) throw std::invalid_argument(arg);
    } catch (const std::exception&) {
      raise(ErrorKind::ConfigInvalid, "bad constant in '" + text + "'");
    }
    std::fill(v.begin(), v.end(), std::complex<double>(c, 0.0));
    f.sup_ = std::fabs(c);
    f.integer_valued_ = c == std::floor(c) && std::fabs(c) < 1e6;
  } else if (head == "root") {
    long m = 0;
    try {
      m = std::stol(arg);
    } catch (const std::exception&) {
      raise(ErrorKind::ConfigInvalid, "bad modulus in '" + text + "'");
    }
    if (m < 1) raise(ErrorKind::ConfigInvalid, "root modulus must be >= 1");
    v = rational_phases(mpq_class(1, m));
    f.integer_valued_ = m <= 2;
  } else if (head == "exp") {
    if (arg.empty()) raise(ErrorKind::ConfigInvalid, "exp needs an alpha");
    v = parse_alpha(arg);
  } else if (head == "table") {
    std::vector<double> vals;
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        vals.push_back(std::stod(item));
      } catch (const std::exception&) {
        raise(ErrorKind::ConfigInvalid, "bad table entry '" + item + "'");
      }
    }
    if (vals.empty()) raise(ErrorKind::ConfigInvalid, "table needs at least one value");
    for (std::size_t n = 0; n < v.size(); ++n) v[n] = vals[n % vals.size()];
    f.sup_ = 0;
    for (double x : vals) f.sup_ = std::max(f.sup_, std::fabs(x));
  } else {
    raise(ErrorKind::ConfigInvalid, "unknown test function '" + text + "'");
  }
  f.values_ = std::make_shared<const Values>(std::move(v));
  return f;
}

std::complex<double> TestFunction::operator()(std::uint64_t n) const {
  if (n >= kMaxArgument) raise(ErrorKind::OutOfRange, "test function argument " + std::to_string(n));
  return (*values_)[n];
}

std::vector<TestFunction> default_test_family() {
  std::vector<TestFunction> out;
  for (const char* id : {"alt", "root:2", "root:3", "root:4", "root:5", "exp:sqrt2", "exp:golden"}) {
    out.push_back(TestFunction::parse(id));
  }
  return out;
}

}  // namespace pnt
