#include "pnt/pow8.hpp"

#include <mpfr.h>

#include <cmath>
#include <string>

#include "pnt/error.hpp"

namespace pnt {
namespace {

// RAII holder for an mpfr_t.
class MpfrValue {
 public:
  explicit MpfrValue(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~MpfrValue() { mpfr_clear(v_); }
  MpfrValue(const MpfrValue&) = delete;
  MpfrValue& operator=(const MpfrValue&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

std::uint64_t to_u64_checked(mpfr_ptr v, double x) {
  if (mpfr_cmp_d(v, 18446744073709551615.0) >= 0) {
    raise(ErrorKind::RangeTooLarge, "8^" + std::to_string(x) + " exceeds 64-bit range");
  }
  return static_cast<std::uint64_t>(mpfr_get_uj(v, MPFR_RNDZ));
}

}  // namespace

std::uint64_t floor_pow8(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    raise(ErrorKind::InvalidRange, "exponent must be finite and non-negative");
  }
  if (x >= 64.0 / 3.0) raise(ErrorKind::RangeTooLarge, "8^x exceeds 64-bit range");

  // x is taken as its exact binary value. 8^x is an integer exactly when 3x
  // is; otherwise it is irrational, so a lower and an upper enclosure
  // eventually share a floor.
  const double three_x = 3.0 * x;
  if (std::fma(3.0, x, -three_x) == 0.0 && three_x == std::floor(three_x)) {
    return std::uint64_t{1} << static_cast<unsigned>(three_x);
  }
  for (mpfr_prec_t prec = 128; prec <= 4096; prec *= 2) {
    MpfrValue base(prec), expo(prec), lo(prec), hi(prec);
    mpfr_set_ui(base.get(), 8, MPFR_RNDN);
    mpfr_set_d(expo.get(), x, MPFR_RNDN);  // exact: prec >= 53
    mpfr_pow(lo.get(), base.get(), expo.get(), MPFR_RNDD);
    mpfr_pow(hi.get(), base.get(), expo.get(), MPFR_RNDU);
    mpfr_floor(lo.get(), lo.get());
    mpfr_floor(hi.get(), hi.get());
    if (mpfr_equal_p(lo.get(), hi.get())) return to_u64_checked(lo.get(), x);
  }
  raise(ErrorKind::Overflow, "could not resolve floor(8^x)");
}

long double pow8(long double x) noexcept { return std::exp2(3.0L * x); }

long double log8(std::uint64_t v) noexcept { return std::log2(static_cast<long double>(v)) / 3.0L; }

}  // namespace pnt
