#pragma once
// Bounded test functions g: Z_{>=0} -> C evaluated at Omega values.
//
//   alt          (-1)^n
//   one          1
//   const:c      the real constant c
//   root:m       zeta^n, zeta = exp(2 pi i / m), m >= 1
//   exp:alpha    exp(2 pi i alpha n); alpha is "p/q", an integer, a decimal
//                with at least 30 significant digits, "sqrt2" or "golden"
//   table:v0,v1,...  periodic real table, g(n) = v[n mod len]

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace pnt {

class TestFunction {
 public:
  /// Parses one of the forms listed above; throws ConfigInvalid.
  static TestFunction parse(const std::string& text);

  const std::string& id() const noexcept { return id_; }
  double sup() const noexcept { return sup_; }
  /// True when every value is an exact small integer (alt, one, integer const).
  bool integer_valued() const noexcept { return integer_valued_; }

  /// g(n) for 0 <= n < kMaxArgument; throws OutOfRange beyond.
  std::complex<double> operator()(std::uint64_t n) const;

  static constexpr std::uint64_t kMaxArgument = 512;

 private:
  std::string id_;
  double sup_ = 1;
  bool integer_valued_ = false;
  std::shared_ptr<const std::vector<std::complex<double>>> values_;
};

/// Default family: alt, root:2..5, exp:sqrt2, exp:golden.
std::vector<TestFunction> default_test_family();

}  // namespace pnt
