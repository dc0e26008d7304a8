#include <doctest.h>

#include <vector>

#include "pnt/rng.hpp"
#include "pnt/simd.hpp"

using namespace pnt;

namespace {

struct IsaGuard {
  simd::Isa saved = simd::active_isa();
  ~IsaGuard() { simd::set_active_isa(saved); }
};

std::vector<simd::Isa> available() {
  std::vector<simd::Isa> out;
  for (auto isa : {simd::Isa::Scalar, simd::Isa::Avx2, simd::Isa::Neon}) {
    if (simd::isa_available(isa)) out.push_back(isa);
  }
  return out;
}

}  // namespace

TEST_CASE("dispatched kernels agree with scalar on every available ISA") {
  IsaGuard guard;
  Rng rng(99);
  // Odd lengths exercise the vector tails.
  for (std::size_t len : {0u, 1u, 31u, 32u, 33u, 1000u, 4099u}) {
    std::vector<std::uint8_t> omega(len);
    std::vector<std::uint64_t> prod(len), words(len);
    const std::uint64_t first = rng.uniform(1, 1'000'000);
    for (std::size_t i = 0; i < len; ++i) {
      omega[i] = static_cast<std::uint8_t>(rng.uniform(0, 40));
      prod[i] = rng.uniform(0, 1) ? first + i : rng.uniform(1, first + i);
      words[i] = rng.next();
    }
    std::vector<std::uint8_t> ref_omega = omega;
    simd::scalar::finalize_omega(ref_omega, prod, first);
    std::vector<std::uint64_t> ref_hist(64, 0);
    simd::scalar::histogram(omega, ref_hist);

    for (auto isa : available()) {
      CAPTURE(simd::to_string(isa));
      CAPTURE(len);
      REQUIRE(simd::set_active_isa(isa));
      std::vector<std::uint8_t> o = omega;
      simd::finalize_omega(o, prod, first);
      CHECK(o == ref_omega);
      CHECK(simd::count_odd(omega) == simd::scalar::count_odd(omega));
      CHECK(simd::count_bits(words) == simd::scalar::count_bits(words));
      std::vector<std::uint64_t> h(64, 0);
      simd::histogram(omega, h);
      CHECK(h == ref_hist);
    }
  }
}

TEST_CASE("scalar ISA is always available") {
  CHECK(simd::isa_available(simd::Isa::Scalar));
  CHECK(simd::isa_available(simd::active_isa()));
}
