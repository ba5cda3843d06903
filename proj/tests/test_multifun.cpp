#include <cmath>
#include <numbers>
#include <random>

#include "curvelab/multifun.hpp"
#include "curves.hpp"
#include "doctest.h"

using namespace curvelab;
using namespace curves;

namespace {

const Complex omega = std::polar(1.0, 2 * std::numbers::pi / 3);

Fiber fib(std::vector<Complex> pts) { return {0.0, std::move(pts)}; }

Fiber random_fiber(std::mt19937 &rng, int n) {
  std::uniform_real_distribution<double> u(-1, 1);
  Fiber f;
  for (int i = 0; i < n; ++i) f.points.emplace_back(u(rng), u(rng));
  return f;
}

SampledCurve random_sample(std::mt19937 &rng, int n) {
  std::uniform_real_distribution<double> u(-1, 1);
  SampledCurve s;
  for (int i = 0; i < n; ++i) s.points.emplace_back(Complex(u(rng), u(rng)), Complex(u(rng), u(rng)));
  return s;
}

}  // namespace

TEST_CASE("d_sym examples") {
  CHECK(d_sym(fib({1.0, omega, omega * omega}), fib({1.0, omega, omega * omega})) == 0.0);
  CHECK(d_sym(fib({0.0, 0.0, 0.0}), fib({Complex(0, 0.1), Complex(0, -0.1), 0.0})) == 0.0);
  // The reverse direction sees the points +-0.1i.
  CHECK(d_sym(fib({Complex(0, 0.1), Complex(0, -0.1), 0.0}), fib({0.0, 0.0, 0.0})) == doctest::Approx(0.1));

  // Fibres over z = 1: cube roots of 1 and of 0.99^2.
  const double expected = 1 - std::pow(0.99, 2.0 / 3.0);
  const double got = d_sym(fiber(cusp(), 1.0), fiber(shifted_cusp(0.01, 0.0), 1.0));
  CHECK(std::abs(got - expected) < 1e-12);
  CHECK(got == doctest::Approx(0.00668).epsilon(1e-3));
}

TEST_CASE("property: symmetrized d_sym is a pseudometric") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_fiber(rng, 3);
    const auto b = random_fiber(rng, 3);
    const auto c = random_fiber(rng, 4);
    CHECK(d_sym_symmetric(a, a) == 0.0);
    CHECK(d_sym_symmetric(a, b) == d_sym_symmetric(b, a));
    CHECK(d_sym_symmetric(a, c) <= d_sym_symmetric(a, b) + d_sym_symmetric(b, c) + 1e-15);
  }
}

TEST_CASE("hausdorff examples") {
  const Polydisk H{Disk(0.0, 0.5), Disk(0.0, 2.0)};
  const auto S = sample_curve(cusp(), H, 16, 48);
  REQUIRE(S.points.size() == (16 * 48 + 1) * 3);  // fibres listed with multiplicity
  CHECK(hausdorff(S, S) == 0.0);

  SampledCurve shifted = S;
  for (auto &p : shifted.points) p = {p.first + 0.01, p.second + 0.01};
  const double h = hausdorff(S, shifted);
  CHECK(h > 0);
  CHECK(h <= std::hypot(0.01, 0.01) + 1e-15);

  const double big = hausdorff(S, sample_curve(lifted_cusp(-1e-3), H, 16, 48));
  const double small = hausdorff(S, sample_curve(lifted_cusp(-1e-5), H, 16, 48));
  CHECK(big > 0);
  CHECK(small > 0);
  CHECK(small < big);
}

TEST_CASE("property: hausdorff is symmetric and satisfies the triangle inequality") {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_sample(rng, 20);
    const auto b = random_sample(rng, 25);
    const auto c = random_sample(rng, 15);
    CHECK(hausdorff(a, a) == 0.0);
    CHECK(hausdorff(a, b) == hausdorff(b, a));
    CHECK(hausdorff(a, c) <= hausdorff(a, b) + hausdorff(b, c) + 1e-15);
  }
}

TEST_CASE("separation examples") {
  const double annulus = separation(cusp(), Disk(0.0, 0.9), {Disk(0.0, 0.2)});
  CHECK(std::abs(annulus - std::pow(0.2, 2.0 / 3.0) * std::sqrt(3.0)) < 1e-3);
  CHECK(separation(w().pow(2) - c(1.0), Disk(0.0, 0.9), {}) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(separation((w() - z()) * (w() - z() - c(0.5)), Disk(0.0, 0.9), {}) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("separation errors and degenerate cases") {
  try {
    separation(cusp(), Disk(0.0, 0.5), {Disk(0.0, 1.0)});
    FAIL("expected EmptyDomain");
  } catch (const CurveError &e) {
    CHECK(e.kind() == ErrorKind::EmptyDomain);
  }
  CHECK(std::isinf(separation(w() - z(), Disk(0.0, 0.5), {})));
}

TEST_CASE("property: separation grows as the excluded disk grows") {
  double prev = 0;
  for (double r : {0.05, 0.1, 0.2, 0.4}) {
    const double s = separation(cusp(), Disk(0.0, 0.9), {Disk(0.0, r)});
    CHECK(s >= prev);
    CHECK(std::abs(s - std::pow(r, 2.0 / 3.0) * std::sqrt(3.0)) < 1e-3);
    prev = s;
  }
}

TEST_CASE("discriminant drift examples") {
  const Disk base(0.0, 0.5);
  CHECK(std::abs(discriminant_drift(cusp(), shifted_cusp(0.01, 0.01), base) - 0.01) < 1e-9);
  CHECK(discriminant_drift(cusp(), cusp(), base) == 0.0);
  CHECK(std::abs(discriminant_drift(cusp(), lifted_cusp(1e-4), base) - 0.01) < 1e-9);
  CHECK(std::isinf(discriminant_drift(cusp(), w() - z(), base)));
}

TEST_CASE("property: drift of translates is the translation, drift of lifts shrinks") {
  const Disk base(0.0, 0.5);
  for (Complex s : {Complex(0.01), Complex(1e-3), Complex(0, 0.02), Complex(-0.03, 0.04)})
    CHECK(std::abs(discriminant_drift(cusp(), shifted_cusp(0, 0).translated(-s, 0.0), base) - std::abs(s)) < 1e-9);
  double prev = 1e300;
  for (double t : {1e-2, 1e-4, 1e-6}) {
    const double d = discriminant_drift(cusp(), lifted_cusp(t), base);
    CHECK(std::abs(d - std::sqrt(t)) < 1e-9);
    CHECK(d < prev);
    prev = d;
  }
}
