#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>

#include "curvelab/intersect.hpp"
#include "curves.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace curvelab;
using namespace curves;

namespace {

void expect_error(ErrorKind kind, auto &&fn) {
  try {
    fn();
    FAIL("expected " << to_string(kind));
  } catch (const CurveError &e) {
    CHECK(e.kind() == kind);
  }
}

PuiseuxParam cusp_param() {
  PuiseuxParam p;
  p.ramification = 3;
  p.truncation_order = 8;
  p.series.assign(8, Complex{});
  p.series[2] = 1.0;
  p.tail.assign(8, Complex{});
  p.exact = true;
  return p;
}

const Polydisk kH{Disk(0.0, 0.9), Disk(0.0, 1.5)};
const Disk kUnit(0.0, 1.0);

oracle::Poly2 to_oracle(const BivarPoly &p) {
  oracle::Poly2 o;
  for (const auto &[e, c] : p.terms()) o.terms.emplace_back(e.first, e.second, c);
  return o;
}

// Closed form of the hypersurface pullback.
Complex p54(Complex z, Complex w, double e1, double e2, double e3) {
  const Complex a = z * z + e1 * std::pow(w, 4);
  const Complex b = w * w * w + z * z * z + e2 * w * w;
  const Complex c = w + e3;
  return a * a * a - std::pow(b - c * c * c, 2);
}

std::array<BivarPoly, 3> g54(double e1, double e2, double e3) {
  return {z().pow(2) + c(e1) * w().pow(4), w().pow(3) + z().pow(3) + c(e2) * w().pow(2), w() + c(e3)};
}

TrivarPoly q54() {
  // a^3 - (b - c^3)^2 = a^3 - b^2 + 2 b c^3 - c^6
  TrivarPoly Q;
  Q.add(3, 0, 0, 1.0);
  Q.add(0, 2, 0, -1.0);
  Q.add(0, 1, 3, 2.0);
  Q.add(0, 0, 6, -1.0);
  return Q;
}

}  // namespace

TEST_CASE("pullback examples") {
  const double e1 = 0.01;
  const double e2 = 0.02;
  const CPoly f = pullback(cusp_param(), shifted_cusp(e1, e2));
  // -2 e1 t^3 + 3 e2 t^4 - 3 e2^2 t^2 + e1^2 + e2^3
  const CPoly expected{e1 * e1 + e2 * e2 * e2, 0.0, -3 * e2 * e2, -2 * e1, 3 * e2};
  REQUIRE(f.degree() == 4);
  for (int k = 0; k <= 4; ++k) CHECK(std::abs(f[k] - expected[k]) < 1e-17);

  CHECK(pullback(cusp_param(), cusp()).is_zero());

  const CPoly g = pullback(cusp_param(), lifted_cusp(0.01));
  REQUIRE(g.degree() == 0);
  CHECK(g[0] == Complex(-0.01));
}

TEST_CASE("property: pullback evaluates like the composition") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    BivarPoly G;
    for (int i = 0; i <= 3; ++i)
      for (int j = 0; j <= 3; ++j) G.set(i, j, oracle::random_complex(rng));
    const CPoly f = pullback(cusp_param(), G);
    for (int k = 0; k < 10; ++k) {
      const Complex t = oracle::random_complex(rng);
      const Complex direct = eval_bivar(G, std::pow(t, 3), t * t);
      CHECK(std::abs(f(t) - direct) <= 1e-13 * (1 + std::abs(direct)));
    }
  }
}

TEST_CASE("truncated series are checked against their tail") {
  // w^2 - z^3 - z^4 has an infinite series; on a large t-disk the tail wins.
  const BivarPoly F = ordinary_cusp() - z().pow(4);
  const auto b = puiseux_expand(F, 0.0, 0.0, 8).branches.at(0);
  CHECK_FALSE(b.exact);
  CHECK_NOTHROW(pullback(b, w() - c(0.001), Disk(0.0, 0.3)));
  expect_error(ErrorKind::TruncationDominates, [&] { pullback(b, w() - c(0.001), Disk(0.0, 1.5)); });
}

TEST_CASE("certify: shifted cusp intersects with four zeros") {
  for (double e : {0.1, 0.01, 0.001}) {
    const BivarPoly G = shifted_cusp(e, e);
    const auto v = certify(cusp(), G, kH, kUnit);
    CHECK(v.status == VerdictStatus::Intersects);
    CHECK(v.zero_count == 4);
    REQUIRE(v.branches.size() == 1);
    CHECK(v.branches[0].pullback_degree == 4);
    CHECK(v.branches[0].ramification == 3);
    CHECK(v.witnesses.size() == 4);
    // Oracle: roots of the quartic mapped through (t^3, t^2).
    const CPoly quartic{e * e + e * e * e, 0.0, -3 * e * e, -2 * e, 3 * e};
    const auto ts = oracle::companion_roots(quartic.coeffs());
    REQUIRE(v.residuals.size() == v.witnesses.size());
    for (std::size_t k = 0; k < v.witnesses.size(); ++k) {
      const auto &zw = v.witnesses[k];
      const auto &res = v.residuals[k];
      CHECK(res.first < 1e-8);
      CHECK(res.second < 1e-8);
      CHECK(std::abs(eval_bivar(cusp(), zw.first, zw.second)) < 1e-8);
      CHECK(std::abs(eval_bivar(G, zw.first, zw.second)) < 1e-8);
      double best = 1e300;
      for (auto t : ts) best = std::min(best, std::abs(std::pow(t, 3) - zw.first) + std::abs(t * t - zw.second));
      CHECK(best < 1e-9);
    }
  }
}

TEST_CASE("certify: lifted cusp misses") {
  for (double e : {1e-2, 1e-4}) {
    const auto v = certify(cusp(), lifted_cusp(e), kH, kUnit);
    CHECK(v.status == VerdictStatus::Empty);
    CHECK(v.zero_count == 0);
    CHECK(v.witnesses.empty());
    CHECK(v.prescan_hits == 0);
    REQUIRE(v.branches.size() == 1);
    CHECK(v.branches[0].pullback_degree == 0);
    CHECK(v.hypothesis.nnc_count_W == 2);
  }
}

TEST_CASE("certify: lifted shifted cusp intersects despite two non-normal crossings") {
  const auto v = certify(cusp(), lifted_shifted_cusp(0.01, 0.01), kH, kUnit);
  CHECK(v.status == VerdictStatus::Intersects);
  CHECK(v.hypothesis.nnc_count_W == 2);
  CHECK(v.zero_count > 0);
  for (const auto &r : v.residuals) {
    CHECK(r.first < 1e-8);
    CHECK(r.second < 1e-8);
  }
}

TEST_CASE("certify: identical curves share a component") {
  const auto v = certify(cusp(), cusp(), kH, kUnit);
  CHECK(v.status == VerdictStatus::Intersects);
  CHECK(v.common_component);
  REQUIRE(v.witnesses.size() == 1);
  CHECK(std::abs(v.witnesses[0].first) == 0.0);
  CHECK(std::abs(v.witnesses[0].second) == 0.0);
  CHECK(v.hypothesis.d_H_estimate == 0.0);
}

TEST_CASE("certify rejects polydisks that are not good") {
  expect_error(ErrorKind::NotGood, [] { certify(cusp(), shifted_cusp(0.01, 0.01), {Disk(0.0, 0.9), Disk(0.0, 0.5)}, kUnit); });
}

TEST_CASE("property: certify agrees with a brute-force search") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0, 1);
  int decided = 0;
  for (int trial = 0; trial < 6; ++trial) {
    BivarPoly F = cusp();
    for (auto [i, j] : {std::pair{3, 0}, {2, 1}, {1, 2}, {1, 3}, {2, 2}, {4, 0}}) F.add(i, j, oracle::random_complex(rng, 0.3));
    BivarPoly G = F;
    const double delta = std::pow(10.0, -1 - 2 * u(rng));
    G.add(0, 0, delta * oracle::random_complex(rng));
    G.add(1, 0, delta * oracle::random_complex(rng));
    G.add(0, 1, delta * oracle::random_complex(rng));
    G.add(1, 1, delta * oracle::random_complex(rng));
    const Polydisk H{Disk(0.0, 0.5), Disk(0.0, 1.5)};
    const auto v = certify(F, G, H, Disk(0.0, std::cbrt(0.5)));
    const auto pts = oracle::common_points(to_oracle(F), to_oracle(G), {0.0, 0.5, 0.0, 1.5});
    if (v.status == VerdictStatus::Inconclusive) continue;
    ++decided;
    CHECK((v.status == VerdictStatus::Intersects) == !pts.empty());
    if (v.status == VerdictStatus::Intersects) CHECK(v.witnesses.size() == pts.size());
  }
  CHECK(decided >= 5);
}

TEST_CASE("pullback_map reproduces the hypersurface formula") {
  const double e = 0.01;
  const BivarPoly p = pullback_map(g54(e, e, e), q54());
  // Oracle: coefficients from a 2-D DFT of the closed form on roots of unity.
  const int N = 16;
  double worst = 0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      Complex acc{};
      for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
          const Complex za = std::polar(1.0, 2 * std::numbers::pi * a / N);
          const Complex wb = std::polar(1.0, 2 * std::numbers::pi * b / N);
          acc += p54(za, wb, e, e, e) * std::polar(1.0, -2 * std::numbers::pi * (i * a + j * b) / N);
        }
      acc /= static_cast<double>(N * N);
      worst = std::max(worst, std::abs(acc - p.coeff(i, j)));
    }
  CHECK(worst < 1e-12);
  CHECK(p.z_degree() < N);
  CHECK(p.w_degree() < N);
}

TEST_CASE("pullback_map identity embedding") {
  TrivarPoly Q;
  Q.add(1, 0, 0, 1.0);
  CHECK(pullback_map({z(), w(), BivarPoly{}}, Q) == z());
  TrivarPoly big;
  big.add(50, 0, 0, 1.0);
  expect_error(ErrorKind::DegreeCap, [&] { pullback_map({z().pow(2), w(), z()}, big); });
}

TEST_CASE("line_zero examples") {
  const double e = 0.01;
  const BivarPoly p = pullback_map(g54(e, e, e), q54());
  const auto zs = line_zero(p, {'w', 0.0}, kUnit);
  const double target = e / std::cbrt(2.0);
  double best = 1e300;
  Complex hit;
  for (auto x : zs)
    if (std::abs(x - target) < best) {
      best = std::abs(x - target);
      hit = x;
    }
  CHECK(best < 1e-12);
  CHECK(std::abs(hit.real() - 7.93700526e-3) < 1e-11);
  CHECK(std::abs(eval_bivar(p, hit, 0.0)) < 1e-12);
  // Restriction is 2 e^3 z^3 - e^6: exactly three zeros.
  CHECK(zs.size() == 3);

  const auto cz = line_zero(cusp(), {'w', 0.0}, kUnit);
  CHECK(cz == std::vector<Complex>{0.0, 0.0});
  CHECK(line_zero(z() * w() - c(1.0), {'w', 0.0}, kUnit).empty());
  expect_error(ErrorKind::IdenticallyZero, [] { line_zero(cusp() * w(), {'w', 0.0}, kUnit); });
}

TEST_CASE("sweep over the cusp families") {
  const auto shifted = sweep(cusp(), [](Complex e) { return shifted_cusp(e.real(), e.real()); }, {0.1, 0.01, 0.001, 0.0},
                             kH, kUnit);
  REQUIRE(shifted.size() == 4);
  for (const auto &row : shifted) {
    CHECK(row.error.empty());
    REQUIRE(row.status.has_value());
    CHECK(*row.status == VerdictStatus::Intersects);
  }
  CHECK(shifted[0].zero_count == 4);
  CHECK(shifted[3].eps == Complex(0.0));

  const auto lifted = sweep(cusp(), [](Complex e) { return lifted_cusp(e.real()); }, {1e-2, 1e-4}, kH, kUnit);
  for (const auto &row : lifted) CHECK(*row.status == VerdictStatus::Empty);

  // A cell error is recorded, not thrown.
  const auto bad = sweep(cusp(), [](Complex e) { return lifted_cusp(e.real()); }, {5.0}, kH, kUnit);
  CHECK_FALSE(bad[0].status.has_value());
  CHECK(bad[0].error.starts_with("NotGood"));
}

TEST_CASE("property: sweep rows do not depend on the worker count") {
  std::vector<Complex> values;
  for (int k = 0; k < 8; ++k) values.push_back(std::pow(10.0, -1 - 0.3 * k));
  auto run = [&](const char *threads) {
    setenv("CURVELAB_THREADS", threads, 1);
    return sweep(cusp(), [](Complex e) { return shifted_cusp(e.real(), e.real()); }, values, kH, kUnit);
  };
  const auto one = run("1");
  const auto four = run("4");
  unsetenv("CURVELAB_THREADS");
  REQUIRE(one.size() == four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].eps == four[i].eps);
    CHECK(one[i].status == four[i].status);
    CHECK(one[i].zero_count == four[i].zero_count);
    CHECK(one[i].d_H_estimate == four[i].d_H_estimate);
  }
}

TEST_CASE("property: no flapping along the shifted-cusp ray") {
  std::vector<Complex> values;
  for (int k = 0; k <= 24; ++k) values.push_back(std::pow(10.0, -4 + 3.3 * k / 24));  // 1e-4 .. ~0.2
  const auto rows = sweep(cusp(), [](Complex e) { return shifted_cusp(e.real(), e.real()); }, values, kH, kUnit);
  bool left = false;
  for (const auto &row : rows) {
    const bool hit = row.status && *row.status == VerdictStatus::Intersects;
    if (!hit) left = true;
    CHECK_FALSE((left && hit));
  }
  CHECK(rows.front().status == VerdictStatus::Intersects);
}
