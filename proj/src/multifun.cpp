#include "curvelab/multifun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace curvelab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double directed(const std::vector<Complex> &a, const std::vector<Complex> &b) {
  double sup = 0;
  for (auto x : a) {
    double inf = kInf;
    for (auto y : b) inf = std::min(inf, std::abs(x - y));
    sup = std::max(sup, inf);
  }
  return sup;
}

double dist(const std::pair<Complex, Complex> &x, const std::pair<Complex, Complex> &y) {
  return std::hypot(std::abs(x.first - y.first), std::abs(x.second - y.second));
}

double directed(const SampledCurve &a, const SampledCurve &b) {
  double sup = 0;
  for (const auto &x : a.points) {
    double inf = kInf;
    for (const auto &y : b.points) {
      inf = std::min(inf, dist(x, y));
      if (inf <= sup) break;  // cannot raise the sup any more
    }
    sup = std::max(sup, inf);
  }
  return sup;
}

// Distinct fibre points over z; the slice is trimmed when its leading
// coefficient vanishes.
std::vector<Complex> distinct_fibre(const BivarPoly &F, Complex z) {
  const CPoly s = w_slice(F, z).trimmed(kDegenerateLeadingRel);
  std::vector<Complex> out;
  if (s.degree() < 1) return out;
  for (const auto &c : root_clusters(s)) out.push_back(c.location);
  return out;
}

}  // namespace

double d_sym(const Fiber &a, const Fiber &b) {
  if (a.points.empty() || b.points.empty()) throw CurveError(ErrorKind::EmptyDomain, "d_sym of an empty fibre");
  return directed(a.points, b.points);
}

double d_sym_symmetric(const Fiber &a, const Fiber &b) { return std::max(d_sym(a, b), d_sym(b, a)); }

SampledCurve sample_curve(const BivarPoly &F, const Polydisk &H, int radial, int angular, std::string source) {
  if (radial < 1 || angular < 1) throw CurveError(ErrorKind::SchemaError, "sample counts must be positive");
  SampledCurve out;
  out.source = std::move(source);
  auto visit = [&](Complex z) {
    const CPoly s = w_slice(F, z).trimmed(kDegenerateLeadingRel);
    if (s.degree() < 1) return;
    for (auto w : roots(s))
      if (H.vertical.contains(w)) out.points.emplace_back(z, w);
  };
  visit(H.base.center);
  for (int k = 1; k <= radial; ++k) {
    const double r = H.base.radius * k / (radial + 1);
    for (int a = 0; a < angular; ++a) visit(H.base.center + std::polar(r, 2.0 * std::numbers::pi * a / angular));
  }
  return out;
}

double hausdorff(const SampledCurve &a, const SampledCurve &b) {
  if (a.points.empty() || b.points.empty()) throw CurveError(ErrorKind::EmptyDomain, "Hausdorff distance of an empty sample");
  return std::max(directed(a, b), directed(b, a));
}

double hausdorff_points(const std::vector<Complex> &a, const std::vector<Complex> &b) {
  if (a.empty() && b.empty()) return 0;
  if (a.empty() || b.empty()) return kInf;
  return std::max(directed(a, b), directed(b, a));
}

double separation(const BivarPoly &F, const Disk &region, const std::vector<Disk> &excluded, int grid) {
  if (grid < 2) throw CurveError(ErrorKind::SchemaError, "separation grid must be at least 2");
  if (F.w_degree() <= 0) throw CurveError(ErrorKind::ZeroWDegree, "separation of a curve constant in w");
  const int angular = 4 * grid;
  auto inside_domain = [&](Complex q) {
    if (std::abs(q - region.center) > region.radius * (1 + 1e-12)) return false;
    for (const auto &d : excluded)
      if (std::abs(q - d.center) < d.radius * (1 - 1e-12)) return false;  // circle itself is kept
    return true;
  };

  bool any = false;
  double best = kInf;
  auto visit = [&](Complex q) {
    if (!inside_domain(q)) return;
    any = true;
    const auto pts = distinct_fibre(F, q);
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::min(best, std::abs(pts[i] - pts[j]));
  };

  for (int k = 0; k < grid; ++k) {
    const double r = region.radius * k / (grid - 1);
    if (k == 0) {
      visit(region.center);
      continue;
    }
    for (int a = 0; a < angular; ++a) visit(region.center + std::polar(r, 2.0 * std::numbers::pi * a / angular));
  }
  for (const auto &d : excluded)
    for (int a = 0; a < angular; ++a) visit(d.center + std::polar(d.radius, 2.0 * std::numbers::pi * a / angular));

  if (!any) throw CurveError(ErrorKind::EmptyDomain, "no grid point lies in the region outside the excluded disks");
  return best;
}

double discriminant_drift(const BivarPoly &F, const BivarPoly &G, const Disk &base) {
  std::vector<Complex> a;
  std::vector<Complex> b;
  for (const auto &c : discriminant_points(F, base)) a.push_back(c.location);
  for (const auto &c : discriminant_points(G, base)) b.push_back(c.location);
  return hausdorff_points(a, b);
}

}  // namespace curvelab
