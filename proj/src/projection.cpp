#include "curvelab/projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "curvelab/monodromy.hpp"

namespace curvelab {

namespace {

bool leading_vanishes(const CPoly &slice, int m) {
  if (slice.degree() < m) return true;
  return std::abs(slice[m]) <= kDegenerateLeadingRel * slice.norm_inf();
}

}  // namespace

GoodCheck check_good(const BivarPoly &F, const Polydisk &H, int samples) {
  const int m = F.w_degree();
  if (m <= 0) throw CurveError(ErrorKind::ZeroWDegree, "good-neighbourhood check needs positive w-degree");
  samples = std::max(samples, 2);
  const double limit = H.vertical.radius * (1.0 - kGoodMarginRel);

  GoodCheck out;
  double worst_excess = 0;
  auto visit = [&](Complex z) {
    const CPoly s = w_slice(F, z);
    if (leading_vanishes(s, m)) {
      const CPoly low = s.trimmed(kDegenerateLeadingRel);
      Complex w = H.vertical.center;
      if (low.degree() > 0)
        for (auto r : roots(low))
          if (std::abs(r - H.vertical.center) > std::abs(w - H.vertical.center)) w = r;
      if (!out.degenerate_slice) {
        out.good = false;
        out.degenerate_slice = true;
        out.witness = {z, w};
        worst_excess = std::numeric_limits<double>::infinity();
      }
      return;
    }
    for (auto w : roots(s)) {
      const double excess = std::abs(w - H.vertical.center) - limit;
      if (excess >= 0 && (out.good || excess > worst_excess)) {
        out.good = false;
        worst_excess = excess;
        out.witness = {z, w};
      }
    }
  };

  visit(H.base.center);
  for (int k = 1; k < samples; ++k) {
    const double r = H.base.radius * k / (samples - 1);
    for (int a = 0; a < samples; ++a) visit(H.base.center + std::polar(r, 2.0 * std::numbers::pi * a / samples));
  }
  return out;
}

Fiber fiber(const BivarPoly &F, Complex z0, const RootOptions &opts) {
  const int m = F.w_degree();
  if (m <= 0) throw CurveError(ErrorKind::ZeroWDegree, "fiber of a curve constant in w");
  const CPoly s = w_slice(F, z0);
  if (s.is_zero()) throw CurveError(ErrorKind::IdenticallyZero, "w-slice vanishes identically");
  if (leading_vanishes(s, m)) throw CurveError(ErrorKind::DegenerateSlice, "leading w-coefficient vanishes at the base point");
  return {z0, roots(s, opts)};
}

CPoly discriminant_polynomial(const BivarPoly &F) {
  const int m = F.w_degree();
  if (m <= 0) throw CurveError(ErrorKind::ZeroWDegree, "discriminant of a curve constant in w");
  CPoly r;
  if (m == 1) {
    // Res_w(a1 w + a0, a1) = a1.
    r = F.w_coefficients()[1];
  } else {
    r = resultant_w(F, F.derivative_w());
  }
  if (r.is_zero()) throw CurveError(ErrorKind::NonSquareFree, "Res_w(F, dF/dw) vanishes identically");
  return r;
}

std::vector<RootCluster> discriminant_candidates(const BivarPoly &F) {
  const CPoly r = discriminant_polynomial(F);
  if (r.degree() <= 0) return {};
  return root_clusters(r, {.cluster_tol = kDiscriminantClusterTol});
}

std::vector<RootCluster> discriminant_points(const BivarPoly &F, const Disk &base) {
  std::vector<RootCluster> out;
  for (const auto &c : discriminant_candidates(F))
    if (base.contains(c.location)) out.push_back(c);
  return out;
}

namespace {

double nearest_other(const std::vector<RootCluster> &cands, Complex q) {
  // q's own cluster is the nearest candidate when it is within the cluster tolerance.
  double own = std::numeric_limits<double>::infinity();
  std::size_t own_idx = cands.size();
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const double d = std::abs(cands[i].location - q);
    if (d < own) {
      own = d;
      own_idx = i;
    }
  }
  if (own > kDiscriminantClusterTol) own_idx = cands.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cands.size(); ++i)
    if (i != own_idx) best = std::min(best, std::abs(cands[i].location - q));
  return best;
}

double probe_radius_from(const std::vector<RootCluster> &cands, Complex q, const Disk &base) {
  const double other = nearest_other(cands, q);
  if (std::isfinite(other)) return 0.5 * other;
  return 0.5 * (base.radius - std::abs(q - base.center));
}

Crossing classify_with(const BivarPoly &F, Complex q, double probe, const std::vector<RootCluster> &cands) {
  if (!(probe > 0)) throw CurveError(ErrorKind::ProbeTooLarge, "probe radius must be positive");
  if (nearest_other(cands, q) <= probe)
    throw CurveError(ErrorKind::ProbeTooLarge, "another discriminant point lies within the probe radius");

  const int m = F.w_degree();
  const CPoly s = w_slice(F, q);
  // A sheet escaping to infinity is not a crossing of smooth graphs.
  if (leading_vanishes(s, m)) return Crossing::NonNormalCrossing;

  const MonodromyResult mono = track(F, {q, probe, 1, 512});
  if (!mono.is_identity()) return Crossing::NonNormalCrossing;

  for (const auto &c : root_clusters(s))
    if (c.multiplicity > 1) return Crossing::NormalCrossing;
  throw CurveError(ErrorKind::ProbeFalsePositive, "trivial monodromy and distinct sheets: not a discriminant point");
}

}  // namespace

double default_probe_radius(const BivarPoly &F, Complex q, const Disk &base) {
  return probe_radius_from(discriminant_candidates(F), q, base);
}

Crossing classify_crossing(const BivarPoly &F, Complex q, double probe_radius) {
  return classify_with(F, q, probe_radius, discriminant_candidates(F));
}

DiscriminantReport discriminant(const BivarPoly &F, const Disk &base) {
  const auto cands = discriminant_candidates(F);
  DiscriminantReport report;
  report.sheet_count = F.w_degree();
  for (const auto &c : cands) {
    if (!base.contains(c.location)) continue;
    const double probe = probe_radius_from(cands, c.location, base);
    report.points.push_back({c.location, c.multiplicity, classify_with(F, c.location, probe, cands)});
  }
  return report;
}

}  // namespace curvelab
