#include "curvelab/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace curvelab {

int MonodromyResult::order() const {
  int l = 1;
  for (int c : cycles) l = std::lcm(l, c);
  return l;
}

bool MonodromyResult::is_identity() const {
  for (std::size_t i = 0; i < permutation.size(); ++i)
    if (permutation[i] != static_cast<int>(i)) return false;
  return true;
}

std::vector<std::vector<int>> cycle_decomposition(const std::vector<int> &perm) {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(perm.size(), 0);
  for (std::size_t s = 0; s < perm.size(); ++s) {
    if (seen[s]) continue;
    std::vector<int> cyc;
    for (int i = static_cast<int>(s); !seen[i]; i = perm[i]) {
      seen[i] = 1;
      cyc.push_back(i);
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

namespace {

double min_pairwise(const std::vector<Complex> &pts) {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::min(d, std::abs(pts[i] - pts[j]));
  return d;
}

struct PathJump {};

// Nearest-root assignment of `targets` to `candidates`; throws PathJump when a
// target has no candidate within tol or two targets claim the same one.
std::vector<int> match(const std::vector<Complex> &targets, const std::vector<Complex> &candidates, double tol) {
  std::vector<int> assign(targets.size(), -1);
  std::vector<char> taken(candidates.size(), 0);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    double d1 = std::numeric_limits<double>::infinity();
    double d2 = d1;
    int best = -1;
    for (std::size_t j = 0; j < candidates.size(); ++j) {
      const double d = std::abs(targets[i] - candidates[j]);
      if (d < d1) {
        d2 = d1;
        d1 = d;
        best = static_cast<int>(j);
      } else if (d < d2) {
        d2 = d;
      }
    }
    if (best < 0 || !(d1 < tol) || d2 < tol || taken[best]) throw PathJump{};
    taken[best] = 1;
    assign[i] = best;
  }
  return assign;
}

MonodromyResult attempt(const BivarPoly &F, const LoopSpec &loop, int steps) {
  const int m = F.w_degree();
  auto z_at = [&](long k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k % steps) / steps;
    return loop.center + std::polar(loop.radius, theta);
  };
  auto slice_at = [&](Complex z) {
    CPoly s = w_slice(F, z);
    if (s.degree() < m || std::abs(s[m]) <= kDegenerateLeadingRel * s.norm_inf())
      throw CurveError(ErrorKind::OnDiscriminant, "a sheet escapes to infinity on the loop");
    return s;
  };

  MonodromyResult out;
  out.steps_per_turn = steps;
  out.start_fiber.base_point = z_at(0);
  for (const auto &c : root_clusters(slice_at(z_at(0)))) {
    if (c.multiplicity > 1) throw CurveError(ErrorKind::OnDiscriminant, "start fibre has repeated points");
    out.start_fiber.points.push_back(c.location);
  }
  const auto &start = out.start_fiber.points;

  std::vector<Complex> cur = start;
  std::vector<Complex> prev = start;
  const long total = static_cast<long>(steps) * loop.turns;
  for (long k = 1; k <= total; ++k) {
    const CPoly s = slice_at(z_at(k));
    std::vector<Complex> pred(cur.size());
    for (std::size_t i = 0; i < cur.size(); ++i) pred[i] = k >= 2 ? 2.0 * cur[i] - prev[i] : cur[i];
    std::vector<Complex> next;
    try {
      next = refine_roots(s, pred);
    } catch (const CurveError &) {
      throw PathJump{};
    }
    const double tol = kJumpFraction * min_pairwise(cur);
    const auto assign = match(pred, next, tol);
    prev = cur;
    for (std::size_t i = 0; i < cur.size(); ++i) cur[i] = next[assign[i]];
  }

  out.permutation = match(cur, start, kJumpFraction * min_pairwise(start));
  for (const auto &cyc : cycle_decomposition(out.permutation)) out.cycles.push_back(static_cast<int>(cyc.size()));
  std::sort(out.cycles.begin(), out.cycles.end(), std::greater<>());
  return out;
}

}  // namespace

MonodromyResult track(const BivarPoly &F, const LoopSpec &loop) {
  if (!(loop.radius > 0) || loop.turns < 1 || loop.steps_per_turn < 16)
    throw CurveError(ErrorKind::SchemaError, "loop needs radius > 0, turns >= 1, steps_per_turn >= 16");
  if (F.w_degree() <= 0) throw CurveError(ErrorKind::ZeroWDegree, "monodromy of a curve constant in w");

  for (const auto &c : discriminant_candidates(F)) {
    const double gap = std::abs(std::abs(c.location - loop.center) - loop.radius);
    if (gap <= 1e-7 * loop.radius)
      throw CurveError(ErrorKind::OnDiscriminant, "the loop passes through a discriminant point");
  }

  for (int steps = loop.steps_per_turn;; steps *= 2) {
    try {
      return attempt(F, loop, steps);
    } catch (const PathJump &) {
      if (steps >= kMaxStepsPerTurn)
        throw CurveError(ErrorKind::PathJump, "ambiguous root matching at " + std::to_string(steps) + " steps per turn");
    }
  }
}

MonodromyResult branch_monodromy(const BivarPoly &F, const Disk &base) {
  return track(F, {base.center, base.radius, 1, 512});
}

std::vector<int> branch_count(const BivarPoly &F, const Disk &base) { return branch_monodromy(F, base).cycles; }

std::vector<Complex> locate_nnc(const BivarPoly &, const Disk &base, const DiscriminantReport &candidates) {
  std::vector<Complex> out;
  for (const auto &p : candidates.points)
    if (p.crossing == Crossing::NonNormalCrossing && base.contains(p.location)) out.push_back(p.location);
  return out;
}

}  // namespace curvelab
