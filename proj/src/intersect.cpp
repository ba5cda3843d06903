#include "curvelab/intersect.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>

#include "curvelab/monodromy.hpp"

namespace curvelab {

namespace {

constexpr double kPullbackTrimRel = 1e-14;
constexpr int kTailSamples = 256;
constexpr double kTailSafety = 4.0;
constexpr double kClosureRel = 1e-9;
constexpr double kDuplicateDistance = 1e-8;

CPoly trim_against(const CPoly &f, double scale) {
  std::vector<Complex> c = f.coeffs();
  while (!c.empty() && std::abs(c.back()) <= kPullbackTrimRel * scale) c.pop_back();
  return CPoly(std::move(c));
}

bool in_closure(const Disk &d, Complex x) { return std::abs(x - d.center) <= d.radius * (1 + kClosureRel); }

bool in_polydisk(const Polydisk &H, Complex z, Complex w) { return in_closure(H.base, z) && in_closure(H.vertical, w); }

struct System {
  BivarPoly F, G, Fz, Fw, Gz, Gw;

  System(const BivarPoly &f, const BivarPoly &g)
      : F(f), G(g), Fz(f.derivative_z()), Fw(f.derivative_w()), Gz(g.derivative_z()), Gw(g.derivative_w()) {}

  std::pair<double, double> residual(Complex z, Complex w) const {
    return {std::abs(eval_bivar(F, z, w)), std::abs(eval_bivar(G, z, w))};
  }

  // Newton iteration for F = G = 0; returns the iterate with the smallest
  // combined residual seen.
  std::pair<Complex, Complex> newton(Complex z, Complex w, int max_iter = 40) const {
    auto size = [&](Complex a, Complex b) {
      const auto [rf, rg] = residual(a, b);
      return std::max(rf, rg);
    };
    std::pair<Complex, Complex> best{z, w};
    double best_r = size(z, w);
    for (int it = 0; it < max_iter && best_r > 0; ++it) {
      Eigen::Matrix2cd J;
      J << eval_bivar(Fz, z, w), eval_bivar(Fw, z, w), eval_bivar(Gz, z, w), eval_bivar(Gw, z, w);
      Eigen::Vector2cd rhs(-eval_bivar(F, z, w), -eval_bivar(G, z, w));
      const Eigen::FullPivLU<Eigen::Matrix2cd> lu(J);
      if (!lu.isInvertible()) break;
      const Eigen::Vector2cd step = lu.solve(rhs);
      if (!step.allFinite()) break;
      z += step(0);
      w += step(1);
      const double r = size(z, w);
      if (r < best_r) {
        best_r = r;
        best = {z, w};
      }
      if (step.norm() <= 1e-15 * (1 + std::abs(z) + std::abs(w))) break;
    }
    return best;
  }
};

void add_unique(std::vector<std::pair<Complex, Complex>> &pts, std::pair<Complex, Complex> p) {
  for (const auto &q : pts)
    if (std::hypot(std::abs(p.first - q.first), std::abs(p.second - q.second)) < kDuplicateDistance) return;
  pts.push_back(p);
}

// Common points of F and G in H reached by Newton from the fibres of F over a
// polar grid of the base.
int prescan(const System &sys, const Polydisk &H, const CertifyOptions &opts) {
  std::vector<std::pair<Complex, Complex>> found;
  const int m = sys.F.w_degree();
  auto visit = [&](Complex z) {
    const CPoly s = w_slice(sys.F, z);
    if (s.degree() < m || std::abs(s[m]) <= kDegenerateLeadingRel * s.norm_inf()) return;
    for (auto w : roots(s)) {
      const auto p = sys.newton(z, w);
      const auto [rf, rg] = sys.residual(p.first, p.second);
      if (rf <= opts.residual_tol && rg <= opts.residual_tol && in_polydisk(H, p.first, p.second)) add_unique(found, p);
    }
  };
  visit(H.base.center);
  for (int k = 1; k <= opts.prescan_radial; ++k) {
    const double r = H.base.radius * k / opts.prescan_radial;
    for (int a = 0; a < opts.prescan_angular; ++a)
      visit(H.base.center + std::polar(r, 2.0 * std::numbers::pi * (a + 0.5 * (k % 2)) / opts.prescan_angular));
  }
  return static_cast<int>(found.size());
}

}  // namespace

CPoly pullback(const PuiseuxParam &param, const BivarPoly &G, const std::optional<Disk> &disk) {
  const double scale = compose_scale(param, G);
  const CPoly f = trim_against(compose(param, G), scale);
  if (!disk || param.exact) return f;

  const CPoly ext = compose(param, G, true);
  for (int k = 0; k < kTailSamples; ++k) {
    const Complex t = disk->center + std::polar(disk->radius, 2.0 * std::numbers::pi * k / kTailSamples);
    const double err = std::abs(ext(t) - f(t));
    if (!(kTailSafety * err < std::abs(f(t))))
      throw CurveError(ErrorKind::TruncationDominates,
                       "series tail is comparable to the pullback on the t-disk boundary");
  }
  return f;
}

std::string_view to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Intersects: return "intersects";
    case VerdictStatus::Empty: return "empty";
    case VerdictStatus::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

IntersectionVerdict certify(const BivarPoly &F, const BivarPoly &G, const Polydisk &H, const Disk &t_disk,
                            const CertifyOptions &opts) {
  if (!check_good(F, H).good) throw CurveError(ErrorKind::NotGood, "polydisk is not good for the first curve");
  if (!check_good(G, H).good) throw CurveError(ErrorKind::NotGood, "polydisk is not good for the second curve");

  IntersectionVerdict v;
  v.hypothesis.nnc_count_W = static_cast<int>(locate_nnc(G, H.base, discriminant(G, H.base)).size());
  v.hypothesis.d_H_estimate =
      hausdorff(sample_curve(F, H, opts.hausdorff_radial, opts.hausdorff_angular),
                sample_curve(G, H, opts.hausdorff_radial, opts.hausdorff_angular));

  std::vector<Complex> base_points;
  for (const auto &c : discriminant_points(F, H.base)) base_points.push_back(c.location);
  if (base_points.empty()) base_points.push_back(H.base.center);

  const System sys(F, G);
  bool all_certified = true;
  std::vector<std::pair<Complex, Complex>> candidates;

  // Branch pullbacks at one centre; the series order is doubled while the
  // truncation dominates, up to opts.max_order.
  auto process_center = [&](Complex z0, Complex w0) {
    for (int order = opts.order;; order *= 2) {
      std::vector<BranchReport> reports;
      std::vector<std::pair<Complex, Complex>> found;
      bool common = false;
      bool truncated = false;
      bool certified = true;
      int count = 0;
      for (const auto &b : puiseux_expand(F, z0, w0, order).branches) {
        BranchReport br;
        br.center_z = z0;
        br.center_w = w0;
        br.ramification = b.ramification;
        br.exact_series = b.exact;
        br.order = order;
        try {
          const CPoly f = pullback(b, G, t_disk);
          br.pullback_degree = f.degree();
          if (f.is_zero()) {
            common = true;
            found.emplace_back(b.z_at(0.0), b.w_at(0.0));
          } else {
            br.zero_count = count_zeros_in_disk(f, t_disk, opts.winding_samples);
            count += br.zero_count;
            if (br.zero_count > 0)
              for (const auto &r : root_clusters(f))
                if (t_disk.contains(r.location)) found.push_back(sys.newton(b.z_at(r.location), b.w_at(r.location)));
          }
        } catch (const CurveError &e) {
          if (e.kind() != ErrorKind::TruncationDominates && e.kind() != ErrorKind::BoundaryZero) throw;
          truncated = truncated || e.kind() == ErrorKind::TruncationDominates;
          br.failure = e.what();
          certified = false;
        }
        reports.push_back(std::move(br));
      }
      if (truncated && 2 * order <= opts.max_order) continue;
      v.branches.insert(v.branches.end(), reports.begin(), reports.end());
      candidates.insert(candidates.end(), found.begin(), found.end());
      v.common_component = v.common_component || common;
      v.zero_count += count;
      all_certified = all_certified && certified;
      return;
    }
  };

  for (Complex z0 : base_points)
    for (const auto &cl : root_clusters(w_slice(F, z0)))
      if (H.vertical.contains(cl.location)) process_center(z0, cl.location);

  std::vector<std::pair<Complex, Complex>> accepted;
  for (const auto &p : candidates) {
    const auto [rf, rg] = sys.residual(p.first, p.second);
    if (rf <= opts.residual_tol && rg <= opts.residual_tol && in_polydisk(H, p.first, p.second)) add_unique(accepted, p);
  }
  std::sort(accepted.begin(), accepted.end(), [](const auto &a, const auto &b) {
    if (a.first != b.first) return canonical_less(a.first, b.first);
    return canonical_less(a.second, b.second);
  });
  for (const auto &p : accepted) {
    v.witnesses.push_back(p);
    v.residuals.push_back(sys.residual(p.first, p.second));
  }

  if (!v.witnesses.empty()) {
    v.status = VerdictStatus::Intersects;
    return v;
  }
  v.prescan_hits = prescan(sys, H, opts);
  v.status = all_certified && v.zero_count == 0 && v.prescan_hits == 0 ? VerdictStatus::Empty
                                                                        : VerdictStatus::Inconclusive;
  return v;
}

TrivarPoly::TrivarPoly(TermMap terms) {
  for (const auto &[e, c] : terms) add(e[0], e[1], e[2], c);
}

void TrivarPoly::add(int a, int b, int c, Complex v) {
  if (a < 0 || b < 0 || c < 0) throw CurveError(ErrorKind::SchemaError, "negative exponent");
  const Exponent e{a, b, c};
  const Complex s = terms_[e] + v;
  if (s == Complex{})
    terms_.erase(e);
  else
    terms_[e] = s;
}

int TrivarPoly::total_degree() const {
  int d = -1;
  for (const auto &[e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
  return d;
}

BivarPoly pullback_map(const std::array<BivarPoly, 3> &components, const TrivarPoly &Q) {
  int comp_deg = 0;
  for (const auto &g : components)
    for (const auto &[e, c] : g.terms()) comp_deg = std::max(comp_deg, e.first + e.second);
  if (static_cast<long>(Q.total_degree()) * comp_deg > kPullbackDegreeCap)
    throw CurveError(ErrorKind::DegreeCap, "pullback degree exceeds " + std::to_string(kPullbackDegreeCap));

  std::array<std::vector<BivarPoly>, 3> powers;
  for (int k = 0; k < 3; ++k) powers[k].push_back(BivarPoly::constant(1.0));
  auto power = [&](int k, int e) -> const BivarPoly & {
    while (static_cast<int>(powers[k].size()) <= e) powers[k].push_back(powers[k].back() * components[k]);
    return powers[k][e];
  };

  BivarPoly out;
  for (const auto &[e, c] : Q.terms()) out += c * (power(0, e[0]) * power(1, e[1]) * power(2, e[2]));
  return out;
}

std::vector<Complex> line_zero(const BivarPoly &p, const LineSpec &line, const Disk &disk) {
  CPoly r;
  if (line.fixed == 'w')
    r = z_slice(p, line.value);
  else if (line.fixed == 'z')
    r = w_slice(p, line.value);
  else
    throw CurveError(ErrorKind::SchemaError, "line must fix 'z' or 'w'");
  if (r.is_zero()) throw CurveError(ErrorKind::IdenticallyZero, "the line lies in the zero set");
  std::vector<Complex> out;
  if (r.degree() == 0) return out;
  for (auto x : roots(r))
    if (disk.contains(x)) out.push_back(x);
  return out;
}

std::vector<SweepRow> sweep(const BivarPoly &F, const std::function<BivarPoly(Complex)> &family,
                            const std::vector<Complex> &values, const Polydisk &H, const Disk &t_disk,
                            const CertifyOptions &opts) {
  std::vector<SweepRow> rows(values.size());
  auto cell = [&](std::size_t i) {
    SweepRow &row = rows[i];
    row.eps = values[i];
    try {
      const auto v = certify(F, family(values[i]), H, t_disk, opts);
      row.status = v.status;
      row.zero_count = v.zero_count;
      row.d_H_estimate = v.hypothesis.d_H_estimate;
      row.nnc_count = v.hypothesis.nnc_count_W;
    } catch (const CurveError &e) {
      row.error = e.what();
    }
  };

  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  if (const char *env = std::getenv("CURVELAB_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) workers = static_cast<unsigned>(n);
  }
  workers = std::min<unsigned>(workers, std::max<std::size_t>(values.size(), 1));

  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) cell(i);
  };
  std::vector<std::jthread> pool;
  for (unsigned k = 1; k < workers; ++k) pool.emplace_back(run);
  run();
  return rows;
}

}  // namespace curvelab
