#pragma once

// Intersection certification: pull one curve's equation back through the
// other's Puiseux parametrizations and count zeros with the argument
// principle. Also hypersurface pullbacks through maps into C^3, line
// restrictions and parameter sweeps.

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curvelab/multifun.hpp"
#include "curvelab/puiseux.hpp"

namespace curvelab {

/// G(t^m + z0, g(t) + w0) for the truncated series. When `disk` is given and
/// the series is not exact, checks on the disk boundary that the tail of the
/// series cannot change the zero count (throws TruncationDominates).
CPoly pullback(const PuiseuxParam &param, const BivarPoly &G, const std::optional<Disk> &disk = std::nullopt);

enum class VerdictStatus { Intersects, Empty, Inconclusive };

std::string_view to_string(VerdictStatus s);

struct HypothesisReport {
  /// Non-normal crossings of the second curve inside the base disk.
  int nnc_count_W = 0;
  /// Sampled Hausdorff distance between the two curves inside the polydisk.
  double d_H_estimate = 0;
};

struct BranchReport {
  Complex center_z{};
  Complex center_w{};
  int ramification = 1;
  bool exact_series = false;
  /// Series truncation order used for this branch.
  int order = 0;
  /// Degree of the pullback; -1 for the zero polynomial.
  int pullback_degree = -1;
  int zero_count = 0;
  /// Set when this branch could not be certified (TruncationDominates, BoundaryZero).
  std::string failure;
};

struct IntersectionVerdict {
  VerdictStatus status = VerdictStatus::Inconclusive;
  std::vector<std::pair<Complex, Complex>> witnesses;
  int zero_count = 0;
  /// (|F|, |G|) at each witness.
  std::vector<std::pair<double, double>> residuals;
  HypothesisReport hypothesis;
  /// Some branch lies entirely in the second curve (pullback identically zero).
  bool common_component = false;
  std::vector<BranchReport> branches;
  /// Common points found by the grid pre-scan; -1 when the scan was not
  /// needed (a witness was already certified).
  int prescan_hits = -1;
};

struct CertifyOptions {
  int order = kDefaultPuiseuxOrder;
  /// Upper limit when the order is doubled because the truncation dominates.
  int max_order = 64;
  double residual_tol = 1e-8;
  int prescan_radial = 24;
  int prescan_angular = 48;
  int hausdorff_radial = 12;
  int hausdorff_angular = 48;
  int winding_samples = kDefaultWindingSamples;
};

/// Decides whether F = 0 and G = 0 meet inside H. Zeros of each branch
/// pullback in t_disk become witnesses after two-variable Newton polishing;
/// Empty needs every branch count to be certifiably zero and an independent
/// grid pre-scan of H to find nothing.
IntersectionVerdict certify(const BivarPoly &F, const BivarPoly &G, const Polydisk &H, const Disk &t_disk,
                            const CertifyOptions &opts = {});

/// Sparse polynomial in three variables (a, b, c).
class TrivarPoly {
 public:
  using Exponent = std::array<int, 3>;
  using TermMap = std::map<Exponent, Complex>;

  TrivarPoly() = default;
  explicit TrivarPoly(TermMap terms);
  const TermMap &terms() const { return terms_; }
  void add(int a, int b, int c, Complex v);
  int total_degree() const;

 private:
  TermMap terms_;
};

inline constexpr int kPullbackDegreeCap = 96;

/// Q(g1(z, w), g2(z, w), g3(z, w)) expanded. Throws DegreeCap when
/// deg Q * max deg g_k exceeds kPullbackDegreeCap.
BivarPoly pullback_map(const std::array<BivarPoly, 3> &components, const TrivarPoly &Q);

struct LineSpec {
  /// 'z' or 'w': the variable held fixed.
  char fixed = 'w';
  Complex value{};
};

/// Zeros of p restricted to the line, inside the disk, with multiplicity.
/// Throws IdenticallyZero when the line lies in p = 0.
std::vector<Complex> line_zero(const BivarPoly &p, const LineSpec &line, const Disk &disk);

struct SweepRow {
  Complex eps{};
  std::optional<VerdictStatus> status;
  int zero_count = 0;
  double d_H_estimate = 0;
  int nnc_count = 0;
  /// Error kind and message when the cell failed.
  std::string error;
};

/// certify(F, family(eps), H, t_disk) for each value. Cells run on
/// CURVELAB_THREADS workers (default: hardware concurrency); rows keep the
/// input order and cell errors are recorded rather than thrown.
std::vector<SweepRow> sweep(const BivarPoly &F, const std::function<BivarPoly(Complex)> &family,
                            const std::vector<Complex> &values, const Polydisk &H, const Disk &t_disk,
                            const CertifyOptions &opts = {});

}  // namespace curvelab
