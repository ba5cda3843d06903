#pragma once

// Proper projection (z, w) -> z of a plane curve F = 0: good-neighbourhood
// checks, fibres, discriminant locus and crossing classification.

#include <optional>
#include <vector>

#include "curvelab/polycalc.hpp"

namespace curvelab {

struct Polydisk {
  Disk base;      // z factor
  Disk vertical;  // w factor
};

/// Unordered multiset of w-values over a base point, stored in canonical
/// (real, imag) order.
struct Fiber {
  Complex base_point{};
  std::vector<Complex> points;

  std::size_t size() const { return points.size(); }
};

struct GoodCheck {
  bool good = true;
  /// Worst violating point (z, w) when !good.
  std::optional<std::pair<Complex, Complex>> witness;
  /// Set when the violation is a vanishing leading w-coefficient.
  bool degenerate_slice = false;
};

enum class Crossing { NormalCrossing, NonNormalCrossing };

struct DiscriminantPoint {
  Complex location;
  int multiplicity = 1;
  Crossing crossing = Crossing::NonNormalCrossing;
};

struct DiscriminantReport {
  std::vector<DiscriminantPoint> points;
  int sheet_count = 0;
};

inline constexpr double kDiscriminantClusterTol = 1e-6;
inline constexpr double kGoodMarginRel = 1e-6;
inline constexpr double kDegenerateLeadingRel = 1e-13;

/// Samples a polar grid over the closed base disk (samples radii times
/// samples angles) and checks that every fibre point lies strictly inside the
/// vertical disk, less a margin of kGoodMarginRel * vertical.radius.
GoodCheck check_good(const BivarPoly &F, const Polydisk &H, int samples = 32);

/// Fibre of the projection over z0. Throws DegenerateSlice when the leading
/// w-coefficient vanishes at z0.
Fiber fiber(const BivarPoly &F, Complex z0, const RootOptions &opts = {});

/// Res_w(F, dF/dw), throwing NonSquareFree when it vanishes identically.
CPoly discriminant_polynomial(const BivarPoly &F);

/// Clustered roots of the discriminant polynomial anywhere in the plane.
std::vector<RootCluster> discriminant_candidates(const BivarPoly &F);

/// Clustered discriminant roots inside `base`, unclassified.
std::vector<RootCluster> discriminant_points(const BivarPoly &F, const Disk &base);

/// Discriminant points in `base` with multiplicities and crossing types.
DiscriminantReport discriminant(const BivarPoly &F, const Disk &base);

/// Monodromy-based classification of a discriminant point q. A trivial
/// permutation around the probe circle with a repeated fibre value over q is
/// a normal crossing.
Crossing classify_crossing(const BivarPoly &F, Complex q, double probe_radius);

/// Half the distance from q to the nearest other discriminant root, or to the
/// boundary of `base` when that is closer.
double default_probe_radius(const BivarPoly &F, Complex q, const Disk &base);

}  // namespace curvelab
