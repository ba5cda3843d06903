#pragma once

// Distances between fibres and sampled curves, separation of sheets away from
// the discriminant, and drift of discriminant loci under perturbation.

#include <string>
#include <utility>
#include <vector>

#include "curvelab/projection.hpp"

namespace curvelab {

/// Finite sample of a curve inside a polydisk.
struct SampledCurve {
  std::vector<std::pair<Complex, Complex>> points;
  std::string source;
};

/// Directed distance sup_{x in a} min_{y in b} |x - y|. Not symmetric.
double d_sym(const Fiber &a, const Fiber &b);

/// max(d_sym(a, b), d_sym(b, a)).
double d_sym_symmetric(const Fiber &a, const Fiber &b);

/// Fibre points of F over a polar grid of the base disk (radial x angular
/// samples, centre included once) that lie in the vertical disk.
SampledCurve sample_curve(const BivarPoly &F, const Polydisk &H, int radial, int angular, std::string source = {});

/// Hausdorff distance between two finite samples in C^2 (Euclidean norm).
/// An estimate of the distance between the underlying curves.
double hausdorff(const SampledCurve &a, const SampledCurve &b);

inline constexpr int kDefaultSeparationGrid = 64;

/// Minimum distance between distinct fibre points over the sampled part of
/// region minus the excluded disks. The polar grid has `grid` radii and
/// 4 * grid angles; the boundary circles of the excluded disks are sampled
/// with the same angular density. Infinite when no sampled fibre has two
/// distinct points.
double separation(const BivarPoly &F, const Disk &region, const std::vector<Disk> &excluded,
                  int grid = kDefaultSeparationGrid);

/// Hausdorff distance between the discriminant point sets of F and G in base;
/// 0 when both are empty, infinite when exactly one is.
double discriminant_drift(const BivarPoly &F, const BivarPoly &G, const Disk &base);

/// Hausdorff distance between two finite point sets in the plane.
double hausdorff_points(const std::vector<Complex> &a, const std::vector<Complex> &b);

}  // namespace curvelab
