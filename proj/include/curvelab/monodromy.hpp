#pragma once

// Analytic continuation of fibres along circles in the base and the
// permutation it induces on the sheets.

#include <vector>

#include "curvelab/projection.hpp"

namespace curvelab {

struct LoopSpec {
  Complex center{};
  double radius = 1.0;
  int turns = 1;
  int steps_per_turn = 512;
};

struct MonodromyResult {
  /// permutation[i] = index (into start_fiber) where the point starting at
  /// start_fiber.points[i] ends after the loop.
  std::vector<int> permutation;
  /// Cycle lengths, descending.
  std::vector<int> cycles;
  Fiber start_fiber;
  /// Steps per turn actually used after automatic refinement.
  int steps_per_turn = 0;

  /// Least common multiple of the cycle lengths.
  int order() const;
  bool is_identity() const;
};

inline constexpr int kMaxStepsPerTurn = 4096;
inline constexpr double kJumpFraction = 0.4;

/// Predictor-corrector continuation of every fibre point for loop.turns
/// revolutions, starting at angle 0. On PathJump the step count is doubled up
/// to kMaxStepsPerTurn before the error is surfaced.
MonodromyResult track(const BivarPoly &F, const LoopSpec &loop);

/// Cycle structure of the monodromy once around the boundary of `base`.
std::vector<int> branch_count(const BivarPoly &F, const Disk &base);

/// Same, with the full result (start fibre and permutation).
MonodromyResult branch_monodromy(const BivarPoly &F, const Disk &base);

/// Locations of the NonNormalCrossing entries of `candidates`.
std::vector<Complex> locate_nnc(const BivarPoly &F, const Disk &base, const DiscriminantReport &candidates);

/// Cycle decomposition of a permutation, each cycle listed from its smallest
/// index; cycles ordered by that smallest index.
std::vector<std::vector<int>> cycle_decomposition(const std::vector<int> &perm);

}  // namespace curvelab
