#pragma once

// Newton-polygon construction of Puiseux parametrizations t -> (t^m, g(t)) of
// the local branches of F = 0 at a point.

#include <string>
#include <vector>

#include "curvelab/polycalc.hpp"

namespace curvelab {

struct Rational {
  int num = 0;
  int den = 1;
  friend bool operator==(const Rational &, const Rational &) = default;
};

std::string to_string(const Rational &r);

struct NewtonEdge {
  BivarPoly::Exponent from;  // endpoint on the w-side (smaller z-degree)
  BivarPoly::Exponent to;    // endpoint on the z-side
  /// Leading Puiseux exponent: w ~ c z^exponent along this edge.
  Rational exponent;
  /// Slope -exponent, reduced.
  Rational slope;
  /// Terms of F lying on the edge.
  BivarPoly::TermMap monomials;
};

struct NewtonPolygon {
  std::vector<NewtonEdge> edges;
  /// F = z^z_factor w^w_factor * (rest); the edges belong to the rest.
  int z_factor = 0;
  int w_factor = 0;
};

/// Lower-left boundary of the support of F (after splitting off monomial
/// factors). Requires F(0, 0) = 0; throws TrivialPolygon for a monomial.
NewtonPolygon newton_polygon(const BivarPoly &F);

struct PuiseuxParam {
  int ramification = 1;
  /// g(t) coefficients by exponent 0 .. truncation_order - 1 (centre removed).
  std::vector<Complex> series;
  int truncation_order = 16;
  /// Centre (z0, w0) of the expansion: the branch is t -> (z0 + t^m, w0 + g(t)).
  std::pair<Complex, Complex> base_shift{};
  /// True when g is the whole branch (F vanishes identically along it).
  bool exact = false;
  /// Next truncation_order coefficients, for tail estimates; zero when exact.
  std::vector<Complex> tail;

  Complex z_at(Complex t) const;
  Complex w_at(Complex t) const;
  /// Coefficients of t -> w0 + g(t), optionally including the tail.
  CPoly w_poly(bool with_tail = false) const;
  /// Coefficients of t -> z0 + t^m.
  CPoly z_poly() const;
};

struct PuiseuxExpansion {
  std::vector<PuiseuxParam> branches;
  /// Multiplicity of the vertical line z = z0 as a factor of F; such a
  /// component is not a graph over z and has no parametrization here.
  int vertical_factor = 0;
};

inline constexpr int kDefaultPuiseuxOrder = 16;

/// One parametrization per irreducible branch of F at (center_z, center_w),
/// each truncated below t^order.
PuiseuxExpansion puiseux_expand(const BivarPoly &F, Complex center_z, Complex center_w, int order = kDefaultPuiseuxOrder);

/// G(z0 + t^m, w0 + g(t)) as a polynomial in t, from the truncated
/// series (and its tail when requested). No truncation of the result.
CPoly compose(const PuiseuxParam &param, const BivarPoly &G, bool with_tail = false);

/// Upper bound for the 1-norm of compose(param, G) from the coefficient norms
/// of the pieces; the natural scale for deciding that a composition vanishes.
double compose_scale(const PuiseuxParam &param, const BivarPoly &G);

/// max |F(param(t))| over `samples` points of |t| = radius.
double param_residual(const PuiseuxParam &param, const BivarPoly &F, int samples, double radius);

}  // namespace curvelab
