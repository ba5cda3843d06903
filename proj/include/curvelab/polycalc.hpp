#pragma once

// Complex polynomial arithmetic: univariate and bivariate polynomials,
// w-resultants, simultaneous root finding and argument-principle counting.

#include <complex>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "curvelab/errors.hpp"

namespace curvelab {

using Complex = std::complex<double>;

/// Dense univariate polynomial, coefficient index = degree. Highest stored
/// coefficient is nonzero; the zero polynomial has no coefficients.
class CPoly {
 public:
  CPoly() = default;
  explicit CPoly(std::vector<Complex> coeffs);
  CPoly(std::initializer_list<Complex> coeffs) : CPoly(std::vector<Complex>(coeffs)) {}

  static CPoly constant(Complex c) { return CPoly({c}); }
  static CPoly monomial(int degree, Complex c = 1.0);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Complex> &coeffs() const { return coeffs_; }
  Complex operator[](int k) const {
    return k >= 0 && k < static_cast<int>(coeffs_.size()) ? coeffs_[k] : Complex{};
  }
  Complex leading() const { return coeffs_.empty() ? Complex{} : coeffs_.back(); }

  /// Horner evaluation from the highest coefficient down.
  Complex operator()(Complex x) const;
  CPoly derivative() const;
  /// Sum of |c_k|.
  double norm1() const;
  double norm_inf() const;
  /// Rounding bound for Horner evaluation at x: ~ 2n u sum |c_k| |x|^k.
  double eval_error_bound(Complex x) const;

  /// Drop highest coefficients with |c| <= rel * norm_inf().
  CPoly trimmed(double rel) const;
  /// Zero every coefficient with |c| <= rel * norm_inf().
  CPoly chopped(double rel) const;
  /// p(center + scale * x)
  CPoly taylor_shift(Complex center, Complex scale = 1.0) const;

  CPoly &operator+=(const CPoly &o);
  CPoly &operator-=(const CPoly &o);
  CPoly &operator*=(Complex s);
  friend CPoly operator+(CPoly a, const CPoly &b) { return a += b; }
  friend CPoly operator-(CPoly a, const CPoly &b) { return a -= b; }
  friend CPoly operator*(const CPoly &a, const CPoly &b);
  friend CPoly operator*(CPoly a, Complex s) { return a *= s; }
  friend CPoly operator*(Complex s, CPoly a) { return a *= s; }
  friend bool operator==(const CPoly &, const CPoly &) = default;

 private:
  void normalize();
  std::vector<Complex> coeffs_;
};

/// Quotient of an exact division num / den. The remainder (rounding noise
/// when den divides num) is discarded. Divides from whichever end of den
/// carries the larger coefficient.
CPoly exact_quotient(const CPoly &num, const CPoly &den);

/// Sparse bivariate polynomial sum c_ij z^i w^j; no stored zero coefficients.
class BivarPoly {
 public:
  using Exponent = std::pair<int, int>;  // (z-degree, w-degree)
  using TermMap = std::map<Exponent, Complex>;

  BivarPoly() = default;
  explicit BivarPoly(TermMap terms);
  static BivarPoly constant(Complex c);
  static BivarPoly z() { return monomial(1, 0); }
  static BivarPoly w() { return monomial(0, 1); }
  static BivarPoly monomial(int i, int j, Complex c = 1.0);

  const TermMap &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Complex coeff(int i, int j) const;
  void set(int i, int j, Complex c);
  void add(int i, int j, Complex c);

  int w_degree() const;
  int z_degree() const;
  double norm_inf() const;
  double norm1() const;

  /// Coefficient polynomials in z: result[j](z) multiplies w^j.
  std::vector<CPoly> w_coefficients() const;
  /// Coefficient polynomials in w: result[i](w) multiplies z^i.
  std::vector<CPoly> z_coefficients() const;

  BivarPoly derivative_w() const;
  BivarPoly derivative_z() const;
  /// F(z + dz, w + dw)
  BivarPoly translated(Complex dz, Complex dw) const;
  /// Zero coefficients with |c| <= rel * norm_inf().
  BivarPoly chopped(double rel) const;
  BivarPoly pow(int k) const;

  BivarPoly &operator+=(const BivarPoly &o);
  BivarPoly &operator-=(const BivarPoly &o);
  BivarPoly &operator*=(Complex s);
  friend BivarPoly operator+(BivarPoly a, const BivarPoly &b) { return a += b; }
  friend BivarPoly operator-(BivarPoly a, const BivarPoly &b) { return a -= b; }
  friend BivarPoly operator-(BivarPoly a) { return a *= -1.0; }
  friend BivarPoly operator*(const BivarPoly &a, const BivarPoly &b);
  friend BivarPoly operator*(BivarPoly a, Complex s) { return a *= s; }
  friend BivarPoly operator*(Complex s, BivarPoly a) { return a *= s; }
  friend bool operator==(const BivarPoly &, const BivarPoly &) = default;

 private:
  TermMap terms_;
};

struct Disk {
  Complex center{};
  double radius = 1.0;

  Disk() = default;
  Disk(Complex c, double r);
  bool contains(Complex x) const { return std::abs(x - center) < radius; }
};

/// w -> p(z0, w). Each coefficient c_j(z0) is a Horner sum over the z-degree.
CPoly w_slice(const BivarPoly &p, Complex z0);
/// z -> p(z, w0).
CPoly z_slice(const BivarPoly &p, Complex w0);
/// Evaluates w_slice(p, z)(w); identical arithmetic to slicing then evaluating.
Complex eval_bivar(const BivarPoly &p, Complex z, Complex w);

inline constexpr int kMaxResultantDegree = 16;

/// Sylvester resultant eliminating w, as a polynomial in z. Degrees in each
/// variable are capped at kMaxResultantDegree.
CPoly resultant_w(const BivarPoly &p, const BivarPoly &q);

struct RootOptions {
  double tol = 1e-10;
  double cluster_tol = 1e-7;
  int max_iterations = 2000;
};

struct RootCluster {
  Complex location;
  int multiplicity = 1;
};

/// All deg(p) roots with multiplicity. Roots within one inclusion cluster are
/// replaced by the cluster centroid. Sorted by (real, imag).
std::vector<Complex> roots(const CPoly &p, const RootOptions &opts = {});
/// Roots grouped into clusters, sorted by (real, imag) of the location.
std::vector<RootCluster> root_clusters(const CPoly &p, const RootOptions &opts = {});
/// Aberth iteration from caller-supplied starting points (one per root).
/// Unclustered; order follows the starting points.
std::vector<Complex> refine_roots(const CPoly &p, std::span<const Complex> start,
                                  const RootOptions &opts = {});
/// Groups approximations to the roots of p via Weierstrass inclusion disks
/// plus a minimum merge distance.
std::vector<RootCluster> cluster_roots(const CPoly &p, std::span<const Complex> approx,
                                       double cluster_tol);

inline constexpr int kDefaultWindingSamples = 2048;
inline constexpr double kBoundaryZeroRatio = 1e-8;

/// Winding number of p along the boundary of the disk.
int count_zeros_in_disk(const CPoly &p, const Disk &disk, int samples = kDefaultWindingSamples);

/// Ordering used for canonical output: lexicographic on (real, imag).
bool canonical_less(Complex a, Complex b);

}  // namespace curvelab
