#include "curvelab/polycalc.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace curvelab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroWDegree: return "ZeroWDegree";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::BoundaryZero: return "BoundaryZero";
    case ErrorKind::DegreeBound: return "DegreeBound";
    case ErrorKind::DegenerateSlice: return "DegenerateSlice";
    case ErrorKind::NonSquareFree: return "NonSquareFree";
    case ErrorKind::ProbeTooLarge: return "ProbeTooLarge";
    case ErrorKind::ProbeFalsePositive: return "ProbeFalsePositive";
    case ErrorKind::NotOnCurve: return "NotOnCurve";
    case ErrorKind::TrivialPolygon: return "TrivialPolygon";
    case ErrorKind::OrderTooSmall: return "OrderTooSmall";
    case ErrorKind::EmptyDomain: return "EmptyDomain";
    case ErrorKind::PathJump: return "PathJump";
    case ErrorKind::OnDiscriminant: return "OnDiscriminant";
    case ErrorKind::TruncationDominates: return "TruncationDominates";
    case ErrorKind::NotGood: return "NotGood";
    case ErrorKind::DegreeCap: return "DegreeCap";
    case ErrorKind::IdenticallyZero: return "IdenticallyZero";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::DuplicateTerm: return "DuplicateTerm";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- CPoly

CPoly::CPoly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

CPoly CPoly::monomial(int degree, Complex c) {
  std::vector<Complex> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return CPoly(std::move(v));
}

void CPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
}

Complex CPoly::operator()(Complex x) const {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

CPoly CPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<double>(k);
  return CPoly(std::move(d));
}

double CPoly::norm1() const {
  double s = 0;
  for (auto c : coeffs_) s += std::abs(c);
  return s;
}

double CPoly::norm_inf() const {
  double s = 0;
  for (auto c : coeffs_) s = std::max(s, std::abs(c));
  return s;
}

double CPoly::eval_error_bound(Complex x) const {
  const double ax = std::abs(x);
  double acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * ax + std::abs(*it);
  return 4.0 * (degree() + 1) * kEps * acc;
}

CPoly CPoly::trimmed(double rel) const {
  const double cut = rel * norm_inf();
  std::vector<Complex> c = coeffs_;
  while (!c.empty() && std::abs(c.back()) <= cut) c.pop_back();
  return CPoly(std::move(c));
}

CPoly CPoly::chopped(double rel) const {
  const double cut = rel * norm_inf();
  std::vector<Complex> c = coeffs_;
  for (auto &x : c)
    if (std::abs(x) <= cut) x = 0.0;
  return CPoly(std::move(c));
}

CPoly CPoly::taylor_shift(Complex center, Complex scale) const {
  // Horner in polynomial arithmetic: acc = acc * (center + scale x) + c_k.
  const CPoly lin({center, scale});
  CPoly acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * lin;
    acc += CPoly::constant(*it);
  }
  return acc;
}

CPoly &CPoly::operator+=(const CPoly &o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  normalize();
  return *this;
}

CPoly &CPoly::operator-=(const CPoly &o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  normalize();
  return *this;
}

CPoly &CPoly::operator*=(Complex s) {
  for (auto &c : coeffs_) c *= s;
  normalize();
  return *this;
}

CPoly operator*(const CPoly &a, const CPoly &b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Complex> r(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return CPoly(std::move(r));
}

namespace {

std::vector<Complex> quotient_top_down(const CPoly &num, const CPoly &den, int dq) {
  const int dd = den.degree();
  std::vector<Complex> q(static_cast<std::size_t>(dq) + 1);
  std::vector<Complex> rem = num.coeffs();
  for (int k = dq; k >= 0; --k) {
    q[k] = rem[k + dd] / den.leading();
    for (int i = 0; i <= dd; ++i) rem[k + i] -= q[k] * den[i];
  }
  return q;
}

std::vector<Complex> quotient_bottom_up(const CPoly &num, const CPoly &den, int dq) {
  const int dd = den.degree();
  int low = 0;
  while (den[low] == Complex{}) ++low;
  std::vector<Complex> q(static_cast<std::size_t>(dq) + 1);
  for (int k = 0; k <= dq; ++k) {
    Complex s = num[k + low];
    for (int i = 1; i <= k && low + i <= dd; ++i) s -= q[k - i] * den[low + i];
    q[k] = s / den[low];
  }
  return q;
}

// Least-squares solve of the banded Toeplitz system den * q = num.
std::vector<Complex> quotient_least_squares(const CPoly &num, const CPoly &den, int dq) {
  const int dd = den.degree();
  const int rows = dq + dd + 1;
  Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(rows, dq + 1);
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(rows);
  for (int k = 0; k <= dq; ++k)
    for (int i = 0; i <= dd; ++i) T(k + i, k) = den[i];
  for (int r = 0; r < rows; ++r) b(r) = num[r];
  const Eigen::VectorXcd x = T.householderQr().solve(b);
  return {x.data(), x.data() + x.size()};
}

double division_residual(const CPoly &num, const CPoly &den, const std::vector<Complex> &q) {
  return (num - CPoly(q) * den).norm1();
}

}  // namespace

CPoly exact_quotient(const CPoly &num, const CPoly &den) {
  if (den.is_zero()) throw CurveError(ErrorKind::IdenticallyZero, "division by the zero polynomial");
  if (num.is_zero()) return {};
  const int dq = num.degree() - den.degree();
  if (dq < 0) return {};
  if (den.degree() == 0) return num * (1.0 / den[0]);

  auto best = quotient_top_down(num, den, dq);
  double best_res = division_residual(num, den, best);
  auto alt = quotient_bottom_up(num, den, dq);
  if (double r = division_residual(num, den, alt); r < best_res) {
    best = std::move(alt);
    best_res = r;
  }
  const double scale = num.norm1();
  if (best_res > 1e-14 * scale) {
    auto ls = quotient_least_squares(num, den, dq);
    if (double r = division_residual(num, den, ls); r < best_res) best = std::move(ls);
  }
  return CPoly(std::move(best));
}

// ---------------------------------------------------------------- BivarPoly

BivarPoly::BivarPoly(TermMap terms) : terms_(std::move(terms)) {
  std::erase_if(terms_, [](const auto &kv) { return kv.second == Complex{}; });
}

BivarPoly BivarPoly::constant(Complex c) { return monomial(0, 0, c); }

BivarPoly BivarPoly::monomial(int i, int j, Complex c) {
  BivarPoly p;
  p.set(i, j, c);
  return p;
}

Complex BivarPoly::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? Complex{} : it->second;
}

void BivarPoly::set(int i, int j, Complex c) {
  if (c == Complex{})
    terms_.erase({i, j});
  else
    terms_[{i, j}] = c;
}

void BivarPoly::add(int i, int j, Complex c) { set(i, j, coeff(i, j) + c); }

int BivarPoly::w_degree() const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto &[e, c] : terms_) d = std::max(d, e.second);
  return d;
}

int BivarPoly::z_degree() const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto &[e, c] : terms_) d = std::max(d, e.first);
  return d;
}

double BivarPoly::norm_inf() const {
  double s = 0;
  for (const auto &[e, c] : terms_) s = std::max(s, std::abs(c));
  return s;
}

double BivarPoly::norm1() const {
  double s = 0;
  for (const auto &[e, c] : terms_) s += std::abs(c);
  return s;
}

std::vector<CPoly> BivarPoly::w_coefficients() const {
  const int m = w_degree();
  if (m < 0) return {};
  std::vector<std::vector<Complex>> dense(static_cast<std::size_t>(m) + 1);
  for (const auto &[e, c] : terms_) {
    auto &v = dense[e.second];
    if (static_cast<int>(v.size()) <= e.first) v.resize(e.first + 1);
    v[e.first] = c;
  }
  std::vector<CPoly> out;
  out.reserve(dense.size());
  for (auto &v : dense) out.emplace_back(std::move(v));
  return out;
}

std::vector<CPoly> BivarPoly::z_coefficients() const {
  const int n = z_degree();
  if (n < 0) return {};
  std::vector<std::vector<Complex>> dense(static_cast<std::size_t>(n) + 1);
  for (const auto &[e, c] : terms_) {
    auto &v = dense[e.first];
    if (static_cast<int>(v.size()) <= e.second) v.resize(e.second + 1);
    v[e.second] = c;
  }
  std::vector<CPoly> out;
  out.reserve(dense.size());
  for (auto &v : dense) out.emplace_back(std::move(v));
  return out;
}

BivarPoly BivarPoly::derivative_w() const {
  BivarPoly d;
  for (const auto &[e, c] : terms_)
    if (e.second > 0) d.add(e.first, e.second - 1, c * static_cast<double>(e.second));
  return d;
}

BivarPoly BivarPoly::derivative_z() const {
  BivarPoly d;
  for (const auto &[e, c] : terms_)
    if (e.first > 0) d.add(e.first - 1, e.second, c * static_cast<double>(e.first));
  return d;
}

BivarPoly BivarPoly::translated(Complex dz, Complex dw) const {
  // (z + dz)^i (w + dw)^j expanded binomially.
  auto binomial_row = [](int n, Complex shift) {
    std::vector<Complex> row(static_cast<std::size_t>(n) + 1);
    double b = 1.0;
    Complex pw = 1.0;
    std::vector<Complex> shift_pows(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
      shift_pows[k] = pw;
      pw *= shift;
    }
    for (int k = 0; k <= n; ++k) {
      row[k] = b * shift_pows[n - k];  // coefficient of x^k
      b = b * (n - k) / (k + 1);
    }
    return row;
  };
  BivarPoly out;
  for (const auto &[e, c] : terms_) {
    const auto rz = binomial_row(e.first, dz);
    const auto rw = binomial_row(e.second, dw);
    for (int a = 0; a <= e.first; ++a) {
      if (rz[a] == Complex{}) continue;
      for (int b = 0; b <= e.second; ++b) {
        if (rw[b] == Complex{}) continue;
        out.add(a, b, c * rz[a] * rw[b]);
      }
    }
  }
  return out;
}

BivarPoly BivarPoly::chopped(double rel) const {
  const double cut = rel * norm_inf();
  TermMap t;
  for (const auto &[e, c] : terms_)
    if (std::abs(c) > cut) t.emplace(e, c);
  return BivarPoly(std::move(t));
}

BivarPoly BivarPoly::pow(int k) const {
  BivarPoly acc = constant(1.0);
  for (int i = 0; i < k; ++i) acc = acc * *this;
  return acc;
}

BivarPoly &BivarPoly::operator+=(const BivarPoly &o) {
  for (const auto &[e, c] : o.terms_) add(e.first, e.second, c);
  return *this;
}

BivarPoly &BivarPoly::operator-=(const BivarPoly &o) {
  for (const auto &[e, c] : o.terms_) add(e.first, e.second, -c);
  return *this;
}

BivarPoly &BivarPoly::operator*=(Complex s) {
  if (s == Complex{}) {
    terms_.clear();
    return *this;
  }
  for (auto &[e, c] : terms_) c *= s;
  return *this;
}

BivarPoly operator*(const BivarPoly &a, const BivarPoly &b) {
  BivarPoly::TermMap acc;
  for (const auto &[ea, ca] : a.terms_)
    for (const auto &[eb, cb] : b.terms_) acc[{ea.first + eb.first, ea.second + eb.second}] += ca * cb;
  return BivarPoly(std::move(acc));
}

Disk::Disk(Complex c, double r) : center(c), radius(r) {
  if (!(r > 0)) throw CurveError(ErrorKind::SchemaError, "disk radius must be positive");
}

// ---------------------------------------------------------------- slices

CPoly w_slice(const BivarPoly &p, Complex z0) {
  const auto coeffs = p.w_coefficients();
  std::vector<Complex> s(coeffs.size());
  for (std::size_t j = 0; j < coeffs.size(); ++j) s[j] = coeffs[j](z0);
  return CPoly(std::move(s));
}

CPoly z_slice(const BivarPoly &p, Complex w0) {
  const auto coeffs = p.z_coefficients();
  std::vector<Complex> s(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) s[i] = coeffs[i](w0);
  return CPoly(std::move(s));
}

Complex eval_bivar(const BivarPoly &p, Complex z, Complex w) { return w_slice(p, z)(w); }

// ---------------------------------------------------------------- resultant

CPoly resultant_w(const BivarPoly &p, const BivarPoly &q) {
  const int m = p.w_degree();
  const int k = q.w_degree();
  if (m <= 0 || k <= 0) throw CurveError(ErrorKind::ZeroWDegree, "resultant needs positive w-degree in both inputs");
  if (m > kMaxResultantDegree || k > kMaxResultantDegree || p.z_degree() > kMaxResultantDegree ||
      q.z_degree() > kMaxResultantDegree)
    throw CurveError(ErrorKind::DegreeBound, "resultant degree bound exceeded");

  const auto pc = p.w_coefficients();
  const auto qc = q.w_coefficients();
  const int n = m + k;
  std::vector<std::vector<CPoly>> M(n, std::vector<CPoly>(n));
  for (int r = 0; r < k; ++r)
    for (int j = 0; j <= m; ++j) M[r][r + j] = pc[m - j];
  for (int r = 0; r < m; ++r)
    for (int j = 0; j <= k; ++j) M[k + r][r + j] = qc[k - j];

  // Size scale for (s)-minors: product of the s largest row 1-norms.
  std::vector<double> row_norms(n, 0.0);
  for (int r = 0; r < n; ++r)
    for (const auto &e : M[r]) row_norms[r] += e.norm1();
  std::sort(row_norms.begin(), row_norms.end(), std::greater<>());
  std::vector<double> minor_scale(n + 1, 1.0);
  for (int s = 1; s <= n; ++s) minor_scale[s] = minor_scale[s - 1] * row_norms[s - 1];

  constexpr double kZeroRel = 1e-13;
  CPoly prev = CPoly::constant(1.0);
  double sign = 1.0;
  for (int c = 0; c < n - 1; ++c) {
    int best = -1;
    double best_norm = 0;
    for (int r = c; r < n; ++r) {
      const double nr = M[r][c].norm1();
      if (nr > best_norm) {
        best_norm = nr;
        best = r;
      }
    }
    if (best < 0 || best_norm <= kZeroRel * minor_scale[c + 1]) return {};
    if (best != c) {
      std::swap(M[best], M[c]);
      sign = -sign;
    }
    for (int r = c + 1; r < n; ++r) {
      for (int j = c + 1; j < n; ++j) {
        CPoly num = M[c][c] * M[r][j] - M[r][c] * M[c][j];
        M[r][j] = exact_quotient(num, prev);
      }
      M[r][c] = CPoly{};
    }
    prev = M[c][c];
  }
  CPoly det = M[n - 1][n - 1] * sign;
  if (det.norm1() <= 1e-11 * minor_scale[n]) return {};
  return det.trimmed(1e-14);
}

// ---------------------------------------------------------------- roots

bool canonical_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

namespace {

std::vector<Complex> aberth(const CPoly &p, std::vector<Complex> z, const RootOptions &opts) {
  const int n = p.degree();
  const CPoly dp = p.derivative();
  std::vector<char> done(z.size(), 0);
  for (int it = 0; it < opts.max_iterations; ++it) {
    bool all_done = true;
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      const Complex pv = p(z[i]);
      if (std::abs(pv) <= p.eval_error_bound(z[i])) {
        done[i] = 1;
        continue;
      }
      all_done = false;
      const Complex dpv = dp(z[i]);
      Complex sum{};
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        Complex diff = z[i] - z[j];
        if (diff == Complex{}) diff = Complex(1e-300 + kEps * std::abs(z[i]), 0.0);
        sum += 1.0 / diff;
      }
      Complex corr;
      if (dpv == Complex{}) {
        corr = Complex(1e-3 * (1.0 + std::abs(z[i])), 0.0);
      } else {
        const Complex ratio = pv / dpv;
        const Complex denom = 1.0 - ratio * sum;
        corr = denom == Complex{} ? ratio : ratio / denom;
      }
      z[i] -= corr;
      if (std::abs(corr) <= 2.0 * kEps * std::abs(z[i])) done[i] = 1;
    }
    if (all_done) return z;
  }
  throw CurveError(ErrorKind::NoConvergence, "Aberth iteration did not converge");
}

// `attempt` rotates and rescales the start circle for restarts.
std::vector<Complex> initial_guesses(const CPoly &p, int attempt = 0) {
  const int n = p.degree();
  const Complex center = -p[n - 1] / (static_cast<double>(n) * p.leading());
  const CPoly q = p.taylor_shift(center);
  // Fujiwara bound on the root moduli of the centred polynomial.
  double bound = 0;
  for (int k = 1; k <= n; ++k) {
    double ratio = std::abs(q[n - k] / q.leading());
    if (k == n) ratio /= 2.0;
    if (ratio > 0) bound = std::max(bound, std::pow(ratio, 1.0 / k));
  }
  if (!(bound > 0) || !std::isfinite(bound)) bound = 1.0;
  std::vector<Complex> z(n);
  const double offset = 0.4 + 1.1 * attempt;
  const double radius = bound * (1.0 + 0.25 * attempt);
  for (int k = 0; k < n; ++k) {
    // Slightly uneven spacing so symmetric polynomials cannot trap the iteration.
    const double theta = 2.0 * std::numbers::pi * (k + 0.05 * k * k / n) / n + offset;
    z[k] = center + radius * std::polar(1.0, theta);
  }
  return z;
}

void check_residuals(const CPoly &p, std::span<const Complex> rs, double tol) {
  const double scale = p.norm_inf();
  const int n = p.degree();
  for (auto r : rs) {
    const double res = std::abs(p(r)) / (std::pow(1.0 + std::abs(r), n) * scale);
    if (!(res <= tol)) throw CurveError(ErrorKind::NoConvergence, "root residual above tolerance");
  }
}

// Roots without clustering; exact zeros split off first.
std::vector<Complex> raw_roots(const CPoly &p, const RootOptions &opts) {
  if (p.is_zero()) throw CurveError(ErrorKind::IdenticallyZero, "roots of the zero polynomial");
  int low = 0;
  while (p[low] == Complex{}) ++low;
  std::vector<Complex> out(static_cast<std::size_t>(low), Complex{});
  const CPoly q(std::vector<Complex>(p.coeffs().begin() + low, p.coeffs().end()));
  const int n = q.degree();
  if (n == 1) {
    out.push_back(-q[0] / q[1]);
  } else if (n > 1) {
    constexpr int kAttempts = 3;
    for (int attempt = 0;; ++attempt) {
      try {
        auto z = aberth(q, initial_guesses(q, attempt), opts);
        out.insert(out.end(), z.begin(), z.end());
        break;
      } catch (const CurveError &) {
        if (attempt + 1 == kAttempts) throw;
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Complex> refine_roots(const CPoly &p, std::span<const Complex> start, const RootOptions &opts) {
  if (static_cast<int>(start.size()) != p.degree())
    throw CurveError(ErrorKind::NoConvergence, "starting point count differs from degree");
  if (p.degree() == 1) return {-p[0] / p[1]};
  std::vector<Complex> z(start.begin(), start.end());
  // Exactly coincident starts stall Aberth; nudge them apart.
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (z[i] == z[j]) z[i] += std::polar(1e-8 * (1.0 + std::abs(z[i])), 0.7 * static_cast<double>(i));
  return aberth(p, std::move(z), opts);
}

namespace {

// The (k-1)-th derivative has a simple root at the centre of a k-fold
// cluster; Newton on it recovers the centre to near machine precision.
Complex refine_cluster_center(const CPoly &p, const std::vector<Complex> &members, Complex centroid) {
  const int k = static_cast<int>(members.size());
  double spread = 0;
  for (auto z : members) spread = std::max(spread, std::abs(z - centroid));
  CPoly d = p;
  for (int i = 0; i < k - 1; ++i) d = d.derivative();
  const CPoly dd = d.derivative();
  Complex c = centroid;
  for (int it = 0; it < 30; ++it) {
    const Complex dv = d(c);
    const Complex ddv = dd(c);
    if (ddv == Complex{}) break;
    const Complex step = dv / ddv;
    c -= step;
    if (std::abs(step) <= 4.0 * kEps * (std::abs(c) + spread)) break;
  }
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return centroid;
  if (std::abs(c - centroid) > 2.0 * spread + 1e-300) return centroid;
  return c;
}

}  // namespace

std::vector<RootCluster> cluster_roots(const CPoly &p, std::span<const Complex> approx, double cluster_tol) {
  const int n = static_cast<int>(approx.size());
  std::vector<double> radius(n, 0.0);
  const double lead = std::abs(p.leading());
  for (int i = 0; i < n; ++i) {
    double prod = lead;
    for (int j = 0; j < n; ++j)
      if (j != i && approx[j] != approx[i]) prod *= std::abs(approx[i] - approx[j]);
    const double num = std::abs(p(approx[i])) + p.eval_error_bound(approx[i]);
    radius[i] = prod > 0 ? n * num / prod : std::numeric_limits<double>::infinity();
  }
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double d = std::abs(approx[i] - approx[j]);
      if (d <= cluster_tol || d <= radius[i] + radius[j]) parent[find(i)] = find(j);
    }
  std::map<int, std::vector<Complex>> groups;
  for (int i = 0; i < n; ++i) groups[find(i)].push_back(approx[i]);
  std::vector<RootCluster> out;
  for (const auto &[root, members] : groups) {
    const int k = static_cast<int>(members.size());
    Complex centroid{};
    for (auto z : members) centroid += z;
    centroid /= static_cast<double>(k);
    if (k > 1 && k <= p.degree()) centroid = refine_cluster_center(p, members, centroid);
    out.push_back({centroid, k});
  }
  std::sort(out.begin(), out.end(),
            [](const RootCluster &a, const RootCluster &b) { return canonical_less(a.location, b.location); });
  return out;
}

std::vector<RootCluster> root_clusters(const CPoly &p, const RootOptions &opts) {
  const auto raw = raw_roots(p, opts);
  auto clusters = cluster_roots(p, raw, opts.cluster_tol);
  std::vector<Complex> locs;
  for (const auto &c : clusters) locs.push_back(c.location);
  check_residuals(p, locs, opts.tol);
  return clusters;
}

std::vector<Complex> roots(const CPoly &p, const RootOptions &opts) {
  std::vector<Complex> out;
  for (const auto &c : root_clusters(p, opts)) out.insert(out.end(), c.multiplicity, c.location);
  return out;
}

// ---------------------------------------------------------------- winding

int count_zeros_in_disk(const CPoly &p, const Disk &disk, int samples) {
  if (p.is_zero()) throw CurveError(ErrorKind::IdenticallyZero, "winding number of the zero polynomial");
  if (samples < 8) samples = 8;
  auto point = [&](double theta) { return disk.center + std::polar(disk.radius, theta); };
  std::vector<Complex> vals(static_cast<std::size_t>(samples) + 1);
  double vmax = 0;
  double vmin = std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k) {
    vals[k] = p(point(2.0 * std::numbers::pi * k / samples));
    vmax = std::max(vmax, std::abs(vals[k]));
    vmin = std::min(vmin, std::abs(vals[k]));
  }
  vals[samples] = vals[0];
  const double floor = kBoundaryZeroRatio * vmax;
  if (!(vmin >= floor) || vmax == 0)
    throw CurveError(ErrorKind::BoundaryZero, "polynomial nearly vanishes on the disk boundary");

  // Accumulate arg increments; split segments whose increment is not small.
  auto segment = [&](auto &&self, double t0, double t1, Complex a, Complex b, int depth) -> double {
    const double d = std::arg(b / a);
    if (std::abs(d) <= std::numbers::pi / 4 || depth >= 40) return d;
    const double tm = 0.5 * (t0 + t1);
    const Complex m = p(point(tm));
    if (std::abs(m) < floor)
      throw CurveError(ErrorKind::BoundaryZero, "polynomial nearly vanishes on the disk boundary");
    return self(self, t0, tm, a, m, depth + 1) + self(self, tm, t1, m, b, depth + 1);
  };
  double total = 0;
  for (int k = 0; k < samples; ++k) {
    const double t0 = 2.0 * std::numbers::pi * k / samples;
    const double t1 = 2.0 * std::numbers::pi * (k + 1) / samples;
    total += segment(segment, t0, t1, vals[k], vals[k + 1], 0);
  }
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

}  // namespace curvelab
