#include "curvelab/puiseux.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>

#include "curvelab/projection.hpp"

namespace curvelab {

std::string to_string(const Rational &r) {
  if (r.den == 1) return std::to_string(r.num);
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

namespace {

// Coefficients this small relative to the largest one are treated as rounding
// noise: after translating to an approximate centre, and after each
// Newton-polygon substitution.
constexpr double kCenterChopRel = 1e-9;
constexpr double kStageChopRel = 1e-10;
constexpr double kOnCurveRel = 1e-8;
constexpr double kExactRel = 1e-12;

Rational reduced(int num, int den) {
  const int g = std::gcd(num, den);
  return {num / g, den / g};
}

// Lower-left hull edges of a support with F(0,0) = 0 that touches both axes.
std::vector<NewtonEdge> hull_edges(const BivarPoly::TermMap &terms) {
  std::map<int, int> min_i;  // j -> smallest i with a nonzero (i, j) term
  for (const auto &[e, c] : terms) {
    auto it = min_i.find(e.second);
    if (it == min_i.end() || e.first < it->second) min_i[e.second] = e.first;
  }
  std::vector<NewtonEdge> edges;
  if (!min_i.contains(0) || min_i.at(0) == 0) return edges;
  int cj = -1;
  for (const auto &[j, i] : min_i)
    if (i == 0) {
      cj = j;
      break;
    }
  if (cj < 0) return edges;
  int ci = 0;

  while (cj > 0) {
    // Next vertex: smallest run/drop ratio (i - ci)/(cj - j), farthest on ties.
    int bi = -1;
    int bj = -1;
    for (const auto &[j, i] : min_i) {
      if (j >= cj) break;
      if (bi < 0) {
        bi = i;
        bj = j;
        continue;
      }
      const long lhs = static_cast<long>(i - ci) * (cj - bj);
      const long rhs = static_cast<long>(bi - ci) * (cj - j);
      if (lhs < rhs || (lhs == rhs && j < bj)) {
        bi = i;
        bj = j;
      }
    }
    NewtonEdge e;
    e.from = {ci, cj};
    e.to = {bi, bj};
    e.exponent = reduced(bi - ci, cj - bj);
    e.slope = {-e.exponent.num, e.exponent.den};
    const long level = static_cast<long>(e.exponent.den) * ci + static_cast<long>(e.exponent.num) * cj;
    for (const auto &[x, c] : terms)
      if (static_cast<long>(e.exponent.den) * x.first + static_cast<long>(e.exponent.num) * x.second == level)
        e.monomials.emplace(x, c);
    edges.push_back(std::move(e));
    ci = bi;
    cj = bj;
  }
  return edges;
}

BivarPoly divide_monomial(const BivarPoly &F, int a, int b) {
  BivarPoly::TermMap t;
  for (const auto &[e, c] : F.terms()) t.emplace(BivarPoly::Exponent{e.first - a, e.second - b}, c);
  return BivarPoly(std::move(t));
}

int min_z_power(const BivarPoly &F) {
  int a = std::numeric_limits<int>::max();
  for (const auto &[e, c] : F.terms()) a = std::min(a, e.first);
  return a;
}

int min_w_power(const BivarPoly &F) {
  int b = std::numeric_limits<int>::max();
  for (const auto &[e, c] : F.terms()) b = std::min(b, e.second);
  return b;
}

// s^{-k} G(s^q, s^p (c + w)).
BivarPoly substitute(const BivarPoly &G, int q, int p, Complex c, long k) {
  int max_j = G.w_degree();
  std::vector<std::vector<double>> binom(max_j + 1);
  for (int j = 0; j <= max_j; ++j) {
    binom[j].assign(j + 1, 1.0);
    for (int b = 1; b < j; ++b) binom[j][b] = binom[j - 1][b - 1] + binom[j - 1][b];
  }
  std::vector<Complex> cpow(max_j + 1, 1.0);
  for (int j = 1; j <= max_j; ++j) cpow[j] = cpow[j - 1] * c;

  BivarPoly out;
  for (const auto &[e, a] : G.terms()) {
    const auto [i, j] = e;
    const long sexp = static_cast<long>(q) * i + static_cast<long>(p) * j - k;
    if (sexp < 0) continue;  // below the edge: noise that survived chopping
    for (int b = 0; b <= j; ++b) out.add(static_cast<int>(sexp), b, a * binom[j][b] * cpow[j - b]);
  }
  return out.chopped(kStageChopRel);
}

struct Stage {
  BivarPoly G;                  // in (s, w)
  int r = 0;                    // order of G(0, w) at w = 0
  int Q = 1;                    // z = s^Q
  int E = 0;                    // global w = P(s) + s^E w
  std::map<int, Complex> P;
};

struct Expander {
  int order;
  Complex z0, w0;
  std::vector<PuiseuxParam> out;

  void emit(const Stage &st, const std::vector<Complex> &h) {
    // h[n] multiplies s^(E + n).
    PuiseuxParam param;
    param.ramification = st.Q;
    param.truncation_order = order;
    param.base_shift = {z0, w0};
    param.series.assign(order, Complex{});
    param.tail.assign(order, Complex{});
    auto put = [&](int e, Complex c) {
      if (e < order)
        param.series[e] += c;
      else if (e < 2 * order)
        param.tail[e - order] += c;
    };
    for (const auto &[e, c] : st.P) put(e, c);
    for (std::size_t n = 0; n < h.size(); ++n) put(st.E + static_cast<int>(n), h[n]);
    out.push_back(std::move(param));
  }

  // Smooth stage: G(0,0) = 0, dG/dw(0,0) != 0. Solves G(s, h(s)) = 0 term by term.
  void implicit_series(const Stage &st) {
    const int D = 2 * order - 1 - st.E;
    std::vector<Complex> h(std::max(D + 1, 1), Complex{});
    if (D >= 1) {
      const auto cols = st.G.w_coefficients();  // cols[j](s)
      const Complex a = cols.size() > 1 ? cols[1][0] : Complex{};
      for (int n = 1; n <= D; ++n) {
        // [s^n] G(s, h_<n(s)), all series truncated at degree n.
        std::vector<Complex> hp(n + 1, Complex{});  // current power h^j
        hp[0] = 1.0;
        Complex acc{};
        for (std::size_t j = 0; j < cols.size(); ++j) {
          if (j > 0) {
            std::vector<Complex> nxt(n + 1, Complex{});
            for (int x = 0; x <= n; ++x)
              if (hp[x] != Complex{})
                for (int y = 1; x + y <= n && y < n; ++y) nxt[x + y] += hp[x] * h[y];
            hp = std::move(nxt);
          }
          for (int x = 0; x <= n; ++x) acc += cols[j][n - x] * hp[x];
        }
        h[n] = -acc / a;
      }
    }
    emit(st, h);
  }

  void run(Stage st) {
    while (st.r > 0) {
      // w | G: the branch w = 0 of this stage is exact.
      bool axis = false;
      for (const auto &[e, c] : st.G.terms())
        if (e.second == 0) {
          axis = true;
          break;
        }
      if (!axis) {
        emit(st, {});
        st.G = divide_monomial(st.G, 0, 1);
        --st.r;
        continue;
      }
      if (st.r == 1) {
        implicit_series(st);
        return;
      }
      for (const auto &edge : hull_edges(st.G.terms())) {
        const int p = edge.exponent.num;
        const int q = edge.exponent.den;
        const int j_low = edge.to.second;
        std::vector<Complex> psi((edge.from.second - j_low) / q + 1, Complex{});
        for (const auto &[x, c] : edge.monomials) psi[(x.second - j_low) / q] += c;
        const long k = static_cast<long>(q) * edge.from.first + static_cast<long>(p) * edge.from.second;
        for (const auto &cl : root_clusters(CPoly(psi))) {
          const int E = st.E * q + p;
          if (cl.multiplicity > 1 && E >= order)
            throw CurveError(ErrorKind::OrderTooSmall,
                             "branches not separated below t^" + std::to_string(order));
          Stage next;
          next.r = cl.multiplicity;
          next.Q = st.Q * q;
          next.E = E;
          const Complex c = std::pow(cl.location, 1.0 / q);
          for (const auto &[e, v] : st.P) next.P[e * q] = v;
          next.P[E] += c;
          next.G = substitute(st.G, q, p, c, k);
          run(std::move(next));
        }
      }
      return;
    }
  }
};

bool series_less(const PuiseuxParam &a, const PuiseuxParam &b) {
  if (a.ramification != b.ramification) return a.ramification < b.ramification;
  for (std::size_t e = 0; e < a.series.size() && e < b.series.size(); ++e) {
    const Complex x = a.series[e];
    const Complex y = b.series[e];
    if (std::abs(x - y) > 1e-9 * (1 + std::abs(x) + std::abs(y))) return canonical_less(x, y);
  }
  return false;
}

// The truncated series must determine every branch: its exponents generate
// the ramification (no hidden symmetry t -> zeta t), and no two branches share
// a truncation up to such a symmetry.
void check_separated(const std::vector<PuiseuxParam> &branches) {
  auto fail = [](int order) {
    throw CurveError(ErrorKind::OrderTooSmall, "branches not separated below t^" + std::to_string(order));
  };
  for (const auto &b : branches) {
    double big = 0;
    for (auto c : b.series) big = std::max(big, std::abs(c));
    int g = b.ramification;
    for (std::size_t e = 1; e < b.series.size(); ++e)
      if (std::abs(b.series[e]) > 1e-9 * big) g = std::gcd(g, static_cast<int>(e));
    if (g > 1) fail(b.truncation_order);
  }
  for (std::size_t x = 0; x < branches.size(); ++x)
    for (std::size_t y = x + 1; y < branches.size(); ++y) {
      const auto &a = branches[x];
      const auto &b = branches[y];
      if (a.ramification != b.ramification) continue;
      for (int k = 0; k < a.ramification; ++k) {
        const Complex zeta = std::polar(1.0, 2.0 * std::numbers::pi * k / a.ramification);
        Complex zp = 1.0;
        bool same = true;
        for (std::size_t e = 0; e < a.series.size() && same; ++e, zp *= zeta)
          same = std::abs(a.series[e] - b.series[e] * zp) <= 1e-9 * (1 + std::abs(a.series[e]));
        if (same) fail(a.truncation_order);
      }
    }
}

void require_square_free(const BivarPoly &F) {
  try {
    discriminant_polynomial(F);
    return;
  } catch (const CurveError &e) {
    if (e.kind() != ErrorKind::DegreeBound) throw;
  }
  // Beyond the resultant cap: a repeated factor repeats the roots of every slice.
  for (Complex z : {Complex(0.61, 0.37), Complex(-0.43, 0.71), Complex(0.29, -0.83)}) {
    const CPoly s = w_slice(F, z);
    if (s.degree() < F.w_degree()) continue;
    const auto cl = root_clusters(s);
    if (std::all_of(cl.begin(), cl.end(), [](const RootCluster &c) { return c.multiplicity == 1; })) return;
  }
  throw CurveError(ErrorKind::NonSquareFree, "F has a repeated factor in w");
}

}  // namespace

NewtonPolygon newton_polygon(const BivarPoly &F) {
  if (F.is_zero()) throw CurveError(ErrorKind::TrivialPolygon, "zero polynomial");
  if (F.terms().size() == 1) throw CurveError(ErrorKind::TrivialPolygon, "polynomial is a monomial");
  if (F.coeff(0, 0) != Complex{}) throw CurveError(ErrorKind::NotOnCurve, "F(0,0) != 0");
  NewtonPolygon out;
  out.z_factor = min_z_power(F);
  out.w_factor = min_w_power(F);
  const BivarPoly rest = divide_monomial(F, out.z_factor, out.w_factor);
  if (rest.coeff(0, 0) == Complex{}) out.edges = hull_edges(rest.terms());
  return out;
}

Complex PuiseuxParam::z_at(Complex t) const {
  return base_shift.first + std::pow(t, ramification);
}

Complex PuiseuxParam::w_at(Complex t) const {
  Complex acc{};
  for (auto it = series.rbegin(); it != series.rend(); ++it) acc = acc * t + *it;
  return base_shift.second + acc;
}

CPoly PuiseuxParam::w_poly(bool with_tail) const {
  std::vector<Complex> c = series;
  if (with_tail) c.insert(c.end(), tail.begin(), tail.end());
  if (c.empty()) c.push_back(Complex{});
  c[0] += base_shift.second;
  return CPoly(std::move(c));
}

CPoly PuiseuxParam::z_poly() const {
  return CPoly::monomial(ramification) + CPoly::constant(base_shift.first);
}

PuiseuxExpansion puiseux_expand(const BivarPoly &F, Complex center_z, Complex center_w, int order) {
  if (order < 1) throw CurveError(ErrorKind::SchemaError, "order must be positive");
  if (F.w_degree() <= 0) throw CurveError(ErrorKind::ZeroWDegree, "Puiseux expansion of a curve constant in w");

  double scale = 0;
  for (const auto &[e, c] : F.terms())
    scale += std::abs(c) * std::pow(std::max(1.0, std::abs(center_z)), e.first) *
             std::pow(std::max(1.0, std::abs(center_w)), e.second);
  if (std::abs(eval_bivar(F, center_z, center_w)) > kOnCurveRel * scale)
    throw CurveError(ErrorKind::NotOnCurve, "the centre does not lie on F = 0");
  require_square_free(F);

  BivarPoly G = F.translated(center_z, center_w).chopped(kCenterChopRel);
  G.set(0, 0, 0.0);

  PuiseuxExpansion result;
  result.vertical_factor = min_z_power(G);
  if (result.vertical_factor > 0) G = divide_monomial(G, result.vertical_factor, 0);

  int r = std::numeric_limits<int>::max();
  for (const auto &[e, c] : G.terms())
    if (e.first == 0) r = std::min(r, e.second);
  if (r == std::numeric_limits<int>::max() || r == 0) return result;

  Expander ex{order, center_z, center_w, {}};
  Stage st;
  st.G = G;
  st.r = r;
  ex.run(std::move(st));

  for (auto &param : ex.out) {
    bool tail_zero = std::all_of(param.tail.begin(), param.tail.end(), [](Complex c) { return c == Complex{}; });
    if (tail_zero) {
      const CPoly residual = compose(param, F);
      param.exact = residual.norm1() <= kExactRel * compose_scale(param, F);
    }
  }
  check_separated(ex.out);
  std::sort(ex.out.begin(), ex.out.end(), series_less);
  result.branches = std::move(ex.out);
  return result;
}

CPoly compose(const PuiseuxParam &param, const BivarPoly &G, bool with_tail) {
  const CPoly Z = param.z_poly();
  const CPoly W = param.w_poly(with_tail);
  const auto cols = G.w_coefficients();  // cols[j](z)
  CPoly acc;
  for (auto j = cols.rbegin(); j != cols.rend(); ++j) {
    CPoly cz;
    const auto &cc = j->coeffs();
    for (auto i = cc.rbegin(); i != cc.rend(); ++i) cz = cz * Z + CPoly::constant(*i);
    acc = acc * W + cz;
  }
  return acc;
}

double compose_scale(const PuiseuxParam &param, const BivarPoly &G) {
  const double nz = param.z_poly().norm1();
  const double nw = param.w_poly(true).norm1();
  double s = 0;
  for (const auto &[e, c] : G.terms()) s += std::abs(c) * std::pow(nz, e.first) * std::pow(nw, e.second);
  return s;
}

double param_residual(const PuiseuxParam &param, const BivarPoly &F, int samples, double radius) {
  double worst = 0;
  for (int k = 0; k < samples; ++k) {
    const Complex t = std::polar(radius, 2.0 * std::numbers::pi * k / samples);
    worst = std::max(worst, std::abs(eval_bivar(F, param.z_at(t), param.w_at(t))));
  }
  return worst;
}

}  // namespace curvelab
