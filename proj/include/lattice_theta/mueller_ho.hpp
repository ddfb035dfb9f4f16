#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <vector>

#include "competing_functionals.hpp"
#include "parallel.hpp"
#include "theta_kernel.hpp"

namespace lattice {

/// Relative displacement (a, b) of the two component lattices, reduced mod 1.
template <class T = double>
struct Displacement {
  T a{0};
  T b{0};

  Displacement() = default;
  Displacement(T a_, T b_) : a(wrap(a_)), b(wrap(b_)) {}

  static T wrap(T v) {
    using std::floor;
    T r = v - floor(v);
    return r >= 1 ? T(0) : r;
  }
};

namespace detail {

/// Bound on the two-sided tail sum over |t| >= m0 of (alpha |t| + beta)^j exp(-a t^2).
template <class T>
T poly_gaussian_tail(T a, int j, T alpha, T beta, T m0) {
  static constexpr int binom[3][3] = {{1, 0, 0}, {1, 1, 0}, {1, 2, 1}};
  T s = 0;
  for (int i = 0; i <= j; ++i)
    s += binom[j][i] * int_pow(alpha, i) * int_pow(beta, j - i) * gaussian_tail(a, T(i), m0);
  return 2 * s;
}

/// S_j = sum_n (2 pi i n)^j exp(-pi (n-c)^2 / y) exp(2 pi i n b), the b-derivatives of the row sum.
/// Direct in n when y <= 1, Poisson-summed in n otherwise.
template <class T>
std::complex<T> row_sum(T y, T c, T b, int j, T tol, int max_index, T& tail) {
  using std::exp;
  using std::round;
  using std::sqrt;
  using C = std::complex<T>;
  const T pi = pi_v<T>;
  const C I(0, 1);
  if (y <= 1) {
    const T a = pi / y;
    int N = 1;
    for (; N < max_index; ++N)
      if (int_pow(2 * pi, j) * poly_gaussian_tail(a, j, T(1), std::abs(c), T(N) + T(0.5)) <= tol) break;
    tail = int_pow(2 * pi, j) * poly_gaussian_tail(a, j, T(1), std::abs(c), T(N) + T(0.5));
    const long long n0 = static_cast<long long>(round(c));
    C s = 0;
    for (long long n = n0 - N; n <= n0 + N; ++n) {
      const T d = n - c;
      C term = exp(-a * d * d) * std::polar(T(1), 2 * pi * n * b);
      for (int k = 0; k < j; ++k) term *= 2 * pi * I * T(n);
      s += term;
    }
    return s;
  }
  // Poisson: sqrt(y) sum_k exp(-pi y (k-b)^2) exp(2 pi i c (b-k))
  const T a = pi * y;
  const T cc = 2 * pi * std::abs(c);
  int N = 1;
  auto bound = [&](int n) {
    T t = poly_gaussian_tail(a, j, 2 * pi * y, cc, T(n) + T(0.5));
    if (j == 2) t += 2 * pi * y * 2 * gaussian_tail(a, T(0), T(n) + T(0.5));
    return sqrt(y) * t;
  };
  for (; N < max_index; ++N)
    if (bound(N) <= tol) break;
  tail = bound(N);
  const long long k0 = static_cast<long long>(round(b));
  C s = 0;
  for (long long k = k0 - N; k <= k0 + N; ++k) {
    const T d = k - b;
    const C f = exp(-a * d * d) * std::polar(T(1), -2 * pi * c * d);
    const C L = 2 * pi * y * d + 2 * pi * I * c;
    if (j == 0) s += f;
    else if (j == 1) s += L * f;
    else s += (L * L - 2 * pi * y) * f;
  }
  return sqrt(y) * s;
}

}  // namespace detail

/// J(z;a,b) = sum_{m,n} exp(-pi |m z - n|^2 / y) cos(2 pi (m a + n b)) and its (a,b)-partials,
/// summed row by row in m.
template <class T>
Bounded<T> j_eval_bounded(const HalfPlanePoint<T>& z, const Displacement<T>& d, int da_order = 0,
                          int db_order = 0, const SeriesTruncation<T>& trunc = {}) {
  using std::abs;
  using std::exp;
  if (da_order < 0 || db_order < 0 || da_order + db_order > 2)
    throw DomainError("j_eval supports total derivative order <= 2");
  const T pi = pi_v<T>;
  const T y = z.y;
  const int i = da_order;
  const int j = db_order;
  const T a_out = pi * y;
  static constexpr int binom[3][3] = {{1, 0, 0}, {1, 1, 0}, {1, 2, 1}};

  // rows |m| > M: |S_j(m)| <= (2pi)^j sum_l C(j,l) |m x|^{j-l} L_l
  auto outer_tail = [&](int M) {
    T s = 0;
    for (int l = 0; l <= j; ++l)
      s += binom[j][l] * detail::int_pow(abs(z.x), j - l) *
           detail::gaussian_lattice_sum_bound(pi / y, T(l)) *
           2 * detail::gaussian_tail(a_out, T(i + j - l), T(M + 1));
    return detail::int_pow(2 * pi, i + j) * s;
  };
  SeriesTruncation<T> outer = trunc;
  outer.tail_tol = trunc.tail_tol / 2;
  const int M = detail::choose_terms<T>(outer_tail, outer, "j_eval");
  const T weights = detail::int_pow(2 * pi, i) * detail::gaussian_lattice_sum_bound(a_out, T(i));
  const T inner_tol = trunc.tail_tol / (2 * weights);

  const std::complex<T> I(0, 1);
  T sum = 0;
  T tail = 0;
  for (int m = -M; m <= M; ++m) {
    T row_tail = 0;
    const std::complex<T> S =
        detail::row_sum(y, m * z.x, d.b, j, inner_tol, trunc.max_index, row_tail);
    std::complex<T> pre = exp(-a_out * m * m) * std::polar(T(1), 2 * pi * m * d.a);
    for (int k = 0; k < i; ++k) pre *= 2 * pi * I * T(m);
    sum += (pre * S).real();
    tail += std::abs(pre) * row_tail;
  }
  return {sum, tail + outer_tail(M)};
}

template <class T>
T j_eval(const HalfPlanePoint<T>& z, const Displacement<T>& d, int da_order = 0, int db_order = 0,
         const SeriesTruncation<T>& trunc = {}) {
  return j_eval_bounded(z, d, da_order, db_order, trunc).value;
}

enum class UniversalPoint { w1, w2, w3 };

/// Determinant of the (a,b)-Hessian of J at z = iy for w1 = (1/2,0), w2 = (0,1/2), w3 = (1/2,1/2).
/// On the axis J factors as th(y;a) th(1/y;b), so the mixed partial vanishes at these points.
template <class T>
T hessian_universal(T y, UniversalPoint which, const SeriesTruncation<T>& trunc = {}) {
  if (!(y > 0)) throw DomainError("hessian_universal needs y > 0");
  const T pi = pi_v<T>;
  using K = ThetaKind;
  auto th = [&](K k, T v, int o) { return jacobi_theta(k, v, o, trunc); };
  const T c = 16 * pi * pi;
  switch (which) {
    case UniversalPoint::w1:
      return c * th(K::three, 1 / y, 0) * th(K::three, 1 / y, 1) * th(K::four, y, 0) * th(K::four, y, 1);
    case UniversalPoint::w2:
      return c * th(K::three, y, 0) * th(K::three, y, 1) * th(K::four, 1 / y, 0) * th(K::four, 1 / y, 1);
    case UniversalPoint::w3:
      return c * th(K::four, y, 0) * th(K::four, y, 1) * th(K::four, 1 / y, 0) * th(K::four, 1 / y, 1);
  }
  return std::numeric_limits<T>::quiet_NaN();
}

/// E(z) = theta(1;z) + alpha J(z;a,b).
template <class T>
T energy(T alpha, const HalfPlanePoint<T>& z, const Displacement<T>& d,
         const SeriesTruncation<T>& trunc = {}) {
  using std::abs;
  if (!(abs(alpha) <= 1)) throw DomainError("alpha must lie in [-1, 1]");
  return theta2d(T(1), z, trunc) + alpha * j_eval(z, d, 0, 0, trunc);
}

enum class Shape { hexagonal, rhombic, square, rectangular };

inline const char* to_string(Shape s) {
  switch (s) {
    case Shape::hexagonal: return "hexagonal";
    case Shape::rhombic: return "rhombic";
    case Shape::square: return "square";
    case Shape::rectangular: return "rectangular";
  }
  return "?";
}

template <class T = double>
struct PhaseRow {
  T alpha;
  Shape shape;
  HalfPlanePoint<T> z;
  T angle_or_ratio;  // rhombic/hexagonal: angle in radians; square/rectangular: aspect ratio y
  T energy;
  Displacement<T> d;
};

template <class T>
T rho_from_alpha(T alpha) { return (1 - alpha) / (2 * alpha); }

template <class T>
T alpha_from_rho(T rho) { return 1 / (1 + 2 * rho); }

template <class T = double>
struct AlphaThresholds {
  T alpha1;
  T alpha2;
};

/// alpha1 = 1/(1 + 2 sigma1b), alpha2 = 1/(1 + 2 sigma1a).
template <class T = double>
AlphaThresholds<T> alpha_thresholds() {
  const Thresholds<T>& th = thresholds<T>();
  return {alpha_from_rho(th.sigma1b), alpha_from_rho(th.sigma1a)};
}

/// Optimal lattice at displacement (1/2,1/2) for alpha in (0,1]: the minimizer of W1 at
/// rho = (1-alpha)/(2 alpha), since E = (1-alpha) theta(1;z) + 2 alpha theta(2;(z+1)/2) there.
template <class T>
PhaseRow<T> optimal_lattice(T alpha, const SeriesTruncation<T>& trunc = {}) {
  using std::atan2;
  if (!(alpha > 0) || !(alpha <= 1)) throw DomainError("optimal_lattice needs 0 < alpha <= 1");
  const TrajectoryPoint<T> tp = minimizer(Functional::W1, rho_from_alpha(alpha), trunc);
  const Displacement<T> half(T(0.5), T(0.5));
  PhaseRow<T> row{alpha, Shape::square, tp.z, T(1), energy(alpha, tp.z, half, trunc), half};
  if (tp.branch == Branch::arc) {
    row.shape = Shape::rhombic;
    row.angle_or_ratio = atan2(tp.z.y, tp.z.x);
  } else if (tp.branch == Branch::segment) {
    row.shape = Shape::rectangular;
    row.angle_or_ratio = tp.z.y;
  }
  return row;
}

/// For alpha <= 0 the hexagonal lattice with coincident components is optimal.
template <class T>
PhaseRow<T> hexagonal_row(T alpha, const SeriesTruncation<T>& trunc = {}) {
  using std::sqrt;
  const HalfPlanePoint<T> z0(T(0.5), sqrt(T(3)) / 2);
  const Displacement<T> d0;
  return {alpha, Shape::hexagonal, z0, pi_v<T> / 3, energy(alpha, z0, d0, trunc), d0};
}

template <class T>
HalfPlanePoint<T> hexagonal_point() {
  return HalfPlanePoint<T>(T(0.5), std::sqrt(T(3)) / 2);
}

/// Energy of the hexagonal lattice with the (1/3,1/3) displacement.
template <class T>
T hexagonal_third_energy(T alpha, const SeriesTruncation<T>& trunc = {}) {
  const T third = T(1) / 3;
  return energy(alpha, hexagonal_point<T>(), Displacement<T>(third, third), trunc);
}

template <class T = double>
struct Alpha0Result {
  T alpha0;
  T theta_alpha0;
  T rough_bound;
};

/// (theta(1;i) - theta(1;z0)) / (J(z0;1/3,1/3) - J(i;1/2,1/2)).
template <class T>
T alpha0_rough_bound(const SeriesTruncation<T>& trunc = {}) {
  const HalfPlanePoint<T> i(T(0), T(1));
  const HalfPlanePoint<T> z0 = hexagonal_point<T>();
  const T third = T(1) / 3;
  return (theta2d(T(1), i, trunc) - theta2d(T(1), z0, trunc)) /
         (j_eval(z0, Displacement<T>(third, third), 0, 0, trunc) -
          j_eval(i, Displacement<T>(T(0.5), T(0.5)), 0, 0, trunc));
}

/// Root in alpha of: hexagonal lattice at (1/3,1/3) has the same energy as the optimal rhombic
/// lattice at (1/2,1/2). Bisection over (0, alpha1).
template <class T>
Alpha0Result<T> solve_alpha0(const SeriesTruncation<T>& trunc = {}) {
  auto gap = [&](T a) { return hexagonal_third_energy(a, trunc) - optimal_lattice(a, trunc).energy; };
  T lo = T(1e-3);
  T hi = alpha_thresholds<T>().alpha1;
  T glo = gap(lo);
  // bracket: the sign flips once on (0, alpha1)
  const int probes = 64;
  T prev = lo;
  T gprev = glo;
  bool found = false;
  for (int k = 1; k <= probes; ++k) {
    const T a = lo + (hi - lo) * k / probes;
    const T g = gap(a);
    if ((g > 0) != (gprev > 0)) {
      lo = prev;
      hi = a;
      glo = gprev;
      found = true;
      break;
    }
    prev = a;
    gprev = g;
  }
  if (!found) throw NoRootError("alpha0 equation has no sign change on (0, alpha1)");
  while (hi - lo > T(1e-13)) {
    const T mid = (lo + hi) / 2;
    const T g = gap(mid);
    if ((g > 0) == (glo > 0)) {
      lo = mid;
      glo = g;
    } else {
      hi = mid;
    }
  }
  const T a0 = (lo + hi) / 2;
  return {a0, optimal_lattice(a0, trunc).angle_or_ratio, alpha0_rough_bound(trunc)};
}

enum class CriticalType { min, max, saddle, degenerate };

inline const char* to_string(CriticalType c) {
  switch (c) {
    case CriticalType::min: return "min";
    case CriticalType::max: return "max";
    case CriticalType::saddle: return "saddle";
    case CriticalType::degenerate: return "degenerate";
  }
  return "?";
}

template <class T = double>
struct CriticalPoint {
  Displacement<T> d;
  CriticalType type;
  T residual;  // |grad J| at the reported point
};

template <class T = double>
struct CriticalPointReport {
  std::vector<CriticalPoint<T>> points;
  int count = 0;
  int torus_count = 0;  // counting (a,b) and (1-a,1-b) separately
};

template <class T>
std::array<T, 2> j_gradient(const HalfPlanePoint<T>& z, const Displacement<T>& d,
                            const SeriesTruncation<T>& trunc = {}) {
  return {j_eval(z, d, 1, 0, trunc), j_eval(z, d, 0, 1, trunc)};
}

template <class T>
std::array<T, 3> j_hessian(const HalfPlanePoint<T>& z, const Displacement<T>& d,
                           const SeriesTruncation<T>& trunc = {}) {
  return {j_eval(z, d, 2, 0, trunc), j_eval(z, d, 1, 1, trunc), j_eval(z, d, 0, 2, trunc)};
}

template <class T>
CriticalType classify_hessian(const std::array<T, 3>& h) {
  using std::abs;
  const T det = h[0] * h[2] - h[1] * h[1];
  const T scale = h[0] * h[0] + h[1] * h[1] + h[2] * h[2];
  if (abs(det) <= T(1e-10) * scale) return CriticalType::degenerate;
  if (det < 0) return CriticalType::saddle;
  return h[0] + h[2] < 0 ? CriticalType::max : CriticalType::min;
}

/// All zeros of grad_{(a,b)} J on the torus: sign localisation on a grid_n x grid_n mesh,
/// Newton refinement, dedup modulo (a,b) -> (1-a,1-b).
template <class T>
CriticalPointReport<T> critical_census(const HalfPlanePoint<T>& z, int grid_n = 128,
                                       T refine_tol = T(1e-11),
                                       const SeriesTruncation<T>& trunc = {}) {
  using std::abs;
  using std::hypot;
  using std::round;
  if (grid_n < 32) throw DomainError("critical_census needs grid_n >= 32");
  const T h = T(1) / grid_n;
  const std::size_t n = static_cast<std::size_t>(grid_n);

  auto grads = parallel_map<std::array<T, 2>>(n * n, [&](std::size_t k) {
    return j_gradient(z, Displacement<T>(T(k / n) * h, T(k % n) * h), trunc);
  });
  auto g_at = [&](std::size_t ia, std::size_t ib) { return grads[(ia % n) * n + (ib % n)]; };

  std::vector<std::array<T, 2>> seeds = {{0, 0}, {0.5, 0}, {0, 0.5}, {0.5, 0.5}};
  for (std::size_t ia = 0; ia < n; ++ia)
    for (std::size_t ib = 0; ib < n; ++ib) {
      T lo0 = std::numeric_limits<T>::infinity(), hi0 = -lo0, lo1 = lo0, hi1 = -lo0;
      for (std::size_t da : {0u, 1u})
        for (std::size_t db : {0u, 1u}) {
          const auto g = g_at(ia + da, ib + db);
          lo0 = std::min(lo0, g[0]);
          hi0 = std::max(hi0, g[0]);
          lo1 = std::min(lo1, g[1]);
          hi1 = std::max(hi1, g[1]);
        }
      if (lo0 <= 0 && hi0 >= 0 && lo1 <= 0 && hi1 >= 0)
        seeds.push_back({(T(ia) + T(0.5)) * h, (T(ib) + T(0.5)) * h});
    }

  auto refine = [&](std::size_t k) -> std::optional<CriticalPoint<T>> {
    T a = seeds[k][0], b = seeds[k][1];
    const T a0 = a, b0 = b;
    auto g = j_gradient(z, Displacement<T>(a, b), trunc);
    T res = hypot(g[0], g[1]);
    for (int it = 0; it < 60 && res > refine_tol; ++it) {
      const auto H = j_hessian(z, Displacement<T>(a, b), trunc);
      const T det = H[0] * H[2] - H[1] * H[1];
      if (det == 0) break;
      T sa = -(H[2] * g[0] - H[1] * g[1]) / det;
      T sb = -(H[0] * g[1] - H[1] * g[0]) / det;
      T step = 1;
      bool improved = false;
      for (int damp = 0; damp < 30; ++damp) {
        const auto g2 = j_gradient(z, Displacement<T>(a + step * sa, b + step * sb), trunc);
        const T r2 = hypot(g2[0], g2[1]);
        if (r2 < res) {
          a += step * sa;
          b += step * sb;
          g = g2;
          res = r2;
          improved = true;
          break;
        }
        step /= 2;
      }
      if (!improved) break;
    }
    // a seed that wandered off its cell was a false alarm
    auto torus_dist = [](T u, T v) {
      T d = abs(u - v);
      d -= round(d);
      return abs(d);
    };
    if (k >= 4 && (torus_dist(a, a0) > 2 * h || torus_dist(b, b0) > 2 * h) && res > refine_tol)
      return std::nullopt;
    const Displacement<T> d(a, b);
    const CriticalType type =
        res <= refine_tol ? classify_hessian(j_hessian(z, d, trunc)) : CriticalType::degenerate;
    return CriticalPoint<T>{d, type, res};
  };
  auto refined = parallel_map<std::optional<CriticalPoint<T>>>(seeds.size(), refine);

  CriticalPointReport<T> report;
  auto same = [&](const Displacement<T>& p, const Displacement<T>& q) {
    auto close = [](T u, T v) {
      T d = abs(u - v);
      d -= round(d);
      return abs(d) < T(1e-7);
    };
    return (close(p.a, q.a) && close(p.b, q.b)) || (close(p.a, 1 - q.a) && close(p.b, 1 - q.b));
  };
  for (const auto& c : refined) {
    if (!c) continue;
    bool dup = false;
    for (const auto& p : report.points)
      if (same(p.d, c->d)) {
        dup = true;
        break;
      }
    if (!dup) report.points.push_back(*c);
  }
  report.count = static_cast<int>(report.points.size());
  for (const auto& p : report.points) {
    const Displacement<T> mirror(1 - p.d.a, 1 - p.d.b);
    auto close = [](T u, T v) {
      T d = abs(u - v);
      d -= round(d);
      return abs(d) < T(1e-7);
    };
    report.torus_count += (close(p.d.a, mirror.a) && close(p.d.b, mirror.b)) ? 1 : 2;
  }
  return report;
}

}  // namespace lattice
