#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "modular_domain.hpp"
#include "theta_kernel.hpp"

namespace lattice {

enum class Functional { W1, W2 };
enum class XYABKind { X, Y, A, B };

inline const char* to_string(Functional k) { return k == Functional::W1 ? "W1" : "W2"; }

class NoRootError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {

/// Derivatives 0..order of y -> theta(alpha y) and y -> theta(beta / y).
template <class T>
std::array<T, 5> theta_scaled(ThetaKind kind, T alpha, T y, int order,
                              const SeriesTruncation<T>& trunc) {
  std::array<T, 5> g{};
  T scale = 1;
  for (int j = 0; j <= order; ++j) {
    g[j] = scale * jacobi_theta(kind, alpha * y, j, trunc);
    scale *= alpha;
  }
  return g;
}

template <class T>
std::array<T, 5> theta_inverted(ThetaKind kind, T beta, T y, int order,
                                const SeriesTruncation<T>& trunc) {
  // Faa di Bruno for h(u(y)), u = beta / y
  const T u = beta / y;
  std::array<T, 5> h{};
  for (int j = 0; j <= order; ++j) h[j] = jacobi_theta(kind, u, j, trunc);
  const T u1 = -beta / (y * y);
  const T u2 = 2 * beta / (y * y * y);
  const T u3 = -6 * beta / (y * y * y * y);
  const T u4 = 24 * beta / (y * y * y * y * y);
  std::array<T, 5> d{};
  d[0] = h[0];
  if (order >= 1) d[1] = h[1] * u1;
  if (order >= 2) d[2] = h[2] * u1 * u1 + h[1] * u2;
  if (order >= 3) d[3] = h[3] * u1 * u1 * u1 + 3 * h[2] * u1 * u2 + h[1] * u3;
  if (order >= 4)
    d[4] = h[4] * u1 * u1 * u1 * u1 + 6 * h[3] * u1 * u1 * u2 + h[2] * (3 * u2 * u2 + 4 * u1 * u3) +
           h[1] * u4;
  return d;
}

/// order-th derivative of theta_g(alpha y) * theta_h(beta / y) by Leibniz.
template <class T>
T product_derivative(ThetaKind g, T alpha, ThetaKind h, T beta, T y, int order,
                     const SeriesTruncation<T>& trunc) {
  static constexpr int binom[5][5] = {
      {1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1}};
  const auto G = theta_scaled(g, alpha, y, order, trunc);
  const auto H = theta_inverted(h, beta, y, order, trunc);
  T s = 0;
  for (int j = 0; j <= order; ++j) s += binom[order][j] * G[j] * H[order - j];
  return s;
}

}  // namespace detail

/// X = th3(y) th3(1/y), Y = 2(th3(4y) th3(4/y) + th2(4y) th2(4/y)),
/// A = sqrt2 th3(2y) th3(2/y), B = sqrt2 th2(2y) th2(2/y), and their y-derivatives.
template <class T>
T xyab(XYABKind which, T y, int order = 0, const SeriesTruncation<T>& trunc = {}) {
  using std::sqrt;
  if (!(y > 0)) throw DomainError("xyab needs y > 0");
  if (order < 0 || order > 4) throw DomainError("xyab order must be in 0..4");
  using K = ThetaKind;
  switch (which) {
    case XYABKind::X:
      return detail::product_derivative(K::three, T(1), K::three, T(1), y, order, trunc);
    case XYABKind::Y:
      return 2 * (detail::product_derivative(K::three, T(4), K::three, T(4), y, order, trunc) +
                  detail::product_derivative(K::two, T(4), K::two, T(4), y, order, trunc));
    case XYABKind::A:
      return sqrt(T(2)) * detail::product_derivative(K::three, T(2), K::three, T(2), y, order, trunc);
    case XYABKind::B:
      return sqrt(T(2)) * detail::product_derivative(K::two, T(2), K::two, T(2), y, order, trunc);
  }
  return std::numeric_limits<T>::quiet_NaN();
}

template <class T = double>
struct Thresholds {
  T rho1, rho2, sigma1a, sigma1b, sigma2a, sigma2b;
};

/// rho1 = -Y''(1) / (2 X''(1)), rho2 = -1 - B''(1)/A''(1); the sigmas follow by reciprocity.
/// W1(iy) = Y/2 + rho X, which is where the factor 2 comes from.
template <class T>
Thresholds<T> compute_thresholds(const SeriesTruncation<T>& trunc = {}) {
  const T one = 1;
  const T rho1 = -xyab(XYABKind::Y, one, 2, trunc) / (2 * xyab(XYABKind::X, one, 2, trunc));
  const T rho2 = -1 - xyab(XYABKind::B, one, 2, trunc) / xyab(XYABKind::A, one, 2, trunc);
  return {rho1, rho2, rho1, 1 / rho2, rho2, 1 / rho1};
}

/// Cached thresholds at the default truncation (computed once, thread-safe).
template <class T = double>
const Thresholds<T>& thresholds() {
  static const Thresholds<T> cached = compute_thresholds<T>();
  return cached;
}

template <class T>
T w_eval(Functional kind, T rho, const HalfPlanePoint<T>& z, const SeriesTruncation<T>& trunc = {}) {
  if (!(rho >= 0)) throw DomainError("rho must be >= 0");
  if (kind == Functional::W1)
    return theta2d_shifted(T(2), z, trunc) + rho * theta2d(T(1), z, trunc);
  return theta2d_shifted(T(1), z, trunc) + rho * theta2d(T(2), z, trunc);
}

enum class QuotientKind { ZofXY, CofAB };

/// Y'/X' or B'/A'. Near y = 1 both numerator and denominator vanish; there the ratio of
/// Taylor expansions about 1 is used (limit Y''(1)/X''(1)).
template <class T>
T quotient(QuotientKind kind, T y, const SeriesTruncation<T>& trunc = {}) {
  using std::abs;
  const XYABKind num = kind == QuotientKind::ZofXY ? XYABKind::Y : XYABKind::B;
  const XYABKind den = kind == QuotientKind::ZofXY ? XYABKind::X : XYABKind::A;
  const T h = y - 1;
  if (abs(h) < T(1e-3)) {
    auto series = [&](XYABKind w) {
      const T d2 = xyab(w, T(1), 2, trunc), d3 = xyab(w, T(1), 3, trunc),
              d4 = xyab(w, T(1), 4, trunc);
      return d2 + d3 * h / 2 + d4 * h * h / 6;
    };
    return series(num) / series(den);
  }
  return xyab(num, y, 1, trunc) / xyab(den, y, 1, trunc);
}

/// Left-hand side of the axis critical-point equation:
///   W1: Y'/(2X') + c,   W2: 1 + B'/A' + c.
template <class T>
T branch_equation(Functional kind, T c, T y, const SeriesTruncation<T>& trunc = {}) {
  if (kind == Functional::W1) return quotient(QuotientKind::ZofXY, y, trunc) / 2 + c;
  return 1 + quotient(QuotientKind::CofAB, y, trunc) + c;
}

/// Unique root in (1, sqrt3] of the branch equation, for 0 <= c < threshold.
/// Bisection to width 1e-6, then safeguarded secant to residual 1e-12.
template <class T>
T solve_y_branch(Functional kind, T c, const SeriesTruncation<T>& trunc = {}) {
  using std::abs;
  using std::sqrt;
  const Thresholds<T>& th = thresholds<T>();
  const T window = kind == Functional::W1 ? th.rho1 : th.rho2;
  if (!(c >= 0) || !(c < window)) throw NoRootError("c outside the existence window; minimizer is the corner i");
  auto f = [&](T y) { return branch_equation(kind, c, y, trunc); };
  T lo = 1 + T(1e-9);
  T hi = sqrt(T(3));
  T flo = f(lo);
  T fhi = f(hi);
  if (abs(fhi) <= T(1e-12) || fhi <= 0) return hi;
  if (flo >= 0) return lo;
  while (hi - lo > T(1e-6)) {
    const T mid = (lo + hi) / 2;
    const T fm = f(mid);
    if (fm == 0) return mid;
    (fm < 0 ? lo : hi) = mid;
    (fm < 0 ? flo : fhi) = fm;
  }
  T best = abs(flo) < abs(fhi) ? lo : hi;
  T fbest = abs(flo) < abs(fhi) ? flo : fhi;
  for (int it = 0; it < 60 && abs(fbest) > T(1e-12); ++it) {
    T x = hi - fhi * (hi - lo) / (fhi - flo);
    if (!(x > lo && x < hi)) x = (lo + hi) / 2;
    const T fx = f(x);
    if (fx < 0) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
    if (abs(fx) < abs(fbest)) {
      best = x;
      fbest = fx;
    }
    if (hi - lo < 4 * std::numeric_limits<T>::epsilon()) break;
  }
  return best;
}

template <class T = double>
struct TrajectoryPoint {
  T rho;
  HalfPlanePoint<T> z;
  Branch branch;
};

/// Closed-form minimizer over the fundamental domain.
/// W1: segment i y(W1, rho) for rho < rho1; corner on [rho1, 1/rho2]; arc cayley(i y(W2, 1/rho)) above.
/// W2: segment for rho < rho2; corner on [rho2, 1/rho1]; arc cayley(i y(W1, 1/rho)) above.
template <class T>
TrajectoryPoint<T> minimizer(Functional kind, T rho, const SeriesTruncation<T>& trunc = {}) {
  if (!(rho >= 0)) throw DomainError("rho must be >= 0");
  const Thresholds<T>& th = thresholds<T>();
  const Functional other = kind == Functional::W1 ? Functional::W2 : Functional::W1;
  const T lower = kind == Functional::W1 ? th.rho1 : th.rho2;
  const T upper = kind == Functional::W1 ? 1 / th.rho2 : 1 / th.rho1;
  if (rho < lower) {
    const T y = solve_y_branch(kind, rho, trunc);
    return {rho, HalfPlanePoint<T>(T(0), y), Branch::segment};
  }
  if (rho <= upper) return {rho, HalfPlanePoint<T>(T(0), T(1)), Branch::corner};
  const T y = solve_y_branch(other, 1 / rho, trunc);
  return {rho, cayley(HalfPlanePoint<T>(T(0), y)), Branch::arc};
}

template <class T = double>
struct QuotientScan {
  std::vector<T> y;
  std::vector<T> derivative;
  int positive = 0;
  int negative = 0;
  int zero = 0;
};

/// Sign of d/dy (Y'/X') or d/dy (B'/A') on an n-point grid of [y_lo, y_hi].
/// At y = 1 the quotient is even under y -> 1/y, so its derivative is 0 there.
template <class T>
QuotientScan<T> quotient_scan(QuotientKind kind, T y_lo, T y_hi, int n,
                              const SeriesTruncation<T>& trunc = {}) {
  using std::abs;
  if (!(y_lo > 0) || !(y_lo < y_hi) || n < 2) throw DomainError("quotient_scan needs 0 < lo < hi, n >= 2");
  const XYABKind num = kind == QuotientKind::ZofXY ? XYABKind::Y : XYABKind::B;
  const XYABKind den = kind == QuotientKind::ZofXY ? XYABKind::X : XYABKind::A;
  QuotientScan<T> out;
  for (int i = 0; i < n; ++i) {
    const T y = y_lo + (y_hi - y_lo) * i / (n - 1);
    T d = 0;
    if (abs(y - 1) > T(1e-6)) {
      const T n1 = xyab(num, y, 1, trunc), n2 = xyab(num, y, 2, trunc);
      const T d1 = xyab(den, y, 1, trunc), d2 = xyab(den, y, 2, trunc);
      d = (n2 * d1 - n1 * d2) / (d1 * d1);
    }
    out.y.push_back(y);
    out.derivative.push_back(d);
    if (d > 0) ++out.positive;
    else if (d < 0) ++out.negative;
    else ++out.zero;
  }
  return out;
}

}  // namespace lattice
