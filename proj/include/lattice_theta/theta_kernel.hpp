#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace lattice {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when the requested tail tolerance cannot be met within max_index terms.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved_bound() const noexcept { return achieved_; }

 private:
  double achieved_;
};

template <class T>
inline constexpr T pi_v = std::numbers::pi_v<T>;

/// Modulus z = x + iy of a unit-density lattice; y > 0.
template <class T = double>
struct HalfPlanePoint {
  T x{0};
  T y{1};

  HalfPlanePoint() = default;
  HalfPlanePoint(T x_, T y_) : x(x_), y(y_) {
    if (!std::isfinite(x) || !std::isfinite(y)) throw DomainError("modulus must be finite");
    if (!(y > 0)) throw DomainError("modulus must have positive imaginary part");
  }
  explicit HalfPlanePoint(std::complex<T> z) : HalfPlanePoint(z.real(), z.imag()) {}

  std::complex<T> complex() const { return {x, y}; }
};

using Point = HalfPlanePoint<double>;

/// Truncation policy: at most max_index terms per one-dimensional sum, absolute tail target tail_tol.
template <class T = double>
struct SeriesTruncation {
  int max_index = 64;
  T tail_tol = std::is_same_v<T, double> ? T(1e-13) : T(1e-17);
};

/// A truncated series value together with a rigorous bound on what was discarded.
template <class T = double>
struct Bounded {
  T value;
  T tail;
};

enum class ThetaKind { two, three, four };

namespace detail {

/// Bound on sum_{k>=0} (m0+k)^p exp(-a (m0+k)^2) for m0 > 0.
/// The ratio of consecutive terms decreases in m, so the first ratio gives a geometric majorant.
template <class T>
T gaussian_tail(T a, T p, T m0) {
  using std::exp;
  using std::pow;
  const T first = pow(m0, p) * exp(-a * m0 * m0);
  const T r = pow((m0 + 1) / m0, p) * exp(-a * (2 * m0 + 1));
  if (!(r < 1)) return std::numeric_limits<T>::infinity();
  return first / (1 - r);
}

/// Bound on sum_{n in Z} |n-c|^p exp(-a (n-c)^2), any shift c.
template <class T>
T gaussian_lattice_sum_bound(T a, T p) {
  using std::exp;
  using std::pow;
  using std::sqrt;
  using std::tgamma;
  const T peak = p > 0 ? pow(p / (2 * a * std::numbers::e_v<T>), p / 2) : T(1);
  return 2 * peak + tgamma((p + 1) / 2) / pow(a, (p + 1) / 2);
}

/// Smallest N in [1, max_index] with tail(N) <= tol.
template <class T, class TailFn>
int choose_terms(TailFn&& tail, const SeriesTruncation<T>& trunc, const char* what) {
  for (int n = 1; n <= trunc.max_index; ++n)
    if (tail(n) <= trunc.tail_tol) return n;
  throw TruncationError(std::string(what) + ": tail tolerance not reached within max_index",
                        static_cast<double>(tail(trunc.max_index)));
}

template <class T>
T int_pow(T base, int k) {
  T r = 1;
  for (int i = 0; i < k; ++i) r *= base;
  return r;
}

}  // namespace detail

enum class SumKind { jacobi2, jacobi3, jacobi4, theta1d_direct, theta1d_poisson, theta2d_rows };

/// Parameters for tail_bound. `decay` is the series argument (y for Jacobi sums, X for theta1d);
/// theta2d_rows uses s and y.
template <class T = double>
struct TailParams {
  T decay = 1;
  int order = 0;
  T s = 1;
  T y = 1;
};

/// Upper bound on the tail discarded when a sum is cut after index N. Non-increasing in N.
template <class T>
T tail_bound(SumKind kind, const TailParams<T>& p, int N) {
  using std::pow;
  using std::sqrt;
  if (N < 1) throw DomainError("tail_bound needs N >= 1");
  const T pi = pi_v<T>;
  const int k = p.order;
  switch (kind) {
    case SumKind::jacobi3:
    case SumKind::jacobi4:
      if (!(p.decay > 0)) throw DomainError("jacobi tail needs y > 0");
      return 2 * detail::int_pow(pi, k) * detail::gaussian_tail(pi * p.decay, T(2 * k), T(N + 1));
    case SumKind::jacobi2:
      if (!(p.decay > 0)) throw DomainError("jacobi tail needs y > 0");
      return 2 * detail::int_pow(pi, k) *
             detail::gaussian_tail(pi * p.decay, T(2 * k), T(N) + T(0.5));
    case SumKind::theta1d_direct:
      if (!(p.decay > 0)) throw DomainError("theta1d tail needs X > 0");
      return 2 * detail::int_pow(2 * pi, k) * detail::gaussian_tail(pi * p.decay, T(k), T(N + 1));
    case SumKind::theta1d_poisson:
      if (!(p.decay > 0)) throw DomainError("theta1d tail needs X > 0");
      return 2 / sqrt(p.decay) * detail::int_pow(2 * pi / p.decay, k) *
             detail::gaussian_tail(pi / p.decay, T(k), T(N) + T(0.5));
    case SumKind::theta2d_rows: {
      if (!(p.s > 0) || !(p.y > 0)) throw DomainError("theta2d tail needs s, y > 0");
      const T X = p.y / p.s;
      const T inner_max = 1 + 1 / sqrt(X);
      return 2 * sqrt(X) * inner_max * detail::gaussian_tail(p.s * pi * p.y, T(0), T(N + 1));
    }
  }
  return std::numeric_limits<T>::infinity();
}

/// Term-wise order-th y-derivative of a Jacobi theta series (order 0..4).
template <class T>
Bounded<T> jacobi_theta_bounded(ThetaKind kind, T y, int order,
                                const SeriesTruncation<T>& trunc = {}) {
  using std::exp;
  if (!(y > 0)) throw DomainError("jacobi_theta needs y > 0");
  if (order < 0 || order > 4) throw DomainError("jacobi_theta order must be in 0..4");
  const T pi = pi_v<T>;
  const SumKind sk = kind == ThetaKind::two     ? SumKind::jacobi2
                     : kind == ThetaKind::three ? SumKind::jacobi3
                                                : SumKind::jacobi4;
  const TailParams<T> tp{y, order};
  const int N = detail::choose_terms<T>([&](int n) { return tail_bound(sk, tp, n); }, trunc,
                                        "jacobi_theta");
  T sum = 0;
  for (int n = N; n >= 1; --n) {
    const T e2 = kind == ThetaKind::two ? (n - T(0.5)) * (n - T(0.5)) : T(n) * T(n);
    T term = 2 * detail::int_pow(-pi * e2, order) * exp(-pi * e2 * y);
    if (kind == ThetaKind::four && (n % 2 == 1)) term = -term;
    sum += term;
  }
  if (kind != ThetaKind::two && order == 0) sum += 1;
  return {sum, tail_bound(sk, tp, N)};
}

template <class T>
T jacobi_theta(ThetaKind kind, T y, int order = 0, const SeriesTruncation<T>& trunc = {}) {
  return jacobi_theta_bounded(kind, y, order, trunc).value;
}

/// Direct form of sum_n exp(-pi n^2 X) cos(2 pi n Y), or its Y-derivative.
template <class T>
Bounded<T> theta1d_direct(T X, T Y, int dY_order, const SeriesTruncation<T>& trunc = {}) {
  using std::cos;
  using std::exp;
  using std::sin;
  if (!(X > 0)) throw DomainError("theta1d needs X > 0");
  if (dY_order < 0 || dY_order > 1) throw DomainError("theta1d derivative order must be 0 or 1");
  const T pi = pi_v<T>;
  const TailParams<T> tp{X, dY_order};
  const int N = detail::choose_terms<T>(
      [&](int n) { return tail_bound(SumKind::theta1d_direct, tp, n); }, trunc, "theta1d");
  T sum = 0;
  for (int n = N; n >= 1; --n) {
    const T w = exp(-pi * n * n * X);
    sum += dY_order == 0 ? 2 * w * cos(2 * pi * n * Y) : -4 * pi * n * w * sin(2 * pi * n * Y);
  }
  if (dY_order == 0) sum += 1;
  return {sum, tail_bound(SumKind::theta1d_direct, tp, N)};
}

/// Poisson-summed form X^{-1/2} sum_n exp(-pi (n-Y)^2 / X), or its Y-derivative.
template <class T>
Bounded<T> theta1d_poisson(T X, T Y, int dY_order, const SeriesTruncation<T>& trunc = {}) {
  using std::exp;
  using std::round;
  using std::sqrt;
  if (!(X > 0)) throw DomainError("theta1d needs X > 0");
  if (dY_order < 0 || dY_order > 1) throw DomainError("theta1d derivative order must be 0 or 1");
  const T pi = pi_v<T>;
  const T Yr = Y - round(Y);
  const TailParams<T> tp{X, dY_order};
  const int N = detail::choose_terms<T>(
      [&](int n) { return tail_bound(SumKind::theta1d_poisson, tp, n); }, trunc, "theta1d");
  T sum = 0;
  for (int k = N; k >= 0; --k) {
    for (int sgn : {1, -1}) {
      if (k == 0 && sgn == -1) continue;
      const T d = sgn * k - Yr;
      const T w = exp(-pi * d * d / X);
      sum += dY_order == 0 ? w : 2 * pi * d / X * w;
    }
  }
  return {sum / sqrt(X), tail_bound(SumKind::theta1d_poisson, tp, N)};
}

/// Triple-product form prod (1-q^{2n})(1 + 2 q^{2n-1} cos 2piY + q^{4n-2}), q = exp(-pi X). Value only.
template <class T>
Bounded<T> theta1d_product(T X, T Y, const SeriesTruncation<T>& trunc = {}) {
  using std::abs;
  using std::cos;
  using std::exp;
  using std::expm1;
  using std::pow;
  if (!(X > 0)) throw DomainError("theta1d needs X > 0");
  const T pi = pi_v<T>;
  const T q = exp(-pi * X);
  const T c = cos(2 * pi * Y);
  // |log| of every omitted factor is at most q^{2n}/(1-q^{2n}) + 2 q^{2n-1}/(1-q^{2n-1})
  auto log_tail = [&](int n) {
    const T lead = pow(q, T(2 * n + 1));
    return 3 * lead / ((1 - lead) * (1 - q * q));
  };
  const int N = detail::choose_terms<T>(
      [&](int n) { return T(4) * expm1(log_tail(n)); }, trunc, "theta1d_product");
  T prod = 1;
  for (int n = 1; n <= N; ++n) {
    const T a = pow(q, T(2 * n - 1));
    prod *= (1 - a * q) * (1 + 2 * a * c + a * a);
  }
  return {prod, abs(prod) * expm1(log_tail(N))};
}

/// Classical one-dimensional theta function sum_n exp(-pi n^2 X) cos(2 pi n Y).
/// Direct series for X >= 1, Poisson form below, so the decay rate is max(X, 1/X).
template <class T>
Bounded<T> theta1d_bounded(T X, T Y, int dY_order = 0, const SeriesTruncation<T>& trunc = {}) {
  return X >= 1 ? theta1d_direct(X, Y, dY_order, trunc) : theta1d_poisson(X, Y, dY_order, trunc);
}

template <class T>
T theta1d(T X, T Y, int dY_order = 0, const SeriesTruncation<T>& trunc = {}) {
  return theta1d_bounded(X, Y, dY_order, trunc).value;
}

/// theta(s;z) = sum_{m,n} exp(-s pi |mz+n|^2 / y), summed row by row:
/// sqrt(y/s) sum_m exp(-s pi y m^2) theta1d(y/s; m x).
template <class T>
Bounded<T> theta2d_bounded(T s, const HalfPlanePoint<T>& z, const SeriesTruncation<T>& trunc = {}) {
  using std::exp;
  using std::sqrt;
  if (!(s > 0)) throw DomainError("theta2d needs s > 0");
  const T pi = pi_v<T>;
  const T X = z.y / s;
  const T pre = sqrt(X);
  const T a = s * pi * z.y;
  const TailParams<T> tp{T(1), 0, s, z.y};

  SeriesTruncation<T> outer = trunc;
  outer.tail_tol = trunc.tail_tol / 2;
  const int M = detail::choose_terms<T>(
      [&](int n) { return tail_bound(SumKind::theta2d_rows, tp, n); }, outer, "theta2d");

  SeriesTruncation<T> inner = trunc;
  const T weight_total = pre * (1 + sqrt(pi / a));
  inner.tail_tol = trunc.tail_tol / (2 * weight_total);

  T sum = 0;
  T tail = 0;
  for (int m = M; m >= 1; --m) {
    const T w = 2 * exp(-a * m * m);
    const Bounded<T> t = theta1d_bounded(X, m * z.x, 0, inner);
    sum += w * t.value;
    tail += w * t.tail;
  }
  const Bounded<T> t0 = theta1d_bounded(X, T(0), 0, inner);
  sum += t0.value;
  tail += t0.tail;
  return {pre * sum, pre * tail + tail_bound(SumKind::theta2d_rows, tp, M)};
}

template <class T>
T theta2d(T s, const HalfPlanePoint<T>& z, const SeriesTruncation<T>& trunc = {}) {
  return theta2d_bounded(s, z, trunc).value;
}

/// theta(s; (z+1)/2): the same engine at the midpoint-shifted modulus.
template <class T>
Bounded<T> theta2d_shifted_bounded(T s, const HalfPlanePoint<T>& z,
                                   const SeriesTruncation<T>& trunc = {}) {
  return theta2d_bounded(s, HalfPlanePoint<T>((z.x + 1) / 2, z.y / 2), trunc);
}

template <class T>
T theta2d_shifted(T s, const HalfPlanePoint<T>& z, const SeriesTruncation<T>& trunc = {}) {
  return theta2d_shifted_bounded(s, z, trunc).value;
}

}  // namespace lattice
