#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "theta_kernel.hpp"

namespace lattice {

class ReductionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class GroupId { Gamma, G1, G2 };

/// Generators used when recording a reduction: translation by k, inversion -1/z, reflection -conj(z).
enum class Generator : std::uint8_t { translate, invert, reflect };

struct WordStep {
  Generator gen;
  long long shift = 0;
};

/// z -> (a w + b)/(c w + d) with w = reflect ? -conj(z) : z.
/// The matrix is canonical; `steps` records how the word was built.
struct MoebiusWord {
  long long a = 1, b = 0, c = 0, d = 1;
  bool reflect = false;
  std::vector<WordStep> steps;

  static MoebiusWord identity() { return {}; }
  static MoebiusWord translation(long long k) { return {1, k, 0, 1, false, {{Generator::translate, k}}}; }
  static MoebiusWord inversion() { return {0, -1, 1, 0, false, {{Generator::invert, 0}}}; }
  static MoebiusWord reflection() { return {1, 0, 0, 1, true, {{Generator::reflect, 0}}}; }

  long long det() const { return a * d - b * c; }
  bool is_identity() const {
    return !reflect && b == 0 && c == 0 && ((a == 1 && d == 1) || (a == -1 && d == -1));
  }

  /// The word "apply this, then `next`".
  MoebiusWord then(const MoebiusWord& next) const {
    // conjugation commutes past a matrix by flipping the signs of b and c
    const long long a1 = a, b1 = next.reflect ? -b : b, c1 = next.reflect ? -c : c, d1 = d;
    MoebiusWord r;
    r.a = next.a * a1 + next.b * c1;
    r.b = next.a * b1 + next.b * d1;
    r.c = next.c * a1 + next.d * c1;
    r.d = next.c * b1 + next.d * d1;
    r.reflect = reflect != next.reflect;
    r.steps = steps;
    r.steps.insert(r.steps.end(), next.steps.begin(), next.steps.end());
    return r;
  }

  MoebiusWord inverse() const {
    // z -> M R^r z has inverse R^r M^{-1}; push R^r back through M^{-1}
    MoebiusWord r;
    r.a = d;
    r.b = reflect ? b : -b;
    r.c = reflect ? c : -c;
    r.d = a;
    r.reflect = reflect;
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
      WordStep s = *it;
      if (s.gen == Generator::translate) s.shift = -s.shift;
      r.steps.push_back(s);
    }
    return r;
  }
};

template <class T>
HalfPlanePoint<T> apply(const MoebiusWord& w, const HalfPlanePoint<T>& z) {
  std::complex<T> v = z.complex();
  if (w.reflect) v = -std::conj(v);
  const std::complex<T> r = (T(w.a) * v + T(w.b)) / (T(w.c) * v + T(w.d));
  return HalfPlanePoint<T>(r.real(), r.imag());
}

template <class T>
struct Reduction {
  HalfPlanePoint<T> point;
  MoebiusWord word;
};

/// Gauss-style reduction into the closure of the fundamental domain of `group`:
///   Gamma: |z| >= 1, -1/2 <= x <= 1/2
///   G1:    |z| >= 1,    0 <= x <= 1/2
///   G2:    |z| >= 1,    0 <= x <= 1
/// On |z| = 1 ties resolve to x >= 0.
template <class T>
Reduction<T> reduce(const HalfPlanePoint<T>& z0, GroupId group, int max_iter = 1000) {
  using std::floor;
  const long long period = group == GroupId::G2 ? 2 : 1;
  const T half = T(period) / 2;
  const T eps = 64 * std::numeric_limits<T>::epsilon();
  HalfPlanePoint<T> z = z0;
  MoebiusWord word;
  auto step = [&](const MoebiusWord& g) {
    z = apply(g, z);
    word = word.then(g);
  };
  for (int it = 0; it < max_iter; ++it) {
    const T k = floor((z.x + half) / T(period));
    if (k != 0) step(MoebiusWord::translation(-static_cast<long long>(k) * period));
    // floor can leave x == half on the right edge; move the left representative over
    if (z.x >= half) step(MoebiusWord::translation(-period));
    const T r2 = z.x * z.x + z.y * z.y;
    if (r2 < 1 - eps) {
      step(MoebiusWord::inversion());
      continue;
    }
    if (group == GroupId::Gamma) {
      if (z.x < 0 && r2 <= 1 + eps) step(MoebiusWord::inversion());
      if (z.x == -half) step(MoebiusWord::translation(period));
    } else if (z.x < 0) {
      step(MoebiusWord::reflection());
    }
    return {z, word};
  }
  throw ReductionError("reduction did not terminate");
}

template <class T>
HalfPlanePoint<T> cayley(const HalfPlanePoint<T>& z) {
  const std::complex<T> v = z.complex();
  return HalfPlanePoint<T>((v - T(1)) / (v + T(1)));
}

template <class T>
HalfPlanePoint<T> cayley_inv(const HalfPlanePoint<T>& w) {
  const std::complex<T> v = w.complex();
  return HalfPlanePoint<T>((T(1) + v) / (T(1) - v));
}

/// Pieces of the minimizer curve: the segment x = 0, 1 <= y <= sqrt3, the corner i,
/// and the unit arc 0 <= x < 1/2.
enum class Branch { segment, corner, arc };

inline const char* to_string(Branch b) {
  switch (b) {
    case Branch::segment: return "segment";
    case Branch::corner: return "corner";
    case Branch::arc: return "arc";
  }
  return "?";
}

template <class T>
std::optional<Branch> on_trajectory(const HalfPlanePoint<T>& z, T tol = T(1e-9)) {
  using std::abs;
  using std::hypot;
  using std::sqrt;
  if (abs(z.x) <= tol && abs(z.y - 1) <= tol) return Branch::corner;
  if (abs(z.x) <= tol && z.y >= 1 - tol && z.y <= sqrt(T(3)) + tol) return Branch::segment;
  if (abs(hypot(z.x, z.y) - 1) <= tol && z.x >= -tol && z.x <= T(0.5) + tol) return Branch::arc;
  return std::nullopt;
}

}  // namespace lattice
