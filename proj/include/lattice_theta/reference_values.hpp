#pragma once

// Reference constants the library is checked against, with the number of printed decimals.

namespace lattice::reference {

struct Value {
  const char* name;
  double value;
  int decimals;  // digits after the decimal point (significant digits for tiny values)
};

inline constexpr double theta1_square = 1.1803;
inline constexpr double theta1_hexagonal = 1.1596;

inline constexpr double rho1 = 0.04016680351;
inline constexpr double rho2 = 1.190861337;
inline constexpr double sigma2b = 24.89618074;
inline constexpr double sigma1b_leading = 0.83972;

inline constexpr double alpha1 = 0.3732155067;
inline constexpr double alpha2 = 0.9256496973;
inline constexpr double alpha0 = 0.1726645;
inline constexpr double theta_alpha0 = 1.186248384;
inline constexpr double alpha0_rough = 0.2419435012;

inline constexpr double delta_q_half = 0.188822585;
inline constexpr double case_c_margin = 0.1556238052;
inline constexpr double case_d_margin = 0.7866071958;
inline constexpr double w1_bound_margin = 0.1933;
inline constexpr double w2_bound_a = 0.0450964128;
inline constexpr double w2_bound_b = 0.1583739562;
inline constexpr double w2_bound_c = 0.3525036217;
inline constexpr double sigma1_sqrt3half = 2.781e-6;
inline constexpr double sigma2_sqrt3half = 1.14105e-3;
inline constexpr double sigma3_sqrt3half = 5.00388e-3;
inline constexpr double sigma4_sqrt3half = 3.255011e-7;
inline constexpr double pxy_minus_slope = -3.012967072;
inline constexpr double pab_minus_slope = -3.051954266;
inline constexpr double u3_margin = 0.001671778;
inline constexpr double v3_first = 158.4646175;
inline constexpr double v3_second = 130.0476135;
inline constexpr double uu3_margin = 0.001189906301;
inline constexpr double vv3_first = 49.93918473;
inline constexpr double vv3_second = 0.09227517899;

/// Half a unit in the last printed place, floored at 1e-6 (the acceptance tolerance).
constexpr double printed_tolerance(double half_unit) { return half_unit > 1e-6 ? half_unit : 1e-6; }

}  // namespace lattice::reference
