#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lattice_theta/competing_functionals.hpp"
#include "lattice_theta/modular_domain.hpp"

using namespace lattice;

namespace {

void expect_point(const Point& got, double x, double y, double tol = 1e-12) {
  EXPECT_NEAR(got.x, x, tol);
  EXPECT_NEAR(got.y, y, tol);
}

bool in_domain(const Point& z, GroupId g, double eps = 1e-12) {
  const double r2 = z.x * z.x + z.y * z.y;
  if (r2 < 1 - eps) return false;
  switch (g) {
    case GroupId::Gamma: return z.x >= -0.5 - eps && z.x <= 0.5 + eps;
    case GroupId::G1: return z.x >= -eps && z.x <= 0.5 + eps;
    case GroupId::G2: return z.x >= -eps && z.x <= 1 + eps;
  }
  return false;
}

}  // namespace

TEST(Apply, Basics) {
  expect_point(apply(MoebiusWord::identity(), Point(0.3, 0.7)), 0.3, 0.7);
  expect_point(apply(MoebiusWord::inversion(), Point(0, 1)), 0, 1);
  expect_point(apply(MoebiusWord::translation(2), Point(0.1, 1.0)), 2.1, 1.0);
  expect_point(apply(MoebiusWord::reflection(), Point(0.2, 1.3)), -0.2, 1.3);
}

TEST(MoebiusWordTest, ComposedWordsHaveUnitDeterminantAndInvert) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> gen(0, 2), shift(-3, 3);
  std::uniform_real_distribution<double> ux(-2, 2), uy(0.2, 3);
  for (int trial = 0; trial < 50; ++trial) {
    MoebiusWord w;
    for (int k = 0; k < 8; ++k) {
      switch (gen(rng)) {
        case 0: w = w.then(MoebiusWord::translation(shift(rng))); break;
        case 1: w = w.then(MoebiusWord::inversion()); break;
        default: w = w.then(MoebiusWord::reflection()); break;
      }
    }
    EXPECT_EQ(w.det(), 1);
    const Point z(ux(rng), uy(rng));
    const Point back = apply(w.inverse(), apply(w, z));
    EXPECT_NEAR(back.x, z.x, 1e-10);
    EXPECT_NEAR(back.y, z.y, 1e-10);
  }
}

TEST(MoebiusWordTest, ThenMatchesSequentialApplication) {
  const Point z(0.37, 0.81);
  const MoebiusWord w = MoebiusWord::translation(1).then(MoebiusWord::reflection()).then(MoebiusWord::inversion());
  const Point seq = apply(MoebiusWord::inversion(), apply(MoebiusWord::reflection(), apply(MoebiusWord::translation(1), z)));
  expect_point(apply(w, z), seq.x, seq.y);
  EXPECT_EQ(w.steps.size(), 3u);
}

TEST(Reduce, Examples) {
  const auto r1 = reduce(Point(2, 1), GroupId::G2);
  expect_point(r1.point, 0, 1);
  EXPECT_EQ(r1.word.a, 1);
  EXPECT_EQ(r1.word.b, -2);
  EXPECT_EQ(r1.word.c, 0);
  EXPECT_FALSE(r1.word.reflect);

  const auto r2 = reduce(Point(0, 0.5), GroupId::G1);
  expect_point(r2.point, 0, 2);
  ASSERT_EQ(r2.word.steps.size(), 1u);
  EXPECT_EQ(r2.word.steps[0].gen, Generator::invert);
}

TEST(Reduce, LandsInDomainAndWordReproducesPoint) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> ux(-5, 5), uy(0.01, 3);
  for (GroupId g : {GroupId::Gamma, GroupId::G1, GroupId::G2})
    for (int k = 0; k < 200; ++k) {
      const Point z(ux(rng), uy(rng));
      const auto r = reduce(z, g);
      EXPECT_TRUE(in_domain(r.point, g)) << r.point.x << " " << r.point.y;
      const Point again = apply(r.word, z);
      EXPECT_NEAR(again.x, r.point.x, 1e-9 * std::max(1.0, r.point.y));
      EXPECT_NEAR(again.y, r.point.y, 1e-9 * std::max(1.0, r.point.y));
      EXPECT_EQ(r.word.det(), 1);
    }
}

TEST(Reduce, Idempotent) {
  std::mt19937 rng(6);
  std::uniform_real_distribution<double> ux(-3, 3), uy(0.05, 3);
  for (GroupId g : {GroupId::Gamma, GroupId::G1, GroupId::G2})
    for (int k = 0; k < 100; ++k) {
      const auto r = reduce(Point(ux(rng), uy(rng)), g);
      const auto rr = reduce(r.point, g);
      expect_point(rr.point, r.point.x, r.point.y, 1e-12);
      EXPECT_TRUE(rr.word.is_identity());
    }
}

TEST(Reduce, PreservesTheta) {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> ux(-3, 3), uy(0.1, 2);
  for (int k = 0; k < 40; ++k) {
    const Point z(ux(rng), uy(rng));
    EXPECT_NEAR(theta2d(1.0, reduce(z, GroupId::G1).point), theta2d(1.0, z), 1e-10);
    // the shifted theta is invariant under the G2 action
    EXPECT_NEAR(theta2d_shifted(1.0, reduce(z, GroupId::G2).point), theta2d_shifted(1.0, z), 1e-10);
  }
}

TEST(Cayley, Examples) {
  expect_point(cayley(Point(0, 1)), 0, 1);
  expect_point(cayley(Point(0, std::sqrt(3.0))), 0.5, std::sqrt(3.0) / 2);
  expect_point(cayley(Point(0, 2)), 0.6, 0.8);
}

TEST(Cayley, InverseRoundTrip) {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> ux(-2, 2), uy(0.1, 3);
  for (int k = 0; k < 100; ++k) {
    const Point z(ux(rng), uy(rng));
    const Point a = cayley_inv(cayley(z));
    const Point b = cayley(cayley_inv(z));
    expect_point(a, z.x, z.y, 1e-12 * std::max(1.0, z.y));
    expect_point(b, z.x, z.y, 1e-12 * std::max(1.0, z.y));
  }
}

TEST(Cayley, MapsUpperAxisToArc) {
  for (double y = std::sqrt(3.0); y < 50; y *= 1.3) {
    const Point w = cayley(Point(0, y));
    EXPECT_NEAR(std::hypot(w.x, w.y), 1.0, 1e-14);
    EXPECT_GE(w.x, 0.5 - 1e-14);
    EXPECT_LT(w.x, 1.0);
  }
}

TEST(Cayley, ShiftedThetaDuality) {
  std::mt19937 rng(10);
  std::uniform_real_distribution<double> ux(-1, 1), uy(0.3, 2.5), us(0.5, 3);
  for (int k = 0; k < 30; ++k) {
    const double s = us(rng);
    const Point t(ux(rng), uy(rng));
    EXPECT_NEAR(theta2d_shifted(s, t), theta2d(s, cayley(t)), 1e-10);
  }
}

TEST(Cayley, FunctionalDuality) {
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> ux(-1, 1), uy(0.3, 2.5);
  for (double rho : {0.05, 0.5, 2.0, 20.0})
    for (int k = 0; k < 20; ++k) {
      const Point t(ux(rng), uy(rng));
      const Point w = cayley(t);
      EXPECT_NEAR(w_eval(Functional::W1, rho, t), rho * w_eval(Functional::W2, 1 / rho, w), 1e-9);
      EXPECT_NEAR(w_eval(Functional::W2, rho, t), rho * w_eval(Functional::W1, 1 / rho, w), 1e-9);
    }
}

// On |w| = 1 the arc derivative of W_p(rho) transfers to the axis derivative of W_q(1/rho).
TEST(Cayley, CircleToLineDerivativeTransfer) {
  const double h = 1e-5;
  for (double rho : {0.5, 2.0})
    for (double w1 : {0.55, 0.7, 0.85}) {
      auto on_arc = [&](double u) { return Point(u, std::sqrt(1 - u * u)); };
      const double lhs = (w_eval(Functional::W1, rho, on_arc(w1 + h)) - w_eval(Functional::W1, rho, on_arc(w1 - h))) / (2 * h);
      const double t2 = std::sqrt(1 - w1 * w1) / (1 - w1);
      auto axis = [&](double y) { return w_eval(Functional::W2, 1 / rho, Point(0, y)); };
      const double dt = (axis(t2 + h) - axis(t2 - h)) / (2 * h);
      // tau_2 as a function of w_1 along the arc
      const double dt2_dw1 = (std::sqrt(1 - (w1 + h) * (w1 + h)) / (1 - w1 - h) -
                              std::sqrt(1 - (w1 - h) * (w1 - h)) / (1 - w1 + h)) / (2 * h);
      EXPECT_NEAR(lhs, rho * dt * dt2_dw1, 1e-6 * std::max(1.0, std::abs(lhs)));
      EXPECT_NEAR(std::abs(dt2_dw1), t2 / (1 - w1 * w1), 1e-5 * t2);
    }
}

TEST(OnTrajectory, Classification) {
  EXPECT_EQ(on_trajectory(Point(0, 1.2)), Branch::segment);
  EXPECT_EQ(on_trajectory(Point(0, 1)), Branch::corner);
  EXPECT_EQ(on_trajectory(Point(0.28, 0.96)), Branch::arc);
  EXPECT_EQ(on_trajectory(Point(0.5, std::sqrt(3.0) / 2)), Branch::arc);
  // the arc stops at x = 1/2; 0.6+0.8i is the image of 2i, past the end of the curve
  EXPECT_FALSE(on_trajectory(Point(0.6, 0.8)).has_value());
  EXPECT_FALSE(on_trajectory(Point(0.2, 1.5)).has_value());
  EXPECT_FALSE(on_trajectory(Point(0, 2.0)).has_value());
  EXPECT_FALSE(on_trajectory(Point(-0.6, 0.8)).has_value());
  EXPECT_EQ(on_trajectory(Point(0, 1 + 1e-3), 1e-2), Branch::corner);
}
