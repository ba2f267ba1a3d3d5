#include <cmath>
#include <cstddef>
#include <random>

#include <gtest/gtest.h>

#include "cfin/finance.hpp"
#include "oracles.hpp"

namespace cfin {
namespace {

FinanceParams reference_params() {
  FinanceParams q;
  q.a = 0.8, q.b = 0.6, q.c = 1.0, q.d = 2.0, q.k = 2.0, q.p = 1.0;
  return q;
}

template <std::size_t N>
void expect_state_near(const State<N>& got, const State<N>& want, double tol) {
  for (std::size_t i = 0; i < N; ++i) EXPECT_NEAR(got[i], want[i], tol) << "component " << i;
}

TEST(FinanceParams, RejectsNegativeCoefficients) {
  FinanceParams q;
  q.b = -0.1;
  EXPECT_THROW(q.validate(), std::invalid_argument);
  q.b = 0.0;
  q.p = -3.0;  // p is unrestricted
  EXPECT_NO_THROW(q.validate());
}

TEST(Field3d, Examples) {
  FinanceParams q;
  q.a = 0.3, q.b = 0.7, q.c = 1.9;
  expect_state_near(field_3d({0, 0, 0}, q), State3{0, 1, 0}, 0.0);
  expect_state_near(field_3d({1, q.a, 0}, q), State3{0, 1 - q.a * q.b - 1, -1}, 1e-15);
  expect_state_near(field_3d({1, 1, 1}, FinanceParams{}), State3{2, 0, -1}, 0.0);
}

TEST(Field4d, Examples) {
  FinanceParams q = reference_params();
  expect_state_near(field_4d({0, 0, 0, 0}, q), State4{0, 1, 0, 0}, 0.0);
  FinanceParams m;
  m.m1 = m.m2 = m.m3 = 1.0;
  expect_state_near(field_4d({1, 1, 1, 1}, m), State4{3, 1, 0, -1}, 0.0);
}

TEST(Field5d, ReferencePoint) {
  expect_state_near(field_5d({0.4, 0.6, 0.8, 0.3, 0.4}, reference_params()), State5{0.52, 0.28, -1.4, -0.384, -0.2},
                    1e-15);
  expect_state_near(field_5d({0, 0, 0, 0, 0}, reference_params()), State5{0, 1, 0, 0, 0}, 0.0);
}

TEST(Field5d, OffsetConfidenceDropsCoupling) {
  FinanceParams q = reference_params();
  q.p = 1.5;
  const State5 s{0.3, -0.2, 0.9, 1.5 * 0.8, 0.8};
  const auto f = field_5d(s, q);
  FinanceParams no_k = q;
  no_k.k = 0.0;
  EXPECT_EQ(f, field_5d(s, no_k));
  EXPECT_EQ(f[4], 0.0);
}

TEST(Field5d, CouplingSharedAcrossComponents) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  FinanceParams q = reference_params();
  for (int i = 0; i < 50; ++i) {
    const State5 s{u(rng), u(rng), u(rng), u(rng), u(rng)};
    const auto f = field_5d(s, q);
    const double g = f[4];
    EXPECT_EQ(f[0], s[2] + (s[1] - q.a) * s[0] + g);
    EXPECT_EQ(f[1], 1.0 - q.b * s[1] - s[0] * s[0] + g);
    EXPECT_EQ(f[2], -s[0] - q.c * s[2] + g);
  }
}

TEST(Fields, ReductionChain) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  FinanceParams q5 = reference_params();
  q5.k = 0.0;
  q5.d = 1.0;
  FinanceParams q4 = q5;  // m1 = m2 = m3 = 0
  for (int i = 0; i < 100; ++i) {
    const State5 s{u(rng), u(rng), u(rng), u(rng), u(rng)};
    const auto f5 = field_5d(s, q5);
    const auto f4 = field_4d({s[0], s[1], s[2], s[3]}, q4);
    const auto f3 = field_3d({s[0], s[1], s[2]}, q4);
    for (std::size_t c = 0; c < 4; ++c) EXPECT_EQ(f5[c], f4[c]);
    for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(f4[c], f3[c]);
    EXPECT_EQ(f4[3], -s[0] * s[1] * s[2]);
  }
}

TEST(Jacobian5d, AtOrigin) {
  const auto q = reference_params();
  const auto j = jacobian_5d({0, 0, 0, 0, 0}, q);
  for (double v : j[3]) EXPECT_EQ(v, 0.0);
  const State5 row1{-q.a, 0, 1, q.k, -q.k * q.p};
  EXPECT_EQ(j[0], row1);
}

TEST(Jacobian5d, LastRowIndependentOfState) {
  const auto q = reference_params();
  EXPECT_EQ(jacobian_5d({1, 2, 3, 4, 5}, q)[4], jacobian_5d({-7, 0.1, 9, 0, 2}, q)[4]);
}

template <std::size_t N>
double max_relative_error(const Matrix<N>& a, const Matrix<N>& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) e = std::max(e, std::fabs(a[i][j] - b[i][j]) / std::max(1.0, std::fabs(b[i][j])));
  return e;
}

TEST(Jacobians, MatchFiniteDifferences) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  FinanceParams q = reference_params();
  q.m1 = 0.4, q.m2 = -0.3, q.m3 = 0.7;
  const StepCoefficients<5> coeffs(OrderVector<5>({0.3, 0.5, 0.6, 0.24, 0.24}), 0.002);
  for (int i = 0; i < 100; ++i) {
    const State5 s{u(rng), u(rng), u(rng), u(rng), u(rng)};
    EXPECT_LE(max_relative_error(jacobian_5d(s, q), oracle::fd_jacobian<5>([&](const State5& v) { return field_5d(v, q); }, s)),
              1e-6);
    EXPECT_LE(max_relative_error(map_jacobian_5d(s, q, coeffs),
                                 oracle::fd_jacobian<5>([&](const State5& v) { return discrete_map_5d(v, q, coeffs); }, s)),
              1e-6);
    const State4 s4{s[0], s[1], s[2], s[3]};
    EXPECT_LE(max_relative_error(jacobian_4d(s4, q), oracle::fd_jacobian<4>([&](const State4& v) { return field_4d(v, q); }, s4)),
              1e-6);
    const State3 s3{s[0], s[1], s[2]};
    EXPECT_LE(max_relative_error(jacobian_3d(s3, q), oracle::fd_jacobian<3>([&](const State3& v) { return field_3d(v, q); }, s3)),
              1e-6);
  }
}

TEST(DiscreteMap5d, ConsistentWithField) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const auto q = reference_params();
  const StepCoefficients<5> coeffs(OrderVector<5>({0.3, 0.5, 0.6, 0.24, 0.3}), 0.002);
  for (int i = 0; i < 100; ++i) {
    const State5 s{u(rng), u(rng), u(rng), u(rng), u(rng)};
    const auto next = discrete_map_5d(s, q, coeffs);
    const auto f = field_5d(s, q);
    const auto via_step = euler_step([&](const State5& v) { return field_5d(v, q); }, s, coeffs);
    EXPECT_EQ(next, via_step);
    for (std::size_t c = 0; c < 5; ++c) EXPECT_EQ(next[c], s[c] + coeffs[c] * f[c]);
  }
}

TEST(DiscreteMap5d, ReferenceStep) {
  const StepCoefficients<5> coeffs(OrderVector<5>({0.3, 0.5, 0.6, 0.24, 0.24}), 0.002);
  const auto x1 = discrete_map_5d({0.4, 0.6, 0.8, 0.3, 0.4}, reference_params(), coeffs);
  expect_state_near(x1,
                    State5{0.66865262450837843805, 0.62504396134799764460, 0.74394752641419987578,
                           -0.060053619929094255040, 0.21247207295359674217},
                    1e-15);
}

TEST(DiscreteMap5d, UnitOrderIsClassicalEuler) {
  const auto q = reference_params();
  const double h = 0.002;
  const StepCoefficients<5> coeffs(OrderVector<5>::uniform(1.0), h);
  const State5 s{0.4, 0.6, 0.8, 0.3, 0.4};
  const auto f = field_5d(s, q);
  const auto next = discrete_map_5d(s, q, coeffs);
  for (std::size_t c = 0; c < 5; ++c) EXPECT_EQ(next[c], s[c] + h * f[c]);
}

TEST(DiscreteMap5d, FieldFixedPointIsMapFixedPoint) {
  // With a=0, b=1, c=1, k=0: (0, 1, 0, w, u) zeroes every component of the field.
  FinanceParams q;
  q.b = 1.0, q.c = 1.0, q.d = 2.0;
  const State5 s{0.0, 1.0, 0.0, 0.25, -0.5};
  const StepCoefficients<5> coeffs(OrderVector<5>({0.3, 0.5, 0.6, 0.24, 0.7}), 0.05);
  EXPECT_EQ(field_5d(s, q), State5{});
  EXPECT_EQ(discrete_map_5d(s, q, coeffs), s);
}

TEST(MapJacobian5d, UnitOrderRowScaling) {
  const auto q = reference_params();
  const double h = 0.01;
  const State5 s{0.1, -0.4, 0.9, 2.0, 1.0};
  const auto m = map_jacobian_5d(s, q, StepCoefficients<5>(OrderVector<5>::uniform(1.0), h));
  const auto j = jacobian_5d(s, q);
  for (std::size_t r = 0; r < 5; ++r)
    for (std::size_t c = 0; c < 5; ++c) EXPECT_NEAR(m[r][c] - (r == c ? 1.0 : 0.0), h * j[r][c], 1e-15);
}

TEST(MapJacobian, ZeroFieldJacobianGivesIdentity) {
  const StepCoefficients<4> coeffs(OrderVector<4>({0.2, 0.4, 0.6, 0.8}), 0.1);
  EXPECT_EQ(euler_map_jacobian(Matrix<4>{}, coeffs), identity<4>());
}

TEST(MapJacobian5d, TranslationDirectionIsInvariant) {
  // Every right-hand side depends on (w, u) only through w - p u, so (0,0,0,p,1)
  // is mapped to itself by the tangent map at every state.
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  FinanceParams q = reference_params();
  for (double p : {1.0, 1.5, 2.0}) {
    q.p = p;
    const StepCoefficients<5> coeffs(OrderVector<5>({0.3, 0.5, 0.6, 0.24, 0.24}), 0.002);
    const State5 v{0, 0, 0, p, 1};
    for (int i = 0; i < 20; ++i) {
      const State5 s{u(rng), u(rng), u(rng), u(rng), u(rng)};
      expect_state_near(multiply(map_jacobian_5d(s, q, coeffs), v), v, 1e-15);
    }
  }
}

}  // namespace
}  // namespace cfin
