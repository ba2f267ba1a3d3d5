#pragma once

// Financial vector fields: the 3D interest/investment/price system, the 4D
// extension with market confidence w, and the 5D extension with ethics risk u.
// Also the discretized 5D map and analytic Jacobians for tangent propagation.

#include <stdexcept>

#include "cfin/conformable.hpp"
#include "cfin/linalg.hpp"

namespace cfin {

using State3 = State<3>;
using State4 = State<4>;
using State5 = State<5>;

enum class Component { x = 0, y = 1, z = 2, w = 3, u = 4 };

struct FinanceParams {
  double a = 0.0;  // saving amount
  double b = 0.0;  // cost per investment
  double c = 0.0;  // demand elasticity
  double d = 0.0;  // confidence impact on w
  double k = 0.0;  // confidence/ethics coupling
  double p = 0.0;  // ethics-risk weight
  double m1 = 0.0, m2 = 0.0, m3 = 0.0;  // 4D confidence impact factors

  void validate() const {
    if (a < 0.0 || b < 0.0 || c < 0.0)
      throw std::invalid_argument("FinanceParams: a, b, c must be non-negative");
  }
};

/// The shared coupling k (w - p u) of the 5D system.
inline double ethics_coupling(const State5& s, const FinanceParams& q) { return q.k * (s[3] - q.p * s[4]); }

inline State3 field_3d(const State3& s, const FinanceParams& q) {
  const auto [x, y, z] = s;
  return {z + (y - q.a) * x, 1.0 - q.b * y - x * x, -x - q.c * z};
}

inline State4 field_4d(const State4& s, const FinanceParams& q) {
  const auto [x, y, z, w] = s;
  return {z + (y - q.a) * x + q.m1 * w, 1.0 - q.b * y - x * x + q.m2 * w, -x - q.c * z + q.m3 * w,
          -x * y * z};
}

inline State5 field_5d(const State5& s, const FinanceParams& q) {
  const auto [x, y, z, w, u] = s;
  const double g = ethics_coupling(s, q);
  return {z + (y - q.a) * x + g, 1.0 - q.b * y - x * x + g, -x - q.c * z + g, -q.d * x * y * z, g};
}

inline Matrix<3> jacobian_3d(const State3& s, const FinanceParams& q) {
  const auto [x, y, z] = s;
  (void)z;
  return {{{y - q.a, x, 1.0}, {-2.0 * x, -q.b, 0.0}, {-1.0, 0.0, -q.c}}};
}

inline Matrix<4> jacobian_4d(const State4& s, const FinanceParams& q) {
  const auto [x, y, z, w] = s;
  (void)w;
  return {{{y - q.a, x, 1.0, q.m1},
           {-2.0 * x, -q.b, 0.0, q.m2},
           {-1.0, 0.0, -q.c, q.m3},
           {-y * z, -x * z, -x * y, 0.0}}};
}

inline Matrix<5> jacobian_5d(const State5& s, const FinanceParams& q) {
  const auto [x, y, z, w, u] = s;
  (void)w;
  (void)u;
  const double kp = -q.k * q.p;
  return {{{y - q.a, x, 1.0, q.k, kp},
           {-2.0 * x, -q.b, 0.0, q.k, kp},
           {-1.0, 0.0, -q.c, q.k, kp},
           {-q.d * y * z, -q.d * x * z, -q.d * x * y, 0.0, 0.0},
           {0.0, 0.0, 0.0, q.k, kp}}};
}

/// Tangent map of x -> x + coeffs * f(x):  I + diag(coeffs) * Df(x).
template <std::size_t N>
Matrix<N> euler_map_jacobian(const Matrix<N>& field_jacobian, const StepCoefficients<N>& coeffs) {
  Matrix<N> m = field_jacobian;
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) m[i][j] *= coeffs[i];
    m[i][i] += 1.0;
  }
  return m;
}

inline State5 discrete_map_5d(const State5& s, const FinanceParams& q, const StepCoefficients<5>& coeffs) {
  return euler_step([&q](const State5& v) { return field_5d(v, q); }, s, coeffs);
}

inline Matrix<5> map_jacobian_5d(const State5& s, const FinanceParams& q, const StepCoefficients<5>& coeffs) {
  return euler_map_jacobian(jacobian_5d(s, q), coeffs);
}

/// A field plus its Jacobian, bundled so generic code can build the discretized
/// map and its tangent map for any of the models.
template <std::size_t N, class FieldFn, class JacobianFn>
struct VectorField {
  static constexpr std::size_t dimension = N;
  FieldFn field;
  JacobianFn jacobian;

  State<N> operator()(const State<N>& s) const { return field(s); }
};

template <std::size_t N, class FieldFn, class JacobianFn>
VectorField<N, FieldFn, JacobianFn> make_field(FieldFn f, JacobianFn j) {
  return {std::move(f), std::move(j)};
}

inline auto finance_field_3d(const FinanceParams& q) {
  return make_field<3>([q](const State3& s) { return field_3d(s, q); },
                       [q](const State3& s) { return jacobian_3d(s, q); });
}

inline auto finance_field_4d(const FinanceParams& q) {
  return make_field<4>([q](const State4& s) { return field_4d(s, q); },
                       [q](const State4& s) { return jacobian_4d(s, q); });
}

inline auto finance_field_5d(const FinanceParams& q) {
  return make_field<5>([q](const State5& s) { return field_5d(s, q); },
                       [q](const State5& s) { return jacobian_5d(s, q); });
}

/// Debug model: f == 0, so the discretized map is the identity.
template <std::size_t N>
auto zero_field() {
  return make_field<N>([](const State<N>&) { return State<N>{}; }, [](const State<N>&) { return Matrix<N>{}; });
}

/// The discretized map and its tangent map for a bundled field.
template <class Field>
auto discrete_map(const Field& f, const StepCoefficients<Field::dimension>& coeffs) {
  return [f, coeffs](const State<Field::dimension>& s) { return euler_step(f.field, s, coeffs); };
}

template <class Field>
auto discrete_map_jacobian(const Field& f, const StepCoefficients<Field::dimension>& coeffs) {
  return [f, coeffs](const State<Field::dimension>& s) { return euler_map_jacobian(f.jacobian(s), coeffs); };
}

}  // namespace cfin
