#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace cmclab {

/// Plain 4-component coordinate vector. Euclidean points use the first three
/// slots and keep the last one at zero; the curved models use all four.
struct Vec4 {
  std::array<double, 4> c{};

  constexpr Vec4() = default;
  constexpr Vec4(double x0, double x1, double x2, double x3 = 0.0) : c{x0, x1, x2, x3} {}

  constexpr double& operator[](std::size_t i) { return c[i]; }
  constexpr double operator[](std::size_t i) const { return c[i]; }

  constexpr Vec4& operator+=(const Vec4& o) {
    for (std::size_t i = 0; i < 4; ++i) c[i] += o.c[i];
    return *this;
  }
  constexpr Vec4& operator-=(const Vec4& o) {
    for (std::size_t i = 0; i < 4; ++i) c[i] -= o.c[i];
    return *this;
  }
  constexpr Vec4& operator*=(double s) {
    for (auto& x : c) x *= s;
    return *this;
  }

  friend constexpr Vec4 operator+(Vec4 a, const Vec4& b) { return a += b; }
  friend constexpr Vec4 operator-(Vec4 a, const Vec4& b) { return a -= b; }
  friend constexpr Vec4 operator-(Vec4 a) { return a *= -1.0; }
  friend constexpr Vec4 operator*(Vec4 a, double s) { return a *= s; }
  friend constexpr Vec4 operator*(double s, Vec4 a) { return a *= s; }
  friend constexpr Vec4 operator/(Vec4 a, double s) { return a *= (1.0 / s); }
  friend constexpr bool operator==(const Vec4&, const Vec4&) = default;
};

/// Plain Euclidean dot product over all four slots.
constexpr double dot(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

inline double euclidean_norm(const Vec4& a) { return std::sqrt(dot(a, a)); }

}  // namespace cmclab
