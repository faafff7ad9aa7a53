#pragma once

namespace casimir {

/// Real 2x2 matrix, row-major.
struct Matrix2 {
  double a11 = 0.0, a12 = 0.0;
  double a21 = 0.0, a22 = 0.0;

  static constexpr Matrix2 identity() noexcept { return {1.0, 0.0, 0.0, 1.0}; }

  constexpr double trace() const noexcept { return a11 + a22; }
  constexpr double det() const noexcept { return a11 * a22 - a12 * a21; }

  friend constexpr Matrix2 operator*(const Matrix2& x, const Matrix2& y) noexcept {
    return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
            x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
  }
  friend constexpr Matrix2 operator-(const Matrix2& x) noexcept {
    return {-x.a11, -x.a12, -x.a21, -x.a22};
  }
  friend constexpr bool operator==(const Matrix2&, const Matrix2&) = default;
};

}  // namespace casimir
