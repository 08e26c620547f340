#pragma once

#include <array>
#include <cstddef>
#include <string>

namespace hgfs {

/// Vector in R^4_1. Components are indexed 0..3; component 0 is the timelike one.
class Vec4 {
public:
    Vec4() = default;
    /// Throws std::domain_error on NaN or infinite input.
    Vec4(double x1, double x2, double x3, double x4);

    double operator[](std::size_t i) const { return c_[i]; }
    const std::array<double, 4>& data() const { return c_; }

    static Vec4 zero() { return {}; }
    static Vec4 basis(std::size_t i);

private:
    std::array<double, 4> c_{0.0, 0.0, 0.0, 0.0};
};

/// Vector in R^3. Used both for Euclidean R^3 (Poincare disc) and for R^3_1,
/// depending on which product is applied.
class Vec3 {
public:
    Vec3() = default;
    Vec3(double x1, double x2, double x3);

    double operator[](std::size_t i) const { return c_[i]; }
    const std::array<double, 3>& data() const { return c_; }

    static Vec3 zero() { return {}; }
    static Vec3 basis(std::size_t i);

private:
    std::array<double, 3> c_{0.0, 0.0, 0.0};
};

Vec4 operator+(const Vec4& a, const Vec4& b);
Vec4 operator-(const Vec4& a, const Vec4& b);
Vec4 operator-(const Vec4& a);
Vec4 operator*(double s, const Vec4& a);
Vec4 operator*(const Vec4& a, double s);
Vec4 operator/(const Vec4& a, double s);

Vec3 operator+(const Vec3& a, const Vec3& b);
Vec3 operator-(const Vec3& a, const Vec3& b);
Vec3 operator-(const Vec3& a);
Vec3 operator*(double s, const Vec3& a);
Vec3 operator*(const Vec3& a, double s);
Vec3 operator/(const Vec3& a, double s);

/// Largest absolute componentwise difference.
double max_abs_diff(const Vec4& a, const Vec4& b);
double max_abs_diff(const Vec3& a, const Vec3& b);
double max_abs(const Vec4& a);
double max_abs(const Vec3& a);

/// Pseudo inner product of signature (-,+,+,+).
double dot4(const Vec4& a, const Vec4& b);
/// Pseudo inner product of signature (-,+,+).
double dot_r31(const Vec3& a, const Vec3& b);
/// Euclidean products on R^3.
double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);

/// Determinants with the arguments as rows.
double det3(const Vec3& a, const Vec3& b, const Vec3& c);
double det4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d);

/// Pseudo vector product on R^4_1: dot4(x, wedge3(a, b, c)) == det4(x, a, b, c).
Vec4 wedge3(const Vec4& a, const Vec4& b, const Vec4& c);
/// Pseudo vector product on R^3_1: dot_r31(x, wedge2_r31(a, b)) == det3(x, a, b).
Vec3 wedge2_r31(const Vec3& a, const Vec3& b);

/// sqrt(|<x,x>|)
double pseudo_norm(const Vec4& a);
double pseudo_norm_r31(const Vec3& a);

enum class Causal { spacelike, timelike, lightlike };

/// <x,x> > tol spacelike, < -tol timelike, otherwise lightlike (the zero vector included).
Causal causal_character(const Vec4& a, double tol = 1e-10);
Causal causal_character_r31(const Vec3& a, double tol = 1e-10);

std::string to_string(Causal c);

}  // namespace hgfs
