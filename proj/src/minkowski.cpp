#include "hgfs/minkowski.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hgfs {

namespace {

bool all_finite(std::initializer_list<double> xs) {
    return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

double det3_raw(double a0, double a1, double a2, double b0, double b1, double b2, double c0,
                double c1, double c2) {
    return a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) + a2 * (b0 * c1 - b1 * c0);
}

// Minor of the 3x4 matrix with rows a, b, c after deleting column j.
double minor3(const Vec4& a, const Vec4& b, const Vec4& c, std::size_t j) {
    std::array<std::size_t, 3> k{};
    std::size_t n = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        if (i != j) k[n++] = i;
    }
    return det3_raw(a[k[0]], a[k[1]], a[k[2]], b[k[0]], b[k[1]], b[k[2]], c[k[0]], c[k[1]],
                    c[k[2]]);
}

}  // namespace

Vec4::Vec4(double x1, double x2, double x3, double x4) : c_{x1, x2, x3, x4} {
    if (!all_finite({x1, x2, x3, x4})) throw std::domain_error("Vec4: non-finite component");
}

Vec4 Vec4::basis(std::size_t i) {
    if (i >= 4) throw std::out_of_range("Vec4::basis index");
    std::array<double, 4> c{0, 0, 0, 0};
    c[i] = 1.0;
    return {c[0], c[1], c[2], c[3]};
}

Vec3::Vec3(double x1, double x2, double x3) : c_{x1, x2, x3} {
    if (!all_finite({x1, x2, x3})) throw std::domain_error("Vec3: non-finite component");
}

Vec3 Vec3::basis(std::size_t i) {
    if (i >= 3) throw std::out_of_range("Vec3::basis index");
    std::array<double, 3> c{0, 0, 0};
    c[i] = 1.0;
    return {c[0], c[1], c[2]};
}

Vec4 operator+(const Vec4& a, const Vec4& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
Vec4 operator-(const Vec4& a, const Vec4& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}
Vec4 operator-(const Vec4& a) { return {-a[0], -a[1], -a[2], -a[3]}; }
Vec4 operator*(double s, const Vec4& a) { return {s * a[0], s * a[1], s * a[2], s * a[3]}; }
Vec4 operator*(const Vec4& a, double s) { return s * a; }
Vec4 operator/(const Vec4& a, double s) { return {a[0] / s, a[1] / s, a[2] / s, a[3] / s}; }

Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 operator-(const Vec3& a) { return {-a[0], -a[1], -a[2]}; }
Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
Vec3 operator*(const Vec3& a, double s) { return s * a; }
Vec3 operator/(const Vec3& a, double s) { return {a[0] / s, a[1] / s, a[2] / s}; }

double max_abs_diff(const Vec4& a, const Vec4& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < 4; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}
double max_abs_diff(const Vec3& a, const Vec3& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < 3; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}
double max_abs(const Vec4& a) { return max_abs_diff(a, Vec4{}); }
double max_abs(const Vec3& a) { return max_abs_diff(a, Vec3{}); }

double dot4(const Vec4& a, const Vec4& b) {
    return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}
double dot_r31(const Vec3& a, const Vec3& b) { return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

double det3(const Vec3& a, const Vec3& b, const Vec3& c) {
    return det3_raw(a[0], a[1], a[2], b[0], b[1], b[2], c[0], c[1], c[2]);
}

double det4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d) {
    // Laplace expansion along the first row.
    double s = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        s += sign * a[j] * minor3(b, c, d, j);
    }
    return s;
}

Vec4 wedge3(const Vec4& a, const Vec4& b, const Vec4& c) {
    // Cofactors of the first row of det(x; a; b; c); the timelike slot carries the metric sign.
    const double c0 = minor3(a, b, c, 0);
    const double c1 = -minor3(a, b, c, 1);
    const double c2 = minor3(a, b, c, 2);
    const double c3 = -minor3(a, b, c, 3);
    return {-c0, c1, c2, c3};
}

Vec3 wedge2_r31(const Vec3& a, const Vec3& b) {
    const double c0 = a[1] * b[2] - a[2] * b[1];
    const double c1 = -(a[0] * b[2] - a[2] * b[0]);
    const double c2 = a[0] * b[1] - a[1] * b[0];
    return {-c0, c1, c2};
}

double pseudo_norm(const Vec4& a) { return std::sqrt(std::abs(dot4(a, a))); }
double pseudo_norm_r31(const Vec3& a) { return std::sqrt(std::abs(dot_r31(a, a))); }

namespace {
Causal classify_square(double q, double tol) {
    if (q > tol) return Causal::spacelike;
    if (q < -tol) return Causal::timelike;
    return Causal::lightlike;
}
}  // namespace

Causal causal_character(const Vec4& a, double tol) { return classify_square(dot4(a, a), tol); }
Causal causal_character_r31(const Vec3& a, double tol) {
    return classify_square(dot_r31(a, a), tol);
}

std::string to_string(Causal c) {
    switch (c) {
        case Causal::spacelike: return "spacelike";
        case Causal::timelike: return "timelike";
        case Causal::lightlike: return "lightlike";
    }
    return "unknown";
}

}  // namespace hgfs
