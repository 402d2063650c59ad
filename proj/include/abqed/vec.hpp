#pragma once

#include <cmath>
#include <complex>

namespace abqed {

using Complex = std::complex<double>;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    // z component of the 3D cross product of two in-plane vectors
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm2() const { return x * x + y * y; }
    double norm() const { return std::hypot(x, y); }
    Vec2 normalized() const { double n = norm(); return {x / n, y / n}; }
    // azimuthal unit vector z_hat x r_hat
    Vec2 azimuthal() const { double n = norm(); return {-y / n, x / n}; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}
    explicit Vec3(const Vec2& v) : x(v.x), y(v.y), z(0.0) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    Vec2 xy() const { return {x, y}; }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline Vec3 z_hat() { return {0.0, 0.0, 1.0}; }

// complex-amplitude 3-vector (coefficients of mode expansions)
struct CVec3 {
    Complex x{0.0, 0.0};
    Complex y{0.0, 0.0};
    Complex z{0.0, 0.0};

    CVec3() = default;
    CVec3(Complex x_, Complex y_, Complex z_) : x(x_), y(y_), z(z_) {}
    CVec3(const Vec3& v, Complex s) : x(v.x * s), y(v.y * s), z(v.z * s) {}

    CVec3 operator+(const CVec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    CVec3 operator-(const CVec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    CVec3 operator*(Complex s) const { return {x * s, y * s, z * s}; }

    Complex dot(const Vec3& v) const { return x * v.x + y * v.y + z * v.z; }
    CVec3 conj() const { return {std::conj(x), std::conj(y), std::conj(z)}; }
    Vec3 real() const { return {x.real(), y.real(), z.real()}; }
    double norm() const {
        return std::sqrt(std::norm(x) + std::norm(y) + std::norm(z));
    }
};

}  // namespace abqed
