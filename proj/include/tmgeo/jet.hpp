#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace tmgeo {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Second-order forward-mode jet: value, gradient and Hessian with respect to
// a fixed set of m independent variables.  Arithmetic propagates both
// derivative orders, so evaluating a scalar expression on Jet2 inputs yields
// the expression's value, gradient and Hessian in one pass.
struct Jet2 {
    double v = 0.0;
    Vec g;
    Mat h;

    Jet2() = default;
    Jet2(double value, int m) : v(value), g(Vec::Zero(m)), h(Mat::Zero(m, m)) {}

    static Jet2 constant(double c, int m) { return Jet2(c, m); }

    static Jet2 variable(double x, int index, int m) {
        Jet2 j(x, m);
        j.g(index) = 1.0;
        return j;
    }

    int dim() const { return static_cast<int>(g.size()); }
};

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
    Jet2 r = a;
    r.v += b.v;
    r.g += b.g;
    r.h += b.h;
    return r;
}

inline Jet2 operator-(const Jet2& a, const Jet2& b) {
    Jet2 r = a;
    r.v -= b.v;
    r.g -= b.g;
    r.h -= b.h;
    return r;
}

inline Jet2 operator-(const Jet2& a) {
    Jet2 r = a;
    r.v = -r.v;
    r.g = -r.g;
    r.h = -r.h;
    return r;
}

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
    Jet2 r(a.v * b.v, a.dim());
    r.g = a.v * b.g + b.v * a.g;
    r.h = a.v * b.h + b.v * a.h + a.g * b.g.transpose() + b.g * a.g.transpose();
    return r;
}

inline Jet2 operator*(double s, const Jet2& a) {
    Jet2 r = a;
    r.v *= s;
    r.g *= s;
    r.h *= s;
    return r;
}

inline Jet2 operator*(const Jet2& a, double s) { return s * a; }

// Chain rule for a smooth univariate function applied to a jet:
// needs f(v), f'(v), f''(v).
inline Jet2 apply_univariate(const Jet2& a, double f0, double f1, double f2) {
    Jet2 r(f0, a.dim());
    r.g = f1 * a.g;
    r.h = f1 * a.h + f2 * a.g * a.g.transpose();
    return r;
}

inline Jet2 inv(const Jet2& a) {
    double w = 1.0 / a.v;
    return apply_univariate(a, w, -w * w, 2.0 * w * w * w);
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * inv(b); }
inline Jet2 operator/(const Jet2& a, double s) { return a * (1.0 / s); }

inline Jet2 sin(const Jet2& a) { return apply_univariate(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v)); }
inline Jet2 cos(const Jet2& a) { return apply_univariate(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v)); }

inline Jet2 tan(const Jet2& a) {
    double t = std::tan(a.v);
    double s = 1.0 + t * t;
    return apply_univariate(a, t, s, 2.0 * t * s);
}

inline Jet2 exp(const Jet2& a) {
    double e = std::exp(a.v);
    return apply_univariate(a, e, e, e);
}

inline Jet2 log(const Jet2& a) {
    double w = 1.0 / a.v;
    return apply_univariate(a, std::log(a.v), w, -w * w);
}

inline Jet2 sqrt(const Jet2& a) {
    double s = std::sqrt(a.v);
    return apply_univariate(a, s, 0.5 / s, -0.25 / (s * a.v));
}

inline Jet2 sinh(const Jet2& a) { return apply_univariate(a, std::sinh(a.v), std::cosh(a.v), std::sinh(a.v)); }
inline Jet2 cosh(const Jet2& a) { return apply_univariate(a, std::cosh(a.v), std::sinh(a.v), std::cosh(a.v)); }

inline Jet2 tanh(const Jet2& a) {
    double t = std::tanh(a.v);
    double s = 1.0 - t * t;
    return apply_univariate(a, t, s, -2.0 * t * s);
}

inline Jet2 atan(const Jet2& a) {
    double d = 1.0 + a.v * a.v;
    return apply_univariate(a, std::atan(a.v), 1.0 / d, -2.0 * a.v / (d * d));
}

// Integer power by direct chain rule; valid for v = 0 when n >= 0.
inline Jet2 powi(const Jet2& a, long long n) {
    if (n == 0) return Jet2::constant(1.0, a.dim());
    if (n == 1) return a;
    double f0 = std::pow(a.v, static_cast<double>(n));
    double f1 = static_cast<double>(n) * std::pow(a.v, static_cast<double>(n - 1));
    double f2 = static_cast<double>(n) * static_cast<double>(n - 1) * std::pow(a.v, static_cast<double>(n - 2));
    return apply_univariate(a, f0, f1, f2);
}

} // namespace tmgeo
