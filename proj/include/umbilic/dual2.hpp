#ifndef UMBILIC_DUAL2_HPP
#define UMBILIC_DUAL2_HPP

#include <cmath>

#include "umbilic/errors.hpp"

namespace umb {

// Forward-mode dual number carrying value, gradient and Hessian with respect
// to the two surface parameters (u, v). Only the upper triangle of the
// Hessian is stored, so symmetry holds by construction.
struct Dual2 {
    double v = 0.0;    // value
    double du = 0.0;   // d/du
    double dv = 0.0;   // d/dv
    double duu = 0.0;  // d2/du2
    double duv = 0.0;  // d2/dudv
    double dvv = 0.0;  // d2/dv2

    Dual2() = default;
    Dual2(double value) : v(value) {}
    Dual2(double value, double du_, double dv_, double duu_, double duv_, double dvv_)
        : v(value), du(du_), dv(dv_), duu(duu_), duv(duv_), dvv(dvv_) {}

    static Dual2 variable_u(double value) { return {value, 1.0, 0.0, 0.0, 0.0, 0.0}; }
    static Dual2 variable_v(double value) { return {value, 0.0, 1.0, 0.0, 0.0, 0.0}; }

    Dual2 operator-() const { return {-v, -du, -dv, -duu, -duv, -dvv}; }
};

inline Dual2 operator+(const Dual2& a, const Dual2& b) {
    return {a.v + b.v, a.du + b.du, a.dv + b.dv, a.duu + b.duu, a.duv + b.duv, a.dvv + b.dvv};
}

inline Dual2 operator-(const Dual2& a, const Dual2& b) {
    return {a.v - b.v, a.du - b.du, a.dv - b.dv, a.duu - b.duu, a.duv - b.duv, a.dvv - b.dvv};
}

inline Dual2 operator*(const Dual2& a, const Dual2& b) {
    return {a.v * b.v,
            a.du * b.v + a.v * b.du,
            a.dv * b.v + a.v * b.dv,
            a.duu * b.v + 2.0 * a.du * b.du + a.v * b.duu,
            a.duv * b.v + a.du * b.dv + a.dv * b.du + a.v * b.duv,
            a.dvv * b.v + 2.0 * a.dv * b.dv + a.v * b.dvv};
}

// Composition with a scalar function given its value and first two
// derivatives at a.v.
inline Dual2 chain(const Dual2& a, double f, double fp, double fpp) {
    return {f,
            fp * a.du,
            fp * a.dv,
            fpp * a.du * a.du + fp * a.duu,
            fpp * a.du * a.dv + fp * a.duv,
            fpp * a.dv * a.dv + fp * a.dvv};
}

inline Dual2 recip(const Dual2& a) {
    if (a.v == 0.0) throw EvalError("division by zero");
    const double inv = 1.0 / a.v;
    return chain(a, inv, -inv * inv, 2.0 * inv * inv * inv);
}

inline Dual2 operator/(const Dual2& a, const Dual2& b) { return a * recip(b); }

inline Dual2 operator+(double s, const Dual2& a) { return Dual2(s) + a; }
inline Dual2 operator+(const Dual2& a, double s) { return a + Dual2(s); }
inline Dual2 operator-(double s, const Dual2& a) { return Dual2(s) - a; }
inline Dual2 operator-(const Dual2& a, double s) { return a - Dual2(s); }
inline Dual2 operator*(double s, const Dual2& a) {
    return {s * a.v, s * a.du, s * a.dv, s * a.duu, s * a.duv, s * a.dvv};
}
inline Dual2 operator*(const Dual2& a, double s) { return s * a; }
inline Dual2 operator/(const Dual2& a, double s) { return a * (1.0 / s); }
inline Dual2 operator/(double s, const Dual2& a) { return s * recip(a); }

inline Dual2 sin(const Dual2& a) {
    const double s = std::sin(a.v);
    return chain(a, s, std::cos(a.v), -s);
}

inline Dual2 cos(const Dual2& a) {
    const double c = std::cos(a.v);
    return chain(a, c, -std::sin(a.v), -c);
}

inline Dual2 exp(const Dual2& a) {
    const double e = std::exp(a.v);
    return chain(a, e, e, e);
}

inline Dual2 log(const Dual2& a) {
    if (a.v <= 0.0) throw EvalError("log of a non-positive value");
    const double inv = 1.0 / a.v;
    return chain(a, std::log(a.v), inv, -inv * inv);
}

inline Dual2 sqrt(const Dual2& a) {
    if (a.v < 0.0) throw EvalError("sqrt of a negative value");
    if (a.v == 0.0) throw EvalError("sqrt derivative at zero");
    const double r = std::sqrt(a.v);
    return chain(a, r, 0.5 / r, -0.25 / (r * a.v));
}

// Two-argument arctangent with full second-order propagation.
// theta_i = (x y_i - y x_i) / r^2,
// theta_ij = d_j theta_i, expanded by the quotient rule.
inline Dual2 atan2(const Dual2& y, const Dual2& x) {
    const double r2 = x.v * x.v + y.v * y.v;
    if (r2 == 0.0) throw EvalError("atan2 at the origin");

    const double inv_r2 = 1.0 / r2;
    const double gu = (x.v * y.du - y.v * x.du) * inv_r2;
    const double gv = (x.v * y.dv - y.v * x.dv) * inv_r2;

    auto second = [&](double xa, double ya, double xb, double yb, double xab, double yab) {
        const double num = xb * ya + x.v * yab - yb * xa - y.v * xab;
        const double r2b = 2.0 * (x.v * xb + y.v * yb);
        return num * inv_r2 - (x.v * ya - y.v * xa) * r2b * inv_r2 * inv_r2;
    };

    return {std::atan2(y.v, x.v),
            gu,
            gv,
            second(x.du, y.du, x.du, y.du, x.duu, y.duu),
            second(x.du, y.du, x.dv, y.dv, x.duv, y.duv),
            second(x.dv, y.dv, x.dv, y.dv, x.dvv, y.dvv)};
}

// Integer power by repeated multiplication; keeps polynomial jets exact.
inline Dual2 ipow(const Dual2& a, long long n) {
    if (n < 0) return recip(ipow(a, -n));
    Dual2 r(1.0);
    for (long long i = 0; i < n; ++i) r = r * a;
    return r;
}

inline double ipow(double a, long long n) {
    if (n < 0) {
        if (a == 0.0) throw EvalError("division by zero");
        return 1.0 / ipow(a, -n);
    }
    double r = 1.0;
    for (long long i = 0; i < n; ++i) r *= a;
    return r;
}

inline double recip(double a) {
    if (a == 0.0) throw EvalError("division by zero");
    return 1.0 / a;
}

}  // namespace umb

#endif
