#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace skrylov {

using Vector = std::vector<double>;

/// Euclidean norm, scaled against the largest magnitude so that the result
/// is zero exactly when every entry is zero and does not overflow otherwise.
inline double norm2(std::span<const double> v) {
    double amax = 0.0;
    for (double x : v) amax = std::max(amax, std::abs(x));
    if (amax == 0.0) return 0.0;
    double sum = 0.0;
    for (double x : v) {
        const double t = x / amax;
        sum += t * t;
    }
    return amax * std::sqrt(sum);
}

inline double dot(std::span<const double> x, std::span<const double> y) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
    return sum;
}

/// y += a*x
inline void axpy(double a, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

inline void scal(double a, std::span<double> x) {
    for (double& v : x) v *= a;
}

inline Vector zeros(std::size_t n) { return Vector(n, 0.0); }

inline Vector unit(std::size_t n, std::size_t i) {
    Vector e(n, 0.0);
    e[i] = 1.0;
    return e;
}

inline Vector scaled(const Vector& x, double a) {
    Vector y(x);
    scal(a, y);
    return y;
}

inline Vector diff(const Vector& x, const Vector& y) {
    Vector d(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
    return d;
}

inline double distance2(const Vector& x, const Vector& y) {
    double amax = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) amax = std::max(amax, std::abs(x[i] - y[i]));
    if (amax == 0.0) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double t = (x[i] - y[i]) / amax;
        sum += t * t;
    }
    return amax * std::sqrt(sum);
}

}  // namespace skrylov
