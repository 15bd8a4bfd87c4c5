#ifndef IPOLY_ORACLE_HPP
#define IPOLY_ORACLE_HPP

#include <cstddef>

#include "ipoly/errors.hpp"
#include "ipoly/real.hpp"

namespace ipoly {

/// Arithmetic-geometric mean of two positive reals at the current precision.
Real agm(Real a, Real g);

/// Complete Legendre integral of the first kind, F(pi/2, k) with modulus
/// squared k2, to `digits` correct decimal digits (AGM, quadratic convergence).
Real complete_elliptic_F(const Real& k2, int digits);

/// Phi(phi, I) = integral of 1/sqrt(I - cos t) over [0, phi], I > 1,
/// 0 <= phi <= 2*pi, to `digits` correct decimal digits.
Real phi_integral(const Real& phi, const Real& I, int digits);

/// Measure density h(x) = pi / (Phi(pi, I) * sqrt(I - cos 2*pi*x)) on [0, 1].
Real theta_density(const Real& x, const Real& I, int digits);

/// Tanh-sinh (double-exponential) quadrature over a finite interval.
/// Refines node spacing until the level-to-level difference meets the target;
/// `error_estimate` reports that difference a posteriori.
struct QuadratureResult {
    Real value;
    Real error_estimate;
    int levels;
};

template <typename F>
QuadratureResult tanh_sinh(const F& f, const Real& a, const Real& b, int digits) {
    const Real half = Real(1) / 2;
    const Real mid = (a + b) * half;
    const Real rad = (b - a) * half;
    const Real pi_half = pi_value() * half;
    const Real target = pow(Real(10), -digits);
    const Real term_floor = pow(Real(10), -digits - 8);

    // Truncation point: weights decay like exp(-pi/2 * exp(t)).
    const Real t_max = log(Real(2) * (digits + 10) * log(Real(10)) / pi_half) + 1;

    auto node_sum = [&](const Real& h, bool odd_only) {
        Real sum = 0;
        for (long n = odd_only ? 1 : 0;; n += odd_only ? 2 : 1) {
            const Real t = h * n;
            if (t > t_max) break;
            const Real ch = cosh(t), sh = sinh(t);
            const Real u = pi_half * sh;
            const Real x = tanh(u);
            const Real w = pi_half * ch / (cosh(u) * cosh(u));
            Real term = w * f(mid + rad * x);
            if (n != 0) term += w * f(mid - rad * x);
            sum += term;
            if (n > 4 && abs(term) < term_floor * (1 + abs(sum))) break;
        }
        return sum;
    };

    Real h = 1;
    Real total = node_sum(h, false);
    Real prev = total * h;
    QuadratureResult res{prev, abs(prev), 1};
    for (int level = 2; level <= 16; ++level) {
        h = h * half;
        total += node_sum(h, true);
        const Real cur = total * h;
        res.error_estimate = abs(cur - prev);
        res.value = cur;
        res.levels = level;
        if (res.error_estimate < target * (1 + abs(cur)) && level >= 4) break;
        prev = cur;
    }
    res.value = rad * res.value;
    res.error_estimate = abs(rad) * res.error_estimate;
    return res;
}

}  // namespace ipoly

#endif  // IPOLY_ORACLE_HPP
