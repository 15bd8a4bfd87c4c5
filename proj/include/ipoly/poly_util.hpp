#ifndef IPOLY_POLY_UTIL_HPP
#define IPOLY_POLY_UTIL_HPP

#include <vector>

#include "ipoly/real.hpp"

namespace ipoly {

/// Real roots of x^3 + b x^2 + c x + d, Newton-polished, ascending.
std::vector<Real> cubic_roots_monic(const Real& b, const Real& c, const Real& d);

/// Newton iteration on x^3 + b x^2 + c x + d from x0 (branch tracking).
Real cubic_newton(const Real& b, const Real& c, const Real& d, Real x0);

/// Value of the cubic at x.
inline Real cubic_eval(const Real& b, const Real& c, const Real& d, const Real& x) {
    return ((x + b) * x + c) * x + d;
}

/// Derivative 3x^2 + 2bx + c.
inline Real cubic_deriv(const Real& b, const Real& c, const Real& x) {
    return (3 * x + 2 * b) * x + c;
}

}  // namespace ipoly

#endif  // IPOLY_POLY_UTIL_HPP
