#ifndef IPOLY_TEST_UTIL_HPP
#define IPOLY_TEST_UTIL_HPP

#include <doctest.h>

#include <string>

#include "ipoly/real.hpp"

namespace ipoly::testing {

inline bool close_abs(const Real& a, const Real& b, const Real& tol) {
    return abs(a - b) <= tol;
}

inline bool close_rel(const Real& a, const Real& b, const Real& tol) {
    const Real scale = (std::max)({abs(a), abs(b), Real(1)});
    return abs(a - b) <= tol * scale;
}

/// Agreement to n significant figures (relative difference below 0.5 * 10^{1-n}).
inline bool sig_figs(const Real& a, const Real& b, int n) {
    if (b == 0) return abs(a) < pow(Real(10), -n);
    return abs(a / b - 1) < Real(5) * pow(Real(10), -n);
}

inline Real R(const char* s) { return Real(s); }

}  // namespace ipoly::testing

#endif
