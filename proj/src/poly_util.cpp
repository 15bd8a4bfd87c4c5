#include "ipoly/poly_util.hpp"

#include <algorithm>

namespace ipoly {

Real cubic_newton(const Real& b, const Real& c, const Real& d, Real x0) {
    for (int i = 0; i < 200; ++i) {
        const Real f = cubic_eval(b, c, d, x0);
        const Real fp = cubic_deriv(b, c, x0);
        if (fp == 0) break;
        const Real dx = f / fp;
        x0 -= dx;
        if (abs(dx) <= working_tol(2) * (1 + abs(x0))) break;
    }
    return x0;
}

std::vector<Real> cubic_roots_monic(const Real& b, const Real& c, const Real& d) {
    // Depressed form: x = t - b/3, t^3 + p t + q = 0.
    const Real shift = b / 3;
    const Real p = c - b * b / 3;
    const Real q = d - b * c / 3 + 2 * b * b * b / 27;
    std::vector<Real> roots;
    // numerically triple root: p and q are pure cancellation residue
    const Real noise = 10000 * working_tol();
    if (abs(p) <= noise * (1 + abs(c) + b * b) &&
        abs(q) <= noise * (1 + abs(d) + abs(b * c) + abs(b * b * b))) {
        roots.assign(3, -shift);
        return roots;
    }
    const Real disc = -(4 * p * p * p + 27 * q * q);
    if (disc >= 0 && p < 0) {
        // three real roots (trigonometric form)
        const Real m = 2 * sqrt(-p / 3);
        Real arg = 3 * q / (p * m);
        arg = (std::max)(Real(-1), (std::min)(Real(1), arg));
        const Real phi = acos(arg);
        const Real two_pi = 2 * pi_value();
        for (int k = 0; k < 3; ++k)
            roots.push_back(m * cos((phi + k * two_pi) / 3) - shift);
    } else {
        // one real root (Cardano, stable branch)
        const Real half_q = q / 2;
        const Real rad = sqrt((std::max)(Real(q * q / 4 + p * p * p / 27), Real(0)));
        const Real u = half_q >= 0 ? -half_q - rad : -half_q + rad;
        const Real cu = cbrt(u);
        Real t = cu == 0 ? Real(0) : cu - p / (3 * cu);
        roots.push_back(t - shift);
        if (p == 0 && q == 0) roots.assign(3, -shift);
    }
    // Polish only where Newton clearly helps; at (near-)multiple roots the
    // closed forms are better conditioned than the iteration.
    for (Real& r : roots) {
        const Real polished = cubic_newton(b, c, d, r);
        if (abs(cubic_eval(b, c, d, polished)) * 4 < abs(cubic_eval(b, c, d, r))) r = polished;
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace ipoly
