#include "ipoly/oracle.hpp"

namespace ipoly {

Real agm(Real a, Real g) {
    if (a <= 0 || g <= 0) throw DomainError("agm: arguments must be positive");
    if (a < g) a.swap(g);
    const Real stop = working_tol(2);
    // Quadratic convergence; one extra averaging pass at the end.
    while (a - g > stop * g) {
        Real an = (a + g) / 2;
        g = sqrt(a * g);
        a = an;
    }
    return (a + g) / 2;
}

Real complete_elliptic_F(const Real& k2, int digits) {
    if (!(k2 >= 0) || !(k2 < 1)) throw DomainError("complete_elliptic_F: need 0 <= k2 < 1");
    PrecisionGuard guard(digits + 10);
    const Real kp = sqrt(Real(1 - Real(k2)));
    return pi_value() / (2 * agm(Real(1), kp));
}

Real phi_integral(const Real& phi, const Real& I, int digits) {
    if (!(I > 1)) throw DomainError("phi_integral: need I > 1");
    PrecisionGuard guard(digits + 10);
    const Real two_pi = 2 * pi_value();
    if (phi < 0 || phi > two_pi * (1 + working_tol()))
        throw DomainError("phi_integral: need 0 <= phi <= 2*pi");
    if (phi == 0) return Real(0);
    const Real Iw(I);
    auto f = [&Iw](const Real& t) { return 1 / sqrt(Iw - cos(t)); };
    return tanh_sinh(f, Real(0), Real(phi), digits).value;
}

Real theta_density(const Real& x, const Real& I, int digits) {
    PrecisionGuard guard(digits + 10);
    const Real pi = pi_value();
    const Real norm = phi_integral(pi, Real(I), digits + 5);
    return pi / (norm * sqrt(Real(I) - cos(2 * pi * Real(x))));
}

}  // namespace ipoly
