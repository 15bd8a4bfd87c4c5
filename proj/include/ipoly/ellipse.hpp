#ifndef IPOLY_ELLIPSE_HPP
#define IPOLY_ELLIPSE_HPP

#include <optional>
#include <vector>

#include "ipoly/cf.hpp"
#include "ipoly/real.hpp"

namespace ipoly {

/// Inner ellipse (xi - c)^2 / a^2 + eta^2 / b^2 = 1, a >= b > 0, strictly
/// inside the unit circle.
struct EllipseConfig {
    Real a;
    Real b;
    Real c;

    static EllipseConfig create(const Real& a, const Real& b, const Real& c);
};

/// Integrand weights of 1 / sqrt(alpha0 - 2 alpha1 cos t + alpha2 cos^2 t)
/// and the start-chord cosine tied to an ellipse configuration.
struct WeightSpec {
    Real alpha0;
    Real alpha1;
    Real alpha2;
    Real cos_psi1;
};

WeightSpec weights_from_ellipse(const EllipseConfig& cfg);

/// Invert the weight relations: solve for (a, b, c) with a >= b > 0 and the
/// ellipse inside the unit circle, disambiguating among cubic roots by the
/// start-chord cosine. Throws DomainError when no admissible solution exists.
EllipseConfig ellipse_from_weights(const WeightSpec& spec);

/// Tangential-chord vertex recurrence
/// z_next = ((c - z)^2 + b^2 - a^2) / (((b^2 - a^2) z^2 + (c z - 1)^2) z_prev).
/// Coincides with the circle recurrence when a == b.
Complex ellipse_next_vertex(const Complex& z_prev, const Complex& z_cur,
                            const EllipseConfig& cfg);

/// Residual of the tangential-chord equation for the ellipse; zero iff the
/// chord [z, w] of the unit circle is tangent to the ellipse.
Complex ellipse_chord_residual(const Complex& z, const Complex& w, const EllipseConfig& cfg);

/// Start vertex z1 (counterclockwise from z0 = 1, sin psi1 > 0).
Complex ellipse_start_vertex(const EllipseConfig& cfg);

struct EllipseRecord {
    BigInt q;
    Real delta;  // 1 - cos psi_q
};

struct EllipseScanResult {
    std::vector<EllipseRecord> records;  // excludes the q = 1 seed
    ConvergentTable table;
    std::optional<BigInt> closure;
    long iterations = 0;
    Real seed_delta;  // 1 - cos psi_1
};

/// Iterate the vertex recurrence from (1, z1), recording strict minima of
/// 1 - Re z_k (the seed is 1 - cos psi1 at index 1) and folding them into a
/// convergent table. Stops at the budget; a vanishing minimum is a closure.
EllipseScanResult ellipse_ratio_scan(const EllipseConfig& cfg, const Complex& z1, long budget);

/// Reference ratio of the weight integrals over [0, psi1] and [0, 2 pi]
/// by quadrature.
Real ellipse_theta_reference(const EllipseConfig& cfg, int digits);

}  // namespace ipoly

#endif  // IPOLY_ELLIPSE_HPP
