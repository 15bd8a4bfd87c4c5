#include "ipoly/ellipse.hpp"

#include "ipoly/errors.hpp"
#include "ipoly/oracle.hpp"
#include "ipoly/poly_util.hpp"

namespace ipoly {

namespace {

// Farthest point of the ellipse from the origin must stay inside the unit
// circle; candidates are the axis endpoints and the interior critical angle.
bool inside_unit_circle(const Real& a, const Real& b, const Real& c) {
    auto radius2 = [&](const Real& ct) {
        const Real st2 = 1 - ct * ct;
        return (c + a * ct) * (c + a * ct) + b * b * st2;
    };
    Real worst = (std::max)(radius2(Real(1)), radius2(Real(-1)));
    const Real denom = b * b - a * a;
    if (denom != 0) {
        const Real ct = a * c / denom;
        if (ct > -1 && ct < 1) worst = (std::max)(worst, radius2(ct));
    }
    return worst < 1;
}

}  // namespace

EllipseConfig EllipseConfig::create(const Real& a, const Real& b, const Real& c) {
    if (!(b > 0) || !(a >= b)) throw DomainError("EllipseConfig: need a >= b > 0");
    if (!(c >= 0)) throw DomainError("EllipseConfig: need c >= 0");
    if (!inside_unit_circle(a, b, c))
        throw DomainError("EllipseConfig: ellipse not strictly inside the unit circle");
    return EllipseConfig{a, b, c};
}

WeightSpec weights_from_ellipse(const EllipseConfig& cfg) {
    WeightSpec w;
    w.alpha0 = cfg.a * cfg.a * (1 - cfg.b * cfg.b) + cfg.b * cfg.b * cfg.c * cfg.c;
    w.alpha1 = cfg.b * cfg.b * cfg.c;
    w.alpha2 = cfg.b * cfg.b - cfg.a * cfg.a;
    const Real omc2 = (1 - cfg.c) * (1 - cfg.c);
    w.cos_psi1 = (cfg.a * cfg.a + cfg.b * cfg.b - omc2) / (omc2 + cfg.b * cfg.b - cfg.a * cfg.a);
    return w;
}

EllipseConfig ellipse_from_weights(const WeightSpec& spec) {
    // With u = b^2: u^3 - (1 + alpha2) u^2 + (alpha0 + alpha2) u - alpha1^2 = 0,
    // then a^2 = u - alpha2, c = alpha1 / u. The start-chord cosine picks the
    // admissible root.
    const auto roots = cubic_roots_monic(-(1 + spec.alpha2), spec.alpha0 + spec.alpha2,
                                         -spec.alpha1 * spec.alpha1);
    // The start-chord cosine only disambiguates among cubic roots (they sit
    // far apart), so decimal-truncated inputs are fine.
    const Real tol = (std::max)(Real(pow(Real(10), -9)), Real(sqrt(working_tol())));
    std::optional<EllipseConfig> best;
    Real best_gap;
    for (const Real& u : roots) {
        if (!(u > 0)) continue;
        const Real a2 = u - spec.alpha2;
        if (!(a2 >= u)) continue;  // a >= b
        const Real a = sqrt(a2), b = sqrt(u);
        const Real c = u != 0 ? spec.alpha1 / u : Real(0);
        if (!(c >= 0)) continue;
        if (!inside_unit_circle(a, b, c)) continue;
        EllipseConfig cfg{a, b, c};
        const WeightSpec back = weights_from_ellipse(cfg);
        const Real gap = abs(back.cos_psi1 - spec.cos_psi1);
        if (gap <= tol * (1 + abs(spec.cos_psi1)) && (!best || gap < best_gap)) {
            best = cfg;
            best_gap = gap;
        }
    }
    if (!best)
        throw DomainError("ellipse_from_weights: no admissible (a, b, c) matches the weights");
    return *best;
}

Complex ellipse_chord_residual(const Complex& z, const Complex& w, const EllipseConfig& cfg) {
    const Real ba = cfg.b * cfg.b - cfg.a * cfg.a;
    const Complex cz1 = cfg.c * z - Complex(Real(1));
    const Complex zc = z - Complex(cfg.c);
    const Complex A = cz1 * cz1 + ba * (z * z);
    const Complex B = cz1 * zc + (cfg.a * cfg.a + cfg.b * cfg.b) * z;
    const Complex C = zc * zc + Complex(ba);
    return (w * w) * A - 2 * (w * B) + C;
}

Complex ellipse_next_vertex(const Complex& z_prev, const Complex& z_cur,
                            const EllipseConfig& cfg) {
    const Real ba = cfg.b * cfg.b - cfg.a * cfg.a;
    const Complex num = (Complex(cfg.c) - z_cur) * (Complex(cfg.c) - z_cur) + Complex(ba);
    const Complex czm1 = cfg.c * z_cur - Complex(Real(1));
    const Complex den = ba * (z_cur * z_cur) + czm1 * czm1;
    const Complex z_next = num / (den * z_prev);
    if (unit_deviation(z_next) > working_tol())
        throw PrecisionError("ellipse_next_vertex: vertex drifted off the unit circle");
    return z_next;
}

Complex ellipse_start_vertex(const EllipseConfig& cfg) {
    const Real cp = weights_from_ellipse(cfg).cos_psi1;
    if (!(cp > -1) || !(cp < 1))
        throw DomainError("ellipse_start_vertex: degenerate start chord");
    return {cp, sqrt(1 - cp * cp)};
}

EllipseScanResult ellipse_ratio_scan(const EllipseConfig& cfg, const Complex& z1, long budget) {
    EllipseScanResult out;
    const Real closure_tol = pow(Real(10), -static_cast<int>(Real::default_precision()) / 2);
    Complex zp(Real(1));
    Complex zc = z1;
    if (ellipse_chord_residual(zp, zc, cfg).abs() > sqrt(working_tol()))
        throw DomainError("ellipse_ratio_scan: start chord is not tangent to the ellipse");
    Real eps = 1 - zc.re;
    out.seed_delta = eps;
    for (long k = 2; k <= budget; ++k) {
        Complex zn = ellipse_next_vertex(zp, zc, cfg);
        const Real mod = zn.abs();
        zn.re = zn.re / mod;
        zn.im = zn.im / mod;
        zp = zc;
        zc = zn;
        out.iterations = k;
        const Real d = 1 - zc.re;
        if (d < closure_tol && abs(zc.im) < closure_tol) {
            out.closure = BigInt(k);
            break;
        }
        if (d < eps) {
            eps = d;
            out.records.push_back(EllipseRecord{BigInt(k), d});
            out.table.push_denominator(BigInt(k));
        }
    }
    return out;
}

Real ellipse_theta_reference(const EllipseConfig& cfg, int digits) {
    PrecisionGuard guard(digits + 10);
    const WeightSpec w = weights_from_ellipse(cfg);
    const Real a0(w.alpha0), a1(w.alpha1), a2(w.alpha2);
    auto f = [&](const Real& t) {
        const Real ct = cos(t);
        return 1 / sqrt(a0 - 2 * a1 * ct + a2 * ct * ct);
    };
    const Real psi1 = acos(Real(w.cos_psi1));
    const Real num = tanh_sinh(f, Real(0), psi1, digits + 5).value;
    const Real den = tanh_sinh(f, Real(0), pi_value(), digits + 5).value;
    return num / (2 * den);
}

}  // namespace ipoly
