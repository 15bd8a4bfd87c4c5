#include "ipoly/circle.hpp"

#include <limits>

#include "ipoly/oracle.hpp"

namespace ipoly {

namespace {

// Curve ordinate at abscissa w_q given the successor abscissa w_{q+1},
// both expressed through gamma: w = c g^2. Validated against
// y^2 = 4 c r^2 (z^3 - 2 I z^2 + z) by the scan itself.
Real record_ordinate(const Real& g_rec, const Real& g_next, const CirclePair& p) {
    const Real e2 = g_rec * g_rec;
    const Real f = 1 - p.c * p.c * e2;
    return p.c * g_next * g_next * f * f - p.c * e2 * p.r * p.r -
           p.c * (1 - 2 * p.I * p.c * e2 + p.c * p.c * e2 * e2);
}

void check_curve_membership(const Real& g, const Real& y, const CirclePair& p,
                            const char* where) {
    const Real w = p.c * g * g;
    const Real rhs = 4 * p.c * p.r * p.r * (w * w * w - 2 * p.I * w * w + w);
    // y is assembled from O(1) terms, so its error floor is absolute
    if (abs(y * y - rhs) > working_tol() * (1 + abs(y) + abs(rhs)))
        throw PrecisionError(std::string(where) + ": curve membership violated");
}

// Strict-minimum comparison; a tie at working precision is re-tested with
// doubled precision on exact (widened) copies of c and r.
bool is_new_minimum(const Real& g, const Real& eps, const CirclePair& p, const BigInt& k) {
    const Real tie = working_tol(8) * (1 + eps);
    if (g < eps - tie) return true;
    if (g > eps + tie) return false;
    PrecisionGuard guard(2 * Real::default_precision());
    Real c(p.c), r(p.r);  // exact binary values, widened
    Real g_km1 = 1, g_k = 2 * r / (1 - c * c);
    Real eps2 = g_k < 1 ? g_k : Real(1);
    BigInt idx = 2;
    Real g_at_k = idx == k ? g_k : Real(0);
    while (idx < k) {
        const Real g_kp1 = abs(1 - g_k * g_k) / ((1 - c * c * g_k * g_k) * g_km1);
        g_km1 = g_k;
        g_k = g_kp1;
        ++idx;
        if (idx == k) g_at_k = g_k;
        else if (g_k < eps2) eps2 = g_k;
    }
    return g_at_k < eps2;
}

}  // namespace

Real pencil_invariant(const Real& c, const Real& r) {
    if (!(c > 0) || !(r > 0) || !(c + r < 1))
        throw DomainError("pencil_invariant: circles must be strictly nested (0 < c < c + r < 1)");
    return (1 + c * c - r * r) / (2 * c);
}

CirclePair CirclePair::create(const Real& c, const Real& r) {
    if (!(c >= 0) || !(r > 0) || !(c + r < 1))
        throw DomainError("CirclePair: need 0 <= c, 0 < r, c + r < 1");
    CirclePair p;
    p.c = c;
    p.r = r;
    p.I = c > 0 ? pencil_invariant(c, r) : Real(std::numeric_limits<Real>::infinity());
    return p;
}

CirclePair params_from_integral(const IntegralSpec& spec) {
    const Real pi = pi_value();
    if (!(spec.psi > 0) || !(spec.psi < pi / 2))
        throw DomainError("params_from_integral: need 0 < psi < pi/2");
    if (!(spec.k2 > 0) || !(spec.k2 < 1))
        throw DomainError("params_from_integral: need 0 < k2 < 1");
    const Real cp = cos(spec.psi), sp = sin(spec.psi);
    const Real root_sum = sqrt(1 - spec.k2 * cp * cp) + sqrt(1 - spec.k2);
    const Real c = spec.k2 * sp * sp / (root_sum * root_sum);
    const Real r = (1 - c) * cp;
    const Real tiny = pow(Real(10), -static_cast<int>(Real::default_precision()) / 2);
    if (c < tiny || r < tiny)
        throw DomainError("params_from_integral: degenerate parameters (c or r underflows)");
    return CirclePair::create(c, r);
}

Complex chord_residual(const Complex& z, const Complex& w, const CirclePair& pair) {
    const Complex t = pair.c * (w * z) - w - z + Complex(pair.c);
    return t * t - (4 * pair.r * pair.r) * (w * z);
}

Complex next_vertex(const Complex& z_prev, const Complex& z_cur, const CirclePair& pair) {
    const Complex num = Complex(pair.c) - z_cur;
    const Complex den_f = 1 - pair.c * z_cur;
    const Complex z_next = (num * num) / (z_prev * (den_f * den_f));
    if (unit_deviation(z_next) > working_tol())
        throw PrecisionError("next_vertex: vertex drifted off the unit circle");
    return z_next;
}

Complex initial_vertex(const CirclePair& pair) {
    const Real cphi = 2 * pair.r * pair.r / ((1 - pair.c) * (1 - pair.c)) - 1;
    return {cphi, sqrt(1 - cphi * cphi)};
}

Complex forward_neighbor(const Complex& z, const CirclePair& pair) {
    // p(z, w) = 0 is a quadratic in w: ((c z - 1) w + (c - z))^2 = 4 r^2 z w.
    const Complex a = pair.c * z - Complex(Real(1));
    const Complex b = Complex(pair.c) - z;
    const Complex A = a * a;
    const Complex B = 2 * (a * b) - (4 * pair.r * pair.r) * z;
    const Complex C = b * b;
    Complex disc = B * B - 4 * (A * C);
    // complex square root
    const Real m = disc.abs();
    Complex sq(sqrt((m + disc.re) / 2), sqrt((std::max)(Real((m - disc.re) / 2), Real(0))));
    if (disc.im < 0) sq.im = -sq.im;
    const Complex w1 = (-B + sq) / (2 * A);
    const Complex w2 = (-B - sq) / (2 * A);
    // Forward root: the inner circle's center lies left of the directed chord.
    auto leftness = [&](const Complex& w) {
        const Complex d = w - z;
        return d.re * (0 - z.im) - d.im * (pair.c - z.re);
    };
    return leftness(w1) > leftness(w2) ? w1 : w2;
}

Real w_upper_bound(const CirclePair& pair) {
    return 1 / (pair.I + sqrt(pair.I * pair.I - 1));
}

Real cos_phi_from_w(const Real& w, const CirclePair& pair) {
    if (pair.concentric()) throw DomainError("cos_phi_from_w: undefined for concentric circles");
    const Real bound = w_upper_bound(pair);
    if (!(w > 0) || w > bound * (1 + working_tol()))
        throw DomainError("cos_phi_from_w: w outside (0, I - sqrt(I^2 - 1))");
    return 1 - 4 * w * (pair.I - 1) / ((w - 1) * (w - 1));
}

RecordTriple seed_record(const CirclePair& pair) {
    return RecordTriple{1, Real(1), 2 * pair.c * pair.r * pair.r};
}

namespace {

// Rotation case c == 0: the vertex sequence is z_k = e^{i k phi1}, a rigid
// rotation. Records are running minima of |z_k - 1| = 2 |sin(pi k theta0)|.
ScanResult concentric_scan(const CirclePair& pair, const Real& eps_stop, long max_iter) {
    const Real pi = pi_value();
    const Real cphi = 2 * pair.r * pair.r - 1;
    const Real theta0 = acos(cphi) / (2 * pi);
    const Real closure_tol = pow(Real(10), -static_cast<int>(Real::default_precision()) / 2);
    ScanResult out;
    Real eps(2);
    Real frac = 0;
    for (long k = 1; k <= max_iter; ++k) {
        frac += theta0;
        if (frac >= 1) frac -= 1;
        const Real dist = (std::min)(frac, Real(1 - frac));
        const Real g = 2 * sin(pi * dist);
        out.iterations = k;
        if (g < closure_tol) {
            out.closure = BigInt(k);
            return out;
        }
        if (g < eps) {
            eps = g;
            out.records.push_back(RecordTriple{BigInt(k), g, Real(0)});
            if (eps < eps_stop) return out;
        }
    }
    throw BudgetError("baby_step_scan: iteration budget exhausted (concentric case)");
}

}  // namespace

ScanResult baby_step_scan(const CirclePair& pair, const Real& eps_stop, long max_iter) {
    if (!(eps_stop > 0) || !(eps_stop < 1))
        throw DomainError("baby_step_scan: eps_stop must lie in (0, 1)");
    if (pair.concentric()) return concentric_scan(pair, eps_stop, max_iter);

    const Real closure_tol = pow(Real(10), -static_cast<int>(Real::default_precision()) / 2);
    const Real w_bound = w_upper_bound(pair) * (1 + working_tol());
    ScanResult out;

    Real g_km1 = 1;
    Real g_k = 2 * pair.r / (1 - pair.c * pair.c);
    Real eps;
    if (is_new_minimum(g_k, Real(1), pair, BigInt(2))) {
        eps = g_k;
        const Real e2 = g_k * g_k;
        const Real y = -pair.c * e2 * ((1 - pair.c * pair.c) * (1 - e2) + 2 * pair.r * pair.r);
        out.records.push_back(RecordTriple{2, g_k, y});
        check_curve_membership(g_k, y, pair, "baby_step_scan");
    } else {
        eps = 1;
        out.records.push_back(seed_record(pair));
    }

    BigInt k = 2;
    long iters = 0;
    while (eps > eps_stop) {
        if (++iters > max_iter) throw BudgetError("baby_step_scan: iteration budget exhausted");
        const Real g_kp1 = abs(1 - g_k * g_k) / ((1 - pair.c * pair.c * g_k * g_k) * g_km1);
        g_km1 = g_k;
        g_k = g_kp1;
        ++k;
        out.iterations = iters;
        if (g_k < closure_tol) {
            out.closure = k;
            return out;
        }
        const Real w = pair.c * g_k * g_k;
        if (!(w > 0) || w > w_bound)
            throw PrecisionError("baby_step_scan: w escaped (0, I - sqrt(I^2 - 1))");
        if (is_new_minimum(g_k, eps, pair, k)) {
            eps = g_k;
            const Real g_next = abs(1 - g_k * g_k) / ((1 - pair.c * pair.c * g_k * g_k) * g_km1);
            const Real y = record_ordinate(g_k, g_next, pair);
            check_curve_membership(g_k, y, pair, "baby_step_scan");
            out.records.push_back(RecordTriple{k, g_k, y});
        }
    }
    return out;
}

Real record_vertex_distance(const RecordTriple& rec, const CirclePair& pair) {
    const Real w = pair.c * rec.gamma * rec.gamma;
    const Real cphi = cos_phi_from_w(w, pair);
    return sqrt(2 - 2 * cphi);
}

Real theta_reference(const CirclePair& pair, int digits) {
    if (pair.concentric()) {
        PrecisionGuard guard(digits + 10);
        return acos(Real(2 * Real(pair.r) * Real(pair.r) - 1)) / (2 * pi_value());
    }
    PrecisionGuard guard(digits + 10);
    const Real c(pair.c), r(pair.r), I(pair.I);
    const Real cphi = 2 * r * r / ((1 - c) * (1 - c)) - 1;
    const Real phi1 = acos(cphi);
    return phi_integral(phi1, I, digits + 5) / (2 * phi_integral(pi_value(), I, digits + 5));
}

VertexScanResult direct_vertex_scan(const CirclePair& pair, long budget,
                                    const std::optional<Complex>& z0_opt,
                                    const Real& closure_tol_in) {
    const Real closure_tol =
        closure_tol_in > 0 ? closure_tol_in
                           : pow(Real(10), -static_cast<int>(Real::default_precision()) / 2);
    Complex z0 = z0_opt ? *z0_opt : Complex(Real(1));
    Complex z1 = z0_opt ? forward_neighbor(z0, pair) : initial_vertex(pair);
    VertexScanResult out;
    Real eps(3);
    Complex zp = z0, zc = z1;
    for (long k = 1; k <= budget; ++k) {
        const Real d = (zc - z0).abs();
        if (d < closure_tol) {
            out.closure = k;
            out.last = zc;
            return out;
        }
        if (d < eps) {
            eps = d;
            out.records.push_back(VertexRecord{k, d, zc});
        }
        Complex zn = next_vertex(zp, zc, pair);
        // keep the modulus pinned on long runs (drift already checked above)
        const Real mod = zn.abs();
        zn.re = zn.re / mod;
        zn.im = zn.im / mod;
        zp = zc;
        zc = zn;
    }
    out.last = zc;
    return out;
}

}  // namespace ipoly
