#include "ipoly/nr.hpp"

#include <cmath>
#include <deque>

#include "ipoly/errors.hpp"
#include "ipoly/poly_util.hpp"

namespace ipoly {

namespace {

// Characteristic cubic of Re(e^{-i phi} T) in monic form
// L^3 + B(x) L^2 + C(x) L + D(x), x = cos phi.
void cubic_at(const NRConfig& cfg, const Real& x, Real& B, Real& C, Real& D) {
    B = -cfg.s1 * x;
    C = cfg.s2 * x * x - cfg.s3;
    D = -cfg.s4 * x * x * x + cfg.s5 * x;
}

Real lambda_branch(const NRConfig& cfg, const Real& x, const Real& hint, bool prefer_roots = false) {
    Real B, C, D;
    cubic_at(cfg, x, B, C, D);
    if (!prefer_roots) {
        const Real refined = cubic_newton(B, C, D, hint);
        // Newton is unreliable at (near-)multiple roots; the hint comes from
        // a nearby angle, so a large move means the iteration wandered off.
        if (abs(refined - hint) < Real(1) / 1000) return refined;
    }
    const auto roots = cubic_roots_monic(B, C, D);
    Real best = roots.front();
    for (const Real& rt : roots)
        if (abs(rt - hint) < abs(best - hint)) best = rt;
    return best;
}

// One vertex advance, shared between the arbitrary-precision path and the
// hardware-double fast path. Returns false when the iteration leaves the
// valid branch (complex root or lambda^2 outside (0, 1)).
template <typename T>
struct StepCoeffs {
    T s1, s2, s3, s4, s5;
};

template <typename T>
bool advance(T& cps, T& sps, T& lam2, const StepCoeffs<T>& s) {
    using std::sqrt;
    const T lam = sqrt(lam2);
    const T c = sqrt(1 - lam2);
    const T cps_n = (2 * lam2 - 1) * cps - 2 * lam * c * sps;
    const T sps_n = (2 * lam2 - 1) * sps + 2 * lam * c * cps;
    const T b1 = 1 - s.s1 * cps_n + s.s2 * (2 * cps_n * cps_n - 1) -
                 s.s4 * (4 * cps_n * cps_n * cps_n - 3 * cps_n);
    const T b2 = s.s5 * cps_n - s.s3 + s.s2 * sps_n * sps_n - 3 * s.s4 * cps_n * sps_n * sps_n;
    const T b3 = (s.s4 - s.s1 + 2 * s.s2 * cps_n - 4 * s.s4 * cps_n * cps_n) * sps_n;
    const T b4 = (s.s5 - s.s4 * sps_n * sps_n) * sps_n;
    const T denom = b1 * b1 + b3 * b3;
    const T p = (b3 * b3 / 2 - b1 * b2 - b3 * b4) / denom - lam2 / 2;
    const T q = b4 * b4 / (denom * lam2);
    const T disc = p * p - q;
    if (disc < 0) return false;
    const T lam2_n = p + sqrt(disc);
    if (!(lam2_n > 0) || !(lam2_n < 1)) return false;
    cps = cps_n;
    sps = sps_n;
    lam2 = lam2_n;
    return true;
}

double cubic_newton_d(double B, double C, double D, double x) {
    for (int i = 0; i < 60; ++i) {
        const double f = ((x + B) * x + C) * x + D;
        const double fp = (3 * x + 2 * B) * x + C;
        if (fp == 0) break;
        const double dx = f / fp;
        x -= dx;
        if (std::abs(dx) <= 1e-17 * (1 + std::abs(x))) break;
    }
    return x;
}

}  // namespace

NRConfig NRConfig::create(const Real& a, const Real& b1, const Real& b2, const Real& c1,
                          const Real& c2, const Real& c3, int start_case) {
    if (start_case < 3 || start_case > 5)
        throw DomainError("NRConfig: start case must be 3, 4, or 5");
    NRConfig cfg;
    cfg.a = a;
    cfg.b1 = b1;
    cfg.b2 = b2;
    cfg.c1 = c1;
    cfg.c2 = c2;
    cfg.c3 = c3;
    cfg.start_case = start_case;
    cfg.s1 = c1 + c2 + c3;
    cfg.s2 = c1 * c2 + c2 * c3 + c3 * c1;
    cfg.s3 = (a * a + b1 * b1 + b2 * b2) / 4;
    cfg.s4 = c1 * c2 * c3;
    cfg.s5 = (c1 * b2 * b2 + c2 * a * a + c3 * b1 * b1 - a * b1 * b2) / 4;

    // The generated boundary must stay strictly inside the unit circle:
    // every eigenvalue of Re(e^{-i phi} T) must have magnitude < 1.
    const int grid = 256;
    const Real step = 2 * pi_value() / grid;
    for (int i = 0; i < grid; ++i) {
        Real B, C, D;
        cubic_at(cfg, cos(i * step), B, C, D);
        for (const Real& root : cubic_roots_monic(B, C, D))
            if (!(abs(root) < 1))
                throw DomainError("NRConfig: boundary is not strictly inside the unit circle");
    }
    return cfg;
}

Real nr_chord_residual(const NRConfig& cfg, const Real& lambda, const Real& cos_phi) {
    Real B, C, D;
    cubic_at(cfg, cos_phi, B, C, D);
    return cubic_eval(B, C, D, lambda);
}

SupportPoint nr_support_point(const NRConfig& cfg, const Real& phi,
                              const std::optional<Real>& lambda_hint) {
    const Real x = cos(phi);
    Real B, C, D;
    cubic_at(cfg, x, B, C, D);
    Real lambda;
    if (lambda_hint) {
        lambda = cubic_newton(B, C, D, *lambda_hint);
    } else {
        const auto roots = cubic_roots_monic(B, C, D);
        lambda = roots.back();
    }
    SupportPoint sp;
    sp.lambda = lambda;
    // eigenvalue crossing: the cubic derivative vanishes where branches meet
    const Real scale = 1 + abs(C);
    sp.degenerate = abs(cubic_deriv(B, C, lambda)) < sqrt(working_tol()) * scale;

    // Centered difference on the branch, step scaled to the working
    // precision. A multiple root is located only to a fractional power of
    // the coefficient noise, so the degenerate case takes a wider step (and
    // the full root solve, whose noise there is quadratically smaller).
    const int wd = static_cast<int>(Real::default_precision());
    const Real dd = pow(Real(10), sp.degenerate ? -(wd / 6) : -(wd / 3));
    const Real lp = lambda_branch(cfg, cos(phi + dd), lambda, sp.degenerate);
    const Real lm = lambda_branch(cfg, cos(phi - dd), lambda, sp.degenerate);
    sp.lambda_prime = (lp - lm) / (2 * dd);
    sp.zeta = Complex(sp.lambda, sp.lambda_prime) * unit_vertex(phi);
    return sp;
}

TrajectoryState nr_start(const NRConfig& cfg) {
    TrajectoryState st;
    switch (cfg.start_case) {
        case 3:
            st.cos_psi = 1;
            st.sin_psi = 0;
            st.lambda_sq = (cfg.s3 - cfg.s5) / (1 - cfg.s1 + cfg.s2 - cfg.s4);
            break;
        case 4:
            st.cos_psi = -1;
            st.sin_psi = 0;
            st.lambda_sq = (cfg.s3 + cfg.s5) / (1 + cfg.s1 + cfg.s2 + cfg.s4);
            break;
        default:
            if (!(cfg.s3 < 1)) throw DomainError("nr_start: start case 5 needs s3 < 1");
            st.cos_psi = sqrt(1 - cfg.s3);
            st.sin_psi = sqrt(cfg.s3);
            st.lambda_sq = cfg.s3;
            break;
    }
    if (!(st.lambda_sq > 0) || !(st.lambda_sq < 1))
        throw DomainError("nr_start: start chord has lambda^2 outside (0, 1)");
    st.cos_psi0 = st.cos_psi;
    st.sin_psi0 = st.sin_psi;
    return st;
}

TrajectoryState nr_start_custom(const NRConfig& cfg, const Complex& z0) {
    // decimal-truncated inputs sit slightly off the circle; the start is
    // normalized below
    if (unit_deviation(z0) > Real(1) / 1000000000)
        throw DomainError("nr_start_custom: start vertex must lie on the unit circle");
    const Real psi0 = atan2(z0.im, z0.re);
    const Real pi = pi_value();

    // Scan chi in (0, pi) for sign changes of cos(chi) - lambda_b(psi0 + chi)
    // per cubic branch, polish by branch-continuous bisection, and keep the
    // chords whose tangency point lies strictly between the ends.
    struct Candidate {
        Real chi, lambda;
    };
    std::vector<Candidate> candidates;
    const int grid = 720;
    std::vector<std::pair<Real, Real>> prev[3];
    for (int i = 1; i < grid; ++i) {
        const Real chi = pi * i / grid;
        Real B, C, D;
        cubic_at(cfg, cos(psi0 + chi), B, C, D);
        const auto roots = cubic_roots_monic(B, C, D);
        for (std::size_t b = 0; b < roots.size() && b < 3; ++b) {
            const Real f = cos(chi) - roots[b];
            if (!prev[b].empty() && prev[b].back().second * f < 0) {
                Real lo = prev[b].back().first, hi = chi;
                const Real f_lo_sign = prev[b].back().second;
                Real lam = roots[b];
                for (int it = 0; it < 400; ++it) {
                    const Real mid = (lo + hi) / 2;
                    lam = lambda_branch(cfg, cos(psi0 + mid), lam);
                    const Real fm = cos(mid) - lam;
                    if (fm * f_lo_sign > 0)
                        lo = mid;
                    else
                        hi = mid;
                    if (hi - lo < working_tol(2)) break;
                }
                const Real chi_star = (lo + hi) / 2;
                candidates.push_back({chi_star, cos(chi_star)});
            }
            prev[b].emplace_back(chi, f);
        }
    }
    if (candidates.empty())
        throw DomainError("nr_start_custom: no tangent chord through the start vertex");

    std::optional<Candidate> best;
    for (const auto& cand : candidates) {
        const Real phi = psi0 + cand.chi;
        const SupportPoint sp = nr_support_point(cfg, phi, cand.lambda);
        const Complex z1 = unit_vertex(psi0 + 2 * cand.chi);
        const Complex t = (sp.zeta - z0) / (z1 - z0);
        if (abs(t.im) > Real(1) / 1000 || !(t.re > 0) || !(t.re < 1)) continue;
        if (!best || cand.lambda > best->lambda) best = cand;
    }
    if (!best) throw DomainError("nr_start_custom: no admissible outgoing tangent chord");

    TrajectoryState st;
    const Real mod = z0.abs();
    st.cos_psi = z0.re / mod;
    st.sin_psi = z0.im / mod;
    st.cos_psi0 = st.cos_psi;
    st.sin_psi0 = st.sin_psi;
    st.lambda_sq = best->lambda * best->lambda;
    if (!(st.lambda_sq > 0) || !(st.lambda_sq < 1))
        throw DomainError("nr_start_custom: start chord has lambda^2 outside (0, 1)");
    return st;
}

void nr_step(TrajectoryState& state, const NRConfig& cfg) {
    StepCoeffs<Real> s{cfg.s1, cfg.s2, cfg.s3, cfg.s4, cfg.s5};
    Real cps = state.cos_psi, sps = state.sin_psi, lam2 = state.lambda_sq;
    if (!advance<Real>(cps, sps, lam2, s))
        throw PrecisionError("nr_step: left the valid branch (complex root or lambda^2 drift) at k = " +
                             std::to_string(state.k + 1));

    // determinant condition for the new chord leaving (cps, sps)
    const Real lam_n = sqrt(lam2);
    const Real cos_phi_next = lam_n * cps - sqrt(1 - lam2) * sps;
    if (abs(nr_chord_residual(cfg, lam_n, cos_phi_next)) > working_tol(8))
        throw PrecisionError("nr_step: chord determinant residual too large at k = " +
                             std::to_string(state.k + 1));

    state.cos_psi = cps;
    state.sin_psi = sps;
    state.lambda_sq = lam2;
    state.k += 1;

    Real delta;
    switch (cfg.start_case) {
        case 3: delta = 1 - cps; break;
        case 4: delta = 1 + cps; break;
        default: delta = 1 - (cps * state.cos_psi0 + sps * state.sin_psi0); break;
    }
    if (delta < state.eps) {
        state.eps = delta;
        state.records.push_back(NRRecord{BigInt(state.k), delta});
    }
}

void h_update(TrajectoryState& state, const Complex& zeta, const Complex& z_prev,
              const Complex& z_cur) {
    const Complex ratio = (z_cur - zeta) / (zeta - z_prev);
    if (!(ratio.re > 0) || abs(ratio.im) > sqrt(working_tol()) * (1 + abs(ratio.re)))
        throw PrecisionError("h_update: tangency ratio is not a positive real");
    state.log_h += log(ratio.re);
    state.log_h_min = (std::min)(state.log_h_min, state.log_h);
    state.log_h_max = (std::max)(state.log_h_max, state.log_h);
}

namespace {

// Everything the verdict analysis needs, produced by either stepping path.
struct RunData {
    std::deque<Complex> ring;      // trailing window of vertices
    std::deque<Real> ring_logh;    // matching log h values
    std::vector<std::pair<long, Real>> samples;  // (k, log h) for the trend fit
    std::vector<NRRecord> records;
    Real log_h_range = Real(0);
    bool h_valid = true;  // false once a tangency ratio lost its realness
    std::optional<long> first_return_k;  // first |z_k - z0| below the hard tol
    Real first_return_dist = Real(0);
    Real first_return_logh = Real(0);
    Real best_return = Real(10);
    long best_return_k = -1;
};

constexpr double kHardReturn = 1e-10;   // start-on-cycle acceptance
constexpr double kCycleFloor = 1e-12;   // unconditional late-window acceptance
constexpr double kCycleSoft = 1e-6;     // late-window candidate pre-filter

void run_real(const NRConfig& cfg, const ClassifyOptions& opt, TrajectoryState& st,
              const TraceOptions& trace, RunData& out) {
    const Complex start(st.cos_psi, st.sin_psi);
    const long ring_size = (std::min)(opt.ring_size, opt.budget);
    const long sample_every = (std::max)(opt.budget / 4096, 1L);
    Complex z_prev = start;
    for (long k = 1; k <= opt.budget; ++k) {
        const Real prev_cos = st.cos_psi, prev_sin = st.sin_psi;
        const Real lam = sqrt(st.lambda_sq);
        nr_step(st, cfg);
        const Complex z(st.cos_psi, st.sin_psi);
        if (opt.track_h && out.h_valid) {
            // Near a cusp/flat portion the tangency point from the centered
            // difference can lose its realness; freeze h there rather than
            // abort, cycle evidence does not depend on it.
            try {
                const Real phi = atan2(prev_sin, prev_cos) + acos(lam);
                const SupportPoint sp = nr_support_point(cfg, phi, lam);
                h_update(st, sp.zeta, z_prev, z);
            } catch (const PrecisionError&) {
                out.h_valid = false;
            }
        }
        if (trace.sink) trace.sink(trace.ctx, k, st.cos_psi, st.sin_psi, st.lambda_sq, st.log_h);

        const Real ret = (z - start).abs();
        if (ret < out.best_return) {
            out.best_return = ret;
            out.best_return_k = k;
        }
        if (!out.first_return_k && ret < Real(kHardReturn)) {
            out.first_return_k = k;
            out.first_return_dist = ret;
            out.first_return_logh = st.log_h;
        }
        out.ring.push_back(z);
        out.ring_logh.push_back(st.log_h);
        if (static_cast<long>(out.ring.size()) > ring_size) {
            out.ring.pop_front();
            out.ring_logh.pop_front();
        }
        if (k % sample_every == 0) out.samples.emplace_back(k, st.log_h);
        z_prev = z;
    }
    out.records = st.records;
    out.log_h_range = st.log_h_max - st.log_h_min;
}

// Hardware-double stepping with periodic consistency audits against the
// chord determinant condition at working precision.
void run_fast(const NRConfig& cfg, const ClassifyOptions& opt, TrajectoryState& st,
              const TraceOptions& trace, RunData& out) {
    StepCoeffs<double> s{static_cast<double>(cfg.s1), static_cast<double>(cfg.s2),
                         static_cast<double>(cfg.s3), static_cast<double>(cfg.s4),
                         static_cast<double>(cfg.s5)};
    double cps = static_cast<double>(st.cos_psi), sps = static_cast<double>(st.sin_psi);
    double lam2 = static_cast<double>(st.lambda_sq);
    const double c0 = cps, s0 = sps;
    double logh = 0, logh_min = 0, logh_max = 0;
    double eps = static_cast<double>(st.eps);

    const long ring_size = (std::min)(opt.ring_size, opt.budget);
    const long sample_every = (std::max)(opt.budget / 4096, 1L);
    double prev_c = cps, prev_s = sps;
    double best_return = 10;

    for (long k = 1; k <= opt.budget; ++k) {
        const double lam = std::sqrt(lam2);
        const double phi = std::atan2(prev_s, prev_c) + std::acos(lam);
        if (!advance<double>(cps, sps, lam2, s))
            throw PrecisionError("classify_dynamics: fast path left the valid branch at k = " +
                                 std::to_string(k));
        if (opt.track_h) {
            const double x = std::cos(phi);
            const double B = -s.s1 * x, C = s.s2 * x * x - s.s3,
                         D = -s.s4 * x * x * x + s.s5 * x;
            const double l = cubic_newton_d(B, C, D, lam);
            const double dd = 1e-7;
            const double xp = std::cos(phi + dd), xm = std::cos(phi - dd);
            const double lp = cubic_newton_d(-s.s1 * xp, s.s2 * xp * xp - s.s3,
                                             -s.s4 * xp * xp * xp + s.s5 * xp, l);
            const double lm = cubic_newton_d(-s.s1 * xm, s.s2 * xm * xm - s.s3,
                                             -s.s4 * xm * xm * xm + s.s5 * xm, l);
            const double lprime = (lp - lm) / (2 * dd);
            const double zx = l * std::cos(phi) - lprime * std::sin(phi);
            const double zy = l * std::sin(phi) + lprime * std::cos(phi);
            const double nax = cps - zx, nay = sps - zy;
            const double dex = zx - prev_c, dey = zy - prev_s;
            const double ratio = (nax * dex + nay * dey) / (dex * dex + dey * dey);
            if (ratio <= 0)
                throw PrecisionError("classify_dynamics: fast path tangency ratio not positive");
            logh += std::log(ratio);
            logh_min = (std::min)(logh_min, logh);
            logh_max = (std::max)(logh_max, logh);
        }
        if (trace.sink)
            trace.sink(trace.ctx, k, Real(cps), Real(sps), Real(lam2), Real(logh));

        const double dx = cps - c0, dy = sps - s0;
        const double ret = std::sqrt(dx * dx + dy * dy);
        if (ret < best_return) {
            best_return = ret;
            out.best_return_k = k;
        }
        if (!out.first_return_k && ret < kHardReturn) {
            out.first_return_k = k;
            out.first_return_dist = Real(ret);
            out.first_return_logh = Real(logh);
        }
        const double delta = cfg.start_case == 3   ? 1 - cps
                             : cfg.start_case == 4 ? 1 + cps
                                                   : 1 - (cps * c0 + sps * s0);
        if (delta < eps) {
            eps = delta;
            out.records.push_back(NRRecord{BigInt(k), Real(delta)});
        }
        out.ring.push_back(Complex(Real(cps), Real(sps)));
        out.ring_logh.push_back(Real(logh));
        if (static_cast<long>(out.ring.size()) > ring_size) {
            out.ring.pop_front();
            out.ring_logh.pop_front();
        }
        if (k % sample_every == 0) out.samples.emplace_back(k, Real(logh));
        prev_c = cps;
        prev_s = sps;

        if (k % opt.audit_interval == 0) {
            // renormalize and audit the chord condition at working precision
            const double norm = std::sqrt(cps * cps + sps * sps);
            cps /= norm;
            sps /= norm;
            const Real lamr = sqrt(Real(lam2));
            const Real cphi = lamr * Real(cps) - sqrt(1 - Real(lam2)) * Real(sps);
            if (abs(nr_chord_residual(cfg, lamr, cphi)) > Real(1e-9))
                throw PrecisionError("classify_dynamics: fast path drift audit failed at k = " +
                                     std::to_string(k));
        }
    }
    out.best_return = Real(best_return);
    out.log_h_range = Real(logh_max - logh_min);
}

}  // namespace

DynamicsVerdict classify_dynamics(const NRConfig& cfg, long budget) {
    ClassifyOptions opt;
    opt.budget = budget;
    return classify_dynamics(cfg, opt, std::nullopt);
}

DynamicsVerdict classify_dynamics(const NRConfig& cfg, const ClassifyOptions& opt,
                                  const std::optional<Complex>& z0) {
    return classify_dynamics(cfg, opt, z0, TraceOptions{});
}

DynamicsVerdict classify_dynamics(const NRConfig& cfg, const ClassifyOptions& opt,
                                  const std::optional<Complex>& z0, const TraceOptions& trace) {
    if (opt.budget < 10000) throw DomainError("classify_dynamics: budget must be >= 10^4");

    TrajectoryState st = z0 ? nr_start_custom(cfg, *z0) : nr_start(cfg);
    RunData run;
    if (opt.fast_path)
        run_fast(cfg, opt, st, trace, run);
    else
        run_real(cfg, opt, st, trace, run);

    DynamicsVerdict verdict;
    verdict.steps = opt.budget;
    verdict.records = run.records;
    verdict.log_h_range = run.log_h_range;

    // least-squares slope of log h over the last half of the run
    {
        std::vector<std::pair<long, Real>> tail;
        for (const auto& sm : run.samples)
            if (sm.first >= opt.budget / 2) tail.push_back(sm);
        if (tail.size() >= 8) {
            Real sx(0), sy(0), sxx(0), sxy(0);
            for (const auto& [kk, lh] : tail) {
                const Real x(kk);
                sx += x;
                sy += lh;
                sxx += x * x;
                sxy += x * lh;
            }
            const Real n(static_cast<long>(tail.size()));
            const Real den = n * sxx - sx * sx;
            if (den != 0) verdict.log_h_slope = (n * sxy - sx * sy) / den;
        }
    }

    // Cycle evidence. (a) The orbit returned to its start at hard tolerance
    // (a start placed on a cycle): period = first such index. (b) The final
    // vertex recurs inside the trailing window with either a converged
    // distance or a clearly shrinking one (rules out almost-closed returns
    // of regular orbits, which do not shrink for a fixed lag).
    std::optional<long> period;
    bool from_start_return = false;
    if (run.first_return_k) {
        period = *run.first_return_k;
        from_start_return = true;
    } else if (static_cast<long>(run.ring.size()) >= 64) {
        const long R = static_cast<long>(run.ring.size());
        const Complex zK = run.ring.back();
        long cand = -1;
        for (long n = 1; n < R; ++n) {
            const Real d = (zK - run.ring[R - 1 - n]).abs();
            if (d < Real(kCycleSoft)) {
                cand = n;
                break;
            }
        }
        if (cand > 0) {
            const Real d_late = (zK - run.ring[R - 1 - cand]).abs();
            bool accept = d_late < Real(kCycleFloor);
            if (!accept && R > 2 * cand) {
                const Real d_early = (run.ring[cand] - run.ring[0]).abs();
                accept = d_late * 4 <= d_early;
            }
            if (accept) {
                bool confirmed = true;
                const long checks = (std::min)(cand, R - cand);
                for (long j = 1; j <= (std::min<long>)(checks, 64); ++j) {
                    if ((run.ring[R - 1 - j] - run.ring[R - 1 - j - cand]).abs() > Real(1) / 10000) {
                        confirmed = false;
                        break;
                    }
                }
                if (confirmed) period = cand;
            }
        }
    }

    if (period) {
        const long n = *period;
        verdict.period = BigInt(n);
        if (from_start_return) verdict.start_return = run.first_return_dist;
        if (run.h_valid && static_cast<long>(run.ring_logh.size()) > n) {
            verdict.product = exp(run.ring_logh.back() - run.ring_logh[run.ring_logh.size() - 1 - n]);
        } else if (run.h_valid && from_start_return) {
            verdict.product = exp(run.first_return_logh);  // product over the first lap
        }
        if (n <= 64 && static_cast<long>(run.ring.size()) >= n) {
            for (long j = n; j >= 1; --j) verdict.cycle.push_back(run.ring[run.ring.size() - j]);
        }
        if (verdict.product && *verdict.product > 1 + Real(1) / 1000000 && from_start_return)
            verdict.kind = DynamicsVerdict::Kind::Repelling;
        else
            verdict.kind = DynamicsVerdict::Kind::Attractive;
        return verdict;
    }

    // no cycle: a sustained exponential log-h trend decides, otherwise the
    // orbit is regular (bounded transport) or undecided
    if (!run.h_valid) {
        verdict.kind = DynamicsVerdict::Kind::Undecided;
        return verdict;
    }
    const Real trend = abs(verdict.log_h_slope) * Real(opt.budget / 2);
    if (trend > log(Real(1000))) {
        verdict.kind = verdict.log_h_slope < 0 ? DynamicsVerdict::Kind::Attractive
                                               : DynamicsVerdict::Kind::Repelling;
        return verdict;
    }
    if (trend < log(Real(10))) {
        verdict.kind = DynamicsVerdict::Kind::Regular;
        std::vector<BigInt> qs;
        for (const auto& rec : run.records)
            if (rec.q > 1) qs.push_back(rec.q);
        try {
            verdict.table = recover_numerators(qs, DivisibilityMode::LenientHead);
        } catch (const DomainError&) {
            verdict.kind = DynamicsVerdict::Kind::Undecided;
        }
        return verdict;
    }
    verdict.kind = DynamicsVerdict::Kind::Undecided;
    return verdict;
}

}  // namespace ipoly
