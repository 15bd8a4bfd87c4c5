#ifndef IPOLY_NR_HPP
#define IPOLY_NR_HPP

#include <optional>
#include <vector>

#include "ipoly/cf.hpp"
#include "ipoly/real.hpp"

namespace ipoly {

/// Inner boundary generated by an eigenvalue branch of Re(e^{-i phi} T) for
/// the 3x3 upper-triangular matrix T = [[c1, b1, a], [0, c2, b2], [0, 0, c3]].
/// The derived coefficients feed the characteristic cubic
///   L^3 - s1 x L^2 + (s2 x^2 - s3) L - s4 x^3 + s5 x = 0,   x = cos phi.
struct NRConfig {
    Real a, b1, b2, c1, c2, c3;
    Real s1, s2, s3, s4, s5;  // alpha_1 .. alpha_5
    int start_case = 3;       // 3, 4, or 5

    static NRConfig create(const Real& a, const Real& b1, const Real& b2, const Real& c1,
                           const Real& c2, const Real& c3, int start_case);
};

/// Support data of the boundary at normal angle phi: lambda (distance of the
/// tangent line from the origin along e^{i phi}), its derivative, and the
/// tangency point zeta = (lambda + i lambda') e^{i phi}.
struct SupportPoint {
    Real lambda;
    Real lambda_prime;
    Complex zeta;
    bool degenerate = false;  // eigenvalue crossing detected near phi
};

/// Tangency data at angle phi. With no hint the largest eigenvalue branch is
/// taken; a hint selects the branch continuous through that value.
SupportPoint nr_support_point(const NRConfig& cfg, const Real& phi,
                              const std::optional<Real>& lambda_hint = std::nullopt);

struct NRRecord {
    BigInt q;
    Real delta;
};

/// Walking state of the vertex iteration. lambda_sq is the squared support
/// distance of the chord leaving the current vertex.
struct TrajectoryState {
    long k = 0;
    Real cos_psi, sin_psi;    // current vertex
    Real lambda_sq;           // next chord
    Real cos_psi0, sin_psi0;  // start vertex (record rule reference)
    Real log_h = Real(0);     // log of the density transport h, h(z0) = 1
    Real log_h_min = Real(0), log_h_max = Real(0);
    Real eps = Real(10);      // current record threshold
    std::vector<NRRecord> records;
};

/// Start state per the built-in cases (3: z0 = 1, 4: z0 = -1, 5: the
/// sqrt(1 - s3) vertex).
TrajectoryState nr_start(const NRConfig& cfg);

/// Start from an arbitrary unit vertex: solves cos chi = lambda(psi0 + chi)
/// for the outgoing tangent chord, preferring the largest-lambda branch whose
/// tangency point lies strictly between the chord ends.
TrajectoryState nr_start_custom(const NRConfig& cfg, const Complex& z0);

/// One vertex advance (rotation by twice the chord half-angle, then the new
/// chord's lambda^2 from the tangency-through-vertex quadratic). Checks that
/// the produced chord satisfies the determinant condition. Does not touch h.
void nr_step(TrajectoryState& state, const NRConfig& cfg);

/// Multiply h by (z_cur - zeta)/(zeta - z_prev); the ratio must be a positive
/// real for a valid tangency between the chord ends.
void h_update(TrajectoryState& state, const Complex& zeta, const Complex& z_prev,
              const Complex& z_cur);

struct DynamicsVerdict {
    enum class Kind { Regular, Attractive, Repelling, Undecided };
    Kind kind = Kind::Undecided;
    std::optional<BigInt> period;
    std::optional<Real> product;       // P_N over one detected cycle
    Real log_h_slope = Real(0);        // least-squares slope over the last half
    Real log_h_range = Real(0);
    std::optional<Real> start_return;  // |z_N - z0| when the start lies on a cycle
    std::vector<Complex> cycle;        // one lap of vertices when the period is small
    ConvergentTable table;             // regular-case record table
    std::vector<NRRecord> records;
    long steps = 0;
};

struct ClassifyOptions {
    long budget = 1000000;
    Real return_tol = Real(1) / 1000000;  // near-return candidate threshold
    long ring_size = 65536;               // late-orbit window for period search
    bool fast_path = false;               // hardware-double stepping with audits
    long audit_interval = 10000;          // fast-path consistency check cadence
    bool track_h = true;
};

/// Run the trajectory and classify: a confirmed limit cycle means attractive
/// (repelling when its product exceeds 1), a sustained exponential log-h
/// trend decides likewise without a cycle, bounded log h with a valid record
/// table is regular, anything else undecided.
DynamicsVerdict classify_dynamics(const NRConfig& cfg, long budget);
DynamicsVerdict classify_dynamics(const NRConfig& cfg, const ClassifyOptions& opt,
                                  const std::optional<Complex>& z0 = std::nullopt);

/// Residual of the tangential-chord determinant condition for consecutive
/// vertices (evaluated through the characteristic cubic).
Real nr_chord_residual(const NRConfig& cfg, const Real& lambda, const Real& cos_phi);

/// Trace hook: invoked once per step with (k, cos_psi, sin_psi, lambda_sq, log_h).
using TraceSink = void (*)(void* ctx, long k, const Real& cos_psi, const Real& sin_psi,
                           const Real& lambda_sq, const Real& log_h);

struct TraceOptions {
    TraceSink sink = nullptr;
    void* ctx = nullptr;
};

DynamicsVerdict classify_dynamics(const NRConfig& cfg, const ClassifyOptions& opt,
                                  const std::optional<Complex>& z0, const TraceOptions& trace);

}  // namespace ipoly

#endif  // IPOLY_NR_HPP
