#ifndef IPOLY_CIRCLE_HPP
#define IPOLY_CIRCLE_HPP

#include <optional>
#include <vector>

#include "ipoly/errors.hpp"
#include "ipoly/real.hpp"

namespace ipoly {

/// Pencil invariant I = (1 + c^2 - r^2) / (2c) of two nested circles; the
/// common real abscissa of the (possibly complex) intersection points of the
/// inner circle with the unit circle. Always > 1 in the nested case.
Real pencil_invariant(const Real& c, const Real& r);

/// Inner circle of radius r centered at (c, 0), strictly nested in the unit
/// circle. c == 0 (concentric) is admitted as a degenerate case with infinite
/// pencil invariant; the vertex recurrence is then a rigid rotation.
struct CirclePair {
    Real c;
    Real r;
    Real I;  // cached pencil invariant; +inf when c == 0

    static CirclePair create(const Real& c, const Real& r);
    bool concentric() const { return c == 0; }
};

struct IntegralSpec {
    Real psi;  // in (0, pi/2)
    Real k2;   // modulus squared, in (0, 1)
    int digits = 24;
};

/// Circle pair whose chord step reproduces the integrand weight of
/// F(psi, k): c = k^2 sin^2 psi / (sqrt(1-k^2 cos^2 psi) + sqrt(1-k^2))^2,
/// r = (1-c) cos psi. Satisfies pencil_invariant(c, r) == 2/k^2 - 1.
CirclePair params_from_integral(const IntegralSpec& spec);

/// Chord-tangency residual p(z, w) = (c w z - w - z + c)^2 - 4 r^2 w z.
/// Zero iff the chord [z, w] of the unit circle is tangent to the inner one.
Complex chord_residual(const Complex& z, const Complex& w, const CirclePair& pair);

/// Next vertex of the interscribed polygon, counterclockwise with the inner
/// circle on the left: z_next = (c - z_cur)^2 / (z_prev (1 - c z_cur)^2).
/// Throws PrecisionError if the result drifts off the unit circle.
Complex next_vertex(const Complex& z_prev, const Complex& z_cur, const CirclePair& pair);

/// First chord vertex from z0 = 1: e^{i phi1} with
/// cos phi1 = 2 r^2/(1-c)^2 - 1, sin phi1 > 0.
Complex initial_vertex(const CirclePair& pair);

/// Counterclockwise tangential neighbor of an arbitrary vertex on the unit
/// circle (root selection of the chord equation by orientation).
Complex forward_neighbor(const Complex& z, const CirclePair& pair);

/// cos phi_k = 1 - 4 w (I-1) / (w - 1)^2 for 0 < w < I - sqrt(I^2 - 1).
Real cos_phi_from_w(const Real& w, const CirclePair& pair);

/// Upper bound of the admissible w range, computed as 1/(I + sqrt(I^2-1)).
Real w_upper_bound(const CirclePair& pair);

/// Almost-closure record: index q, gamma_q = sqrt(w_q / c), and the ordinate
/// y_q of the corresponding point of the curve y^2 = 4 c r^2 (z^3 - 2 I z^2 + z).
struct RecordTriple {
    BigInt q;
    Real gamma;
    Real y;
};

struct ScanResult {
    std::vector<RecordTriple> records;
    std::optional<BigInt> closure;  // side count N of a closed polygon, if hit
    long iterations = 0;
};

/// Iterates gamma_1 = 1, gamma_2 = 2r/(1-c^2),
/// gamma_{k+1} = |1 - gamma_k^2| / ((1 - c^2 gamma_k^2) gamma_{k-1}),
/// recording every strict running minimum until it falls below eps_stop.
/// Record indices are exactly the best-approximation denominators of the
/// rotation number. A vanishing gamma signals the Poncelet (rational) case.
ScanResult baby_step_scan(const CirclePair& pair, const Real& eps_stop, long max_iter);

/// |z_q - 1| for a record, via cos_phi_from_w.
Real record_vertex_distance(const RecordTriple& rec, const CirclePair& pair);

/// Ordinate triple for index 1 (the seed record): (1, 1, 2 c r^2).
RecordTriple seed_record(const CirclePair& pair);

/// Reference rotation number Phi(phi1, I) / (2 Phi(pi, I)) by quadrature,
/// independent of the polygon iteration.
Real theta_reference(const CirclePair& pair, int digits);

// Direct vertex iteration (the slow detector); used by tests and the
// closure search to cross-check the gamma scan.
struct VertexRecord {
    long k;
    Real distance;  // |z_k - z0|
    Complex z;
};

struct VertexScanResult {
    std::vector<VertexRecord> records;
    std::optional<long> closure;
    Complex last;
};

/// Iterates next_vertex from z0 (default 1), recording strict minima of
/// |z_k - z0|. closure_tol <= 0 selects the default 10^(-digits/2).
VertexScanResult direct_vertex_scan(const CirclePair& pair, long budget,
                                    const std::optional<Complex>& z0 = std::nullopt,
                                    const Real& closure_tol = Real(0));

}  // namespace ipoly

#endif  // IPOLY_CIRCLE_HPP
