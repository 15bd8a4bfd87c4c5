#ifndef IPOLY_CURVE_HPP
#define IPOLY_CURVE_HPP

#include <utility>

#include "ipoly/circle.hpp"

namespace ipoly {

/// Point of the Weierstrass-form curve y^2 = 4 c r^2 (z^3 - 2 I z^2 + z),
/// with a distinguished identity (the point at infinity of vertical lines).
struct CurvePoint {
    Real z;
    Real y;
    bool is_identity = false;

    static CurvePoint identity() {
        CurvePoint p;
        p.is_identity = true;
        return p;
    }
};

/// y^2 - 4 c r^2 (z^3 - 2 I z^2 + z); zero on the curve.
Real curve_residual(const CurvePoint& p, const CirclePair& pair);

/// Transform a chord-equation solution pair (z, w) to the curve point (z, y),
/// y = w (1 - c z)^2 - z r^2 - c (1 - 2 I z + z^2). Real branch; throws
/// PrecisionError if the output violates the curve equation.
CurvePoint to_weierstrass(const Real& z, const Real& w, const CirclePair& pair);

/// Same transform over complex inputs (unit-circle vertices); returns (z, y).
std::pair<Complex, Complex> to_weierstrass(const Complex& z, const Complex& w,
                                           const CirclePair& pair);

/// Chord-and-tangent addition on the curve.
CurvePoint ec_add(const CurvePoint& P, const CurvePoint& Q, const CirclePair& pair);

/// Translation generator (Z, W, Y) = (1/c, (1-c^2)^2/(4 c r^2), -2 r^2/c):
/// one chord step equals addition of this point.
struct GeneratorPoint {
    Real Z;
    Real W;
    Real Y;
    CurvePoint as_curve_point() const { return CurvePoint{Z, Y, false}; }
};

GeneratorPoint generator_point(const CirclePair& pair);

/// One set of giant steps: repeatedly add the anchor record's curve point to
/// the moving triple, in the cancellation-free gamma form, until gamma drops
/// below the anchor's. The step count is the next partial quotient.
struct GiantStepState {
    CirclePair pair;
    RecordTriple anchor;  // record q_j (fixed within a set)
    RecordTriple cur;     // moving triple, initialized from record q_{j-1}
    BigInt max_steps = BigInt(100000000);
    std::vector<Real>* step_gammas = nullptr;  // per-step gamma capture (tests)

    // cached per-set quantities
    Real rho_anchor;
    Real eps_anchor;  // 1 - rho, computed without cancellation

    static GiantStepState create(const CirclePair& pair, const RecordTriple& anchor,
                                 const RecordTriple& prev);
};

struct GiantStepResult {
    RecordTriple next_record;
    BigInt partial_quotient;  // number of steps taken in the set
};

GiantStepResult giant_step_set(GiantStepState& state);

/// theta ~ (gamma_{q_{j-1}} p_j + gamma_{q_j} p_{j-1}) /
///         (gamma_{q_{j-1}} q_j + gamma_{q_j} q_{j-1});
/// requires Delta = gamma_{q_{j-1}} <= 10^(-digits/4).
Real refine_theta(const RecordTriple& prev, const RecordTriple& last, const BigInt& p_prev,
                  const BigInt& p_last, int digits);

/// The refinement admission threshold 10^(-digits/4).
Real refine_threshold(int digits);

}  // namespace ipoly

#endif  // IPOLY_CURVE_HPP
