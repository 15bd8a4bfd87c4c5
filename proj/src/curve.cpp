#include "ipoly/curve.hpp"

namespace ipoly {

Real curve_residual(const CurvePoint& p, const CirclePair& pair) {
    if (p.is_identity) return Real(0);
    const Real rhs =
        4 * pair.c * pair.r * pair.r * (p.z * p.z * p.z - 2 * pair.I * p.z * p.z + p.z);
    return p.y * p.y - rhs;
}

CurvePoint to_weierstrass(const Real& z, const Real& w, const CirclePair& pair) {
    const Real f = 1 - pair.c * z;
    CurvePoint p;
    p.z = z;
    p.y = w * f * f - z * pair.r * pair.r - pair.c * (1 - 2 * pair.I * z + z * z);
    const Real scale = (std::max)(Real(p.y * p.y), Real(abs(4 * pair.c * pair.r * pair.r * z)));
    if (abs(curve_residual(p, pair)) > working_tol() * (1 + scale))
        throw PrecisionError("to_weierstrass: output violates the curve equation");
    return p;
}

std::pair<Complex, Complex> to_weierstrass(const Complex& z, const Complex& w,
                                           const CirclePair& pair) {
    const Complex f = 1 - pair.c * z;
    const Complex y = w * (f * f) - pair.r * pair.r * z -
                      pair.c * (1 - (2 * pair.I) * z + z * z);
    return {z, y};
}

CurvePoint ec_add(const CurvePoint& P, const CurvePoint& Q, const CirclePair& pair) {
    if (P.is_identity) return Q;
    if (Q.is_identity) return P;
    const Real a = 4 * pair.c * pair.r * pair.r;
    const Real tol = working_tol() * (1 + abs(P.z) + abs(Q.z));
    Real slope;
    if (abs(P.z - Q.z) <= tol) {
        if (abs(P.y + Q.y) <= working_tol() * (1 + abs(P.y)))
            return CurvePoint::identity();  // inverse pair, or 2-torsion doubling
        slope = a * (3 * P.z * P.z - 4 * pair.I * P.z + 1) / (2 * P.y);
    } else {
        slope = (Q.y - P.y) / (Q.z - P.z);
    }
    CurvePoint R;
    R.z = slope * slope / a + 2 * pair.I - P.z - Q.z;
    R.y = slope * (Q.z - R.z) - Q.y;
    return R;
}

GeneratorPoint generator_point(const CirclePair& pair) {
    if (pair.concentric()) throw DomainError("generator_point: undefined for concentric circles");
    GeneratorPoint g;
    const Real one_m_c2 = 1 - pair.c * pair.c;
    g.Z = 1 / pair.c;
    g.W = one_m_c2 * one_m_c2 / (4 * pair.c * pair.r * pair.r);
    g.Y = -2 * pair.r * pair.r / pair.c;
    return g;
}

GiantStepState GiantStepState::create(const CirclePair& pair, const RecordTriple& anchor,
                                      const RecordTriple& prev) {
    GiantStepState s;
    s.pair = pair;
    s.anchor = anchor;
    s.cur = prev;
    const Real g2 = anchor.gamma * anchor.gamma;
    s.rho_anchor = sqrt(1 - 2 * pair.I * pair.c * g2 + pair.c * pair.c * g2 * g2);
    // 1 - rho without subtractive cancellation
    s.eps_anchor = pair.c * g2 * (2 * pair.I - pair.c * g2) / (1 + s.rho_anchor);
    return s;
}

GiantStepResult giant_step_set(GiantStepState& state) {
    const CirclePair& pair = state.pair;
    const Real c = pair.c, I = pair.I;
    const Real gq = state.anchor.gamma;
    const Real yq = state.anchor.y;
    const Real eps_q = state.eps_anchor;
    const Real eps = gq;

    Real gcur = state.cur.gamma;
    Real ycur = state.cur.y;
    BigInt qcur = state.cur.q;
    BigInt steps = 0;

    while (gcur > eps) {
        if (steps >= state.max_steps)
            throw BudgetError("giant_step_set: partial quotient exceeds the configured maximum");
        const Real g2 = gcur * gcur;
        const Real rho = sqrt(1 - 2 * I * c * g2 + c * c * g2 * g2);
        const Real eps_cur = c * g2 * (2 * I - c * g2) / (1 + rho);
        const Real v = 4 * I * c * gcur * gq - 2 * (eps_cur + eps_q - eps_cur * eps_q) -
                       c * c * gcur * gq * (g2 + gq * gq);
        const Real diff = gcur - gq;
        const Real alpha = gcur * gq * v / (diff * diff);
        const Real rad = 1 - alpha;
        if (rad < 0) {
            if (rad < -working_tol())
                throw PrecisionError("giant_step_set: negative radicand (precision exhausted)");
            // numerically zero gamma: treat as closure-depth value
        }
        const Real denom = 1 - c * c * g2 * gq * gq;
        const Real gnew = diff / denom * sqrt((std::max)(rad, Real(0)));
        // Exact ordinate transport under addition of the anchor point,
        // derived from the chord slope in the same gamma variables:
        // y_new = [y_q (g_new^2 - g_cur^2)/g_q^2 - y_cur (1 - c^2 g_q^2 g_new^2)]
        //         / (1 - c^2 g_q^2 g_cur^2).
        const Real ynew = (yq * ((gnew * gnew - g2) / (gq * gq)) -
                           ycur * (1 - c * c * gq * gq * gnew * gnew)) /
                          denom;
        if (!(gnew < gcur))
            throw PrecisionError("giant_step_set: gamma failed to decrease (precision exhausted)");
        gcur = gnew;
        ycur = ynew;
        qcur += state.anchor.q;
        steps += 1;
        if (state.step_gammas) state.step_gammas->push_back(gcur);
        // curve-membership drift check
        const Real w = c * gcur * gcur;
        const Real rhs = 4 * c * pair.r * pair.r * (w * w * w - 2 * I * w * w + w);
        if (abs(ycur * ycur - rhs) > working_tol() * (1 + abs(ycur) + abs(rhs)))
            throw PrecisionError("giant_step_set: curve membership violated");
    }

    GiantStepResult res;
    res.next_record = RecordTriple{qcur, gcur, ycur};
    res.partial_quotient = steps;
    // Advance to the next set: the new record becomes the anchor and the old
    // anchor becomes the moving triple.
    const BigInt max_steps = state.max_steps;
    auto* gammas = state.step_gammas;
    state = GiantStepState::create(pair, res.next_record, state.anchor);
    state.max_steps = max_steps;
    state.step_gammas = gammas;
    return res;
}

Real refine_threshold(int digits) { return pow(Real(10), Real(-Real(digits) / 4)); }

Real refine_theta(const RecordTriple& prev, const RecordTriple& last, const BigInt& p_prev,
                  const BigInt& p_last, int digits) {
    if (prev.gamma > refine_threshold(digits))
        throw PrecisionError(
            "refine_theta: Delta = " + prev.gamma.str(3, std::ios_base::scientific) +
            " exceeds the threshold for " + std::to_string(digits) +
            " digits; continue giant steps first");
    const Real gp = prev.gamma, gl = last.gamma;
    const Real num = gp * real_from_bigint(p_last) + gl * real_from_bigint(p_prev);
    const Real den = gp * real_from_bigint(last.q) + gl * real_from_bigint(prev.q);
    return num / den;
}

}  // namespace ipoly
