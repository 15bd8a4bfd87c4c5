#include "ipoly/pipeline.hpp"

#include "ipoly/oracle.hpp"

namespace ipoly {

ThetaResult compute_theta(const CirclePair& pair, const ThetaOptions& opt) {
    if (pair.concentric())
        throw DomainError("compute_theta: concentric pairs have rotation number acos(2r^2-1)/(2 pi)");

    ThetaResult out;
    ScanResult scan = baby_step_scan(pair, opt.eps_handoff, opt.baby_budget);
    out.stages.baby_iterations = scan.iterations;
    out.stages.baby_records = static_cast<int>(scan.records.size());

    // Working record list always carries the index-1 seed triple up front; it
    // is the previous best-approximation denominator when only one scan
    // record exists, and it never enters the convergent table.
    out.records.clear();
    if (scan.records.empty() || scan.records.front().q != 1)
        out.records.push_back(seed_record(pair));
    out.records.insert(out.records.end(), scan.records.begin(), scan.records.end());

    if (scan.closure) {
        out.closure = detect_rational_closure(scan);
        out.rational = true;
        for (const auto& rec : out.records)
            if (rec.q > 1) out.table.push_denominator(rec.q);
        out.table.push_denominator(out.closure->n);
        out.theta = real_from_bigint(out.closure->p) / real_from_bigint(out.closure->n);
        return out;
    }

    for (const auto& rec : out.records)
        if (rec.q > 1) out.table.push_denominator(rec.q);

    // Giant-step sets until the next-to-last record gamma reaches the
    // refinement threshold for the requested digits.
    const Real delta_target = refine_threshold(opt.digits);
    auto prev = out.records[out.records.size() - 2];
    auto last = out.records.back();
    GiantStepState state = GiantStepState::create(pair, last, prev);
    state.max_steps = opt.set_step_guard;
    while (prev.gamma > delta_target) {
        GiantStepResult res = giant_step_set(state);
        out.stages.giant_sets += 1;
        out.stages.partial_quotients.push_back(res.partial_quotient);
        prev = last;
        last = res.next_record;
        out.records.push_back(last);
        out.table.push_denominator(last.q);
        if (out.table.back().a != res.partial_quotient)
            throw PrecisionError("compute_theta: set step count disagrees with the table quotient");
    }

    out.stages.final_delta = prev.gamma;
    const auto [q_prev, p_prev] = out.table.qp(out.table.back().j - 1);
    (void)q_prev;
    out.theta = refine_theta(prev, last, p_prev, out.table.back().p, opt.digits);
    return out;
}

CirclePair pair_for_integral_ratio(const IntegralSpec& spec) {
    IntegralSpec complementary = spec;
    complementary.psi = pi_value() / 2 - spec.psi;
    return params_from_integral(complementary);
}

IntegralView integral_view(const CirclePair& pair, const Real& theta, int digits) {
    IntegralView v;
    v.k2 = 2 / (pair.I + 1);
    // sin psi = r / (1 - c): the chord from z = 1 spans the angle pi - 2 psi.
    v.psi = asin(pair.r / (1 - pair.c));
    v.beta = 1 - 2 * theta;
    v.F_complete = complete_elliptic_F(v.k2, digits);
    v.F = v.beta * v.F_complete;
    return v;
}

}  // namespace ipoly
