#ifndef IPOLY_PIPELINE_HPP
#define IPOLY_PIPELINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "ipoly/cf.hpp"
#include "ipoly/circle.hpp"
#include "ipoly/curve.hpp"

namespace ipoly {

struct ThetaOptions {
    int digits = 24;
    Real eps_handoff = Real(1) / 10;   // baby steps stop here, giant steps take over
    long baby_budget = 1000000;
    BigInt set_step_guard = BigInt(100000000);  // max steps within one giant-step set
};

struct ThetaStages {
    long baby_iterations = 0;
    int baby_records = 0;
    int giant_sets = 0;
    std::vector<BigInt> partial_quotients;  // one per giant-step set
    Real final_delta;                       // gamma of the next-to-last record
};

struct ThetaResult {
    bool rational = false;
    Real theta;                     // refined value (or exact p/n for closures)
    std::optional<ClosureReport> closure;
    ConvergentTable table;
    std::vector<RecordTriple> records;  // index-1 seed triple included
    ThetaStages stages;
};

/// Full rotation-number computation for a circle pair: baby-step scan to the
/// handoff threshold, giant-step sets until the refinement threshold for the
/// requested digits, then the two-record refinement. Rational (Poncelet)
/// closure is reported as an exact fraction.
ThetaResult compute_theta(const CirclePair& pair, const ThetaOptions& opt);

/// Amplitude/modulus view of a circle-pair run: the pair whose rotation
/// number equals Phi(pi - 2 psi, I) / (2 Phi(pi, I)) with I = 2/k^2 - 1, so
/// that F(psi, k) = (1 - 2 theta) F(pi/2, k). This is params_from_integral
/// evaluated at the complementary amplitude pi/2 - psi.
CirclePair pair_for_integral_ratio(const IntegralSpec& spec);

struct IntegralView {
    Real psi;    // amplitude such that F(psi, k)/F(pi/2, k) = 1 - 2 theta
    Real k2;     // modulus squared, 2 / (I + 1)
    Real beta;   // 1 - 2 theta
    Real F;      // incomplete integral F(psi, k)
    Real F_complete;
};

/// Derive the (psi, k^2, beta, F) view from a finished run on `pair`.
IntegralView integral_view(const CirclePair& pair, const Real& theta, int digits);

}  // namespace ipoly

#endif  // IPOLY_PIPELINE_HPP
