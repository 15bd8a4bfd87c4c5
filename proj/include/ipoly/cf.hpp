#ifndef IPOLY_CF_HPP
#define IPOLY_CF_HPP

#include <optional>
#include <vector>

#include "ipoly/circle.hpp"
#include "ipoly/real.hpp"

namespace ipoly {

/// Row j of the best-approximation table: denominator q, partial quotient
/// a = (q_j - q_{j-2}) / q_{j-1}, numerator p = a p_{j-1} + p_{j-2}.
/// Rows flagged provisional failed the divisibility check (tolerated only at
/// the head of a sequence, in lenient mode) and carry no a/p.
struct ConvergentRow {
    int j = 0;
    BigInt q;
    BigInt a;
    BigInt p;
    bool provisional = false;
};

/// Convergent table with the virtual seed rows (j=-1: q=0, p=1) and
/// (j=0: q=1, p=0) kept implicit; `rows` holds j >= 1.
struct ConvergentTable {
    std::vector<ConvergentRow> rows;

    const ConvergentRow& back() const { return rows.back(); }
    const ConvergentRow& next_to_back() const { return rows[rows.size() - 2]; }

    /// (q, p) of row j, admitting the seed rows j = -1 and j = 0.
    std::pair<BigInt, BigInt> qp(int j) const;

    /// Extend with a new denominator; a must divide exactly.
    void push_denominator(const BigInt& q);
};

enum class DivisibilityMode {
    Strict,       // any failure is an error (circle/ellipse records)
    LenientHead,  // initial unsuitable rows are marked provisional
};

/// Build the table from a strictly increasing denominator sequence.
/// In strict mode a non-integer partial quotient throws DomainError (it means
/// the sequence is not a best-approximation denominator sequence).
ConvergentTable recover_numerators(const std::vector<BigInt>& q_seq,
                                   DivisibilityMode mode = DivisibilityMode::Strict);

struct BoundsVerdict {
    bool pass = true;
    int first_violation_row = -1;     // j index of the first failing pair
    Real max_interleave_excess;       // max positive value of the sign product
    Real max_identity_residual;       // max |q_n ||q_{n+1} t|| + q_{n+1} ||q_n t|| - 1|
};

/// Checks the interleaving property (q_n t - p_n)(q_{n+1} t - p_{n+1}) <= 0
/// and the identity q_n ||q_{n+1} t|| + q_{n+1} ||q_n t|| = 1 on consecutive
/// rows (seed row j=0 included).
BoundsVerdict convergent_bounds(const ConvergentTable& table, const Real& theta,
                                const Real& tolerance);

struct ClosureReport {
    BigInt n;  // closure order: the polygon closes after n sides
    BigInt p;  // winding number: theta = p / n exactly
};

/// Interpret a scan that ended with a closure signal: theta is rational and
/// the n-sided interscribed polygon closes for every starting vertex.
std::optional<ClosureReport> detect_rational_closure(const ScanResult& scan);

}  // namespace ipoly

#endif  // IPOLY_CF_HPP
