#include "ipoly/cf.hpp"

#include "ipoly/errors.hpp"

namespace ipoly {

std::pair<BigInt, BigInt> ConvergentTable::qp(int j) const {
    if (j == -1) return {BigInt(0), BigInt(1)};
    if (j == 0) return {BigInt(1), BigInt(0)};
    for (auto it = rows.rbegin(); it != rows.rend(); ++it)
        if (it->j == j && !it->provisional) return {it->q, it->p};
    throw DomainError("ConvergentTable::qp: no such row");
}

namespace {

struct Anchors {
    BigInt qm2 = 0, qm1 = 1, pm2 = 1, pm1 = 0;
    int j = 0;
};

bool try_push(Anchors& a, const BigInt& q, ConvergentRow& out) {
    if ((q - a.qm2) % a.qm1 != 0) return false;
    out.j = a.j + 1;
    out.q = q;
    out.a = (q - a.qm2) / a.qm1;
    out.p = out.a * a.pm1 + a.pm2;
    out.provisional = false;
    a.qm2 = a.qm1;
    a.qm1 = q;
    a.pm2 = a.pm1;
    a.pm1 = out.p;
    a.j = out.j;
    return true;
}

}  // namespace

void ConvergentTable::push_denominator(const BigInt& q) {
    Anchors a;
    if (!rows.empty()) {
        const auto& last = back();
        a.j = last.j;
        a.qm1 = last.q;
        a.pm1 = last.p;
        if (rows.size() >= 2) {
            a.qm2 = next_to_back().q;
            a.pm2 = next_to_back().p;
        }  // else seeds (0, 1)/(1, 0) reduce to qm2 = 1, pm2 = 0
        if (rows.size() == 1) {
            a.qm2 = 1;
            a.pm2 = 0;
        }
    }
    ConvergentRow row;
    if (!try_push(a, q, row))
        throw DomainError("push_denominator: (q_j - q_{j-2}) not divisible by q_{j-1}");
    rows.push_back(row);
}

ConvergentTable recover_numerators(const std::vector<BigInt>& q_seq, DivisibilityMode mode) {
    for (std::size_t i = 0; i < q_seq.size(); ++i) {
        if (q_seq[i] < 1 || (i > 0 && q_seq[i] <= q_seq[i - 1]))
            throw DomainError("recover_numerators: q sequence must be strictly increasing, >= 1");
    }
    if (mode == DivisibilityMode::Strict) {
        ConvergentTable table;
        Anchors a;
        for (const BigInt& q : q_seq) {
            ConvergentRow row;
            if (!try_push(a, q, row))
                throw DomainError(
                    "recover_numerators: q = " + q.str() +
                    " fails the divisibility check; the input is not a "
                    "best-approximation denominator sequence");
            table.rows.push_back(row);
        }
        return table;
    }

    // Lenient mode: a limited number of initial denominators may be
    // unsuitable. Find the smallest head offset from which the whole
    // remaining sequence builds cleanly; mark dropped rows provisional.
    const std::size_t max_drop = (std::min<std::size_t>)(q_seq.size(), 8);
    for (std::size_t s = 0; s <= max_drop; ++s) {
        ConvergentTable table;
        Anchors a;
        bool ok = true;
        for (std::size_t i = 0; i < s; ++i) {
            ConvergentRow row;
            row.q = q_seq[i];
            row.provisional = true;
            table.rows.push_back(row);
        }
        for (std::size_t i = s; i < q_seq.size(); ++i) {
            ConvergentRow row;
            if (!try_push(a, q_seq[i], row)) {
                ok = false;
                break;
            }
            table.rows.push_back(row);
        }
        if (ok) return table;
    }
    throw DomainError("recover_numerators: no valid tail within the provisional-head allowance");
}

BoundsVerdict convergent_bounds(const ConvergentTable& table, const Real& theta,
                                const Real& tolerance) {
    BoundsVerdict v;
    v.max_interleave_excess = Real(0);
    v.max_identity_residual = Real(0);

    std::vector<std::pair<BigInt, BigInt>> qp;
    qp.emplace_back(BigInt(1), BigInt(0));  // seed row j = 0
    for (const auto& row : table.rows)
        if (!row.provisional) qp.emplace_back(row.q, row.p);

    for (std::size_t i = 0; i + 1 < qp.size(); ++i) {
        const Real qn = real_from_bigint(qp[i].first), pn = real_from_bigint(qp[i].second);
        const Real qn1 = real_from_bigint(qp[i + 1].first), pn1 = real_from_bigint(qp[i + 1].second);
        const Real dn = qn * theta - pn;    // signed distance; |.| = ||q_n theta||
        const Real dn1 = qn1 * theta - pn1;
        const Real interleave = dn * dn1;
        const Real identity = abs(qn * abs(dn1) + qn1 * abs(dn) - 1);
        v.max_interleave_excess = (std::max)(v.max_interleave_excess, interleave);
        v.max_identity_residual = (std::max)(v.max_identity_residual, identity);
        if ((interleave > tolerance || identity > tolerance) && v.pass) {
            v.pass = false;
            v.first_violation_row = static_cast<int>(i);
        }
    }
    return v;
}

std::optional<ClosureReport> detect_rational_closure(const ScanResult& scan) {
    if (!scan.closure) return std::nullopt;
    ConvergentTable table;
    for (const auto& rec : scan.records) {
        if (rec.q == 1) continue;  // coincides with the seed row j = 0
        table.push_denominator(rec.q);
    }
    table.push_denominator(*scan.closure);
    ClosureReport rep;
    rep.n = *scan.closure;
    rep.p = table.back().p;
    return rep;
}

}  // namespace ipoly
