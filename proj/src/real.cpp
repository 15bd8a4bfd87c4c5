#include "ipoly/real.hpp"

#include <mpfr.h>

#include <cctype>
#include <sstream>

namespace ipoly {

int& precision_pin_count() {
    static int count = 0;  // mutated only outside concurrent regions
    return count;
}

Real pi_value() {
    Real r;
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
}

Real working_tol(int slack) {
    const int digits = static_cast<int>(Real::default_precision());
    return pow(Real(10), slack - digits);
}

Real real_from_bigint(const BigInt& n) { return Real(n.str()); }

Real nearest_int_distance(const Real& x) {
    const Real f = x - floor(x);
    return (std::min)(f, Real(1 - f));
}

Real ccw_advance(const Complex& from, const Complex& to) {
    const Complex rel = to * from.conj();
    Real adv = atan2(rel.im, rel.re);
    if (adv <= 0) adv += 2 * pi_value();
    return adv;
}

std::string to_decimal_string(const Real& x, int significant) {
    if (significant < 1) significant = 1;
    // scientific precision counts digits after the point: one less than the
    // significant-digit count
    std::string s = x.str(significant - 1, std::ios_base::scientific);
    // s looks like [-]d.ddddde[+-]XX ; rewrite in positional notation.
    bool neg = false;
    std::size_t pos = 0;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        pos = 1;
    }
    const std::size_t epos = s.find_first_of("eE");
    std::string mant = s.substr(pos, epos - pos);
    long exp10 = (epos == std::string::npos) ? 0 : std::stol(s.substr(epos + 1));
    const std::size_t dot = mant.find('.');
    std::string digits = (dot == std::string::npos)
                             ? mant
                             : mant.substr(0, dot) + mant.substr(dot + 1);
    while (static_cast<int>(digits.size()) < significant) digits.push_back('0');

    std::string out;
    if (exp10 >= 0) {
        if (exp10 + 1 >= static_cast<long>(digits.size())) {
            out = digits + std::string(exp10 + 1 - digits.size(), '0');
        } else {
            out = digits.substr(0, exp10 + 1) + "." + digits.substr(exp10 + 1);
        }
    } else {
        out = "0." + std::string(-exp10 - 1, '0') + digits;
    }
    return neg ? "-" + out : out;
}

}  // namespace ipoly
