#ifndef IPOLY_REAL_HPP
#define IPOLY_REAL_HPP

#include <boost/multiprecision/mpfr.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <string>
#include <utility>

namespace ipoly {

// Variable-precision real. Precision is per-thread and set in decimal digits
// through PrecisionGuard; values keep the precision they were created with.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                            boost::multiprecision::et_off>;

// Unbounded integer for convergent numerators/denominators and record indices.
using BigInt = boost::multiprecision::cpp_int;

/// Internal working precision for a requested number of output digits.
inline int working_digits(int requested_digits) {
    const int scaled = (requested_digits * 12) / 10 + 30;
    return std::max(scaled, 64);
}

// The mpfr backend in this Boost release keeps ONE process-global default
// precision, so concurrent computations must agree on it. PrecisionPin
// freezes a common precision for a multi-threaded region; while a pin is
// held, nested PrecisionGuards become no-ops.
int& precision_pin_count();

/// Scoped setter for the default decimal precision (no-op while pinned).
class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned decimal_digits) : active_(precision_pin_count() == 0) {
        if (active_) {
            saved_ = Real::default_precision();
            Real::default_precision(decimal_digits);
        }
    }
    ~PrecisionGuard() {
        if (active_) Real::default_precision(saved_);
    }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    bool active_;
    unsigned saved_ = 0;
};

/// Freezes one working precision across a concurrent region. Pick a value at
/// least as large as any nested computation would request.
class PrecisionPin {
public:
    explicit PrecisionPin(unsigned decimal_digits) : saved_(Real::default_precision()) {
        Real::default_precision(decimal_digits);
        ++precision_pin_count();
    }
    ~PrecisionPin() {
        --precision_pin_count();
        Real::default_precision(saved_);
    }
    PrecisionPin(const PrecisionPin&) = delete;
    PrecisionPin& operator=(const PrecisionPin&) = delete;

private:
    unsigned saved_;
};

/// pi at the current working precision (no caching across precision changes).
Real pi_value();

/// 10^(-current_digits + slack); the default per-operation tolerance.
Real working_tol(int slack = 5);

/// Decimal string with exactly `significant` significant digits, plain
/// positional notation (no exponent) for the magnitudes this library emits.
std::string to_decimal_string(const Real& x, int significant);

Real real_from_bigint(const BigInt& n);

/// min({x}, 1 - {x}): distance from x to the nearest integer.
Real nearest_int_distance(const Real& x);

// Minimal complex value type over Real. std::complex is not specified for
// user-defined scalars, and the handful of operations needed here are small.
struct Complex {
    Real re, im;

    Complex() : re(0), im(0) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    explicit Complex(const Real& r) : re(r), im(0) {}

    friend Complex operator+(const Complex& a, const Complex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend Complex operator-(const Complex& a, const Complex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator*(const Real& s, const Complex& a) { return {s * a.re, s * a.im}; }
    friend Complex operator-(const Real& s, const Complex& a) { return {s - a.re, -a.im}; }
    friend Complex operator/(const Complex& a, const Complex& b) {
        const Real d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }

    Complex conj() const { return {re, -im}; }
    Real norm() const { return re * re + im * im; }
    Real abs() const { return sqrt(norm()); }
};

inline Complex unit_vertex(const Real& angle) { return {cos(angle), sin(angle)}; }

/// | |z| - 1 |, the unit-circle membership residual.
inline Real unit_deviation(const Complex& z) { return abs(z.abs() - 1); }

/// Counterclockwise angular advance from one unit vertex to another, in
/// (0, 2*pi]. Chord advances can exceed pi where the measure density is low.
Real ccw_advance(const Complex& from, const Complex& to);

}  // namespace ipoly

#endif  // IPOLY_REAL_HPP
