#pragma once

#include <cmath>
#include <limits>

#include "lacuna/errors.hpp"

namespace lacuna {

// A real number stored as (sign, log magnitude).  Everything the library does
// with weight sequences and series coefficients happens in this domain:
// quantities like M_j for j ~ 1e16 or tau(2^60) have log magnitudes around
// 1e16 and would not survive a trip through plain doubles.
//
// sign is -1, 0 or +1; log_mag is ln|x| and is ignored when sign == 0
// (kept at -inf by the constructors for cleanliness).
struct SignedLog {
    int sign = 0;
    double log_mag = -std::numeric_limits<double>::infinity();

    static SignedLog zero() { return {}; }

    static SignedLog from_log(int sign, double log_mag) {
        if (sign == 0) return {};
        if (std::isnan(log_mag)) throw NumericError("SignedLog: log magnitude is NaN");
        return {sign < 0 ? -1 : 1, log_mag};
    }

    static SignedLog from_real(double x) {
        if (std::isnan(x)) throw NumericError("SignedLog: input is NaN");
        if (x == 0.0) return {};
        return {std::signbit(x) ? -1 : 1, std::log(std::fabs(x))};
    }

    bool is_zero() const { return sign == 0; }

    // Saturates to +-inf when |x| exceeds the double range.
    double to_real() const {
        if (sign == 0) return 0.0;
        return sign * std::exp(log_mag);
    }

    SignedLog operator-() const { return {-sign, log_mag}; }

    friend SignedLog operator*(SignedLog a, SignedLog b) {
        if (a.sign == 0 || b.sign == 0) return {};
        return {a.sign * b.sign, a.log_mag + b.log_mag};
    }

    friend SignedLog operator/(SignedLog a, SignedLog b) {
        if (b.sign == 0) throw NumericError("SignedLog: division by zero");
        if (a.sign == 0) return {};
        return {a.sign * b.sign, a.log_mag - b.log_mag};
    }

    // Signed log-sum-exp.  Exact cancellation (equal magnitudes, opposite
    // signs) yields the true zero element.
    friend SignedLog operator+(SignedLog a, SignedLog b) {
        if (a.sign == 0) return b;
        if (b.sign == 0) return a;
        const SignedLog& hi = (a.log_mag >= b.log_mag) ? a : b;
        const SignedLog& lo = (a.log_mag >= b.log_mag) ? b : a;
        double d = lo.log_mag - hi.log_mag;  // <= 0
        if (a.sign == b.sign) return {a.sign, hi.log_mag + std::log1p(std::exp(d))};
        if (d == 0.0) return {};
        return {hi.sign, hi.log_mag + std::log1p(-std::exp(d))};
    }

    friend SignedLog operator-(SignedLog a, SignedLog b) { return a + (-b); }

    // Total order consistent with the represented reals.
    friend bool operator<(SignedLog a, SignedLog b) {
        if (a.sign != b.sign) return a.sign < b.sign;
        if (a.sign == 0) return false;
        return a.sign > 0 ? a.log_mag < b.log_mag : a.log_mag > b.log_mag;
    }
    friend bool operator>(SignedLog a, SignedLog b) { return b < a; }
    friend bool operator<=(SignedLog a, SignedLog b) { return !(b < a); }
    friend bool operator>=(SignedLog a, SignedLog b) { return !(a < b); }
};

inline SignedLog pow_int(SignedLog base, long long e) {
    if (e == 0) return SignedLog::from_log(1, 0.0);
    if (base.sign == 0) {
        if (e < 0) throw NumericError("SignedLog: zero to a negative power");
        return {};
    }
    int s = (base.sign < 0 && (e & 1)) ? -1 : 1;
    return {s, base.log_mag * static_cast<double>(e)};
}

}  // namespace lacuna
