#pragma once

#include <functional>
#include <optional>
#include <string>

#include <mpfr.h>

#include "dksred/exact.hpp"

namespace dksred {

/// Closed interval [lo, hi] of MPFR floats. Every operation rounds the lower
/// endpoint down and the upper endpoint up, so the true real value stays
/// enclosed regardless of precision.
class Interval {
public:
    explicit Interval(mpfr_prec_t precision = 64);
    Interval(const Rational& value, mpfr_prec_t precision);
    Interval(const Interval& other);
    Interval(Interval&& other) noexcept;
    Interval& operator=(Interval other) noexcept;
    ~Interval();

    static Interval exact(const Rational& value, mpfr_prec_t precision) {
        return Interval(value, precision);
    }

    mpfr_prec_t precision() const { return precision_; }

    const __mpfr_struct* lo() const { return lo_; }
    const __mpfr_struct* hi() const { return hi_; }

    Rational lower_rational() const;
    Rational upper_rational() const;
    double lower_double() const;
    double upper_double() const;
    double midpoint_double() const;
    /// Width as a double (rounded up).
    double width() const;

    bool is_point() const;

    /// Certain comparisons: true only when the relation holds for every
    /// point of the interval.
    bool certainly_le(const Rational& q) const;
    bool certainly_lt(const Rational& q) const;
    bool certainly_ge(const Rational& q) const;
    bool certainly_gt(const Rational& q) const;
    bool certainly_lt(const Interval& other) const;

    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, const Interval& b);
    friend Interval operator/(const Interval& a, const Interval& b);
    Interval operator-() const;

    /// Hull of the two minimum candidates: [min lo, min hi].
    friend Interval min(const Interval& a, const Interval& b);

    Interval exp() const;
    /// Requires lo > 0.
    Interval log2() const;
    /// Natural log, requires lo > 0.
    Interval log() const;
    /// k-th root of a nonnegative interval.
    Interval root(unsigned long k) const;
    Interval pow(unsigned long k) const;
    /// 2^x.
    Interval exp2() const;
    Interval floor() const;

    /// "[lo, hi]" with 17 significant digits.
    std::string to_string() const;

private:
    mpfr_prec_t precision_;
    mpfr_t lo_;
    mpfr_t hi_;
};

/// Builds an enclosure at the requested precision. Used to re-evaluate an
/// expression at escalating precision until a comparison is decided.
using IntervalFn = std::function<Interval(mpfr_prec_t)>;

inline constexpr mpfr_prec_t kDefaultPrecision = 64;
inline constexpr mpfr_prec_t kMaxPrecision = 8192;

/// Decides value <= bound where bound is known only through enclosures.
/// Returns nullopt only if precision kMaxPrecision still leaves the
/// comparison undecided (the two are equal or numerically indistinguishable).
std::optional<bool> decide_le(const Rational& value, const IntervalFn& bound,
                              mpfr_prec_t start = kDefaultPrecision);

/// Decides value < bound, same escalation.
std::optional<bool> decide_lt(const Rational& value, const IntervalFn& bound,
                              mpfr_prec_t start = kDefaultPrecision);

/// Floor of a real given through enclosures, escalating until lo and hi agree.
std::optional<BigInt> decide_floor(const IntervalFn& value, mpfr_prec_t start = kDefaultPrecision);

}  // namespace dksred
