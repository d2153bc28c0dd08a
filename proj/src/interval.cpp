#include "dksred/interval.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <utility>

namespace dksred {

Interval::Interval(mpfr_prec_t precision) : precision_(precision) {
    mpfr_init2(lo_, precision_);
    mpfr_init2(hi_, precision_);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Rational& value, mpfr_prec_t precision) : precision_(precision) {
    mpfr_init2(lo_, precision_);
    mpfr_init2(hi_, precision_);
    mpfr_set_q(lo_, value.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, value.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Interval& other) : precision_(other.precision_) {
    mpfr_init2(lo_, precision_);
    mpfr_init2(hi_, precision_);
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : Interval(other.precision_) {
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(Interval other) noexcept {
    std::swap(precision_, other.precision_);
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
    return *this;
}

Interval::~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Rational Interval::lower_rational() const {
    Rational q;
    mpfr_get_q(q.get_mpq_t(), lo_);
    return q;
}

Rational Interval::upper_rational() const {
    Rational q;
    mpfr_get_q(q.get_mpq_t(), hi_);
    return q;
}

double Interval::lower_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::upper_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Interval::midpoint_double() const {
    mpfr_t mid;
    mpfr_init2(mid, precision_ + 1);
    mpfr_add(mid, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
    const double d = mpfr_get_d(mid, MPFR_RNDN);
    mpfr_clear(mid);
    return d;
}

double Interval::width() const {
    mpfr_t w;
    mpfr_init2(w, precision_);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    const double d = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return d;
}

bool Interval::is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }

bool Interval::certainly_le(const Rational& q) const { return mpfr_cmp_q(hi_, q.get_mpq_t()) <= 0; }
bool Interval::certainly_lt(const Rational& q) const { return mpfr_cmp_q(hi_, q.get_mpq_t()) < 0; }
bool Interval::certainly_ge(const Rational& q) const { return mpfr_cmp_q(lo_, q.get_mpq_t()) >= 0; }
bool Interval::certainly_gt(const Rational& q) const { return mpfr_cmp_q(lo_, q.get_mpq_t()) > 0; }
bool Interval::certainly_lt(const Interval& other) const { return mpfr_less_p(hi_, other.lo_) != 0; }

namespace {

mpfr_prec_t joint_precision(const Interval& a, const Interval& b) {
    return std::max(a.precision(), b.precision());
}

}  // namespace

Interval operator+(const Interval& a, const Interval& b) {
    Interval out(joint_precision(a, b));
    mpfr_add(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return out;
}

Interval operator-(const Interval& a, const Interval& b) {
    Interval out(joint_precision(a, b));
    mpfr_sub(out.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(out.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return out;
}

Interval operator*(const Interval& a, const Interval& b) {
    const mpfr_prec_t p = joint_precision(a, b);
    Interval out(p);
    mpfr_t tmp;
    mpfr_init2(tmp, p);
    const __mpfr_struct* xs[2] = {a.lo_, a.hi_};
    const __mpfr_struct* ys[2] = {b.lo_, b.hi_};
    bool first = true;
    for (auto* x : xs) {
        for (auto* y : ys) {
            mpfr_mul(tmp, x, y, MPFR_RNDD);
            if (first || mpfr_less_p(tmp, out.lo_)) {
                mpfr_set(out.lo_, tmp, MPFR_RNDD);
            }
            mpfr_mul(tmp, x, y, MPFR_RNDU);
            if (first || mpfr_greater_p(tmp, out.hi_)) {
                mpfr_set(out.hi_, tmp, MPFR_RNDU);
            }
            first = false;
        }
    }
    mpfr_clear(tmp);
    return out;
}

Interval operator/(const Interval& a, const Interval& b) {
    if (mpfr_sgn(b.lo_) <= 0 && mpfr_sgn(b.hi_) >= 0) {
        throw std::domain_error("interval division by an interval containing zero");
    }
    const mpfr_prec_t p = joint_precision(a, b);
    Interval out(p);
    mpfr_t tmp;
    mpfr_init2(tmp, p);
    const __mpfr_struct* xs[2] = {a.lo_, a.hi_};
    const __mpfr_struct* ys[2] = {b.lo_, b.hi_};
    bool first = true;
    for (auto* x : xs) {
        for (auto* y : ys) {
            mpfr_div(tmp, x, y, MPFR_RNDD);
            if (first || mpfr_less_p(tmp, out.lo_)) {
                mpfr_set(out.lo_, tmp, MPFR_RNDD);
            }
            mpfr_div(tmp, x, y, MPFR_RNDU);
            if (first || mpfr_greater_p(tmp, out.hi_)) {
                mpfr_set(out.hi_, tmp, MPFR_RNDU);
            }
            first = false;
        }
    }
    mpfr_clear(tmp);
    return out;
}

Interval Interval::operator-() const {
    Interval out(precision_);
    mpfr_neg(out.lo_, hi_, MPFR_RNDD);
    mpfr_neg(out.hi_, lo_, MPFR_RNDU);
    return out;
}

Interval min(const Interval& a, const Interval& b) {
    Interval out(joint_precision(a, b));
    mpfr_min(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_min(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return out;
}

Interval Interval::exp() const {
    Interval out(precision_);
    mpfr_exp(out.lo_, lo_, MPFR_RNDD);
    mpfr_exp(out.hi_, hi_, MPFR_RNDU);
    return out;
}

Interval Interval::exp2() const {
    Interval out(precision_);
    mpfr_exp2(out.lo_, lo_, MPFR_RNDD);
    mpfr_exp2(out.hi_, hi_, MPFR_RNDU);
    return out;
}

Interval Interval::log2() const {
    if (mpfr_sgn(lo_) <= 0) {
        throw std::domain_error("log2 of a non-positive interval");
    }
    Interval out(precision_);
    mpfr_log2(out.lo_, lo_, MPFR_RNDD);
    mpfr_log2(out.hi_, hi_, MPFR_RNDU);
    return out;
}

Interval Interval::log() const {
    if (mpfr_sgn(lo_) <= 0) {
        throw std::domain_error("log of a non-positive interval");
    }
    Interval out(precision_);
    mpfr_log(out.lo_, lo_, MPFR_RNDD);
    mpfr_log(out.hi_, hi_, MPFR_RNDU);
    return out;
}

Interval Interval::root(unsigned long k) const {
    if (mpfr_sgn(lo_) < 0) {
        throw std::domain_error("root of a negative interval");
    }
    Interval out(precision_);
    mpfr_rootn_ui(out.lo_, lo_, k, MPFR_RNDD);
    mpfr_rootn_ui(out.hi_, hi_, k, MPFR_RNDU);
    return out;
}

Interval Interval::pow(unsigned long k) const {
    if (mpfr_sgn(lo_) < 0) {
        throw std::domain_error("pow of an interval with negative part");
    }
    Interval out(precision_);
    mpfr_pow_ui(out.lo_, lo_, k, MPFR_RNDD);
    mpfr_pow_ui(out.hi_, hi_, k, MPFR_RNDU);
    return out;
}

Interval Interval::floor() const {
    Interval out(precision_);
    mpfr_floor(out.lo_, lo_);
    mpfr_floor(out.hi_, hi_);
    return out;
}

std::string Interval::to_string() const {
    char buf[128];
    std::string out = "[";
    mpfr_snprintf(buf, sizeof(buf), "%.17RDg", lo_);
    out += buf;
    out += ", ";
    mpfr_snprintf(buf, sizeof(buf), "%.17RUg", hi_);
    out += buf;
    out += "]";
    return out;
}

std::optional<bool> decide_le(const Rational& value, const IntervalFn& bound, mpfr_prec_t start) {
    for (mpfr_prec_t p = start; p <= kMaxPrecision; p *= 2) {
        const Interval b = bound(p);
        if (b.certainly_ge(value)) {
            return true;
        }
        if (b.certainly_lt(value)) {
            return false;
        }
    }
    return std::nullopt;
}

std::optional<bool> decide_lt(const Rational& value, const IntervalFn& bound, mpfr_prec_t start) {
    for (mpfr_prec_t p = start; p <= kMaxPrecision; p *= 2) {
        const Interval b = bound(p);
        if (b.certainly_gt(value)) {
            return true;
        }
        if (b.certainly_le(value)) {
            return false;
        }
    }
    return std::nullopt;
}

std::optional<BigInt> decide_floor(const IntervalFn& value, mpfr_prec_t start) {
    for (mpfr_prec_t p = start; p <= kMaxPrecision; p *= 2) {
        const Interval f = value(p).floor();
        if (f.is_point()) {
            BigInt z;
            mpfr_get_z(z.get_mpz_t(), f.lo(), MPFR_RNDN);
            return z;
        }
    }
    return std::nullopt;
}

}  // namespace dksred
