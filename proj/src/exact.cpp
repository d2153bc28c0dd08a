#include "dksred/exact.hpp"

#include <cctype>
#include <limits>

namespace dksred {

BigInt binomial(std::uint64_t n, std::uint64_t k) {
    BigInt out;
    if (k > n) {
        return out;
    }
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

BigInt pow_big(const BigInt& base, std::uint64_t exp) {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

Rational pow_rational(const Rational& base, std::uint64_t exp) {
    Rational out(pow_big(base.get_num(), exp), pow_big(base.get_den(), exp));
    out.canonicalize();
    return out;
}

std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k) {
    const BigInt c = binomial(n, k);
    if (!fits_u64(c)) {
        throw std::overflow_error("binomial coefficient exceeds 64 bits");
    }
    return to_u64(c);
}

BigInt surjections(std::uint64_t t, std::uint64_t s) {
    // inclusion-exclusion: sum_j (-1)^j C(s,j) (s-j)^t
    BigInt total = 0;
    for (std::uint64_t j = 0; j <= s; ++j) {
        BigInt term = binomial(s, j) * pow_big(BigInt(static_cast<unsigned long>(s - j)), t);
        if (j % 2 == 0) {
            total += term;
        } else {
            total -= term;
        }
    }
    return total;
}

Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) {
        throw std::invalid_argument("empty number");
    }
    if (s.find('/') != std::string::npos) {
        Rational q;
        if (q.set_str(s, 10) != 0 || q.get_den() == 0) {
            throw std::invalid_argument("malformed fraction: " + s);
        }
        q.canonicalize();
        return q;
    }
    std::size_t pos = 0;
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
        negative = s[pos] == '-';
        ++pos;
    }
    std::string digits;
    long scale = 0;
    bool seen_point = false;
    bool any_digit = false;
    for (; pos < s.size(); ++pos) {
        const char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
            digits.push_back(c);
            any_digit = true;
            if (seen_point) {
                --scale;
            }
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any_digit) {
        throw std::invalid_argument("malformed number: " + s);
    }
    if (pos < s.size()) {
        if (s[pos] != 'e' && s[pos] != 'E') {
            throw std::invalid_argument("malformed number: " + s);
        }
        const std::string exp_part = s.substr(pos + 1);
        std::size_t used = 0;
        long e = 0;
        try {
            e = std::stol(exp_part, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed exponent: " + s);
        }
        if (used != exp_part.size()) {
            throw std::invalid_argument("malformed exponent: " + s);
        }
        scale += e;
    }
    BigInt num(digits, 10);
    if (negative) {
        num = -num;
    }
    Rational out;
    if (scale >= 0) {
        out = Rational(num * pow_big(10, static_cast<std::uint64_t>(scale)));
    } else {
        out = Rational(num, pow_big(10, static_cast<std::uint64_t>(-scale)));
    }
    out.canonicalize();
    return out;
}

std::string to_string(const Rational& q) {
    return q.get_str(10);
}

std::string to_string(const BigInt& z) {
    return z.get_str(10);
}

std::string fraction_string(const Rational& q) {
    return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

double to_double(const Rational& q) {
    return mpq_get_d(q.get_mpq_t());
}

bool fits_u64(const BigInt& z) {
    return sgn(z) >= 0 && mpz_sizeinbase(z.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(const BigInt& z) {
    if (!fits_u64(z)) {
        throw std::overflow_error("integer does not fit in 64 bits");
    }
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, z.get_mpz_t());
    return out;
}

}  // namespace dksred
