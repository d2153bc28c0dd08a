#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace dksred {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Raised when an operation would exceed a configured enumeration budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

BigInt binomial(std::uint64_t n, std::uint64_t k);
BigInt pow_big(const BigInt& base, std::uint64_t exp);
Rational pow_rational(const Rational& base, std::uint64_t exp);

/// Exact integer C(n,k) when it fits; throws std::overflow_error otherwise.
std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k);

/// Number of surjections from a t-set onto an s-set, i.e. s! * S(t, s).
BigInt surjections(std::uint64_t t, std::uint64_t s);

/// Parses "3", "-2/7", "0.125", "1e-3" into an exact rational.
Rational parse_rational(std::string_view text);

/// "p/q" with q > 0, or "p" when q == 1.
std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

/// Always "p/q", even for integers.
std::string fraction_string(const Rational& q);

double to_double(const Rational& q);

std::uint64_t to_u64(const BigInt& z);
bool fits_u64(const BigInt& z);

}  // namespace dksred
