#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace diagbase {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const BigInt& v) { return v.str(); }
std::string to_string(const Rational& v);

BigInt factorial(std::uint64_t n);
BigInt ipow(const BigInt& base, std::uint64_t exp);
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

// Sum of exponents in the prime factorisation (0 for 1). Used as a bound on
// the length of a strictly decreasing subgroup chain.
std::uint64_t prime_factor_count(BigInt n);

// Smallest e with base^e >= value, for base >= 2 and value >= 1.
std::uint64_t ceil_log(const BigInt& value, std::uint64_t base);

// Decomposes q = p^f; returns false if q is not a prime power.
bool prime_power(std::uint64_t q, std::uint64_t& p, std::uint64_t& f);

bool is_prime(std::uint64_t n);

// Rational lower/upper bounds for log2(x), width about 2^-40 plus a guard.
Rational log2_lower(const Rational& x);
Rational log2_upper(const Rational& x);

// Rational lower bound for q^(num/den).
Rational pow_lower(std::uint64_t q, std::uint64_t num, std::uint64_t den);

double to_double(const Rational& v);

}  // namespace diagbase
