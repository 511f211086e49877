#include "diagbase/numeric.hpp"

#include <cmath>

#include "diagbase/errors.hpp"

namespace diagbase {

std::string to_string(const Rational& v) {
  const BigInt num = boost::multiprecision::numerator(v);
  const BigInt den = boost::multiprecision::denominator(v);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

BigInt factorial(std::uint64_t n) {
  BigInt r = 1;
  for (std::uint64_t i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt ipow(const BigInt& base, std::uint64_t exp) {
  BigInt r = 1;
  BigInt b = base;
  while (exp) {
    if (exp & 1U) r *= b;
    exp >>= 1U;
    if (exp) b *= b;
  }
  return r;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t prime_factor_count(BigInt n) {
  std::uint64_t count = 0;
  for (std::uint64_t p = 2; n > 1; ++p) {
    if (BigInt(p) * p > n) {
      ++count;
      break;
    }
    while (n % p == 0) {
      n /= p;
      ++count;
    }
  }
  return count;
}

std::uint64_t ceil_log(const BigInt& value, std::uint64_t base) {
  if (base < 2) throw DomainError("logarithm base must be at least 2");
  if (value < 1) throw DomainError("logarithm argument must be at least 1");
  std::uint64_t e = 0;
  BigInt acc = 1;
  while (acc < value) {
    acc *= base;
    ++e;
  }
  return e;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool prime_power(std::uint64_t q, std::uint64_t& p, std::uint64_t& f) {
  if (q < 2) return false;
  for (std::uint64_t d = 2; d <= q; ++d) {
    if (q % d != 0) continue;
    p = d;
    f = 0;
    while (q % d == 0) {
      q /= d;
      ++f;
    }
    return q == 1;
  }
  return false;
}

double to_double(const Rational& v) { return v.convert_to<double>(); }

namespace {
const BigInt kScale = BigInt(1) << 40;

double log2_of(const Rational& x) {
  if (x <= 0) throw DomainError("log of non-positive value");
  // Split off powers of two so huge rationals stay inside double range.
  BigInt num = boost::multiprecision::numerator(x);
  BigInt den = boost::multiprecision::denominator(x);
  long shift = static_cast<long>(boost::multiprecision::msb(num)) -
               static_cast<long>(boost::multiprecision::msb(den));
  Rational scaled = shift >= 0 ? x / Rational(BigInt(1) << shift) : x * Rational(BigInt(1) << (-shift));
  return static_cast<double>(shift) + std::log2(scaled.convert_to<double>());
}
}  // namespace

Rational log2_lower(const Rational& x) {
  double v = log2_of(x);
  double guard = 1e-12 * std::max(1.0, std::fabs(v));
  double scaled = std::floor((v - guard) * 1099511627776.0);
  return Rational(BigInt(static_cast<long long>(scaled)), kScale);
}

Rational log2_upper(const Rational& x) {
  double v = log2_of(x);
  double guard = 1e-12 * std::max(1.0, std::fabs(v));
  double scaled = std::ceil((v + guard) * 1099511627776.0);
  return Rational(BigInt(static_cast<long long>(scaled)), kScale);
}

Rational pow_lower(std::uint64_t q, std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw DomainError("zero denominator in exponent");
  if (num % den == 0) return Rational(ipow(BigInt(q), num / den));
  // floor of the den-th root of q^num, found by bisection.
  const BigInt target = ipow(BigInt(q), num);
  BigInt lo = 0;
  BigInt hi = 1;
  while (ipow(hi, den) <= target) hi *= 2;
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) / 2;
    if (ipow(mid, den) <= target)
      lo = mid;
    else
      hi = mid;
  }
  return Rational(lo);
}

}  // namespace diagbase
