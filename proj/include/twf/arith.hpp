#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace twf {

using BigInt = mpz_class;
using Rational = mpq_class;

// Error taxonomy. Callers that need to route (data vs. precondition) catch
// the specific type; everything derives from Error.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PreconditionError : Error {
    using Error::Error;
};
struct DataError : Error {
    using Error::Error;
};
struct SingularCurveError : Error {
    using Error::Error;
};
struct BadReductionError : Error {
    using Error::Error;
};
struct NonSimpleRootError : Error {
    using Error::Error;
};
struct RamifiedPrimeError : Error {
    using Error::Error;
};

struct ResidueClass {
    uint64_t value = 0;
    uint64_t modulus = 1;
    bool operator==(const ResidueClass&) const = default;
};

inline uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline uint64_t add_mod(uint64_t a, uint64_t b, uint64_t m) {
    uint64_t s = a + b;
    if (s >= m || s < a) s -= m;
    return s;
}

inline uint64_t sub_mod(uint64_t a, uint64_t b, uint64_t m) {
    return a >= b ? a - b : a + (m - b);
}

uint64_t mod_pow(uint64_t base, uint64_t exp, uint64_t m);

// Reduce a signed value into [0, m).
uint64_t reduce(int64_t x, uint64_t m);
uint64_t reduce(const BigInt& x, uint64_t m);

// Inverse mod m; throws PreconditionError when gcd(a, m) != 1.
uint64_t inv_mod(uint64_t a, uint64_t m);

bool is_prime(uint64_t n);
std::vector<uint64_t> primes_up_to(uint64_t n);
uint64_t next_prime(uint64_t n);  // smallest prime > n

// x in (F_p^*)^n, via x^((p-1)/d) == 1 with d = gcd(n, p-1).
bool is_nth_power(uint64_t x, uint64_t n, uint64_t p);

// Exponent of the n-th power subgroup test: d = gcd(n, p-1).
uint64_t power_subgroup_index(uint64_t n, uint64_t p);

uint64_t primitive_root(uint64_t p);

// Membership table for (F_p^*)^n, indexed by residue. Entry 0 is false.
std::vector<char> nth_power_table(uint64_t n, uint64_t p);

int valuation(const BigInt& x, uint64_t p);  // x != 0
int valuation(int64_t x, uint64_t p);

// Distinct prime divisors, ascending. |x| >= 1.
std::vector<uint64_t> prime_divisors(uint64_t x);
std::vector<BigInt> prime_divisors(const BigInt& x);

BigInt big_pow(const BigInt& base, unsigned long exp);
BigInt big_from_u64(uint64_t x);
BigInt big_from_i64(int64_t x);
bool fits_i64(const BigInt& x);
int64_t to_i64(const BigInt& x);  // throws PreconditionError if it does not fit
uint64_t to_u64(const BigInt& x);

}  // namespace twf
