#include "twf/arith.hpp"

#include <algorithm>
#include <numeric>

namespace twf {

uint64_t mod_pow(uint64_t base, uint64_t exp, uint64_t m) {
    if (m == 0) throw PreconditionError("mod_pow: modulus must be positive");
    if (m == 1) return 0;
    uint64_t result = 1;
    base %= m;
    while (exp) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

uint64_t reduce(int64_t x, uint64_t m) {
    if (x >= 0) return static_cast<uint64_t>(x) % m;
    // -(x+1) avoids overflow at INT64_MIN
    uint64_t r = static_cast<uint64_t>(-(x + 1)) % m;
    return m - 1 - r;
}

uint64_t reduce(const BigInt& x, uint64_t m) {
    BigInt r;
    BigInt mm = big_from_u64(m);
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), mm.get_mpz_t());
    return to_u64(r);
}

uint64_t inv_mod(uint64_t a, uint64_t m) {
    // extended Euclid on signed 128-bit to stay exact for m < 2^63
    __int128 r0 = m, r1 = a % m, s0 = 0, s1 = 1;
    while (r1 != 0) {
        __int128 q = r0 / r1;
        __int128 t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    if (r0 != 1) throw PreconditionError("inv_mod: not invertible");
    if (s0 < 0) s0 += m;
    return static_cast<uint64_t>(s0);
}

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    static constexpr uint64_t small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (uint64_t q : small) {
        if (n % q == 0) return n == q;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // this witness set is deterministic for all n < 2^64
    for (uint64_t a : small) {
        uint64_t x = mod_pow(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<uint64_t> primes_up_to(uint64_t n) {
    std::vector<uint64_t> out;
    if (n < 2) return out;
    std::vector<char> sieve(n + 1, 1);
    sieve[0] = sieve[1] = 0;
    for (uint64_t i = 2; i * i <= n; ++i) {
        if (!sieve[i]) continue;
        for (uint64_t j = i * i; j <= n; j += i) sieve[j] = 0;
    }
    for (uint64_t i = 2; i <= n; ++i) {
        if (sieve[i]) out.push_back(i);
    }
    return out;
}

uint64_t next_prime(uint64_t n) {
    uint64_t q = n + 1;
    while (!is_prime(q)) ++q;
    return q;
}

uint64_t power_subgroup_index(uint64_t n, uint64_t p) {
    return std::gcd(n, p - 1);
}

bool is_nth_power(uint64_t x, uint64_t n, uint64_t p) {
    if (!is_prime(p)) throw PreconditionError("is_nth_power: modulus must be prime");
    if (n == 0) throw PreconditionError("is_nth_power: n must be positive");
    x %= p;
    if (x == 0) throw PreconditionError("is_nth_power: zero is not a unit");
    uint64_t d = power_subgroup_index(n, p);
    return mod_pow(x, (p - 1) / d, p) == 1;
}

uint64_t primitive_root(uint64_t p) {
    if (p == 2) return 1;
    auto qs = prime_divisors(p - 1);
    for (uint64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (uint64_t q : qs) {
            if (mod_pow(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw PreconditionError("primitive_root: modulus is not prime");
}

std::vector<char> nth_power_table(uint64_t n, uint64_t p) {
    std::vector<char> table(p, 0);
    uint64_t d = power_subgroup_index(n, p);
    uint64_t g = primitive_root(p);
    uint64_t step = mod_pow(g, d, p);
    uint64_t x = 1;
    for (uint64_t k = 0; k < (p - 1) / d; ++k) {
        table[x] = 1;
        x = mul_mod(x, step, p);
    }
    return table;
}

int valuation(const BigInt& x, uint64_t p) {
    if (x == 0) throw PreconditionError("valuation of zero");
    BigInt t = abs(x);
    BigInt pp = big_from_u64(p);
    int v = 0;
    while (mpz_divisible_p(t.get_mpz_t(), pp.get_mpz_t())) {
        t /= pp;
        ++v;
    }
    return v;
}

int valuation(int64_t x, uint64_t p) {
    return valuation(big_from_i64(x), p);
}

namespace {

BigInt pollard_brent(const BigInt& n, unsigned long seed) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    BigInt y = seed + 1, c = seed + 3, g = 1, q = 1, x, ys;
    const unsigned long m = 128;
    unsigned long r = 1;
    auto f = [&](const BigInt& v) {
        BigInt t = v * v + c;
        mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
        return t;
    };
    while (g == 1) {
        x = y;
        for (unsigned long i = 0; i < r; ++i) y = f(y);
        unsigned long k = 0;
        while (k < r && g == 1) {
            ys = y;
            unsigned long lim = std::min(m, r - k);
            for (unsigned long i = 0; i < lim; ++i) {
                y = f(y);
                BigInt diff = abs(x - y);
                q = q * diff % n;
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += m;
        }
        r *= 2;
        if (r > (1ul << 26)) break;
    }
    if (g == n || g == 1) {
        do {
            ys = f(ys);
            BigInt diff = abs(x - ys);
            mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    return g;
}

void split_into(const BigInt& n, std::vector<BigInt>& out) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 40) > 0) {
        out.push_back(n);
        return;
    }
    for (unsigned long seed = 1; seed < 64; ++seed) {
        BigInt d = pollard_brent(n, seed);
        if (d != 1 && d != n) {
            split_into(d, out);
            split_into(n / d, out);
            return;
        }
    }
    throw Error("prime_divisors: factorization did not converge for " + n.get_str());
}

}  // namespace

std::vector<BigInt> prime_divisors(const BigInt& x) {
    if (x == 0) throw PreconditionError("prime_divisors of zero");
    BigInt n = abs(x);
    std::vector<BigInt> out;
    for (unsigned long q = 2; q < 20000; q += (q == 2 ? 1 : 2)) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), q)) {
            out.push_back(q);
            while (mpz_divisible_ui_p(n.get_mpz_t(), q)) n /= q;
        }
        if (n == 1) break;
    }
    if (n != 1) {
        std::vector<BigInt> rest;
        split_into(n, rest);
        out.insert(out.end(), rest.begin(), rest.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<uint64_t> prime_divisors(uint64_t x) {
    std::vector<uint64_t> out;
    for (const auto& q : prime_divisors(big_from_u64(x))) out.push_back(to_u64(q));
    return out;
}

BigInt big_pow(const BigInt& base, unsigned long exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

BigInt big_from_u64(uint64_t x) {
    BigInt r;
    mpz_import(r.get_mpz_t(), 1, 1, sizeof(x), 0, 0, &x);
    return r;
}

BigInt big_from_i64(int64_t x) {
    if (x >= 0) return big_from_u64(static_cast<uint64_t>(x));
    BigInt r = big_from_u64(static_cast<uint64_t>(-(x + 1)));
    return -r - 1;
}

bool fits_i64(const BigInt& x) {
    static const BigInt lo = big_from_i64(INT64_MIN), hi = big_from_i64(INT64_MAX);
    return x >= lo && x <= hi;
}

int64_t to_i64(const BigInt& x) {
    if (!fits_i64(x)) throw PreconditionError("integer exceeds 64 bits: " + x.get_str());
    if (x >= 0) return static_cast<int64_t>(to_u64(x));
    return -static_cast<int64_t>(to_u64(-(x + 1))) - 1;
}

uint64_t to_u64(const BigInt& x) {
    if (x < 0 || mpz_sizeinbase(x.get_mpz_t(), 2) > 64)
        throw PreconditionError("integer outside u64: " + x.get_str());
    uint64_t r = 0;
    size_t count = 0;
    mpz_export(&r, &count, 1, sizeof(r), 0, 0, x.get_mpz_t());
    return count ? r : 0;
}

}  // namespace twf
