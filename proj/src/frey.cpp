#include "twf/frey.hpp"

#include <algorithm>
#include <numeric>

namespace twf {

namespace {

uint64_t magnitude(int64_t v) {
    return v < 0 ? static_cast<uint64_t>(-(v + 1)) + 1 : static_cast<uint64_t>(v);
}

BigInt mod4(const BigInt& v) {
    BigInt r;
    mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), 4);
    return r;
}

BigInt gcd_big(const BigInt& a, const BigInt& b) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

}  // namespace

Triple::Triple(int64_t a, int64_t b, int64_t c) : a_(a), b_(b), c_(c) {
    if (a == 0 || b == 0 || c == 0) throw PreconditionError("Triple: coefficients must be nonzero");
    uint64_t ma = magnitude(a), mb = magnitude(b), mc = magnitude(c);
    if (std::gcd(ma, mb) != 1 || std::gcd(mb, mc) != 1 || std::gcd(ma, mc) != 1)
        throw PreconditionError("Triple: coefficients must be pairwise coprime");
    for (uint64_t m : {ma, mb, mc}) {
        if (m == 1) continue;
        for (uint64_t q : prime_divisors(m))
            if (q != 2) odd_primes_.push_back(q);
    }
    std::sort(odd_primes_.begin(), odd_primes_.end());
}

bool Triple::divides_abc(uint64_t p) const {
    return magnitude(a_) % p == 0 || magnitude(b_) % p == 0 || magnitude(c_) % p == 0;
}

std::string Triple::str() const {
    return "(" + std::to_string(a_) + ", " + std::to_string(b_) + ", " + std::to_string(c_) + ")";
}

uint64_t level_N0(const Triple& t) {
    uint64_t n = 1;
    for (uint64_t q : t.odd_primes()) n *= q;
    return n;
}

void validate_frey_spec(const FreySpec& s) {
    if (s.n < 1) throw PreconditionError("FreySpec: exponent must be positive");
    const unsigned long n = static_cast<unsigned long>(s.n);
    BigInt A = big_from_i64(s.triple.a()) * big_pow(s.x, n);
    BigInt B = big_from_i64(s.triple.b()) * big_pow(s.y, n);
    BigInt C = big_from_i64(s.triple.c()) * big_pow(s.z, n);
    if (A + B + C != 0) throw PreconditionError("FreySpec: a x^n + b y^n + c z^n != 0");
    if (gcd_big(A, B) != 1 || gcd_big(B, C) != 1 || gcd_big(A, C) != 1)
        throw PreconditionError("FreySpec: terms are not pairwise coprime");
    if (mpz_odd_p(B.get_mpz_t())) throw PreconditionError("FreySpec: b y^n must be even");
    if (mod4(A) != 3) throw PreconditionError("FreySpec: a x^n must be -1 mod 4");
}

FreyModel frey_minimal_model(const FreySpec& s) {
    validate_frey_spec(s);
    if (s.triple.b() % 16 != 0) throw PreconditionError("frey_minimal_model: 16 must divide b");
    const unsigned long n = static_cast<unsigned long>(s.n);
    BigInt A = big_from_i64(s.triple.a()) * big_pow(s.x, n);
    BigInt B = big_from_i64(s.triple.b()) * big_pow(s.y, n);
    BigInt C = big_from_i64(s.triple.c()) * big_pow(s.z, n);
    BigInt a2 = (B - A - 1);
    BigInt a4 = -(A * B);
    // both divisions are exact under the normalization
    mpz_divexact_ui(a2.get_mpz_t(), a2.get_mpz_t(), 4);
    mpz_divexact_ui(a4.get_mpz_t(), a4.get_mpz_t(), 16);
    CurveQ curve(1, a2, 0, a4, 0);
    BigInt abc = A * B * C;
    BigInt delta = abc * abc;
    mpz_divexact_ui(delta.get_mpz_t(), delta.get_mpz_t(), 256);
    BigInt rad = 1;
    for (const BigInt& v : {A, B, C}) {
        if (abs(v) == 1) continue;
        for (const auto& q : prime_divisors(v))
            if (q != 2 && !mpz_divisible_p(rad.get_mpz_t(), q.get_mpz_t())) rad *= q;
    }
    return {curve, delta, rad};
}

FiberCoefficients fiber_coefficients(uint64_t p, uint64_t a_bar, uint64_t b_bar, uint64_t u) {
    uint64_t A = mul_mod(a_bar, u, p);
    return {sub_mod(b_bar, A, p), sub_mod(0, mul_mod(A, b_bar, p), p)};
}

CurveFp frey_fiber_curve(const Triple& t, int n, uint64_t p, uint64_t alpha, uint64_t beta) {
    if (p == 2 || !is_prime(p)) throw PreconditionError("frey_fiber_curve: p must be an odd prime");
    if (t.divides_abc(p)) throw PreconditionError("frey_fiber_curve: p divides abc");
    if (n < 1) throw PreconditionError("frey_fiber_curve: n must be positive");
    uint64_t A = mul_mod(reduce(t.a(), p), mod_pow(alpha % p, n, p), p);
    uint64_t B = mul_mod(reduce(t.b(), p), mod_pow(beta % p, n, p), p);
    if (A == 0 || B == 0) throw SingularCurveError("frey_fiber_curve: alpha or beta vanishes mod p");
    if (add_mod(A, B, p) == 0) throw SingularCurveError("frey_fiber_curve: repeated root");
    return CurveFp::short_form(p, sub_mod(B, A, p), sub_mod(0, mul_mod(A, B, p), p), 0);
}

FreySpec normalize(const Triple& t, int n, const std::array<BigInt, 3>& witness) {
    if (n < 1) throw PreconditionError("normalize: n must be positive");
    const std::array<int64_t, 3> coef{t.a(), t.b(), t.c()};
    {
        BigInt sum = 0;
        for (int i = 0; i < 3; ++i) sum += big_from_i64(coef[i]) * big_pow(witness[i], n);
        if (sum != 0) throw PreconditionError("normalize: witness does not satisfy the equation");
    }
    std::array<int, 3> perm{0, 1, 2};
    do {
        for (int eps : {1, -1}) {
            for (int xs : {1, -1}) {
                if (xs == -1 && n % 2 == 0) continue;
                int64_t a = eps * coef[perm[0]], b = eps * coef[perm[1]], c = eps * coef[perm[2]];
                if (b % 16 != 0) continue;
                FreySpec s{Triple(a, b, c), n, xs * witness[perm[0]], witness[perm[1]], witness[perm[2]]};
                try {
                    validate_frey_spec(s);
                    return s;
                } catch (const PreconditionError&) {
                }
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    throw PreconditionError("normalize: no arrangement satisfies the Frey normalization");
}

}  // namespace twf
