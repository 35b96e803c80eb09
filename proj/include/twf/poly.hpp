#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "twf/arith.hpp"

namespace twf {

// Dense polynomial over Z, ascending coefficients, never carries a zero
// leading coefficient. The zero polynomial has no coefficients.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<BigInt> coeffs);
    IntPoly(std::initializer_list<long> coeffs);

    static IntPoly constant(const BigInt& c);
    static IntPoly monomial(const BigInt& c, int deg);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<BigInt>& coeffs() const { return c_; }
    BigInt coeff(int i) const;
    BigInt lc() const;
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    BigInt eval(const BigInt& x) const;
    uint64_t eval_mod(uint64_t x, uint64_t m) const;
    IntPoly derivative() const;
    BigInt content() const;
    IntPoly primitive_part() const;

    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    IntPoly operator*(const BigInt& k) const;
    IntPoly operator-() const;
    bool operator==(const IntPoly& o) const { return c_ == o.c_; }

    std::string str(const char* var = "t") const;

private:
    void trim();
    std::vector<BigInt> c_;
};

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b);

// Res(f, g) = lc(f)^deg(g) * prod g(alpha) over roots alpha of f.
// Subresultant PRS; throws PreconditionError on a zero argument.
BigInt resultant(const IntPoly& f, const IntPoly& g);

// Nonzero discriminant, i.e. gcd(f, f') constant over Q.
bool is_squarefree(const IntPoly& f);

// Polynomial over Z/m with m < 2^63, ascending, trimmed.
struct ModPoly {
    uint64_t m = 2;
    std::vector<uint64_t> c;

    ModPoly() = default;
    ModPoly(uint64_t modulus, std::vector<uint64_t> coeffs);
    static ModPoly from_int(const IntPoly& f, uint64_t modulus);

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    uint64_t lc() const { return c.empty() ? 0 : c.back(); }
    uint64_t eval(uint64_t x) const;
    void trim();
    bool operator==(const ModPoly& o) const { return m == o.m && c == o.c; }
    bool operator<(const ModPoly& o) const;
    std::string str(const char* var = "t") const;
};

ModPoly operator+(const ModPoly& a, const ModPoly& b);
ModPoly operator-(const ModPoly& a, const ModPoly& b);
ModPoly operator*(const ModPoly& a, const ModPoly& b);
ModPoly scale(const ModPoly& a, uint64_t k);
// Division by a polynomial whose leading coefficient is a unit mod m.
std::pair<ModPoly, ModPoly> divmod(const ModPoly& a, const ModPoly& b);
ModPoly rem(const ModPoly& a, const ModPoly& b);
ModPoly derivative(const ModPoly& a);
ModPoly monic(const ModPoly& a);
// Prime modulus only.
ModPoly gcd(ModPoly a, ModPoly b);
// s*a + t*b = gcd (monic), prime modulus only.
void ext_gcd(const ModPoly& a, const ModPoly& b, ModPoly& g, ModPoly& s, ModPoly& t);
ModPoly powmod(const ModPoly& base, const BigInt& exp, const ModPoly& mod);
ModPoly pow(const ModPoly& base, unsigned e);

struct ModFactor {
    ModPoly factor;  // monic irreducible mod l
    int multiplicity = 1;
};

// Complete factorization of f / lc(f) mod l (l prime, l <= 100), sorted by
// (degree, coefficients). Throws PreconditionError when f vanishes mod l.
std::vector<ModFactor> factor_mod_l(const IntPoly& f, uint64_t l);
std::vector<ModFactor> factor_mod_l(const ModPoly& f);

// Unique lift s of a simple root r with f(s) = 0 mod l^k.
ResidueClass hensel_lift_root(const IntPoly& f, uint64_t r, uint64_t l, int k);

uint64_t int_pow(uint64_t base, int exp);  // exact, throws on overflow

// Polynomial with rational coefficients, ascending. Used for eigenvalues
// expressed in a generator.
struct QPoly {
    std::vector<Rational> c;
    int degree() const { return static_cast<int>(c.size()) - 1; }
    BigInt common_denominator() const;
    // Reduction at a root modulo m; denominators must be units mod m.
    uint64_t eval_mod(uint64_t x, uint64_t m) const;
    Rational eval(const Rational& x) const;
};

}  // namespace twf
