#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "twf/arith.hpp"

namespace twf {

// Long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over F_p.
class CurveFp {
public:
    CurveFp(uint64_t p, uint64_t a1, uint64_t a2, uint64_t a3, uint64_t a4, uint64_t a6);
    // Convenience for y^2 = x^3 + a2 x^2 + a4 x + a6.
    static CurveFp short_form(uint64_t p, uint64_t a2, uint64_t a4, uint64_t a6);

    uint64_t p() const { return p_; }
    uint64_t a1() const { return a_[0]; }
    uint64_t a2() const { return a_[1]; }
    uint64_t a3() const { return a_[2]; }
    uint64_t a4() const { return a_[3]; }
    uint64_t a6() const { return a_[4]; }
    uint64_t discriminant() const;

    // Quadratic twist by a nonresidue d (p odd).
    CurveFp twist(uint64_t d) const;

private:
    uint64_t p_;
    uint64_t a_[5];
};

// Quadratic character table for an odd prime, chi(0) = 0.
class QuadraticCharacter {
public:
    explicit QuadraticCharacter(uint64_t p);
    int operator()(uint64_t x) const { return table_[x % p_]; }
    uint64_t p() const { return p_; }

private:
    uint64_t p_;
    std::vector<signed char> table_;
};

uint64_t count_points(const CurveFp& e);
uint64_t count_points(const CurveFp& e, const QuadraticCharacter& chi);
uint64_t count_points_naive(const CurveFp& e);
int64_t trace_frobenius(const CurveFp& e);
int64_t trace_frobenius(const CurveFp& e, const QuadraticCharacter& chi);

// trace = +-(p+1) mod 3, equivalently a rational subgroup of order 3.
bool has_3_isogeny(const CurveFp& e);

// Same predicate decided by an F_p root of the 3-division polynomial of
// y^2 = x^3 + a2 x^2 + a4 x (p >= 5). No point counting involved.
bool has_3_isogeny_divpoly(uint64_t p, uint64_t a2, uint64_t a4);

struct CurveQ {
    BigInt a1, a2, a3, a4, a6;

    CurveQ(BigInt a1, BigInt a2, BigInt a3, BigInt a4, BigInt a6);
    BigInt b2() const;
    BigInt b4() const;
    BigInt b6() const;
    BigInt b8() const;
    BigInt c4() const;
    BigInt c6() const;
    BigInt discriminant() const;
};

CurveFp reduce_curve(const CurveQ& e, uint64_t p);
int64_t reduce_and_ap(const CurveQ& e, uint64_t p);

struct RationalPoint {
    bool infinity = true;
    Rational x, y;
    static RationalPoint at_infinity() { return {}; }
    static RationalPoint affine(Rational x, Rational y) { return {false, std::move(x), std::move(y)}; }
    bool operator==(const RationalPoint& o) const;
};

bool on_curve(const CurveQ& e, const RationalPoint& pt);
RationalPoint negate(const CurveQ& e, const RationalPoint& pt);
RationalPoint add(const CurveQ& e, const RationalPoint& p, const RationalPoint& q);
std::optional<int> rational_point_order(const CurveQ& e, const RationalPoint& pt, int cap);
uint64_t torsion_bound(const CurveQ& e, const std::vector<uint64_t>& probe_primes);

}  // namespace twf
