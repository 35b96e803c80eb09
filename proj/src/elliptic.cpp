#include "twf/elliptic.hpp"

#include <array>
#include <numeric>

namespace twf {

namespace {

struct Invariants {
    uint64_t b2, b4, b6, b8;
};

Invariants b_invariants(uint64_t p, const uint64_t a[5]) {
    auto m = [p](uint64_t x, uint64_t y) { return mul_mod(x, y, p); };
    auto ad = [p](uint64_t x, uint64_t y) { return add_mod(x, y, p); };
    auto sb = [p](uint64_t x, uint64_t y) { return sub_mod(x, y, p); };
    const uint64_t a1 = a[0], a2 = a[1], a3 = a[2], a4 = a[3], a6 = a[4];
    Invariants inv{};
    inv.b2 = ad(m(a1, a1), m(4 % p, a2));
    inv.b4 = ad(m(2 % p, a4), m(a1, a3));
    inv.b6 = ad(m(a3, a3), m(4 % p, a6));
    inv.b8 = sb(ad(sb(ad(m(m(a1, a1), a6), m(m(4 % p, a2), a6)), m(m(a1, a3), a4)), m(a2, m(a3, a3))), m(a4, a4));
    return inv;
}

}  // namespace

CurveFp::CurveFp(uint64_t p, uint64_t a1, uint64_t a2, uint64_t a3, uint64_t a4, uint64_t a6)
    : p_(p), a_{a1 % p, a2 % p, a3 % p, a4 % p, a6 % p} {
    if (!is_prime(p)) throw PreconditionError("CurveFp: modulus must be prime");
    if (discriminant() == 0) throw SingularCurveError("CurveFp: singular curve");
}

CurveFp CurveFp::short_form(uint64_t p, uint64_t a2, uint64_t a4, uint64_t a6) {
    return CurveFp(p, 0, a2, 0, a4, a6);
}

uint64_t CurveFp::discriminant() const {
    const uint64_t p = p_;
    auto [b2, b4, b6, b8] = b_invariants(p, a_);
    auto m = [p](uint64_t x, uint64_t y) { return mul_mod(x, y, p); };
    // -b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6
    uint64_t d = 0;
    d = sub_mod(d, m(m(b2, b2), b8), p);
    d = sub_mod(d, m(8 % p, m(b4, m(b4, b4))), p);
    d = sub_mod(d, m(27 % p, m(b6, b6)), p);
    d = add_mod(d, m(9 % p, m(b2, m(b4, b6))), p);
    return d;
}

CurveFp CurveFp::twist(uint64_t d) const {
    if (p_ == 2) throw PreconditionError("twist: p must be odd");
    // complete the square, then scale: y^2 = x^3 + (b2/4) d x^2 + (b4/2) d^2 x + (b6/4) d^3
    auto [b2, b4, b6, b8] = b_invariants(p_, a_);
    (void)b8;
    const uint64_t p = p_;
    uint64_t i2 = inv_mod(2, p), i4 = inv_mod(4 % p, p);
    d %= p;
    uint64_t d2 = mul_mod(d, d, p), d3 = mul_mod(d2, d, p);
    return short_form(p, mul_mod(mul_mod(b2, i4, p), d, p), mul_mod(mul_mod(b4, i2, p), d2, p),
                      mul_mod(mul_mod(b6, i4, p), d3, p));
}

QuadraticCharacter::QuadraticCharacter(uint64_t p) : p_(p), table_(p, -1) {
    if (p < 3 || !is_prime(p)) throw PreconditionError("QuadraticCharacter: odd prime required");
    table_[0] = 0;
    for (uint64_t y = 1; y <= p / 2; ++y) table_[mul_mod(y, y, p)] = 1;
}

uint64_t count_points_naive(const CurveFp& e) {
    const uint64_t p = e.p();
    uint64_t count = 1;
    for (uint64_t x = 0; x < p; ++x) {
        uint64_t rhs = add_mod(mul_mod(add_mod(mul_mod(add_mod(x, e.a2(), p), x, p), e.a4(), p), x, p), e.a6(), p);
        for (uint64_t y = 0; y < p; ++y) {
            uint64_t lhs = add_mod(mul_mod(y, y, p), mul_mod(add_mod(mul_mod(e.a1(), x, p), e.a3(), p), y, p), p);
            if (lhs == rhs) ++count;
        }
    }
    return count;
}

uint64_t count_points(const CurveFp& e, const QuadraticCharacter& chi) {
    const uint64_t p = e.p();
    if (p <= 3) return count_points_naive(e);
    if (chi.p() != p) throw PreconditionError("count_points: character for a different prime");
    uint64_t a[5] = {e.a1(), e.a2(), e.a3(), e.a4(), e.a6()};
    auto [b2, b4, b6, b8] = b_invariants(p, a);
    (void)b8;
    // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    const uint64_t c3 = 4 % p, c2 = b2, c1 = mul_mod(2, b4, p), c0 = b6;
    int64_t sum = 0;
    for (uint64_t x = 0; x < p; ++x) {
        uint64_t v = add_mod(mul_mod(add_mod(mul_mod(add_mod(mul_mod(c3, x, p), c2, p), x, p), c1, p), x, p), c0, p);
        sum += chi(v);
    }
    return static_cast<uint64_t>(static_cast<int64_t>(p) + 1 + sum);
}

uint64_t count_points(const CurveFp& e) {
    if (e.p() <= 3) return count_points_naive(e);
    return count_points(e, QuadraticCharacter(e.p()));
}

int64_t trace_frobenius(const CurveFp& e) {
    return static_cast<int64_t>(e.p()) + 1 - static_cast<int64_t>(count_points(e));
}

int64_t trace_frobenius(const CurveFp& e, const QuadraticCharacter& chi) {
    return static_cast<int64_t>(e.p()) + 1 - static_cast<int64_t>(count_points(e, chi));
}

bool has_3_isogeny(const CurveFp& e) {
    int64_t a = trace_frobenius(e);
    int64_t s = static_cast<int64_t>((e.p() + 1) % 3);
    int64_t r = ((a % 3) + 3) % 3;
    return r == s || r == (3 - s) % 3;
}

namespace {

// Arithmetic in F_p[x]/(psi) for a monic quartic psi, p < 2^32.
struct QuarticRing {
    uint64_t p;
    std::array<uint64_t, 4> low;  // x^4 = -(low[3] x^3 + ... + low[0])

    using Elt = std::array<uint64_t, 4>;

    Elt mul(const Elt& u, const Elt& v) const {
        uint64_t t[7] = {0, 0, 0, 0, 0, 0, 0};
        for (int i = 0; i < 4; ++i) {
            if (!u[i]) continue;
            for (int j = 0; j < 4; ++j) t[i + j] = (t[i + j] + u[i] * v[j]) % p;
        }
        for (int k = 6; k >= 4; --k) {
            uint64_t c = t[k];
            if (!c) continue;
            for (int j = 0; j < 4; ++j) t[k - 4 + j] = (t[k - 4 + j] + (p - low[j]) * c) % p;
        }
        return {t[0], t[1], t[2], t[3]};
    }

    Elt times_x(const Elt& u) const {
        uint64_t c = u[3];
        Elt r{0, u[0], u[1], u[2]};
        for (int j = 0; j < 4; ++j) r[j] = (r[j] + (p - low[j]) * c) % p;
        return r;
    }
};

int degree_of(const std::vector<uint64_t>& v) {
    int d = static_cast<int>(v.size()) - 1;
    while (d >= 0 && v[d] == 0) --d;
    return d;
}

// Degree of gcd(a, b) over F_p, small dense inputs.
int gcd_degree(std::vector<uint64_t> a, std::vector<uint64_t> b, uint64_t p) {
    for (;;) {
        int db = degree_of(b);
        if (db < 0) return degree_of(a);
        int da = degree_of(a);
        uint64_t inv = inv_mod(b[db], p);
        while (da >= db) {
            uint64_t c = a[da] * inv % p;
            for (int j = 0; j <= db; ++j) a[da - db + j] = (a[da - db + j] + (p - c) * b[j]) % p;
            da = degree_of(a);
        }
        std::swap(a, b);
    }
}

}  // namespace

bool has_3_isogeny_divpoly(uint64_t p, uint64_t a2, uint64_t a4) {
    if (p < 5 || p >= (1ull << 31)) throw PreconditionError("has_3_isogeny_divpoly: 5 <= p < 2^31");
    a2 %= p;
    a4 %= p;
    // psi_3 = 3x^4 + 4 a2 x^3 + 6 a4 x^2 - a4^2, made monic
    uint64_t i3 = inv_mod(3, p);
    std::array<uint64_t, 4> low{mul_mod(sub_mod(0, mul_mod(a4, a4, p), p), i3, p), 0, mul_mod(2, a4, p),
                                mul_mod(mul_mod(4, a2, p), i3, p)};
    QuarticRing ring{p, low};
    QuarticRing::Elt acc{1, 0, 0, 0};
    for (int bit = 63 - __builtin_clzll(p); bit >= 0; --bit) {
        acc = ring.mul(acc, acc);
        if ((p >> bit) & 1) acc = ring.times_x(acc);
    }
    std::vector<uint64_t> g{acc[0], (acc[1] + p - 1) % p, acc[2], acc[3]};
    std::vector<uint64_t> psi{low[0], low[1], low[2], low[3], 1};
    return gcd_degree(psi, g, p) > 0;
}

// ---- curves over Q ---------------------------------------------------------

CurveQ::CurveQ(BigInt a1_, BigInt a2_, BigInt a3_, BigInt a4_, BigInt a6_)
    : a1(std::move(a1_)), a2(std::move(a2_)), a3(std::move(a3_)), a4(std::move(a4_)), a6(std::move(a6_)) {
    if (discriminant() == 0) throw SingularCurveError("CurveQ: zero discriminant");
}

BigInt CurveQ::b2() const { return a1 * a1 + 4 * a2; }
BigInt CurveQ::b4() const { return 2 * a4 + a1 * a3; }
BigInt CurveQ::b6() const { return a3 * a3 + 4 * a6; }
BigInt CurveQ::b8() const { return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4; }
BigInt CurveQ::c4() const { return b2() * b2() - 24 * b4(); }
BigInt CurveQ::c6() const { return -b2() * b2() * b2() + 36 * b2() * b4() - 216 * b6(); }

BigInt CurveQ::discriminant() const {
    BigInt B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
}

CurveFp reduce_curve(const CurveQ& e, uint64_t p) {
    if (!is_prime(p)) throw PreconditionError("reduce_curve: p must be prime");
    if (reduce(e.discriminant(), p) == 0)
        throw BadReductionError("bad reduction at p = " + std::to_string(p));
    return CurveFp(p, reduce(e.a1, p), reduce(e.a2, p), reduce(e.a3, p), reduce(e.a4, p), reduce(e.a6, p));
}

int64_t reduce_and_ap(const CurveQ& e, uint64_t p) { return trace_frobenius(reduce_curve(e, p)); }

bool RationalPoint::operator==(const RationalPoint& o) const {
    if (infinity || o.infinity) return infinity == o.infinity;
    return x == o.x && y == o.y;
}

bool on_curve(const CurveQ& e, const RationalPoint& pt) {
    if (pt.infinity) return true;
    const Rational &x = pt.x, &y = pt.y;
    Rational lhs = y * y + Rational(e.a1) * x * y + Rational(e.a3) * y;
    Rational rhs = x * x * x + Rational(e.a2) * x * x + Rational(e.a4) * x + Rational(e.a6);
    return lhs == rhs;
}

RationalPoint negate(const CurveQ& e, const RationalPoint& pt) {
    if (pt.infinity) return pt;
    return RationalPoint::affine(pt.x, -pt.y - Rational(e.a1) * pt.x - Rational(e.a3));
}

RationalPoint add(const CurveQ& e, const RationalPoint& P, const RationalPoint& Q) {
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    const Rational a1(e.a1), a2(e.a2), a3(e.a3), a4(e.a4), a6(e.a6);
    Rational lambda, nu;
    if (P.x == Q.x) {
        if (P.y + Q.y + a1 * Q.x + a3 == 0) return RationalPoint::at_infinity();
        Rational den = 2 * P.y + a1 * P.x + a3;
        lambda = (3 * P.x * P.x + 2 * a2 * P.x + a4 - a1 * P.y) / den;
        nu = (-P.x * P.x * P.x + a4 * P.x + 2 * a6 - a3 * P.y) / den;
    } else {
        Rational dx = Q.x - P.x;
        lambda = (Q.y - P.y) / dx;
        nu = (P.y * Q.x - Q.y * P.x) / dx;
    }
    Rational x3 = lambda * lambda + a1 * lambda - a2 - P.x - Q.x;
    Rational y3 = -(lambda + a1) * x3 - nu - a3;
    return RationalPoint::affine(x3, y3);
}

std::optional<int> rational_point_order(const CurveQ& e, const RationalPoint& pt, int cap) {
    if (cap < 1 || cap > 16) throw PreconditionError("rational_point_order: cap must lie in [1, 16]");
    if (!on_curve(e, pt)) throw PreconditionError("rational_point_order: point not on curve");
    RationalPoint q = pt;
    for (int k = 1; k <= cap; ++k) {
        if (q.infinity) return k;
        q = add(e, q, pt);
    }
    return std::nullopt;
}

uint64_t torsion_bound(const CurveQ& e, const std::vector<uint64_t>& probe_primes) {
    if (probe_primes.empty()) throw PreconditionError("torsion_bound: no probe primes");
    uint64_t g = 0;
    for (uint64_t p : probe_primes) {
        if (p == 2) throw PreconditionError("torsion_bound: probes must be odd");
        g = std::gcd(g, count_points(reduce_curve(e, p)));
    }
    return g;
}

}  // namespace twf
