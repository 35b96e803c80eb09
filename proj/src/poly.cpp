#include "twf/poly.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

namespace twf {

// ---- IntPoly ---------------------------------------------------------------

IntPoly::IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
    for (long v : coeffs) c_.emplace_back(v);
    trim();
}

IntPoly IntPoly::constant(const BigInt& c) { return IntPoly(std::vector<BigInt>{c}); }

IntPoly IntPoly::monomial(const BigInt& c, int deg) {
    std::vector<BigInt> v(deg + 1, 0);
    v[deg] = c;
    return IntPoly(std::move(v));
}

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

BigInt IntPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
    return c_[i];
}

BigInt IntPoly::lc() const { return c_.empty() ? BigInt(0) : c_.back(); }

BigInt IntPoly::eval(const BigInt& x) const {
    BigInt acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

uint64_t IntPoly::eval_mod(uint64_t x, uint64_t m) const {
    uint64_t acc = 0;
    x %= m;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = add_mod(mul_mod(acc, x, m), reduce(*it, m), m);
    return acc;
}

IntPoly IntPoly::derivative() const {
    std::vector<BigInt> d;
    for (size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<unsigned long>(i));
    return IntPoly(std::move(d));
}

BigInt IntPoly::content() const {
    BigInt g = 0;
    for (const auto& v : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    return g;
}

IntPoly IntPoly::primitive_part() const {
    if (c_.empty()) return *this;
    BigInt g = content();
    if (c_.back() < 0) g = -g;
    std::vector<BigInt> v(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) mpz_divexact(v[i].get_mpz_t(), c_[i].get_mpz_t(), g.get_mpz_t());
    return IntPoly(std::move(v));
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    std::vector<BigInt> v(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
    return IntPoly(std::move(v));
}

IntPoly IntPoly::operator-() const {
    std::vector<BigInt> v(c_);
    for (auto& x : v) x = -x;
    return IntPoly(std::move(v));
}

IntPoly IntPoly::operator-(const IntPoly& o) const { return *this + (-o); }

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (c_.empty() || o.c_.empty()) return {};
    std::vector<BigInt> v(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    return IntPoly(std::move(v));
}

IntPoly IntPoly::operator*(const BigInt& k) const {
    std::vector<BigInt> v(c_);
    for (auto& x : v) x *= k;
    return IntPoly(std::move(v));
}

std::string IntPoly::str(const char* var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const BigInt& v = c_[i];
        if (v == 0) continue;
        BigInt a = abs(v);
        if (!first) os << (v < 0 ? " - " : " + ");
        else if (v < 0) os << "-";
        if (a != 1 || i == 0) os << a.get_str();
        if (i >= 1) os << var;
        if (i >= 2) os << "^" << i;
        first = false;
    }
    return os.str();
}

// ---- resultant -------------------------------------------------------------

IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw PreconditionError("pseudo_remainder by zero");
    int db = b.degree();
    IntPoly r = a;
    int e = std::max(a.degree() - db + 1, 0);
    BigInt lb = b.lc();
    while (!r.is_zero() && r.degree() >= db) {
        IntPoly s = IntPoly::monomial(r.lc(), r.degree() - db);
        r = r * lb - s * b;
        --e;
    }
    return r * big_pow(lb, e);
}

namespace {

IntPoly exact_div(const IntPoly& p, const BigInt& d) {
    std::vector<BigInt> v(p.coeffs().size());
    for (size_t i = 0; i < v.size(); ++i) mpz_divexact(v[i].get_mpz_t(), p.coeffs()[i].get_mpz_t(), d.get_mpz_t());
    return IntPoly(std::move(v));
}

BigInt exact_quot(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

BigInt resultant(const IntPoly& f, const IntPoly& g) {
    if (f.is_zero() || g.is_zero()) throw PreconditionError("resultant: zero polynomial");
    int df = f.degree(), dg = g.degree();
    if (dg == 0) return big_pow(g.lc(), df);
    if (df == 0) return big_pow(f.lc(), dg);

    BigInt t = big_pow(f.content(), dg) * big_pow(g.content(), df);
    IntPoly A = exact_div(f, f.content());
    IntPoly B = exact_div(g, g.content());
    BigInt gg = 1, h = 1;
    int s = 1;
    if (df < dg) {
        std::swap(A, B);
        if ((df & 1) && (dg & 1)) s = -1;
    }
    for (;;) {
        int da = A.degree(), db = B.degree();
        int delta = da - db;
        if ((da & 1) && (db & 1)) s = -s;
        IntPoly r = pseudo_remainder(A, B);
        A = B;
        B = exact_div(r, gg * big_pow(h, delta));
        gg = A.lc();
        if (delta == 1) h = gg;
        else if (delta > 1) h = exact_quot(big_pow(gg, delta), big_pow(h, delta - 1));
        if (B.degree() <= 0) break;
    }
    if (B.is_zero()) return 0;
    int da = A.degree();
    h = exact_quot(big_pow(B.lc(), da), big_pow(h, da - 1));
    return s * t * h;
}

bool is_squarefree(const IntPoly& f) {
    if (f.is_zero()) return false;
    if (f.degree() <= 0) return true;
    return resultant(f, f.derivative()) != 0;
}

// ---- ModPoly ---------------------------------------------------------------

ModPoly::ModPoly(uint64_t modulus, std::vector<uint64_t> coeffs) : m(modulus), c(std::move(coeffs)) {
    for (auto& v : c) v %= m;
    trim();
}

ModPoly ModPoly::from_int(const IntPoly& f, uint64_t modulus) {
    std::vector<uint64_t> v;
    for (const auto& x : f.coeffs()) v.push_back(reduce(x, modulus));
    return ModPoly(modulus, std::move(v));
}

void ModPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

uint64_t ModPoly::eval(uint64_t x) const {
    uint64_t acc = 0;
    x %= m;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = add_mod(mul_mod(acc, x, m), *it, m);
    return acc;
}

bool ModPoly::operator<(const ModPoly& o) const {
    if (degree() != o.degree()) return degree() < o.degree();
    return std::lexicographical_compare(c.rbegin(), c.rend(), o.c.rbegin(), o.c.rend());
}

std::string ModPoly::str(const char* var) const {
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        if (c[i] == 0) continue;
        if (!first) os << " + ";
        if (c[i] != 1 || i == 0) os << c[i];
        if (i >= 1) os << var;
        if (i >= 2) os << "^" << i;
        first = false;
    }
    return os.str();
}

ModPoly operator+(const ModPoly& a, const ModPoly& b) {
    std::vector<uint64_t> v(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < a.c.size(); ++i) v[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) v[i] = add_mod(v[i], b.c[i], a.m);
    return ModPoly(a.m, std::move(v));
}

ModPoly operator-(const ModPoly& a, const ModPoly& b) {
    std::vector<uint64_t> v(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < a.c.size(); ++i) v[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) v[i] = sub_mod(v[i], b.c[i], a.m);
    return ModPoly(a.m, std::move(v));
}

ModPoly operator*(const ModPoly& a, const ModPoly& b) {
    if (a.is_zero() || b.is_zero()) return ModPoly(a.m, {});
    std::vector<uint64_t> v(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j) v[i + j] = add_mod(v[i + j], mul_mod(a.c[i], b.c[j], a.m), a.m);
    }
    return ModPoly(a.m, std::move(v));
}

ModPoly scale(const ModPoly& a, uint64_t k) {
    std::vector<uint64_t> v(a.c);
    for (auto& x : v) x = mul_mod(x, k % a.m, a.m);
    return ModPoly(a.m, std::move(v));
}

std::pair<ModPoly, ModPoly> divmod(const ModPoly& a, const ModPoly& b) {
    if (b.is_zero()) throw PreconditionError("ModPoly division by zero");
    const uint64_t m = a.m;
    uint64_t inv = inv_mod(b.lc(), m);
    std::vector<uint64_t> r(a.c);
    int db = b.degree();
    if (a.degree() < db) return {ModPoly(m, {}), a};
    std::vector<uint64_t> q(a.degree() - db + 1, 0);
    for (int i = a.degree(); i >= db; --i) {
        uint64_t coef = mul_mod(r[i], inv, m);
        q[i - db] = coef;
        if (coef == 0) continue;
        for (int j = 0; j <= db; ++j) r[i - db + j] = sub_mod(r[i - db + j], mul_mod(coef, b.c[j], m), m);
    }
    r.resize(db);
    return {ModPoly(m, std::move(q)), ModPoly(m, std::move(r))};
}

ModPoly rem(const ModPoly& a, const ModPoly& b) { return divmod(a, b).second; }

ModPoly derivative(const ModPoly& a) {
    std::vector<uint64_t> v;
    for (size_t i = 1; i < a.c.size(); ++i) v.push_back(mul_mod(a.c[i], i % a.m, a.m));
    return ModPoly(a.m, std::move(v));
}

ModPoly monic(const ModPoly& a) {
    if (a.is_zero()) return a;
    return scale(a, inv_mod(a.lc(), a.m));
}

ModPoly gcd(ModPoly a, ModPoly b) {
    while (!b.is_zero()) {
        ModPoly r = rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

void ext_gcd(const ModPoly& a, const ModPoly& b, ModPoly& g, ModPoly& s, ModPoly& t) {
    const uint64_t m = a.m;
    ModPoly r0 = a, r1 = b;
    ModPoly s0(m, {1}), s1(m, {}), t0(m, {}), t1(m, {1});
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        ModPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    uint64_t inv = inv_mod(r0.lc(), m);
    g = scale(r0, inv);
    s = scale(s0, inv);
    t = scale(t0, inv);
}

ModPoly powmod(const ModPoly& base, const BigInt& exp, const ModPoly& mod) {
    ModPoly result(base.m, {1});
    result = rem(result, mod);
    ModPoly b = rem(base, mod);
    size_t bits = mpz_sizeinbase(exp.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        result = rem(result * result, mod);
        if (mpz_tstbit(exp.get_mpz_t(), i)) result = rem(result * b, mod);
    }
    return result;
}

ModPoly pow(const ModPoly& base, unsigned e) {
    ModPoly r(base.m, {1});
    for (unsigned i = 0; i < e; ++i) r = r * base;
    return r;
}

// ---- factorization mod l ---------------------------------------------------

namespace {

// f(x) = g(x^l) over F_l; returns g (coefficients are fixed by Frobenius).
ModPoly pth_root(const ModPoly& f) {
    std::vector<uint64_t> v;
    for (size_t i = 0; i < f.c.size(); i += f.m) v.push_back(f.c[i]);
    return ModPoly(f.m, std::move(v));
}

ModPoly exact_quotient(const ModPoly& a, const ModPoly& b) { return divmod(a, b).first; }

void squarefree_parts(const ModPoly& f, int weight, std::vector<std::pair<ModPoly, int>>& out) {
    if (f.degree() <= 0) return;
    const uint64_t l = f.m;
    ModPoly fp = derivative(f);
    if (fp.is_zero()) {
        squarefree_parts(pth_root(f), weight * static_cast<int>(l), out);
        return;
    }
    ModPoly c = gcd(f, fp);
    ModPoly w = exact_quotient(f, c);
    int i = 1;
    while (w.degree() > 0) {
        ModPoly y = gcd(w, c);
        ModPoly z = exact_quotient(w, y);
        if (z.degree() > 0) out.emplace_back(monic(z), i * weight);
        ++i;
        w = y;
        c = exact_quotient(c, y);
    }
    if (c.degree() > 0) squarefree_parts(pth_root(c), weight * static_cast<int>(l), out);
}

std::vector<std::pair<ModPoly, int>> distinct_degree(ModPoly f) {
    std::vector<std::pair<ModPoly, int>> out;
    const uint64_t l = f.m;
    ModPoly x(l, {0, 1});
    ModPoly h = rem(x, f);
    int d = 0;
    while (f.degree() >= 2 * (d + 1)) {
        ++d;
        h = powmod(h, big_from_u64(l), f);
        ModPoly g = gcd(f, h - x);
        if (g.degree() > 0) {
            out.emplace_back(g, d);
            f = exact_quotient(f, g);
            h = rem(h, f);
        }
    }
    if (f.degree() > 0) out.emplace_back(monic(f), f.degree());
    return out;
}

void equal_degree(const ModPoly& g, int d, std::mt19937_64& rng, std::vector<ModPoly>& out) {
    if (g.degree() == d) {
        out.push_back(monic(g));
        return;
    }
    const uint64_t l = g.m;
    BigInt e = (big_pow(big_from_u64(l), d) - 1) / 2;
    for (;;) {
        std::vector<uint64_t> coeffs(g.degree());
        for (auto& v : coeffs) v = rng() % l;
        ModPoly a(l, coeffs);
        if (a.degree() <= 0) continue;
        ModPoly b;
        if (l == 2) {
            // absolute trace to F_2 splits factors of degree d
            b = a;
            ModPoly t = a;
            for (int i = 1; i < d; ++i) {
                t = rem(t * t, g);
                b = b + t;
            }
        } else {
            b = powmod(a, e, g) - ModPoly(l, {1});
        }
        ModPoly u = gcd(g, b);
        if (u.degree() > 0 && u.degree() < g.degree()) {
            equal_degree(u, d, rng, out);
            equal_degree(exact_quotient(g, u), d, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<ModFactor> factor_mod_l(const ModPoly& f) {
    const uint64_t l = f.m;
    if (!is_prime(l) || l > 100) throw PreconditionError("factor_mod_l: l must be a prime <= 100");
    if (f.is_zero()) throw PreconditionError("factor_mod_l: polynomial vanishes mod l");
    std::vector<std::pair<ModPoly, int>> parts;
    squarefree_parts(monic(f), 1, parts);
    std::mt19937_64 rng(0x5eed + l);
    std::map<std::vector<uint64_t>, ModFactor> merged;
    for (const auto& [part, mult] : parts) {
        for (const auto& [block, d] : distinct_degree(part)) {
            std::vector<ModPoly> irr;
            equal_degree(block, d, rng, irr);
            for (auto& q : irr) {
                auto it = merged.find(q.c);
                if (it == merged.end()) merged.emplace(q.c, ModFactor{q, mult});
                else it->second.multiplicity += mult;
            }
        }
    }
    std::vector<ModFactor> out;
    for (auto& [k, v] : merged) out.push_back(v);
    std::sort(out.begin(), out.end(), [](const ModFactor& a, const ModFactor& b) { return a.factor < b.factor; });
    return out;
}

std::vector<ModFactor> factor_mod_l(const IntPoly& f, uint64_t l) {
    if (!is_prime(l)) throw PreconditionError("factor_mod_l: l must be prime");
    return factor_mod_l(ModPoly::from_int(f, l));
}

// ---- Hensel ----------------------------------------------------------------

uint64_t int_pow(uint64_t base, int exp) {
    unsigned __int128 r = 1;
    for (int i = 0; i < exp; ++i) {
        r *= base;
        if (r >> 63) throw PreconditionError("int_pow: result exceeds 63 bits");
    }
    return static_cast<uint64_t>(r);
}

ResidueClass hensel_lift_root(const IntPoly& f, uint64_t r, uint64_t l, int k) {
    if (!is_prime(l)) throw PreconditionError("hensel_lift_root: l must be prime");
    if (k < 1) throw PreconditionError("hensel_lift_root: k must be positive");
    r %= l;
    if (f.eval_mod(r, l) != 0) throw PreconditionError("hensel_lift_root: not a root mod l");
    uint64_t dr = f.derivative().eval_mod(r, l);
    if (dr == 0) throw NonSimpleRootError("hensel_lift_root: root is not simple mod l");
    uint64_t dinv = inv_mod(dr, l);
    uint64_t s = r, mod = l;
    for (int j = 1; j < k; ++j) {
        uint64_t next = mod * l;
        // f(s) = mod * q; choose t with q + f'(r) t = 0 mod l
        BigInt val = f.eval(big_from_u64(s));
        BigInt q = val / big_from_u64(mod);
        uint64_t t = mul_mod(sub_mod(0, reduce(q, l), l), dinv, l);
        s = (s + mod * t) % next;
        mod = next;
    }
    return {s, mod};
}

// ---- QPoly -----------------------------------------------------------------

BigInt QPoly::common_denominator() const {
    BigInt d = 1;
    for (const auto& v : c) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), v.get_den_mpz_t());
    return d;
}

uint64_t QPoly::eval_mod(uint64_t x, uint64_t m) const {
    uint64_t acc = 0;
    x %= m;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        uint64_t den = reduce(BigInt(it->get_den()), m);
        uint64_t term = mul_mod(reduce(BigInt(it->get_num()), m), inv_mod(den, m), m);
        acc = add_mod(mul_mod(acc, x, m), term, m);
    }
    return acc;
}

Rational QPoly::eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

}  // namespace twf
