#include "twf/kraus.hpp"

#include <algorithm>
#include <numeric>

#include "twf/newforms.hpp"

namespace twf {

bool TraceSet::contains(int64_t t) const { return std::binary_search(entries.begin(), entries.end(), t); }

TraceSetMod3 TraceSetMod3::from(const TraceSet& t) {
    TraceSetMod3 r;
    for (int64_t v : t.entries) r.insert(v);
    return r;
}

std::vector<int> TraceSetMod3::residues() const {
    std::vector<int> out;
    for (int r = 0; r < 3; ++r)
        if (contains(r)) out.push_back(r);
    return out;
}

std::string TraceSetMod3::str() const {
    std::string s = "{";
    for (int r : residues()) s += (s.size() > 1 ? "," : "") + std::to_string(r);
    return s + "}";
}

namespace {

void require_prime(uint64_t p, const char* what) {
    if (!is_prime(p)) throw PreconditionError(std::string(what) + ": p must be prime");
}

void finish(TraceSet& s) {
    std::sort(s.entries.begin(), s.entries.end());
    s.entries.erase(std::unique(s.entries.begin(), s.entries.end()), s.entries.end());
}

struct Ratios {
    uint64_t a_over_c, b_over_c;
};

Ratios ratios(const Triple& t, uint64_t p) {
    uint64_t ic = inv_mod(reduce(t.c(), p), p);
    return {mul_mod(reduce(t.a(), p), ic, p), mul_mod(reduce(t.b(), p), ic, p)};
}

void check_good(const Triple& t, uint64_t p, const char* what) {
    require_prime(p, what);
    if (t.divides_abc(p)) throw PreconditionError(std::string(what) + ": p divides abc");
}

// Elements of (F_p^*)^n in generator order, plus a membership table.
struct PowerSubgroup {
    std::vector<uint64_t> elements;
    std::vector<char> member;
};

PowerSubgroup power_subgroup(uint64_t n, uint64_t p) {
    PowerSubgroup h;
    h.member.assign(p, 0);
    uint64_t d = power_subgroup_index(n, p);
    uint64_t step = mod_pow(primitive_root(p), d, p);
    uint64_t x = 1;
    h.elements.reserve((p - 1) / d);
    for (uint64_t k = 0; k < (p - 1) / d; ++k) {
        h.member[x] = 1;
        h.elements.push_back(x);
        x = mul_mod(x, step, p);
    }
    return h;
}

}  // namespace

TraceSet set_Ap(uint64_t p) {
    require_prime(p, "set_Ap");
    TraceSet s;
    s.p = p;
    if (p == 2) {
        s.entries = {-1, 1};
        return s;
    }
    const int64_t ip = static_cast<int64_t>(p);
    int64_t bound = 0;
    while ((bound + 1) * (bound + 1) <= 4 * ip) ++bound;
    for (int64_t a = -bound; a <= bound; ++a)
        if ((((a - ip - 1) % 4) + 4) % 4 == 0) s.entries.push_back(a);
    return s;
}

TraceSet set_Tp(uint64_t p) {
    TraceSet s = set_Ap(p);
    const int64_t q = static_cast<int64_t>(p) + 1;
    s.entries.push_back(q);
    s.entries.push_back(-q);
    finish(s);
    return s;
}

bool second_case(const Triple& t, int n, uint64_t p) {
    check_good(t, p, "second_case");
    if (n < 1) throw PreconditionError("second_case: n must be positive");
    uint64_t a = reduce(t.a(), p), b = reduce(t.b(), p), c = reduce(t.c(), p);
    auto ratio = [p](uint64_t x, uint64_t y) { return mul_mod(x, inv_mod(y, p), p); };
    return is_nth_power(ratio(a, b), n, p) || is_nth_power(ratio(b, c), n, p) || is_nth_power(ratio(c, a), n, p);
}

std::vector<uint64_t> set_Sprime(const Triple& t, int n, uint64_t p) {
    check_good(t, p, "set_Sprime");
    if (n < 1) throw PreconditionError("set_Sprime: n must be positive");
    auto [ac, bc] = ratios(t, p);
    auto table = nth_power_table(n, p);
    std::vector<uint64_t> out;
    for (uint64_t alpha = 1; alpha < p; ++alpha) {
        uint64_t v = add_mod(mul_mod(ac, mod_pow(alpha, n, p), p), bc, p);
        if (table[v]) out.push_back(alpha);
    }
    return out;
}

std::vector<uint64_t> fiber_parameters(const Triple& t, int n, uint64_t p) {
    check_good(t, p, "fiber_parameters");
    auto [ac, bc] = ratios(t, p);
    PowerSubgroup h = power_subgroup(n, p);
    std::vector<uint64_t> out;
    for (uint64_t u : h.elements)
        if (h.member[add_mod(mul_mod(ac, u, p), bc, p)]) out.push_back(u);
    std::sort(out.begin(), out.end());
    return out;
}

TraceSet set_Tnp(const Triple& t, int n, uint64_t p) {
    check_good(t, p, "set_Tnp");
    if (p == 2 || (n > 0 && static_cast<uint64_t>(n) % p == 0))
        throw PreconditionError("set_Tnp: p must be odd and prime to n");
    TraceSet s;
    s.p = p;
    s.n = n;
    s.provenance = Provenance::Kraus;
    uint64_t a = reduce(t.a(), p), b = reduce(t.b(), p);
    QuadraticCharacter chi(p);
    for (uint64_t u : fiber_parameters(t, n, p)) {
        auto [a2, a4] = fiber_coefficients(p, a, b, u);
        int64_t tr = trace_frobenius(CurveFp::short_form(p, a2, a4, 0), chi);
        s.entries.push_back(tr);
        s.entries.push_back(-tr);
    }
    if (second_case(t, n, p)) {
        s.provenance = Provenance::SecondCaseAugmented;
        const int64_t q = static_cast<int64_t>(p) + 1;
        s.entries.push_back(q);
        s.entries.push_back(-q);
    }
    finish(s);
    return s;
}

TraceSetMod3 tbar(const Triple& t, int n, uint64_t p) { return TraceSetMod3::from(set_Tnp(t, n, p)); }

namespace {

TraceSetMod3 tbar_by_isogeny(const Triple& t, uint64_t n, uint64_t p, const PowerSubgroup& h) {
    TraceSetMod3 r;
    const bool p1 = p % 3 == 1;
    if (second_case(t, static_cast<int>(n), p)) {
        r.insert(static_cast<int64_t>(p) + 1);
        r.insert(-static_cast<int64_t>(p) - 1);
    }
    auto [ac, bc] = ratios(t, p);
    uint64_t a = reduce(t.a(), p), b = reduce(t.b(), p);
    for (uint64_t u : h.elements) {
        if (r.mask == 7u) break;
        if (!h.member[add_mod(mul_mod(ac, u, p), bc, p)]) continue;
        auto [a2, a4] = fiber_coefficients(p, a, b, u);
        bool iso = has_3_isogeny_divpoly(p, a2, a4);
        // trace = +-(p+1) mod 3 exactly when a 3-isogeny exists
        bool zero_class = (p1 != iso);
        r.mask |= zero_class ? 1u : 6u;
    }
    return r;
}

}  // namespace

TbarPair tbar_3_9_fast(const Triple& t, uint64_t p) {
    check_good(t, p, "tbar_3_9_fast");
    if (p < 5) throw PreconditionError("tbar_3_9_fast: p >= 5 required");
    PowerSubgroup h3 = power_subgroup(3, p);
    TbarPair out;
    out.t3 = tbar_by_isogeny(t, 3, p, h3);
    if (power_subgroup_index(9, p) == power_subgroup_index(3, p)) {
        out.t9 = out.t3;
    } else {
        out.t9 = tbar_by_isogeny(t, 9, p, power_subgroup(9, p));
    }
    return out;
}

BigInt L_fp(const NewformClass& f, uint64_t p) {
    require_prime(p, "L_fp");
    if (f.level % p == 0) throw PreconditionError("L_fp: p divides the level");
    BigInt prod = big_from_u64(p);
    for (int64_t a : set_Tp(p).entries) prod *= eigen_norm(f, p, a);
    return prod;
}

SurvivorSet survivor_primes(const NewformClass& f, uint64_t p_max, bool exclude_p_equal_l) {
    SurvivorSet s;
    std::vector<std::pair<uint64_t, BigInt>> values;
    for (uint64_t p : primes_up_to(p_max)) {
        if (f.level % p == 0) continue;
        values.emplace_back(p, L_fp(f, p));
        s.used_primes.push_back(p);
    }
    BigInt g = 0;
    for (const auto& [p, v] : values) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    s.gcd = g;
    if (g == 0) {
        s.all = true;
        return s;
    }
    if (g != 1) {
        for (const auto& q : prime_divisors(g))
            if (q != 2) s.primes.push_back(to_u64(q));
    }
    if (exclude_p_equal_l) {
        std::vector<uint64_t> kept;
        for (uint64_t l : s.primes) {
            bool in_range = std::find(s.used_primes.begin(), s.used_primes.end(), l) != s.used_primes.end();
            if (!in_range) {
                kept.push_back(l);
                continue;
            }
            BigInt gl = 0;
            for (const auto& [p, v] : values)
                if (p != l) mpz_gcd(gl.get_mpz_t(), gl.get_mpz_t(), v.get_mpz_t());
            if (gl == 0 || mpz_divisible_ui_p(gl.get_mpz_t(), l)) kept.push_back(l);
        }
        s.primes = kept;
    }
    return s;
}

}  // namespace twf
