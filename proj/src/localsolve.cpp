#include "twf/localsolve.hpp"

#include <algorithm>

namespace twf {

std::string to_string(LocalOutcome o) {
    switch (o) {
        case LocalOutcome::Empty: return "empty";
        case LocalOutcome::Solvable: return "solvable";
        case LocalOutcome::Unknown: return "unknown";
    }
    return "?";
}

namespace {

constexpr int kCap = 10;

int v_of(int64_t x, uint64_t p) { return valuation(x, p); }

// Largest k with p^k < 2^62.
int max_precision(uint64_t p) {
    int k = 0;
    unsigned __int128 q = 1;
    while (q * p < (static_cast<unsigned __int128>(1) << 62)) {
        q *= p;
        ++k;
    }
    return k;
}

int valuation_mod(uint64_t x, uint64_t p, int cap) {
    if (x == 0) return cap;
    int v = 0;
    while (x % p == 0 && v < cap) {
        x /= p;
        ++v;
    }
    return v;
}

struct Search {
    uint64_t p;
    uint64_t n;
    std::array<int64_t, 3> coef;
    std::vector<uint64_t> pk;  // p^j
    int limit = 0;
    bool reached_limit = false;
    uint64_t nodes = 0;
    std::optional<LocalVerdict> found;

    uint64_t form(const std::array<uint64_t, 3>& P, uint64_t m) const {
        uint64_t s = 0;
        for (int i = 0; i < 3; ++i) s = add_mod(s, mul_mod(reduce(coef[i], m), mod_pow(P[i], n, m), m), m);
        return s;
    }

    uint64_t partial(const std::array<uint64_t, 3>& P, int i, uint64_t m) const {
        uint64_t c = mul_mod(reduce(coef[i], m), n % m, m);
        return mul_mod(c, mod_pow(P[i], n - 1, m), m);
    }

    // Node: P known mod p^j with form(P) = 0 mod p^j.
    void visit(std::array<uint64_t, 3> P, int j, int fixed) {
        if (found) return;
        ++nodes;
        const uint64_t m = pk[j];
        int best_i = -1, best_v = j;
        for (int i = 0; i < 3; ++i) {
            int v = valuation_mod(partial(P, i, m), p, j);
            if (v < best_v) best_v = v, best_i = i;
        }
        if (best_i >= 0 && j >= 2 * best_v + 1) {
            LocalVerdict out;
            out.outcome = LocalOutcome::Solvable;
            out.k = j;
            out.point = P;
            out.modulus = m;
            out.derivative_index = best_i;
            out.derivative_valuation = best_v;
            found = out;
            return;
        }
        if (j == limit) {
            reached_limit = true;
            return;
        }
        // F(P + p^j T) = F(P) + p^j grad(P).T mod p^(j+1)
        const uint64_t next = pk[j + 1];
        uint64_t q = form(P, next) / m;
        std::array<uint64_t, 3> g{};
        for (int i = 0; i < 3; ++i) g[i] = partial(P, i, p);
        int f1 = fixed == 0 ? 1 : 0, f2 = fixed == 2 ? 1 : 2;
        for (uint64_t s = 0; s < p && !found; ++s) {
            for (uint64_t t = 0; t < p && !found; ++t) {
                if ((q + g[f1] * s + g[f2] * t) % p != 0) continue;
                auto C = P;
                C[f1] += m * s;
                C[f2] += m * t;
                visit(C, j + 1, fixed);
            }
        }
    }

    // Primitive roots mod p, normalized: the first unit coordinate is 1.
    void run() {
        for (int fixed = 0; fixed < 3 && !found; ++fixed) {
            int f1 = fixed == 0 ? 1 : 0, f2 = fixed == 2 ? 1 : 2;
            for (uint64_t s = 0; s < p && !found; ++s) {
                for (uint64_t t = 0; t < p && !found; ++t) {
                    std::array<uint64_t, 3> P{};
                    P[fixed] = 1;
                    P[f1] = s;
                    P[f2] = t;
                    // coordinates before the fixed one must vanish mod p
                    bool ok = true;
                    for (int i = 0; i < fixed; ++i) ok = ok && P[i] % p == 0;
                    if (!ok || form(P, p) != 0) continue;
                    visit(P, 1, fixed);
                }
            }
        }
    }
};

}  // namespace

int default_k_max(const Triple& t, int n, uint64_t p) {
    int v = v_of(n, p) + v_of(t.a(), p) + v_of(t.b(), p) + v_of(t.c(), p);
    return std::min(2 * v + 3, kCap);
}

LocalVerdict local_solvable(const Triple& t, int n, uint64_t p, int k_max) {
    if (!is_prime(p)) throw PreconditionError("local_solvable: p must be prime");
    if (n < 1) throw PreconditionError("local_solvable: n must be positive");
    if (k_max <= 0) k_max = default_k_max(t, n, p);
    k_max = std::min(k_max, max_precision(p) - 1);

    Search s;
    s.p = p;
    s.n = static_cast<uint64_t>(n);
    s.coef = {t.a(), t.b(), t.c()};
    s.pk.assign(k_max + 2, 1);
    for (int j = 1; j <= k_max + 1; ++j) s.pk[j] = s.pk[j - 1] * p;

    // iterative deepening: the first depth at which every branch dies
    uint64_t total = 0;
    for (int k = 1; k <= k_max; ++k) {
        s.limit = k;
        s.reached_limit = false;
        s.nodes = 0;
        s.run();
        total += s.nodes;
        if (s.found) {
            LocalVerdict v = *s.found;
            v.p = p;
            v.n = n;
            v.nodes = total;
            return v;
        }
        if (!s.reached_limit) {
            LocalVerdict v;
            v.outcome = LocalOutcome::Empty;
            v.p = p;
            v.n = n;
            v.k = k;
            v.nodes = total;
            return v;
        }
    }
    LocalVerdict v;
    v.outcome = LocalOutcome::Unknown;
    v.p = p;
    v.n = n;
    v.k = k_max;
    v.nodes = total;
    return v;
}

bool verify_local_witness(const Triple& t, const LocalVerdict& v) {
    if (v.outcome != LocalOutcome::Solvable) return false;
    const uint64_t m = v.modulus;
    const std::array<int64_t, 3> coef{t.a(), t.b(), t.c()};
    bool primitive = false;
    uint64_t s = 0;
    for (int i = 0; i < 3; ++i) {
        primitive = primitive || v.point[i] % v.p != 0;
        s = add_mod(s, mul_mod(reduce(coef[i], m), mod_pow(v.point[i], v.n, m), m), m);
    }
    if (!primitive || s != 0) return false;
    int i = v.derivative_index;
    if (i < 0 || i > 2) return false;
    uint64_t d = mul_mod(mul_mod(reduce(coef[i], m), static_cast<uint64_t>(v.n) % m, m),
                         mod_pow(v.point[i], v.n - 1, m), m);
    int val = valuation_mod(d, v.p, v.k);
    return val == v.derivative_valuation && v.k > 2 * val;
}

EverywhereReport local_points_everywhere(const Triple& t, int n, uint64_t prime_bound, int k_max) {
    EverywhereReport r;
    r.n = n;
    r.prime_bound = prime_bound;
    uint64_t g = static_cast<uint64_t>(n - 1) * static_cast<uint64_t>(n - 2) / 2;
    r.weil_threshold = 4 * g * g;
    for (uint64_t p : primes_up_to(prime_bound)) {
        if (static_cast<uint64_t>(n) % p == 0 || t.divides_abc(p)) r.bad_primes.push_back(p);
        LocalVerdict v = local_solvable(t, n, p, k_max);
        r.none_empty = r.none_empty && v.outcome != LocalOutcome::Empty;
        r.all_solvable = r.all_solvable && v.outcome == LocalOutcome::Solvable;
        r.verdicts.push_back(v);
    }
    bool bad_covered = true;
    for (uint64_t q : t.odd_primes()) bad_covered = bad_covered && q <= prime_bound;
    for (uint64_t q : prime_divisors(static_cast<uint64_t>(n))) bad_covered = bad_covered && q <= prime_bound;
    bad_covered = bad_covered && prime_bound >= 2;
    r.everywhere = r.all_solvable && bad_covered && prime_bound >= r.weil_threshold;
    return r;
}

}  // namespace twf
