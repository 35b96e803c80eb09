#include "twf/deformation.hpp"

#include <algorithm>
#include <set>

#include "twf/frey.hpp"
#include "twf/kraus.hpp"

namespace twf {

namespace fixtures {

// Level 71: O_{f_1}, O_{f_2} generated by a_5.
IntPoly level71_cubic_a() { return IntPoly{25, -2, -5, 1}; }
IntPoly level71_cubic_b() { return IntPoly{-7, -2, 3, 1}; }

// Level 935, degree-11 class: minimal polynomial of a_3.
IntPoly level935_hecke_poly() { return IntPoly{-168, -770, -449, 1212, 705, -827, -225, 222, 26, -25, -1, 1}; }

CurveQ curve_142e1() { return CurveQ(1, -1, 0, -2626, 52244); }

}  // namespace fixtures

namespace {

ModPoly with_modulus(const ModPoly& a, uint64_t m) { return ModPoly(m, a.c); }

// Lift f = g h (mod l) to f = G H (mod M), g and h monic and coprime mod l.
std::pair<ModPoly, ModPoly> hensel_pair(const ModPoly& f, const ModPoly& g0, const ModPoly& h0, uint64_t l,
                                        uint64_t M) {
    ModPoly d, s0, t0;
    ext_gcd(g0, h0, d, s0, t0);
    if (d.degree() != 0) throw PreconditionError("hensel_pair: factors are not coprime mod l");
    ModPoly g = g0, h = h0, s = s0, t = t0;
    uint64_t m = l;
    while (m < M) {
        unsigned __int128 sq = static_cast<unsigned __int128>(m) * m;
        uint64_t m2 = sq >= M ? M : static_cast<uint64_t>(sq);
        ModPoly F = with_modulus(f, m2);
        g = with_modulus(g, m2);
        h = with_modulus(h, m2);
        s = with_modulus(s, m2);
        t = with_modulus(t, m2);
        ModPoly e = F - g * h;
        auto [q, r] = divmod(s * e, h);
        ModPoly g1 = g + t * e + q * g;
        ModPoly h1 = h + r;
        ModPoly b = s * g1 + t * h1 - ModPoly(m2, {1});
        auto [c, dd] = divmod(s * b, h1);
        s = s - dd;
        t = t - t * b - c * g1;
        g = g1;
        h = h1;
        m = m2;
    }
    return {with_modulus(g, M), with_modulus(h, M)};
}

}  // namespace

std::vector<LocalComponent> lift_components(const IntPoly& f, uint64_t l, int k) {
    if (!f.is_monic()) throw PreconditionError("lift_components: polynomial must be monic");
    if (k < 1) throw PreconditionError("lift_components: k must be positive");
    const uint64_t M = int_pow(l, k);
    auto factors = factor_mod_l(f, l);
    std::vector<LocalComponent> out;
    ModPoly rest = ModPoly::from_int(f, M);
    for (size_t i = 0; i < factors.size(); ++i) {
        ModPoly local = pow(factors[i].factor, static_cast<unsigned>(factors[i].multiplicity));
        LocalComponent c;
        c.l = l;
        c.k = k;
        c.factor = factors[i].factor;
        c.multiplicity = factors[i].multiplicity;
        if (i + 1 == factors.size()) {
            c.component = rest;
        } else {
            ModPoly cof = divmod(with_modulus(rest, l), local).first;
            auto [G, H] = hensel_pair(rest, local, cof, l, M);
            c.component = G;
            rest = H;
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<uint64_t> ring_maps_to(const LocalComponent& c, int r) {
    if (r < 1 || r > c.k) throw PreconditionError("ring_maps_to: need 1 <= r <= k");
    const uint64_t mr = int_pow(c.l, r);
    ModPoly comp = with_modulus(c.component, mr);
    std::vector<uint64_t> roots;
    for (uint64_t x = 0; x < mr; ++x)
        if (comp.eval(x) == 0) roots.push_back(x);
    return roots;
}

bool ScenarioVerdict::passed() const {
    return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.passed; });
}

std::string ScenarioVerdict::first_failure() const {
    for (const auto& a : assertions)
        if (!a.passed) return a.name;
    return {};
}

namespace {

std::string join(const std::vector<uint64_t>& v) {
    std::string s = "{";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "}";
}

void add(ScenarioVerdict& v, std::string name, bool ok, std::string detail) {
    v.assertions.push_back({std::move(name), ok, std::move(detail)});
}

}  // namespace

ScenarioVerdict verify_level71_scenario(const Level71Options& opt) {
    ScenarioVerdict v;
    const uint64_t l = 3;
    const int k = opt.k;
    if (k < 1) throw PreconditionError("verify_level71_scenario: k must be positive");
    if (k < 3) v.warnings.push_back("k = " + std::to_string(k) + " < 3: the mod 27 separation is not tested");
    if (k < 2) v.warnings.push_back("k = 1: only the residue mod 3 is compared (mod 3 only)");
    const int r = std::min(k, 3);
    const uint64_t mr = int_pow(l, r);

    // roots above 2 mod 3, one simple root per cubic
    std::vector<uint64_t> roots;
    bool shape_ok = true;
    std::string shape_detail;
    for (const IntPoly& cubic : {opt.cubic_a, opt.cubic_b}) {
        std::vector<uint64_t> mine;
        if (!cubic.is_monic()) {
            shape_ok = false;
            shape_detail += cubic.str() + " is not monic; ";
            continue;
        }
        for (const auto& c : lift_components(cubic, l, k)) {
            if (c.factor.degree() == 1 && c.factor.eval(2) == 0 && c.multiplicity == 1) {
                auto m = ring_maps_to(c, r);
                mine.insert(mine.end(), m.begin(), m.end());
            }
        }
        if (mine.size() != 1) {
            shape_ok = false;
            shape_detail += cubic.str() + " has " + std::to_string(mine.size()) + " simple roots above 2 mod 3; ";
        } else {
            shape_detail += cubic.str() + " -> " + std::to_string(mine[0]) + " mod " + std::to_string(mr) + "; ";
        }
        roots.insert(roots.end(), mine.begin(), mine.end());
    }
    std::sort(roots.begin(), roots.end());
    std::vector<uint64_t> expected{11 % mr, 20 % mr};
    std::sort(expected.begin(), expected.end());
    expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
    std::vector<uint64_t> root_set = roots;
    root_set.erase(std::unique(root_set.begin(), root_set.end()), root_set.end());
    add(v, "roots above 2 mod 3 lift to {11, 20} mod 27", shape_ok && root_set == expected && roots.size() == 2,
        shape_detail + "set " + join(root_set) + " mod " + std::to_string(mr));

    const int64_t a5 = reduce_and_ap(fixtures::curve_142e1(), 5);

    if (k >= 2) {
        bool all2 = !roots.empty() && std::all_of(roots.begin(), roots.end(), [](uint64_t x) { return x % 9 == 2; });
        add(v, "both roots are 2 mod 9", all2 && roots.size() == 2, "roots " + join(roots));
    } else {
        v.skipped.push_back("both roots are 2 mod 9");
    }

    add(v, "a_5(142e1) = 2 by point counting", a5 == 2, "a_5 = " + std::to_string(a5));

    const uint64_t a5_27 = reduce(a5, 27);
    if (k >= 3) {
        bool differs = roots.size() == 2 && std::none_of(roots.begin(), roots.end(), [&](uint64_t x) { return x == a5_27; });
        add(v, "a_5(142e1) differs from both roots mod 27", differs, "a_5 mod 27 = " + std::to_string(a5_27));
    } else {
        v.skipped.push_back("a_5(142e1) differs from both roots mod 27");
    }
    if (k >= 2) {
        bool same9 = roots.size() == 2 &&
                     std::all_of(roots.begin(), roots.end(), [&](uint64_t x) { return x % 9 == reduce(a5, 9); });
        add(v, "a_5(142e1) agrees with both roots mod 9", same9, "a_5 mod 9 = " + std::to_string(reduce(a5, 9)));
    } else {
        bool same3 = roots.size() == 2 &&
                     std::all_of(roots.begin(), roots.end(), [&](uint64_t x) { return x % 3 == reduce(a5, 3); });
        add(v, "a_5(142e1) agrees with both roots mod 3", same3, "a_5 mod 3 = " + std::to_string(reduce(a5, 3)));
    }

    // Hecke algebra component at the shared residue: maps to Z/27 are {2, 11, 20}
    if (k >= 3 && opt.cubic_a.is_monic() && opt.cubic_b.is_monic()) {
        IntPoly hecke = opt.cubic_a * opt.cubic_b;
        std::vector<uint64_t> maps27, maps9;
        for (const auto& c : lift_components(hecke, l, k)) {
            if (c.factor.degree() == 1 && c.factor.eval(2) == 0) {
                maps27 = ring_maps_to(c, 3);
            }
        }
        // psi mod 9 is the reduction of a map to Z/27, not an arbitrary map to Z/9
        std::set<uint64_t> reduced;
        for (uint64_t m : maps27) reduced.insert(m % 9);
        maps9.assign(reduced.begin(), reduced.end());
        add(v, "Hecke component at 2 mod 3 maps to Z/27 by {2, 11, 20}, all reducing to 2 mod 9",
            maps27 == std::vector<uint64_t>{2, 11, 20} && maps9 == std::vector<uint64_t>{2},
            "Z/27: " + join(maps27) + ", reduced mod 9: " + join(maps9));
    }
    v.assumptions.push_back("the Hecke algebra at level 71 is Z[t]/(product of the two cubics) with t = T_5");
    return v;
}

ScenarioVerdict verify_level935_scenario(const Level935Options& opt) {
    ScenarioVerdict v;
    const Triple triple(11, 16, 7225);

    TraceSet t31 = set_Tnp(triple, 9, 31);
    add(v, "T_{9,31} = {-32, -8, 8, 32}", t31.entries == std::vector<int64_t>{-32, -8, 8, 32},
        [&] {
            std::string s = "{";
            for (size_t i = 0; i < t31.entries.size(); ++i) s += (i ? "," : "") + std::to_string(t31.entries[i]);
            return s + "}";
        }());
    TraceSetMod3 tb = TraceSetMod3::from(t31);

    if (opt.classes.empty()) {
        v.skipped.push_back("a_31 mod the unramified prime above 3 is 0 (no level-935 data)");
    } else {
        std::vector<const NewformClass*> picks;
        for (const auto& f : opt.classes)
            if (f.degree == 11 && f.has_eigenvalue(2) && eigen_trace(f, 2) == 0) picks.push_back(&f);
        if (picks.size() != 1) {
            add(v, "unique degree-11 class with trace(a_2) = 0", false,
                std::to_string(picks.size()) + " candidates");
        } else {
            const NewformClass& f = *picks[0];
            auto lams = primes_above(f, 3);
            std::vector<const PrimeAboveL*> deg1;
            for (const auto& lam : lams)
                if (lam.inertia_degree == 1) deg1.push_back(&lam);
            const PrimeAboveL* unram = nullptr;
            const PrimeAboveL* ram = nullptr;
            for (auto* lam : deg1) (lam->ramified ? ram : unram) = lam;
            bool shape = deg1.size() == 2 && unram && ram;
            add(v, "exactly two degree-1 primes above 3, one ramified", shape,
                f.name() + ": " + std::to_string(lams.size()) + " primes above 3");
            if (shape) {
                uint64_t r31 = eigen_mod_lambda(f, 31, *unram);
                add(v, "a_31 = 0 mod the unramified prime, outside Tbar_{9,31}", r31 == 0 && !tb.contains(0),
                    "a_31 mod lambda_1 = " + std::to_string(r31) + ", Tbar = " + tb.str());
                DeformationCheck dc = deformation_check(f, *ram);
                add(v, "data generator: ramified component has no map to Z/9", dc.eliminated(),
                    dc.component.component.str() + " mod 9, maps " + join(dc.maps_mod_l2));
            }
        }
    }

    const IntPoly& P = opt.hecke_poly;
    std::optional<LocalComponent> quad;
    if (P.is_monic()) {
        for (const auto& c : lift_components(P, 3, 2))
            if (c.component.degree() == 2 && c.factor.degree() == 1 && c.multiplicity == 2) quad = c;
    }
    if (quad) {
        uint64_t a = sub_mod(0, quad->component.c[1], 9), b = quad->component.c[0];
        add(v, "ramified quadratic component T^2 - aT + b with a = 4, b = 7 mod 9", a == 4 && b == 7,
            "component " + quad->component.str("T") + " mod 9 (a = " + std::to_string(a) + ", b = " + std::to_string(b) + ")");
        auto maps = ring_maps_to(*quad, 2);
        add(v, "no ring map from the ramified component to Z/9", maps.empty(), "maps " + join(maps));
    } else {
        add(v, "ramified quadratic component T^2 - aT + b with a = 4, b = 7 mod 9", false,
            "no ramified quadratic component mod 9");
    }
    v.assumptions.push_back(
        "the localization of the Hecke algebra at the ramified prime is Z_3[T]/(component), i.e. no other class is "
        "congruent to it (checked separately as pairwise non-congruence of residue eigensystems)");
    return v;
}

DeformationCheck deformation_check(const NewformClass& f, const PrimeAboveL& lambda) {
    for (const auto& c : lift_components(f.min_poly, lambda.l, 2)) {
        if (c.factor == lambda.local_factor) {
            DeformationCheck d;
            d.component = c;
            d.maps_mod_l2 = ring_maps_to(c, 2);
            return d;
        }
    }
    throw PreconditionError("deformation_check: prime is not a factor of the minimal polynomial");
}

}  // namespace twf
