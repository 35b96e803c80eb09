#include "twf/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace twf {

using nlohmann::json;

namespace {

std::vector<uint64_t> sorted_unique(std::vector<uint64_t> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

void require_prime(uint64_t p, const char* what) {
    if (!is_prime(p)) throw PreconditionError(std::string(what) + ": p must be prime");
}

// p = 1 mod 3, p not dividing 3abc
bool mod3_admissible(const Triple& t, uint64_t p) { return p % 3 == 1 && !t.divides_abc(p); }

const NewformClass& find_class(const std::vector<NewformClass>& classes, const std::string& label) {
    for (const auto& f : classes)
        if (f.name() == label) return f;
    throw DataError("no newform class labelled " + label);
}

std::vector<PrimeAboveL> degree_one_above_3(const NewformClass& f) {
    std::vector<PrimeAboveL> out;
    for (auto& lam : primes_above(f, 3))
        if (lam.inertia_degree == 1) out.push_back(lam);
    return out;
}

}  // namespace

BigPrimeSieve eliminate_big_primes(const Triple& t, uint64_t p_max, const std::vector<NewformClass>& classes,
                                   int threads) {
    const uint64_t level = level_N0(t);
    BigPrimeSieve out;
    out.p_max = p_max;
    out.classes.resize(classes.size());
    parallel_for_index(classes.size(), threads, [&](size_t i) {
        const auto& f = classes[i];
        if (f.level != level) throw DataError("class " + f.name() + " is not of level " + std::to_string(level));
        out.classes[i] = {f.name(), f.degree, survivor_primes(f, p_max)};
    });
    std::vector<uint64_t> all;
    for (const auto& c : out.classes) {
        out.unbounded = out.unbounded || c.set.all;
        all.insert(all.end(), c.set.primes.begin(), c.set.primes.end());
    }
    out.union_primes = sorted_unique(all);
    return out;
}

bool kraus_eliminate(const Triple& t, uint64_t l, uint64_t p, const NewformClass& f) {
    require_prime(l, "kraus_eliminate");
    require_prime(p, "kraus_eliminate");
    if (p % l != 1) throw PreconditionError("kraus_eliminate: p must be 1 mod l");
    if (p == l || f.level % p == 0 || t.divides_abc(p))
        throw PreconditionError("kraus_eliminate: p divides l N0");
    BigInt prod = 1;
    for (int64_t a : set_Tnp(t, static_cast<int>(l), p).entries) prod *= eigen_norm(f, p, a);
    return !mpz_divisible_ui_p(prod.get_mpz_t(), l);
}

std::optional<uint64_t> find_kraus_witness(const Triple& t, uint64_t l, const NewformClass& f, uint64_t limit) {
    for (uint64_t p : primes_up_to(limit)) {
        if (p % l != 1 || f.level % p == 0 || t.divides_abc(p)) continue;
        if (kraus_eliminate(t, l, p, f)) return p;
    }
    return std::nullopt;
}

bool irreducibility_certificate(const Triple& t, uint64_t p) {
    require_prime(p, "irreducibility_certificate");
    if (p % 9 != 1 || t.divides_abc(p)) return false;
    if (second_case(t, 9, p)) return false;
    // twisting flips the trace, so 3 | trace is the twist-stable form of the count condition
    const uint64_t a = reduce(t.a(), p), b = reduce(t.b(), p);
    QuadraticCharacter chi(p);
    for (uint64_t u : fiber_parameters(t, 9, p)) {
        auto [a2, a4] = fiber_coefficients(p, a, b, u);
        if (trace_frobenius(CurveFp::short_form(p, a2, a4, 0), chi) % 3 != 0) return false;
    }
    return true;
}

std::optional<uint64_t> strong_irreducibility_witness(const Triple& t, uint64_t search_limit) {
    for (uint64_t p : primes_up_to(search_limit))
        if (p % 9 == 1 && irreducibility_certificate(t, p)) return p;
    return std::nullopt;
}

bool mod3_class_eliminated(const Triple& t, const NewformClass& f, uint64_t p) {
    require_prime(p, "mod3_class_eliminated");
    if (!mod3_admissible(t, p) || f.level % p == 0)
        throw PreconditionError("mod3_class_eliminated: need p = 1 mod 3, p not dividing 3 N0");
    BigInt prod = 1;
    for (int64_t a : set_Tnp(t, 9, p).entries) prod *= eigen_norm(f, p, a);
    return !mpz_divisible_ui_p(prod.get_mpz_t(), 3);
}

Mod3Result mod3_survivors(const Triple& t, uint64_t p0, const std::vector<NewformClass>& candidates,
                          uint64_t eisenstein_bound) {
    Mod3Result r;
    r.p0 = p0;
    std::vector<uint64_t> ps;
    for (uint64_t p : primes_up_to(p0))
        if (mod3_admissible(t, p)) ps.push_back(p);

    for (size_t i = 0; i < candidates.size(); ++i) {
        const auto& f = candidates[i];
        r.candidates.push_back(f.name());
        std::optional<uint64_t> w;
        for (uint64_t p : ps) {
            if (f.level % p == 0) continue;
            if (mod3_class_eliminated(t, f, p)) {
                w = p;
                break;
            }
        }
        r.class_witness.push_back(w);
        if (!w) r.n_p0.push_back(i);
    }

    // image in GL_2(F_3) forces degree 1; then the Eisenstein and residue tests
    for (size_t i : r.n_p0) {
        const auto& f = candidates[i];
        for (const auto& lam : degree_one_above_3(f)) {
            PairOutcome o;
            o.class_index = i;
            o.label = f.name();
            o.lambda = lam;
            o.eisenstein = is_eisenstein_mod_lambda(f, lam, eisenstein_bound);
            if (!o.eisenstein.eisenstein) {
                for (uint64_t p : ps) {
                    if (f.level % p == 0) continue;
                    uint64_t ap = eigen_mod_lambda(f, p, lam);
                    if (!tbar(t, 9, p).contains(static_cast<int>(ap))) {
                        o.residue_witness = p;
                        break;
                    }
                }
            }
            o.survives = !o.eisenstein.eisenstein && !o.residue_witness;
            if (o.survives) r.survivors.push_back(r.pairs.size());
            r.pairs.push_back(std::move(o));
        }
    }
    return r;
}

bool mod9_eliminate(const Triple& t, const NewformClass& f, const PrimeAboveL& lambda, uint64_t p) {
    require_prime(p, "mod9_eliminate");
    if (lambda.ramified) throw RamifiedPrimeError("mod9_eliminate: ramified prime goes to the deformation check");
    if (lambda.inertia_degree != 1) throw PreconditionError("mod9_eliminate: degree-1 prime required");
    // p = 2 divides b but not N0; T_p needs no Frey data
    if (p == 3 || f.level % p == 0 || level_N0(t) % p == 0)
        throw PreconditionError("mod9_eliminate: p divides 3 N0");
    for (int64_t a : set_Tp(p).entries)
        if (mpz_divisible_ui_p(BigInt(eigen_norm(f, p, a)).get_mpz_t(), 9)) return false;
    return eigen_generates_field(f, p);
}

std::optional<uint64_t> find_mod9_prime(const Triple& t, const NewformClass& f, const PrimeAboveL& lambda,
                                        uint64_t limit) {
    for (uint64_t p : primes_up_to(limit)) {
        if (p == 3 || f.level % p == 0 || level_N0(t) % p == 0) continue;
        if (mod9_eliminate(t, f, lambda, p)) return p;
    }
    return std::nullopt;
}

std::vector<std::string> congruent_pairs(const std::vector<NewformClass>& level_classes, const NewformClass& f,
                                         const PrimeAboveL& lambda, uint64_t bound) {
    std::vector<uint64_t> qs;
    for (uint64_t q : primes_up_to(bound))
        if (q != 3 && f.level % q != 0) qs.push_back(q);
    std::vector<uint64_t> mine;
    for (uint64_t q : qs) mine.push_back(eigen_mod_lambda(f, q, lambda));

    std::vector<std::string> out;
    for (const auto& g : level_classes) {
        if (!g.index_coprime(3)) continue;
        for (const auto& mu : degree_one_above_3(g)) {
            if (g.name() == f.name() && mu.index == lambda.index) continue;
            bool same = true;
            for (size_t i = 0; i < qs.size() && same; ++i) same = eigen_mod_lambda(g, qs[i], mu) == mine[i];
            if (same) out.push_back(g.name() + "/lambda" + std::to_string(mu.index));
        }
    }
    return out;
}

std::optional<std::array<int64_t, 3>> c3_point_search(const Triple& t, int64_t height) {
    using i128 = __int128;
    const i128 a = t.a(), b = t.b(), c = t.c();
    auto icbrt = [](i128 v) -> std::optional<int64_t> {
        bool neg = v < 0;
        i128 m = neg ? -v : v;
        auto r = static_cast<int64_t>(std::llround(std::cbrt(static_cast<long double>(m))));
        for (int64_t s = std::max<int64_t>(0, r - 2); s <= r + 2; ++s)
            if (static_cast<i128>(s) * s * s == m) return neg ? -s : s;
        return std::nullopt;
    };
    // z first so that points at infinity of the y-chart come last
    for (int64_t h = 1; h <= height; ++h) {
        for (int64_t z = -h; z <= h; ++z) {
            for (int64_t y = -h; y <= h; ++y) {
                if (std::max(std::llabs(y), std::llabs(z)) != h) continue;
                i128 rhs = -(b * y * y * y + c * z * z * z);
                if (rhs % a != 0) continue;
                auto x = icbrt(rhs / a);
                if (!x) continue;
                if (std::gcd(std::gcd(std::llabs(*x), std::llabs(y)), std::llabs(z)) != 1) continue;
                return std::array<int64_t, 3>{*x, y, z};
            }
        }
    }
    return std::nullopt;
}

std::string class_description(const std::vector<NewformClass>& level_classes, const NewformClass& f) {
    int same = 0;
    for (const auto& g : level_classes) same += g.degree == f.degree;
    return "d=" + std::to_string(f.degree) + (same > 1 ? "*" : "");
}

namespace {

bool trace_a2_zero_unique(const std::vector<NewformClass>& level_classes, const NewformClass& f) {
    if (f.level % 2 == 0 || eigen_trace(f, 2) != 0) return false;
    for (const auto& g : level_classes)
        if (g.name() != f.name() && g.degree == f.degree && eigen_trace(g, 2) == 0) return false;
    return true;
}

std::string lambda_tag(const std::string& label, int index) { return label + "/lambda" + std::to_string(index); }

}  // namespace

SieveReport full_report(const Triple& t, const SieveConfig& cfg, const std::vector<NewformClass>& classes) {
    SieveReport r(t);
    r.level = level_N0(t);
    r.config = cfg;
    for (const auto& f : classes)
        if (f.level != r.level) throw DataError("class " + f.name() + " is not of level " + std::to_string(r.level));

    // even exponents: a x^n + b y^n + c z^n has fixed sign
    const bool same_sign = (t.a() > 0) == (t.b() > 0) && (t.b() > 0) == (t.c() > 0);
    if (!same_sign) r.gaps.push_back("even exponents: coefficients of mixed sign are not handled");

    // exponents l >= 5
    r.big = eliminate_big_primes(t, cfg.p_max, classes, cfg.threads);
    r.table1.level = r.level;
    r.table1.p_max = cfg.p_max;
    for (uint64_t l : r.big.union_primes)
        if (l != 3) r.table1.L_minus_3.push_back(l);
    if (r.big.unbounded) r.gaps.push_back("L_{p_max} unbounded: a class has gcd 0, raise p_max");
    for (uint64_t l : r.table1.L_minus_3) {
        std::optional<LocalVerdict> empty;
        for (uint64_t p : primes_up_to(cfg.local_prime_limit)) {
            auto v = local_solvable(t, static_cast<int>(l), p, cfg.k_max);
            if (v.outcome == LocalOutcome::Empty) {
                empty = v;
                break;
            }
        }
        if (empty) {
            r.table1.local.emplace_back(l, empty->p);
            r.witnesses.push_back({"local", l, empty->p, "", -1, empty->k, 0});
            continue;
        }
        for (size_t i = 0; i < classes.size(); ++i) {
            const auto& s = r.big.classes[i].set;
            if (!s.all && std::find(s.primes.begin(), s.primes.end(), l) == s.primes.end()) continue;
            auto p = find_kraus_witness(t, l, classes[i], cfg.kraus_limit);
            if (p) {
                r.table1.kraus.emplace_back(l, *p, classes[i].name());
                r.witnesses.push_back({"kraus", l, *p, classes[i].name(), -1, 0, 0});
            } else {
                r.gaps.push_back("l=" + std::to_string(l) + ": no local or Kraus witness for " + classes[i].name());
            }
        }
    }

    // n = 9
    r.table2.level = r.level;
    r.table2.p0 = cfg.p0;
    r.table2.c3_point = c3_point_search(t, cfg.c3_height);
    r.table2.n9_local_solvable = local_points_everywhere_n9(t, cfg.n9_local_bound, cfg.k_max).all_solvable;
    r.table2.p_irr = strong_irreducibility_witness(t, cfg.irr_limit);
    if (r.table2.p_irr)
        r.witnesses.push_back({"irreducibility", 3, *r.table2.p_irr, "", -1, 0, 0});
    else
        r.gaps.push_back("n=9: no strong irreducibility witness up to " + std::to_string(cfg.irr_limit));

    std::vector<NewformClass> candidates;
    for (size_t i = 0; i < classes.size(); ++i) {
        const auto& s = r.big.classes[i].set;
        if (s.all || std::find(s.primes.begin(), s.primes.end(), 3) != s.primes.end()) candidates.push_back(classes[i]);
    }
    r.mod3 = mod3_survivors(t, cfg.p0, candidates, cfg.eisenstein_bound);
    for (size_t i = 0; i < candidates.size(); ++i)
        if (r.mod3.class_witness[i])
            r.witnesses.push_back({"mod3_norm", 3, *r.mod3.class_witness[i], candidates[i].name(), -1, 0, 0});
    for (const auto& o : r.mod3.pairs) {
        if (o.eisenstein.eisenstein)
            r.witnesses.push_back({"eisenstein", 3, 0, o.label, o.lambda.index, 0, cfg.eisenstein_bound});
        else if (o.residue_witness)
            r.witnesses.push_back({"residue", 3, *o.residue_witness, o.label, o.lambda.index, 0, 0});
    }

    for (size_t i : r.mod3.n_p0) {
        const auto& f = candidates[i];
        r.table2.n_p0_labels.push_back(f.name());
        std::string d = class_description(classes, f);
        if (d.back() == '*' && !trace_a2_zero_unique(classes, f)) d += " (trace(a_2) = 0 does not single it out)";
        r.table2.n_p0_descriptions.push_back(d);

        Mod9Entry e;
        e.label = f.name();
        auto lams = degree_one_above_3(f);
        bool ramified = std::any_of(lams.begin(), lams.end(), [](const PrimeAboveL& l) { return l.ramified; });
        e.deformation = ramified;
        if (!ramified && !lams.empty()) e.p = find_mod9_prime(t, f, lams.front(), cfg.mod9_limit);
        e.eliminated = true;
        for (size_t s : r.mod3.survivors) {
            const auto& o = r.mod3.pairs[s];
            if (o.class_index != i) continue;
            bool done = false;
            if (o.lambda.ramified) {
                done = deformation_check(f, o.lambda).eliminated();
                if (done) r.witnesses.push_back({"deformation", 3, 0, o.label, o.lambda.index, 2, 0});
            } else if (auto p = find_mod9_prime(t, f, o.lambda, cfg.mod9_limit)) {
                done = true;
                r.witnesses.push_back({"mod9", 3, *p, o.label, o.lambda.index, 0, 0});
            }
            if (!done) r.gaps.push_back("n=9: pair " + lambda_tag(o.label, o.lambda.index) + " not eliminated");
            auto others = congruent_pairs(classes, f, o.lambda, cfg.uniqueness_bound);
            if (!others.empty())
                r.gaps.push_back("n=9: pair " + lambda_tag(o.label, o.lambda.index) + " not unique up to " +
                                 std::to_string(cfg.uniqueness_bound) + ", congruent to " + others.front());
            e.eliminated = e.eliminated && done;
        }
        r.table2.mod9.push_back(e);
    }

    if (cfg.include_table3) r.table3 = table3_row(t, cfg.table3_bound0, cfg.table3_bound1, cfg.threads);

    r.assumptions.push_back("Q-rank of the Jacobian of C_3: external claim, unverified");
    r.assumptions.push_back("uniqueness of (f, lambda) checked as residue non-congruence for primes <= " +
                            std::to_string(cfg.uniqueness_bound));
    if (std::any_of(r.witnesses.begin(), r.witnesses.end(), [](const Witness& w) { return w.kind == "deformation"; }))
        r.assumptions.push_back("localized Hecke algebra equals Z_3[t]/(component) at the ramified prime");
    return r;
}

json witness_json(const Witness& w) {
    json j = {{"kind", w.kind}, {"l", w.l}, {"p", w.p}};
    if (!w.label.empty()) j["class"] = w.label;
    if (w.lambda >= 0) j["lambda"] = w.lambda;
    if (w.k) j["k"] = w.k;
    if (w.bound) j["bound"] = w.bound;
    return j;
}

Witness witness_from_json(const json& j) {
    Witness w;
    w.kind = j.at("kind").get<std::string>();
    w.l = j.at("l").get<uint64_t>();
    w.p = j.at("p").get<uint64_t>();
    w.label = j.value("class", std::string());
    w.lambda = j.value("lambda", -1);
    w.k = j.value("k", 0);
    w.bound = j.value("bound", uint64_t{0});
    return w;
}

bool replay_witness(const Triple& t, const Witness& w, const std::vector<NewformClass>& classes, int k_max) {
    auto lambda_of = [&](const NewformClass& f) {
        auto ps = primes_above(f, 3);
        if (w.lambda < 0 || static_cast<size_t>(w.lambda) >= ps.size()) throw DataError("witness: bad prime index");
        return ps[w.lambda];
    };
    if (w.kind == "local") return local_solvable(t, static_cast<int>(w.l), w.p, k_max).outcome == LocalOutcome::Empty;
    if (w.kind == "irreducibility") return irreducibility_certificate(t, w.p);
    const NewformClass& f = find_class(classes, w.label);
    if (w.kind == "kraus") return kraus_eliminate(t, w.l, w.p, f);
    if (w.kind == "mod3_norm") return mod3_class_eliminated(t, f, w.p);
    if (w.kind == "eisenstein") return is_eisenstein_mod_lambda(f, lambda_of(f), w.bound).eisenstein;
    if (w.kind == "residue")
        return !tbar(t, 9, w.p).contains(static_cast<int>(eigen_mod_lambda(f, w.p, lambda_of(f))));
    if (w.kind == "mod9") return mod9_eliminate(t, f, lambda_of(f), w.p);
    if (w.kind == "deformation") return deformation_check(f, lambda_of(f)).eliminated();
    throw PreconditionError("unknown witness kind " + w.kind);
}

namespace {

json table3_json(const Table3Row& row) {
    return {{"p0", row.p0},         {"p1", row.p1},         {"differ", row.differ},
            {"flagged", row.flagged}, {"bound0", row.bound0}, {"bound1", row.bound1}};
}

}  // namespace

json report_json(const SieveReport& r) {
    const auto& c = r.config;
    json cfg = {{"p_max", c.p_max},
                {"p0", c.p0},
                {"irr_limit", c.irr_limit},
                {"local_prime_limit", c.local_prime_limit},
                {"kraus_limit", c.kraus_limit},
                {"mod9_limit", c.mod9_limit},
                {"eisenstein_bound", c.eisenstein_bound},
                {"uniqueness_bound", c.uniqueness_bound},
                {"n9_local_bound", c.n9_local_bound},
                {"c3_height", c.c3_height},
                {"k_max", c.k_max}};

    json classes = json::array();
    for (const auto& cs : r.big.classes) {
        classes.push_back({{"class", cs.label},
                           {"degree", cs.degree},
                           {"unbounded", cs.set.all},
                           {"gcd", cs.set.gcd.get_str()},
                           {"survivors", cs.set.primes}});
    }
    json local = json::array(), kraus = json::array();
    for (auto [l, p] : r.table1.local) local.push_back({l, p});
    for (const auto& [l, p, label] : r.table1.kraus) kraus.push_back({{"l", l}, {"p", p}, {"class", label}});
    json t1 = {{"level", r.table1.level}, {"p_max", r.table1.p_max}, {"L_minus_3", r.table1.L_minus_3},
               {"local", local},          {"kraus", kraus},          {"classes", classes}};

    json pairs = json::array();
    for (const auto& o : r.mod3.pairs) {
        json pj = {{"class", o.label},
                   {"lambda", o.lambda.index},
                   {"ramified", o.lambda.ramified},
                   {"eisenstein", o.eisenstein.eisenstein},
                   {"survives", o.survives}};
        pj["residue_witness"] = o.residue_witness ? json(*o.residue_witness) : json(nullptr);
        pairs.push_back(pj);
    }
    json mod9 = json::array();
    for (const auto& e : r.table2.mod9) {
        json ej = {{"class", e.label}, {"deformation", e.deformation}, {"eliminated", e.eliminated}};
        ej["p"] = e.p ? json(*e.p) : json(nullptr);
        mod9.push_back(ej);
    }
    json t2 = {{"level", r.table2.level},
               {"rank_c3", {{"claim", r.table2.rank_claim}}},
               {"p0", r.table2.p0},
               {"candidates", r.mod3.candidates},
               {"N_p0", {{"descriptions", r.table2.n_p0_descriptions}, {"classes", r.table2.n_p0_labels}}},
               {"pairs", pairs},
               {"mod9", mod9},
               {"n9_local_solvable", r.table2.n9_local_solvable}};
    t2["p_irr"] = r.table2.p_irr ? json(*r.table2.p_irr) : json(nullptr);
    t2["rank_c3"]["point"] = r.table2.c3_point ? json(*r.table2.c3_point) : json(nullptr);

    json tables = {{"table1", t1}, {"table2", t2}};
    if (r.table3) tables["table3"] = table3_json(*r.table3);

    json witnesses = json::array();
    for (const auto& w : r.witnesses) witnesses.push_back(witness_json(w));

    return {{"schema", "1"},
            {"triple", {r.triple.a(), r.triple.b(), r.triple.c()}},
            {"level", r.level},
            {"config", cfg},
            {"tables", tables},
            {"witnesses", witnesses},
            {"gaps", r.gaps},
            {"assumptions", r.assumptions},
            {"verdict", r.complete() ? "complete" : "incomplete"}};
}

}  // namespace twf
