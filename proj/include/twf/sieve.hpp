#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "twf/compare.hpp"
#include "twf/deformation.hpp"
#include "twf/frey.hpp"
#include "twf/kraus.hpp"
#include "twf/localsolve.hpp"
#include "twf/newforms.hpp"

namespace twf {

// ---- exponents l >= 5 ----

struct ClassSurvivors {
    std::string label;
    int degree = 0;
    SurvivorSet set;
};

struct BigPrimeSieve {
    uint64_t p_max = 0;
    std::vector<ClassSurvivors> classes;
    std::vector<uint64_t> union_primes;  // odd primes, ascending
    bool unbounded = false;              // some class had gcd 0
};

BigPrimeSieve eliminate_big_primes(const Triple& t, uint64_t p_max, const std::vector<NewformClass>& classes,
                                   int threads = 1);

// l does not divide prod_{a in T_{l,p}} Norm(a - a_p(f)); needs p = 1 mod l, p not dividing l N0.
bool kraus_eliminate(const Triple& t, uint64_t l, uint64_t p, const NewformClass& f);
std::optional<uint64_t> find_kraus_witness(const Triple& t, uint64_t l, const NewformClass& f, uint64_t limit);

// Smallest prime p <= limit with p = 1 mod 9, p not dividing abc, the second
// case false, and every fiber curve over S'_{9,p} of trace divisible by 3.
std::optional<uint64_t> strong_irreducibility_witness(const Triple& t, uint64_t search_limit);
bool irreducibility_certificate(const Triple& t, uint64_t p);

// ---- n = 9 ----

// 3 does not divide prod_{a in T_{9,p}} Norm(a - a_p(f)).
bool mod3_class_eliminated(const Triple& t, const NewformClass& f, uint64_t p);

struct PairOutcome {
    size_t class_index = 0;  // into the candidate list
    std::string label;
    PrimeAboveL lambda;
    EisensteinCheck eisenstein;
    std::optional<uint64_t> residue_witness;  // a_p mod lambda outside Tbar_{9,p}
    bool survives = false;
};

struct Mod3Result {
    uint64_t p0 = 0;  // 0: no prime used
    std::vector<std::string> candidates;
    std::vector<std::optional<uint64_t>> class_witness;  // per candidate
    std::vector<size_t> n_p0;                            // candidate indices left by the norm test
    std::vector<PairOutcome> pairs;                      // degree-1 primes above 3 for classes in n_p0
    std::vector<size_t> survivors;                       // indices into pairs
};

Mod3Result mod3_survivors(const Triple& t, uint64_t p0, const std::vector<NewformClass>& candidates,
                          uint64_t eisenstein_bound = 100);

bool mod9_eliminate(const Triple& t, const NewformClass& f, const PrimeAboveL& lambda, uint64_t p);
std::optional<uint64_t> find_mod9_prime(const Triple& t, const NewformClass& f, const PrimeAboveL& lambda,
                                        uint64_t limit);

// Other degree-1 pairs (g, mu) above 3 at the level whose residue eigenvalues
// agree with (f, lambda) at every good prime <= bound.
std::vector<std::string> congruent_pairs(const std::vector<NewformClass>& level_classes, const NewformClass& f,
                                         const PrimeAboveL& lambda, uint64_t bound);

// Primitive (x, y, z) with |y|, |z| <= height and a x^3 + b y^3 + c z^3 = 0.
std::optional<std::array<int64_t, 3>> c3_point_search(const Triple& t, int64_t height);

// "d=5", with "*" when the degree alone does not single out the class.
std::string class_description(const std::vector<NewformClass>& level_classes, const NewformClass& f);

// ---- report ----

struct SieveConfig {
    uint64_t p_max = 3;
    uint64_t p0 = 0;
    uint64_t irr_limit = 200;
    uint64_t local_prime_limit = 100;
    uint64_t kraus_limit = 1000;
    uint64_t mod9_limit = 200;
    uint64_t eisenstein_bound = 100;
    uint64_t uniqueness_bound = 100;
    uint64_t n9_local_bound = 100;
    int64_t c3_height = 200;
    int k_max = 0;
    bool include_table3 = false;
    uint64_t table3_bound0 = kTable3Bound0;
    uint64_t table3_bound1 = kTable3Bound1;
    int threads = 1;
};

struct Witness {
    std::string kind;  // local, kraus, irreducibility, mod3_norm, eisenstein, residue, mod9, deformation
    uint64_t l = 0;
    uint64_t p = 0;
    std::string label;
    int lambda = -1;
    int k = 0;
    uint64_t bound = 0;
};

struct Table1Summary {
    uint64_t level = 0;
    uint64_t p_max = 0;
    std::vector<uint64_t> L_minus_3;
    std::vector<std::pair<uint64_t, uint64_t>> local;                  // (l, p)
    std::vector<std::tuple<uint64_t, uint64_t, std::string>> kraus;  // (l, p, class)
};

struct Mod9Entry {
    std::string label;
    std::optional<uint64_t> p;
    bool deformation = false;  // ramified lambda routed to the deformation check
    bool eliminated = false;
};

struct Table2Summary {
    uint64_t level = 0;
    std::string rank_claim = "external claim, unverified";
    std::optional<std::array<int64_t, 3>> c3_point;
    std::optional<uint64_t> p_irr;
    uint64_t p0 = 0;
    std::vector<std::string> n_p0_descriptions;
    std::vector<std::string> n_p0_labels;
    std::vector<Mod9Entry> mod9;
    bool n9_local_solvable = false;
};

struct SieveReport {
    explicit SieveReport(const Triple& t) : triple(t) {}

    Triple triple;
    uint64_t level = 0;
    SieveConfig config;
    BigPrimeSieve big;
    Mod3Result mod3;
    Table1Summary table1;
    Table2Summary table2;
    std::optional<Table3Row> table3;
    std::vector<Witness> witnesses;
    std::vector<std::string> gaps;
    std::vector<std::string> assumptions;
    bool complete() const { return gaps.empty(); }
};

SieveReport full_report(const Triple& t, const SieveConfig& config, const std::vector<NewformClass>& classes);

nlohmann::json report_json(const SieveReport& r);

// Re-runs the single operation a witness stands for.
bool replay_witness(const Triple& t, const Witness& w, const std::vector<NewformClass>& classes, int k_max = 0);

nlohmann::json witness_json(const Witness& w);
Witness witness_from_json(const nlohmann::json& j);

}  // namespace twf
