#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twf/frey.hpp"

namespace twf {

enum class LocalOutcome { Empty, Solvable, Unknown };

std::string to_string(LocalOutcome o);

struct LocalVerdict {
    LocalOutcome outcome = LocalOutcome::Unknown;
    uint64_t p = 0;
    int n = 0;
    int k = 0;  // Empty: first k without primitive solutions; Unknown: k_max reached
    // Solvable only: point mod p^k, the liftable coordinate and its
    // partial-derivative valuation (k > 2v).
    std::array<uint64_t, 3> point{0, 0, 0};
    uint64_t modulus = 1;
    int derivative_index = -1;
    int derivative_valuation = -1;
    uint64_t nodes = 0;
};

int default_k_max(const Triple& t, int n, uint64_t p);

// k_max <= 0 selects default_k_max.
LocalVerdict local_solvable(const Triple& t, int n, uint64_t p, int k_max = 0);

// Re-checks a Solvable witness: congruence and valuation inequality.
bool verify_local_witness(const Triple& t, const LocalVerdict& v);

struct EverywhereReport {
    int n = 0;
    uint64_t prime_bound = 0;
    std::vector<LocalVerdict> verdicts;  // every prime <= prime_bound
    std::vector<uint64_t> bad_primes;    // p | n*abc
    // Above this bound a smooth reduction has F_p points (Weil), and they lift.
    uint64_t weil_threshold = 0;
    bool none_empty = true;
    bool all_solvable = true;
    bool everywhere = false;  // all_solvable, bad primes covered and bound >= threshold
};

EverywhereReport local_points_everywhere(const Triple& t, int n, uint64_t prime_bound, int k_max = 0);
inline EverywhereReport local_points_everywhere_n9(const Triple& t, uint64_t prime_bound, int k_max = 0) {
    return local_points_everywhere(t, 9, prime_bound, k_max);
}

}  // namespace twf
