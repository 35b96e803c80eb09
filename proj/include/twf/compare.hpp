#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "twf/elliptic.hpp"
#include "twf/frey.hpp"
#include "twf/kraus.hpp"
#include "twf/newforms.hpp"

namespace twf {

// Y^2 = X^3 - 2^4 3^3 (abc)^2
CurveQ jacobian_curve(const Triple& t);

struct ParityResult {
    int64_t ap_J = 0;
    bool zero_in_tbar3 = false;
    bool agree = false;
};

ParityResult parity_check(const Triple& t, uint64_t p);

struct ParitySweep {
    uint64_t checked = 0;
    std::vector<uint64_t> disagreements;
};
ParitySweep parity_sweep(const Triple& t, uint64_t bound, int threads = 1);

struct Table3Row {
    std::vector<uint64_t> p0;       // 0 in Tbar3, 0 not in Tbar9
    std::vector<uint64_t> p1;       // +-1 not in Tbar9
    std::vector<uint64_t> differ;   // Tbar3 != Tbar9 (bound1 range)
    std::vector<uint64_t> flagged;  // p | N0, p = 1 mod 3: outside the T-set definitions
    uint64_t bound0 = 0;
    uint64_t bound1 = 0;
};

constexpr uint64_t kTable3Bound0 = 106 * 106;
constexpr uint64_t kTable3Bound1 = 218 * 218;

Table3Row table3_row(const Triple& t, uint64_t bound0 = kTable3Bound0, uint64_t bound1 = kTable3Bound1,
                     int threads = 1);

// Primes in (lo, hi], p = 1 mod 3, p not dividing 3 N0, with Tbar3 != Tbar9.
std::vector<uint64_t> bound_window_scan(const Triple& t, uint64_t lo, uint64_t hi, int threads = 1);

struct ConsistencyResult {
    bool consistent = true;
    bool vacuous = false;  // no tested prime had Tbar9 smaller than F_3
    std::vector<uint64_t> violations;
    std::vector<uint64_t> checked;
    std::vector<uint64_t> restrictive;  // primes where Tbar9 != F_3
};

ConsistencyResult exceptional_consistency(const Triple& t, const NewformClass& f, const PrimeAboveL& lambda,
                                          uint64_t p_limit);

// Runs fn(i) for i in [0, n) across threads; results are placed by index,
// so the merge order never depends on scheduling.
void parallel_for_index(size_t n, int threads, const std::function<void(size_t)>& fn);

}  // namespace twf
