#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "twf/arith.hpp"
#include "twf/elliptic.hpp"

namespace twf {

// Coefficients of a x^n + b y^n + c z^n = 0.
class Triple {
public:
    Triple(int64_t a, int64_t b, int64_t c);

    int64_t a() const { return a_; }
    int64_t b() const { return b_; }
    int64_t c() const { return c_; }
    // Distinct odd primes dividing abc, ascending.
    const std::vector<uint64_t>& odd_primes() const { return odd_primes_; }
    bool divides_abc(uint64_t p) const;
    std::string str() const;
    bool operator==(const Triple& o) const { return a_ == o.a_ && b_ == o.b_ && c_ == o.c_; }

private:
    int64_t a_, b_, c_;
    std::vector<uint64_t> odd_primes_;
};

uint64_t level_N0(const Triple& t);

struct FreySpec {
    Triple triple;
    int n;
    BigInt x, y, z;
};

// Throws PreconditionError naming the first violated invariant.
void validate_frey_spec(const FreySpec& s);

struct FreyModel {
    CurveQ curve;
    BigInt delta_min;
    BigInt conductor_radical;
};

FreyModel frey_minimal_model(const FreySpec& s);

// y^2 = x (x - a alpha^n)(x + b beta^n) over F_p.
CurveFp frey_fiber_curve(const Triple& t, int n, uint64_t p, uint64_t alpha, uint64_t beta);

// Same curve given u = alpha^n directly (beta = 1); no validation beyond
// nonsingularity, for inner loops.
struct FiberCoefficients {
    uint64_t a2, a4;
};
FiberCoefficients fiber_coefficients(uint64_t p, uint64_t a_bar, uint64_t b_bar, uint64_t u);

// Permutation / sign search producing a spec with 16 | b, b y^n even and
// a x^n = -1 mod 4.
FreySpec normalize(const Triple& t, int n, const std::array<BigInt, 3>& witness);

}  // namespace twf
