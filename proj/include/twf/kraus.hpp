#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twf/arith.hpp"
#include "twf/frey.hpp"

namespace twf {

class NewformClass;

enum class Provenance { Generic, Kraus, SecondCaseAugmented };

struct TraceSet {
    std::vector<int64_t> entries;  // sorted, unique, symmetric
    uint64_t p = 0;
    Provenance provenance = Provenance::Generic;
    int n = 0;  // exponent for Kraus sets

    bool contains(int64_t t) const;
    bool operator==(const TraceSet& o) const { return entries == o.entries; }
};

// Subset of {0,1,2} as a 3-bit mask.
struct TraceSetMod3 {
    unsigned mask = 0;

    static TraceSetMod3 from(const TraceSet& t);
    static TraceSetMod3 all() { return {7u}; }
    bool contains(int r) const { return (mask >> (((r % 3) + 3) % 3)) & 1u; }
    void insert(int64_t t) { mask |= 1u << static_cast<unsigned>(((t % 3) + 3) % 3); }
    bool subset_of(const TraceSetMod3& o) const { return (mask & ~o.mask) == 0; }
    bool operator==(const TraceSetMod3& o) const { return mask == o.mask; }
    std::vector<int> residues() const;
    std::string str() const;
};

TraceSet set_Ap(uint64_t p);
TraceSet set_Tp(uint64_t p);

bool second_case(const Triple& t, int n, uint64_t p);

// alpha in F_p^* with (a/c) alpha^n + b/c an n-th power; ascending.
std::vector<uint64_t> set_Sprime(const Triple& t, int n, uint64_t p);

// Distinct u = alpha^n over alpha in S'; the fiber curves depend only on u.
std::vector<uint64_t> fiber_parameters(const Triple& t, int n, uint64_t p);

TraceSet set_Tnp(const Triple& t, int n, uint64_t p);
TraceSetMod3 tbar(const Triple& t, int n, uint64_t p);

// tbar for n = 3 and n = 9 at once, decided by 3-isogeny detection on the
// fiber curves with early exit. Agrees with tbar (tested both ways).
struct TbarPair {
    TraceSetMod3 t3, t9;
};
TbarPair tbar_3_9_fast(const Triple& t, uint64_t p);

// L_{f,p} = p * prod_{a in T_p} Norm(a - a_p(f)).
BigInt L_fp(const NewformClass& f, uint64_t p);

struct SurvivorSet {
    bool all = false;  // gcd was 0: no information
    BigInt gcd;
    std::vector<uint64_t> primes;  // odd primes dividing gcd
    std::vector<uint64_t> used_primes;
};

// exclude_p_equal_l: a prime l survives iff it divides the gcd taken over
// p != l (the literal range admits p = l).
SurvivorSet survivor_primes(const NewformClass& f, uint64_t p_max, bool exclude_p_equal_l = false);

}  // namespace twf
