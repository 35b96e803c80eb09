#include "twf/compare.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace twf {

CurveQ jacobian_curve(const Triple& t) {
    BigInt abc = big_from_i64(t.a()) * big_from_i64(t.b()) * big_from_i64(t.c());
    return CurveQ(0, 0, 0, 0, -432 * abc * abc);
}

void parallel_for_index(size_t n, int threads, const std::function<void(size_t)>& fn) {
    if (threads <= 1 || n < 2) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (size_t i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

ParityResult parity_check(const Triple& t, uint64_t p) {
    if (!is_prime(p)) throw PreconditionError("parity_check: p must be prime");
    if (p % 3 != 1) throw PreconditionError("parity_check: p must be 1 mod 3");
    if (t.divides_abc(p)) throw PreconditionError("parity_check: p divides abc");
    ParityResult r;
    r.ap_J = reduce_and_ap(jacobian_curve(t), p);
    r.zero_in_tbar3 = tbar(t, 3, p).contains(0);
    r.agree = (r.ap_J % 2 == 0) == r.zero_in_tbar3;
    return r;
}

ParitySweep parity_sweep(const Triple& t, uint64_t bound, int threads) {
    std::vector<uint64_t> ps;
    for (uint64_t p : primes_up_to(bound))
        if (p % 3 == 1 && !t.divides_abc(p)) ps.push_back(p);
    std::vector<char> ok(ps.size(), 0);
    parallel_for_index(ps.size(), threads, [&](size_t i) { ok[i] = parity_check(t, ps[i]).agree; });
    ParitySweep s;
    s.checked = ps.size();
    for (size_t i = 0; i < ps.size(); ++i)
        if (!ok[i]) s.disagreements.push_back(ps[i]);
    return s;
}

namespace {

std::vector<uint64_t> admissible_primes(const Triple& t, uint64_t lo, uint64_t hi) {
    std::vector<uint64_t> ps;
    for (uint64_t p : primes_up_to(hi))
        if (p > lo && p % 3 == 1 && !t.divides_abc(p)) ps.push_back(p);
    return ps;
}

std::vector<TbarPair> scan(const Triple& t, const std::vector<uint64_t>& ps, int threads) {
    std::vector<TbarPair> out(ps.size());
    parallel_for_index(ps.size(), threads, [&](size_t i) { out[i] = tbar_3_9_fast(t, ps[i]); });
    return out;
}

}  // namespace

Table3Row table3_row(const Triple& t, uint64_t bound0, uint64_t bound1, int threads) {
    Table3Row row;
    row.bound0 = bound0;
    row.bound1 = bound1;
    const uint64_t hi = std::max(bound0, bound1);
    auto ps = admissible_primes(t, 0, hi);
    auto sets = scan(t, ps, threads);
    for (size_t i = 0; i < ps.size(); ++i) {
        const uint64_t p = ps[i];
        const auto& [t3, t9] = sets[i];
        if (p <= bound0 && t3.contains(0) && !t9.contains(0)) row.p0.push_back(p);
        if (p <= bound1 && !t9.contains(1)) row.p1.push_back(p);
        if (p <= bound1 && !(t3 == t9)) row.differ.push_back(p);
    }
    for (uint64_t q : t.odd_primes())
        if (q % 3 == 1 && q <= hi) row.flagged.push_back(q);
    return row;
}

std::vector<uint64_t> bound_window_scan(const Triple& t, uint64_t lo, uint64_t hi, int threads) {
    if (lo >= hi || hi > 216 * 216) throw PreconditionError("bound_window_scan: need lo < hi <= 216^2");
    auto ps = admissible_primes(t, lo, hi);
    auto sets = scan(t, ps, threads);
    std::vector<uint64_t> out;
    for (size_t i = 0; i < ps.size(); ++i)
        if (!(sets[i].t3 == sets[i].t9)) out.push_back(ps[i]);
    return out;
}

ConsistencyResult exceptional_consistency(const Triple& t, const NewformClass& f, const PrimeAboveL& lambda,
                                          uint64_t p_limit) {
    if (lambda.inertia_degree != 1) throw PreconditionError("exceptional_consistency: degree-1 prime required");
    ConsistencyResult r;
    for (uint64_t p : primes_up_to(p_limit)) {
        // p = 2 divides b; p = 3 and p | N0 lie outside the T-set definitions
        if (p == 2 || p == 3 || t.divides_abc(p) || f.level % p == 0) continue;
        TraceSetMod3 t9 = tbar(t, 9, p);
        uint64_t ap = eigen_mod_lambda(f, p, lambda);
        r.checked.push_back(p);
        if (!(t9 == TraceSetMod3::all())) r.restrictive.push_back(p);
        if (!t9.contains(static_cast<int>(ap))) {
            r.consistent = false;
            r.violations.push_back(p);
        }
    }
    r.vacuous = r.restrictive.empty();
    return r;
}

}  // namespace twf
