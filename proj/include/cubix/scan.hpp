#pragma once

// Deterministic sharded scans over enumerated cube families. Items (graphs,
// trees) are verified by worker threads; the merged report depends only on
// the item order, never on scheduling.

#include <cubix/finite_type.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace cubix {

template <class Cube>
struct ScanReport {
    std::size_t items_total = 0;
    std::size_t items_scanned = 0;
    std::size_t cubes_checked = 0;
    bool budget_exhausted = false;
    std::optional<Counterexample<Cube>> counterexample;

    bool passed() const { return !counterexample && !budget_exhausted; }
    std::string verdict() const {
        if (counterexample) return "fail";
        return budget_exhausted ? "partial" : "pass";
    }
};

/// Worker count from CUBIX_JOBS, else the hardware concurrency.
inline unsigned default_jobs() {
    if (const char* env = std::getenv("CUBIX_JOBS")) {
        const int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// `cost[i]` is the number of cubes item i will check; items are admitted in
/// order while the running total stays within `max_cubes` (0 = unlimited).
/// `work(i, checked)` verifies item i, counting cubes into `checked`, and
/// returns the first counterexample it meets.
template <class Cube, class Work>
ScanReport<Cube> run_scan(const std::vector<std::size_t>& cost, std::size_t max_cubes,
                          unsigned jobs, Work work) {
    ScanReport<Cube> rep;
    rep.items_total = cost.size();
    std::size_t admitted = 0, budget = 0;
    for (; admitted < cost.size(); ++admitted) {
        if (max_cubes && budget + cost[admitted] > max_cubes) break;
        budget += cost[admitted];
    }
    rep.budget_exhausted = admitted < cost.size();

    std::vector<std::size_t> checked(admitted, 0);
    std::vector<std::optional<Counterexample<Cube>>> found(admitted);
    std::atomic<std::size_t> next{0}, first_bad{admitted};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= admitted || i > first_bad.load()) return;
            found[i] = work(i, checked[i]);
            if (found[i]) {
                std::size_t cur = first_bad.load();
                while (i < cur && !first_bad.compare_exchange_weak(cur, i)) {
                }
            }
        }
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(admitted, 1))));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    const std::size_t stop = first_bad.load();
    rep.items_scanned = stop < admitted ? stop + 1 : admitted;
    for (std::size_t i = 0; i < rep.items_scanned; ++i) rep.cubes_checked += checked[i];
    if (stop < admitted) {
        rep.counterexample = found[stop];
        rep.budget_exhausted = false;
    }
    return rep;
}

}  // namespace cubix
