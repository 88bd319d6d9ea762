// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any failure.

#include "sumsq/verify.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

int main() {
    using namespace sumsq;
    VerifyConfig config;
    config.fields = {Field::prime(3), Field::prime(5)};
    config.census_field = Field::prime(3);
    config.n_max = 3;
    config.reduction_n_max = 4;
    config.multiset_n_max = 3;
    config.triangular_l_max = 4;
    config.pair_n = 2;

    using Clock = std::chrono::steady_clock;
    const auto grid = nm_grid(config.n_max);
    const std::vector<std::pair<int, std::function<CheckResult()>>> checks = {
        {1, [&] { return check_theorem_grid(config.fields, config.n_max); }},
        {2, [&] { return check_census(config.census_field, grid); }},
        {3, [&] { return check_character_identity(config.census_field, grid); }},
        {4, [&] { return check_pair_contribution(config.census_field, config.pair_n); }},
        {5, [&] { return check_reduction(config.census_field, config.reduction_n_max); }},
        {6, [&] { return check_counting(config.census_field, config.reduction_n_max); }},
        {7, [&] { return check_multiset_closed(config.fields, config.multiset_n_max, config.triangular_l_max); }},
        {8, [&] { return check_spot_values({Field::prime(3), Field::prime(5), Field::make(3, 2, {1, 0, 1})},
                                           config.census_field, config.n_max); }},
    };

    int failed = 0;
    for (const auto& [id, run] : checks) {
        const auto t0 = Clock::now();
        const CheckResult r = run();
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
        std::printf("[%s] criterion %d: %s (%llu cases, %llu failures, %lld ms)%s%s\n", r.passed() ? "PASS" : "FAIL", id,
                    r.name.c_str(), static_cast<unsigned long long>(r.cases),
                    static_cast<unsigned long long>(r.failures), static_cast<long long>(ms),
                    r.note.empty() ? "" : "; ", r.note.c_str());
        for (const auto& s : r.failure_samples) std::printf("    %s\n", s.c_str());
        if (!r.passed()) ++failed;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(checks.size()) - failed, checks.size());
    return failed ? 1 : 0;
}
