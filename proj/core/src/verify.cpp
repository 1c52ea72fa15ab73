#include "skyband/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "skyband/skyline.hpp"

namespace sky {

ViolationReport is_eps_skyline(std::span<const double> means, std::span<const std::size_t> S,
                               double epsilon) {
    if (S.empty()) throw std::invalid_argument("is_eps_skyline: S must be non-empty");
    if (!std::is_sorted(S.begin(), S.end()))
        throw std::invalid_argument("is_eps_skyline: S must be sorted");
    if (S.front() != 0)
        throw std::invalid_argument("is_eps_skyline: S must contain arm 0");
    if (S.back() >= means.size())
        throw std::invalid_argument("is_eps_skyline: index out of range");

    ViolationReport report;
    std::vector<bool> in_s(means.size(), false);
    for (std::size_t s : S) in_s[s] = true;

    // Condition 1: every excluded arm's nearest left skyline member is
    // eps-better.
    std::size_t pred = 0;
    for (std::size_t t = 1; t < means.size(); ++t) {
        if (in_s[t]) {
            pred = t;
            continue;
        }
        const double margin = means[t] - epsilon - means[pred];
        if (margin > 0.0) report.violations.push_back(Violation{1, pred, t, margin});
    }

    // Condition 2: every skyline member is eps-best for its prefix.
    for (std::size_t s : S) {
        for (std::size_t t = 0; t <= s; ++t) {
            const double margin = means[t] - epsilon - means[s];
            if (margin > 0.0) report.violations.push_back(Violation{2, s, t, margin});
        }
    }

    report.valid = report.violations.empty();
    return report;
}

std::vector<std::size_t> exact_skyline(std::span<const double> means) {
    if (means.empty()) throw std::invalid_argument("exact_skyline: means must be non-empty");
    std::vector<std::size_t> result;
    double running_max = -1.0;
    for (std::size_t i = 0; i < means.size(); ++i) {
        if (means[i] >= running_max) {
            result.push_back(i);
            running_max = means[i];
        }
    }
    return result;
}

bool is_eps_best(std::span<const double> means, std::size_t lo, std::size_t hi, std::size_t i,
                 double epsilon) {
    if (lo > hi || hi >= means.size())
        throw std::invalid_argument("is_eps_best: invalid block range");
    if (i < lo || i > hi) throw std::invalid_argument("is_eps_best: arm outside block");
    const double best = *std::max_element(means.begin() + static_cast<std::ptrdiff_t>(lo),
                                          means.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
    return means[i] >= best - epsilon;
}

EventCheck check_event_E(const RunTrace& trace, std::span<const double> means, double epsilon) {
    if (!trace.initial.has_value())
        throw std::invalid_argument("check_event_E: trace is missing the arm-0 estimate");
    if (means.empty()) throw std::invalid_argument("check_event_E: empty means");

    const double tol = epsilon / 12.0;
    EventCheck check;
    check.line1_ok = std::abs(means[0] - trace.initial->estimate) < tol;
    check.overall = check.line1_ok;

    for (const LevelRecord& level : trace.levels) {
        for (const RoundRecord& round : level.rounds) {
            if (round.block.hi >= means.size() || round.chosen >= means.size())
                throw std::invalid_argument("check_event_E: trace/means length mismatch");
            RoundCheck rc;
            rc.level = round.block.level;
            rc.ordinal = round.block.ordinal;
            rc.best_mean =
                *std::max_element(means.begin() + static_cast<std::ptrdiff_t>(round.block.lo),
                                  means.begin() + static_cast<std::ptrdiff_t>(round.block.hi) + 1);
            rc.ident_ok = rc.best_mean - means[round.chosen] < tol;
            rc.msmnt_ok = std::abs(means[round.chosen] - round.estimate) < tol;
            check.overall = check.overall && rc.ident_ok && rc.msmnt_ok;
            check.rounds.push_back(rc);
        }
    }
    return check;
}

}  // namespace sky
