#include "vip/equiv/binding.hpp"

#include "vip/equiv/subtype.hpp"
#include "vip/session/ops.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

namespace vip::equiv {

namespace {

EquivalenceVerdict against(const session::SessionLts& software, const hw::CandidateProtocol& c,
                           const std::set<std::string>& filter) {
    session::SessionLts hardware;
    try {
        hardware = session::prune_communication(c.session, filter);
    } catch (const session::LtsError&) {
        // The filtered messages cannot be contracted away; report the least
        // of them as the point of failure.
        EquivalenceVerdict v;
        for (const auto& t : c.session.transitions()) {
            if (filter.count(t.label.message) && (v.witness.empty() || t.label < v.witness.front())) {
                v.witness = {t.label};
            }
        }
        return v;
    }
    return equivalent(software, hardware);
}

}  // namespace

EquivalenceVerdict check_binding(const session::SessionLts& software,
                                 const std::vector<hw::CandidateProtocol>& candidates,
                                 const std::set<std::string>& control_filter,
                                 Execution execution) {
    if (candidates.empty()) throw ConfigError("no candidate protocols for binding");
    auto start = std::chrono::steady_clock::now();

    std::vector<std::string> keys(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) keys[i] = candidates[i].session.canonical_key();
    std::vector<std::size_t> order(candidates.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });

    std::vector<EquivalenceVerdict> results(candidates.size());
    const auto n = static_cast<std::ptrdiff_t>(order.size());
    if (execution == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            results[i] = against(software, candidates[order[i]], control_filter);
        }
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            results[i] = against(software, candidates[order[i]], control_filter);
        }
    }

    EquivalenceVerdict out;
    const EquivalenceVerdict* least = nullptr;
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (results[i].equivalent()) {
            out = results[i];
            out.candidate = candidates[order[i]].id;
            least = nullptr;
            break;
        }
        if (!least || witness_less(results[i].witness, least->witness)) least = &results[i];
    }
    if (least) {
        out = EquivalenceVerdict{};
        out.outcome = Outcome::NotEquivalent;
        out.witness = least->witness;
        out.folds = least->folds;
    }
    out.filtered = control_filter;
    out.timing_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return out;
}

}  // namespace vip::equiv
