#pragma once

#include "vip/equiv/verdict.hpp"
#include "vip/frontend/object_graph.hpp"
#include "vip/frontend/sessions.hpp"
#include "vip/layout/floorplan.hpp"
#include "vip/net/simulate.hpp"
#include "vip/service/project.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace vip::service {

enum class PipelineStatus { Ok, ConstraintViolation, ProtocolViolation };
std::string_view to_string(PipelineStatus status);

/// One side of one object pair checked against that object's bound FSM.
struct PairCheck {
    std::string caller;
    std::string callee;
    /// The bound object this check is about (caller or callee).
    std::string object;
    std::string binding;
    /// Session the object must implement, in its own polarity.
    session::SessionLts software;
    std::size_t candidates = 0;
    equiv::EquivalenceVerdict verdict;

    /// `caller->callee@object`.
    std::string key() const;
};

struct PipelineReport {
    PipelineStatus status = PipelineStatus::Ok;
    std::vector<frontend::ConstraintViolation> violations;
    /// Caller-view sessions per pair.
    std::vector<frontend::PairSession> sessions;
    std::vector<PairCheck> checks;
    /// Present only when every check is Equivalent.
    std::optional<net::SimReport> interconnect;
    std::optional<layout::Floorplan> floorplan;
    double timing_ms = 0.0;

    bool all_equivalent() const;
    bool fit() const { return floorplan && floorplan->fit; }
};

/// The program's call edges in event order, one transaction per request
/// and per response on a single sequential session. Objects are nodes in
/// declaration order. `compute` gives the cycles a node spends per
/// received request.
net::Workload program_workload(const frontend::ObjectGraph& graph,
                               const frontend::WidthPolicy& policy,
                               const std::map<std::string, std::uint64_t>& compute = {});

/// parse -> validate -> derive sessions -> ingest FSMs -> check every
/// bound object of every pair -> (all Equivalent) simulate + compose.
///
/// Each object is checked against the candidates of its FSM unrolled once
/// per call edge it takes part in, with the messages of its other pairs
/// pruned away together with the project's control filter. Throws
/// ProjectError for a missing binding or an unreadable file, and the
/// frontend/FSM errors for malformed inputs.
PipelineReport run_pipeline(const Project& project, Execution execution = Execution::Parallel);

/// Stores the report's verdicts in the project's cache together with the
/// hashes they were computed from.
void cache_verdicts(Project& project, const PipelineReport& report);

nlohmann::json to_json(const PairCheck& check);
nlohmann::json to_json(const PipelineReport& report);

/// 0: admissible, all Equivalent and the floorplan fits. 1 otherwise.
int exit_code(const PipelineReport& report);

}  // namespace vip::service
