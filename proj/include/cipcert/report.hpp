// Copyright 2026 The cipcert Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "cipcert/engine.hpp"
#include "cipcert/model.hpp"
#include "cipcert/rational.hpp"
#include "cipcert/types.hpp"

namespace cipcert {

struct RunRecord {
  IntVec beta;
  int verdict = kInfeasible;
  std::optional<int> first_feasible_k;
  std::optional<IntVec> witness;
};

// The full machine-readable output of a run. Everything in here is integral
// or rational-as-string, so serialization is exact and byte stable; the only
// nondeterministic fields are the timing ones.
struct RunResult {
  std::string instance_name;
  std::string engine;  // "f", "g" or "oracle"
  int kbar = 0;
  bool kbar_certified = false;
  std::string bound_note;
  std::optional<RatVec> dual_cert;
  std::optional<int> kmax;  // doubling engine only
  std::vector<RunRecord> records;
  std::optional<std::vector<IntVec>> pool;  // engine "f" only
  std::vector<TraceEntry> trace;
  long long wall_time_ms = 0;
};

nlohmann::ordered_json run_result_to_json(const RunResult& result);
RunResult run_result_from_json(const nlohmann::json& j);

// Re-validates a result against its instance from scratch: pool antichain,
// pool elements reachable, verdicts consistent with the pool, witnesses and
// column coverage. Returns one message per failed check.
std::vector<std::string> verify_run_result(const Instance& inst,
                                           const RunResult& result,
                                           std::size_t budget = kDefaultEnumBudget);

}  // namespace cipcert
