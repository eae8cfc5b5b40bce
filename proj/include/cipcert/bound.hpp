// Copyright 2026 The cipcert Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <vector>

#include "cipcert/model.hpp"
#include "cipcert/rational.hpp"
#include "cipcert/types.hpp"

namespace cipcert {

// A dual vector u in K* with u^T a_j >= 1 for every column a_j. Any feasible
// solution x then obeys 1^T x <= u^T beta, which caps the number of engine
// iterations needed for exact verdicts.
struct DualCertificate {
  RatVec u;
};

// Exact check of both certificate conditions.
bool verify_certificate(const Instance& inst, const RatVec& u);

// max(0, ceil(max over the family of u^T beta)); 0 for an empty family.
int compute_kbar(const RatVec& u, const std::vector<IntVec>& rhs_list);

enum class DualLpStatus { kFound, kNoCertificate, kUnsupportedCone };

struct DualLpResult {
  DualLpStatus status = DualLpStatus::kNoCertificate;
  RatVec u;
};

// Searches for a certificate by exact LP. Orthant and polyhedral cones have
// finitely generated duals, so the search is a phase-1 feasibility problem
// over the generator weights; second-order and PSD cones are out of scope
// here and report kUnsupportedCone (callers fall back to a user bound).
DualLpResult solve_dual_lp(const Instance& inst);

}  // namespace cipcert
