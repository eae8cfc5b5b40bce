// Copyright 2026 The cipcert Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <optional>
#include <vector>

#include "cipcert/rational.hpp"

namespace cipcert {

// Exact phase-1 simplex with Bland's rule: finds z >= 0 with rows * z = rhs,
// or reports that no such z exists. All pivoting is in rationals, so the
// answer is a decision, not an approximation.
std::optional<RatVec> find_nonnegative_solution(std::vector<RatVec> rows,
                                                RatVec rhs);

}  // namespace cipcert
