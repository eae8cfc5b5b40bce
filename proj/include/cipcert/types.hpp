// Copyright 2026 The cipcert Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cipcert/errors.hpp"

namespace cipcert {

// Constraint data, right-hand sides and solutions are integral throughout.
// Arithmetic that could outgrow 64 bits widens to 128-bit or GMP internally,
// so membership verdicts never depend on silent wraparound.
using Int = std::int64_t;
using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;  // row-major
using IntSpan = std::span<const Int>;

// Verdicts of the feasibility functions. The numeric values are part of the
// contract: monotonicity and superadditivity checks compare and add them as
// plain integers.
inline constexpr int kFeasible = 0;
inline constexpr int kInfeasible = -1;

inline IntVec vec_add(IntSpan a, IntSpan b) {
  if (a.size() != b.size()) throw DimensionError("vector length mismatch in addition");
  IntVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (__builtin_add_overflow(a[i], b[i], &out[i]))
      throw Error("integer overflow in vector addition");
  return out;
}

inline IntVec vec_sub(IntSpan a, IntSpan b) {
  if (a.size() != b.size()) throw DimensionError("vector length mismatch in subtraction");
  IntVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (__builtin_sub_overflow(a[i], b[i], &out[i]))
      throw Error("integer overflow in vector subtraction");
  return out;
}

inline std::string vec_to_string(IntSpan v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  s += ")";
  return s;
}

}  // namespace cipcert
