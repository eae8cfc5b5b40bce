// Copyright 2026 The cipcert Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cipcert/cone.hpp"
#include "cipcert/types.hpp"

namespace cipcert {

enum class VarSign { kNonnegative, kFree };

// An integer program family sup{c^T x : A x <=_K beta, x integral}, with the
// right-hand side beta ranging over a finite set. The objective is carried
// for provenance only; every computation here is about feasibility.
class Instance {
 public:
  Instance(std::string name, IntMat a, ConeSpec cone,
           std::vector<VarSign> var_signs, std::vector<double> objective = {});

  const std::string& name() const { return name_; }
  int num_rows() const { return m_; }
  int num_cols() const { return n_; }
  const IntMat& matrix() const { return a_; }
  const ConeSpec& cone() const { return cone_; }
  const std::vector<VarSign>& var_signs() const { return var_signs_; }
  const std::vector<double>& objective() const { return objective_; }

  const IntVec& column(int j) const { return columns_[j]; }
  const std::vector<IntVec>& columns() const { return columns_; }
  bool all_nonnegative() const;

  // A x, overflow checked.
  IntVec apply(IntSpan x) const;

 private:
  std::string name_;
  int m_ = 0;
  int n_ = 0;
  IntMat a_;
  ConeSpec cone_;
  std::vector<VarSign> var_signs_;
  std::vector<double> objective_;
  std::vector<IntVec> columns_;
};

// A finite family of right-hand sides: either an integral box or an explicit
// list. Construction rejects families larger than the cap.
struct RhsSet {
  enum class Kind { kBox, kList };

  static constexpr std::size_t kDefaultCap = 1'000'000;

  Kind kind = Kind::kBox;
  IntVec lower, upper;          // box bounds, inclusive
  std::vector<IntVec> points;   // list points, deduplicated, input order

  static RhsSet box(IntVec lower, IntVec upper, std::size_t cap = kDefaultCap);
  static RhsSet list(std::vector<IntVec> points, std::size_t cap = kDefaultCap);

  std::size_t size() const;
  int dim() const;
};

// Materializes the family. Boxes enumerate in ascending lexicographic order
// (last coordinate fastest); lists keep their stored order.
std::vector<IntVec> enumerate_rhs(const RhsSet& set);

struct SolveOptions {
  std::string engine = "f";
  std::optional<int> kbar;
  std::optional<RatVec> dual_cert;
};

struct ParsedInstance {
  Instance instance;
  RhsSet rhs;
  SolveOptions options;
};

// Parses the JSON instance format. Structural problems raise ParseError or
// DimensionError; fractional values where integers are required raise
// IntegralityError; bad cone blocks raise ConeError.
ParsedInstance parse_instance(const std::string& text,
                              std::size_t rhs_cap = RhsSet::kDefaultCap);

// Rewrites every free variable as the difference of two nonnegative ones,
// doubling those columns. Instances without free variables pass through
// unchanged.
Instance split_free_variables(const Instance& inst);

}  // namespace cipcert
