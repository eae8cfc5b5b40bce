// Copyright 2026 The cipcert Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <variant>
#include <vector>

#include "cipcert/model.hpp"
#include "cipcert/oracle.hpp"
#include "cipcert/types.hpp"

namespace cipcert {

// The level-set-minimal pool B at iteration k: the finite certificate that
// represents the whole level-k feasibility function. beta is level-k feasible
// iff some pool element is <=_K beta. Elements are kept sorted
// lexicographically and form an antichain in the cone order.
struct MinimalPool {
  int k = 0;
  std::vector<IntVec> elements;

  bool member(const IntVec& beta) const;
};

// Verdicts over the tracked right-hand sides. Entries start at the level-0
// value and are upgraded in place; solved betas carry the first level at
// which they became feasible and are never recomputed.
struct FeasTable {
  int k = 0;
  std::map<IntVec, int> verdicts;
  std::set<IntVec> solved;
  std::map<IntVec, int> first_feasible_k;
};

struct TraceEntry {
  int k = 0;
  std::size_t candidates = 0;
  std::size_t pool = 0;
  std::size_t solved = 0;
  std::size_t total = 0;
  long long elapsed_ms = 0;
};

struct EngineState {
  Instance instance;
  std::vector<IntVec> rhs_list;
  FeasTable table;
  MinimalPool pool;
  std::vector<IntVec> unique_columns;  // distinct columns of A, sorted
  std::vector<TraceEntry> trace;
  int threads = 1;
};

// Level-k feasibility read off the pool: kFeasible iff some element is
// <=_K beta.
int pool_feasible(const MinimalPool& pool, IntSpan beta, const ConeSpec& cone);

// Candidates for the next pool: pool elements and their shifts by one column,
// filtered so that every already-feasible point in the neighborhood is itself
// a pool element. The result is sorted and duplicate free.
std::vector<IntVec> candidate_pool(const EngineState& state);

// One step of the recursion at a candidate: feasible at the next level iff
// the previous pool covers beta itself or beta minus one column.
int eval_candidate(IntSpan beta, const MinimalPool& prev_pool,
                   const std::vector<IntVec>& columns, const ConeSpec& cone);

// Evaluation off the candidate set, against the already-updated pool.
int eval_point(IntSpan beta, const MinimalPool& pool, const ConeSpec& cone);

// Level 0: beta is feasible iff it lies in the cone; the pool is {0}.
EngineState engine_init(Instance inst, std::vector<IntVec> rhs_list,
                        int threads = 1);

// Advances pool and table from level k to k+1 in two phases: candidates are
// settled by the recursion against the old pool, everything else still open
// is settled against the new pool.
void engine_step(EngineState& state);

// init plus kbar steps.
EngineState engine_run(const Instance& inst, std::vector<IntVec> rhs_list,
                       int kbar, int threads = 1);

// The infeasible branch of the alternative: the pool at its level, plus the
// column-coverage facts that make it a valid certificate.
struct InfeasibilityCertificate {
  int level = 0;
  std::vector<IntVec> pool;
};

using AlternativeVerdict = std::variant<Witness, InfeasibilityCertificate>;

// Re-derives the verdict for beta along both branches of the alternative:
// an independent bounded witness search on the primal side, the pool query
// plus column coverage on the dual side. Exactly one branch must validate;
// anything else raises InconsistentStateError.
AlternativeVerdict certificate_check(const Instance& inst,
                                     const EngineState& state, IntSpan beta,
                                     std::size_t budget = kDefaultEnumBudget);

}  // namespace cipcert
