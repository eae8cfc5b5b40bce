// Copyright 2026 The cipcert Authors
// Licensed under the Apache License, Version 2.0

#include "cipcert/engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>

namespace cipcert {

namespace {

using Clock = std::chrono::steady_clock;

long long ms_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                               start)
      .count();
}

// Runs fn(i) for i in [0, count) across the given number of threads and
// collects results by index, so the outcome is independent of scheduling.
template <typename Result, typename Fn>
std::vector<Result> indexed_map(std::size_t count, int threads, Fn&& fn) {
  std::vector<Result> out(count);
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  const int workers =
      static_cast<int>(std::min<std::size_t>(threads, count));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<IntVec> dedup_columns(const Instance& inst) {
  std::set<IntVec> seen(inst.columns().begin(), inst.columns().end());
  return std::vector<IntVec>(seen.begin(), seen.end());
}

}  // namespace

bool MinimalPool::member(const IntVec& beta) const {
  return std::binary_search(elements.begin(), elements.end(), beta);
}

int pool_feasible(const MinimalPool& pool, IntSpan beta, const ConeSpec& cone) {
  for (const IntVec& e : pool.elements)
    if (cone.leq(e, beta)) return kFeasible;
  return kInfeasible;
}

int eval_candidate(IntSpan beta, const MinimalPool& prev_pool,
                   const std::vector<IntVec>& columns, const ConeSpec& cone) {
  if (pool_feasible(prev_pool, beta, cone) == kFeasible) return kFeasible;
  for (const IntVec& col : columns)
    if (pool_feasible(prev_pool, vec_sub(beta, col), cone) == kFeasible)
      return kFeasible;
  return kInfeasible;
}

int eval_point(IntSpan beta, const MinimalPool& pool, const ConeSpec& cone) {
  return pool_feasible(pool, beta, cone);
}

std::vector<IntVec> candidate_pool(const EngineState& state) {
  const ConeSpec& cone = state.instance.cone();
  const MinimalPool& pool = state.pool;
  std::set<IntVec> raw;
  for (const IntVec& e : pool.elements) {
    raw.insert(e);
    for (const IntVec& col : state.unique_columns)
      raw.insert(vec_add(e, col));
  }
  std::vector<IntVec> cands(raw.begin(), raw.end());

  // A candidate survives only if every feasible point among itself and its
  // down-shifts already sits in the pool; feasible points that fell out of
  // the pool poison their whole neighborhood.
  auto keep = [&](std::size_t i) -> char {
    const IntVec& c = cands[i];
    if (pool_feasible(pool, c, cone) == kFeasible && !pool.member(c)) return 0;
    for (const IntVec& col : state.unique_columns) {
      IntVec shifted = vec_sub(c, col);
      if (pool_feasible(pool, shifted, cone) == kFeasible &&
          !pool.member(shifted))
        return 0;
    }
    return 1;
  };
  std::vector<char> flags =
      indexed_map<char>(cands.size(), state.threads, keep);
  std::vector<IntVec> out;
  out.reserve(cands.size());
  for (std::size_t i = 0; i < cands.size(); ++i)
    if (flags[i]) out.push_back(std::move(cands[i]));
  return out;
}

EngineState engine_init(Instance inst, std::vector<IntVec> rhs_list,
                        int threads) {
  if (!inst.all_nonnegative())
    throw Error("engine requires a nonnegative-variable instance; split free "
                "variables first");
  const auto start = Clock::now();
  EngineState state{std::move(inst), {}, {}, {}, {}, {}, threads};
  state.unique_columns = dedup_columns(state.instance);
  const int m = state.instance.num_rows();
  for (IntVec& beta : rhs_list) {
    if (static_cast<int>(beta.size()) != m)
      throw DimensionError("rhs point length does not match row count");
    if (state.table.verdicts.count(beta)) continue;
    const int v = state.instance.cone().contains(beta) ? kFeasible : kInfeasible;
    state.table.verdicts.emplace(beta, v);
    if (v == kFeasible) {
      state.table.solved.insert(beta);
      state.table.first_feasible_k.emplace(beta, 0);
    }
    state.rhs_list.push_back(std::move(beta));
  }
  state.pool = MinimalPool{0, {IntVec(m, 0)}};
  state.table.k = 0;
  state.trace.push_back(TraceEntry{0, 0, 1, state.table.solved.size(),
                                   state.rhs_list.size(), ms_since(start)});
  return state;
}

void engine_step(EngineState& state) {
  const auto start = Clock::now();
  const ConeSpec& cone = state.instance.cone();
  FeasTable& table = state.table;
  const int k_next = state.pool.k + 1;

  const std::vector<IntVec> cands = candidate_pool(state);
  const MinimalPool prev = std::move(state.pool);

  // Phase 1: settle the candidates with the recursion against the old pool.
  // Solved candidates that fell out of an earlier pool can never return and
  // are skipped outright; solved pool members carry their verdict forward.
  enum class Kind : char { kSkip, kCarry, kEval };
  std::vector<Kind> kinds(cands.size());
  std::vector<std::size_t> eval_idx;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const bool in_solved = table.solved.count(cands[i]) != 0;
    if (!in_solved) {
      kinds[i] = Kind::kEval;
      eval_idx.push_back(i);
    } else if (prev.member(cands[i])) {
      kinds[i] = Kind::kCarry;
    } else {
      kinds[i] = Kind::kSkip;
    }
  }
  std::vector<int> evals = indexed_map<int>(
      eval_idx.size(), state.threads, [&](std::size_t t) {
        return eval_candidate(cands[eval_idx[t]], prev, state.unique_columns,
                              cone);
      });

  std::vector<IntVec> next_elements;
  std::size_t eval_pos = 0;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    int verdict;
    switch (kinds[i]) {
      case Kind::kSkip:
        continue;
      case Kind::kCarry:
        verdict = kFeasible;
        break;
      case Kind::kEval:
        verdict = evals[eval_pos++];
        if (verdict == kFeasible) {
          if (auto it = table.verdicts.find(cands[i]);
              it != table.verdicts.end()) {
            it->second = kFeasible;
            table.solved.insert(cands[i]);
            table.first_feasible_k.emplace(cands[i], k_next);
          }
        }
        break;
    }
    if (verdict == kFeasible) next_elements.push_back(cands[i]);
  }
  state.pool = MinimalPool{k_next, std::move(next_elements)};

  // Phase 2: everything tracked, still open and off the candidate set is
  // settled against the new pool.
  std::vector<const IntVec*> pending;
  for (const IntVec& beta : state.rhs_list) {
    if (table.solved.count(beta)) continue;
    if (std::binary_search(cands.begin(), cands.end(), beta)) continue;
    pending.push_back(&beta);
  }
  std::vector<int> settled = indexed_map<int>(
      pending.size(), state.threads,
      [&](std::size_t t) { return eval_point(*pending[t], state.pool, cone); });
  for (std::size_t t = 0; t < pending.size(); ++t) {
    if (settled[t] != kFeasible) continue;
    table.verdicts[*pending[t]] = kFeasible;
    table.solved.insert(*pending[t]);
    table.first_feasible_k.emplace(*pending[t], k_next);
  }

  table.k = k_next;
  state.trace.push_back(TraceEntry{k_next, cands.size(),
                                   state.pool.elements.size(),
                                   table.solved.size(), state.rhs_list.size(),
                                   ms_since(start)});
}

EngineState engine_run(const Instance& inst, std::vector<IntVec> rhs_list,
                       int kbar, int threads) {
  if (kbar < 0) throw Error("engine_run: negative iteration bound");
  EngineState state = engine_init(inst, std::move(rhs_list), threads);
  for (int k = 0; k < kbar; ++k) engine_step(state);
  return state;
}

AlternativeVerdict certificate_check(const Instance& inst,
                                     const EngineState& state, IntSpan beta,
                                     std::size_t budget) {
  const ConeSpec& cone = inst.cone();
  const int level = state.pool.k;

  // Primal branch: a bounded witness search that does not consult the pool.
  int bound = level;
  IntVec key(beta.begin(), beta.end());
  if (auto it = state.table.first_feasible_k.find(key);
      it != state.table.first_feasible_k.end())
    bound = it->second;
  OracleVerdict primal = oracle_F(inst, beta, bound, budget);
  const bool primal_ok = primal.verdict == kFeasible;

  // Dual branch: the pool refutes beta, and it certifies that no column is
  // refutable. At level 0 the pool cannot speak for the columns yet; there
  // the unit vector e_j witnesses each column directly.
  const bool pool_refutes = pool_feasible(state.pool, beta, cone) == kInfeasible;
  bool columns_covered = true;
  for (int j = 0; j < inst.num_cols() && columns_covered; ++j) {
    if (level >= 1) {
      columns_covered =
          pool_feasible(state.pool, inst.column(j), cone) == kFeasible;
    } else {
      IntVec e(inst.num_cols(), 0);
      e[j] = 1;
      columns_covered =
          cone.contains(vec_sub(inst.column(j), inst.apply(e)));
    }
  }
  const bool dual_ok = pool_refutes && columns_covered;

  if (primal_ok == dual_ok) {
    throw InconsistentStateError(
        "alternative check failed for beta = " + vec_to_string(beta) +
        " at level " + std::to_string(level) + ": witness search says " +
        (primal_ok ? "feasible" : "infeasible") + ", pool says " +
        (pool_refutes ? "infeasible" : "feasible") +
        (columns_covered ? "" : ", column coverage missing"));
  }
  if (primal_ok) return AlternativeVerdict{std::move(*primal.witness)};
  return AlternativeVerdict{InfeasibilityCertificate{level, state.pool.elements}};
}

}  // namespace cipcert
