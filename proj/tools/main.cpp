// Copyright 2026 The cipcert Authors
// Licensed under the Apache License, Version 2.0

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "cipcert/bound.hpp"
#include "cipcert/doubling.hpp"
#include "cipcert/engine.hpp"
#include "cipcert/model.hpp"
#include "cipcert/oracle.hpp"
#include "cipcert/report.hpp"

namespace {

using namespace cipcert;

// Raised when no iteration bound can be certified and none was supplied.
class NoBoundError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const nlohmann::ordered_json& j, const std::string& out_path) {
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + out_path);
  out << text;
}

void print_trace(const std::vector<TraceEntry>& trace) {
  for (const TraceEntry& t : trace)
    std::fprintf(stderr, "k=%d |C|=%zu |B|=%zu solved=%zu/%zu elapsed_ms=%lld\n",
                 t.k, t.candidates, t.pool, t.solved, t.total, t.elapsed_ms);
}

int ceil_log2(int v) {
  int t = 0;
  while ((Int{1} << t) < v) ++t;
  return t;
}

struct SolveFlags {
  std::string path;
  std::string engine;
  std::string out;
  std::optional<int> kbar;
  bool trace = false;
  std::size_t budget = kDefaultEnumBudget;
  int threads = 1;
};

int cmd_solve(const SolveFlags& flags) {
  const auto t0 = std::chrono::steady_clock::now();
  ParsedInstance parsed = parse_instance(read_file(flags.path));
  const Instance split = split_free_variables(parsed.instance);
  std::vector<IntVec> rhs = enumerate_rhs(parsed.rhs);

  const std::string engine =
      flags.engine.empty() ? parsed.options.engine : flags.engine;

  // Iteration bound: a verified dual certificate gives one; an explicit kbar
  // overrides but is stamped certified only when it reaches the certified
  // value.
  std::optional<RatVec> cert;
  if (parsed.options.dual_cert) {
    if (verify_certificate(split, *parsed.options.dual_cert))
      cert = parsed.options.dual_cert;
    else
      std::fprintf(stderr,
                   "warning: supplied dual certificate failed verification; "
                   "ignoring it\n");
  } else {
    DualLpResult lp = solve_dual_lp(split);
    if (lp.status == DualLpStatus::kFound) cert = std::move(lp.u);
  }
  std::optional<int> certified_kbar;
  if (cert) certified_kbar = compute_kbar(*cert, rhs);

  std::optional<int> user_kbar = flags.kbar ? flags.kbar : parsed.options.kbar;
  int kbar;
  if (user_kbar)
    kbar = *user_kbar;
  else if (certified_kbar)
    kbar = *certified_kbar;
  else
    throw NoBoundError(
        "no dual certificate is available for this instance; supply --kbar");
  const bool certified = certified_kbar && kbar >= *certified_kbar;

  RunResult result;
  result.instance_name = parsed.instance.name();
  result.engine = engine;
  result.kbar = kbar;
  result.kbar_certified = certified;
  result.bound_note =
      certified ? "certified" : "heuristic: convergence not certified";
  result.dual_cert = cert;

  if (engine == "f") {
    EngineState state = engine_run(split, rhs, kbar, flags.threads);
    for (const IntVec& beta : state.rhs_list) {
      RunRecord rec;
      rec.beta = beta;
      rec.verdict = state.table.verdicts.at(beta);
      if (rec.verdict == kFeasible) {
        rec.first_feasible_k = state.table.first_feasible_k.at(beta);
        OracleVerdict w =
            oracle_F(split, beta, *rec.first_feasible_k, flags.budget);
        if (w.verdict != kFeasible)
          throw InconsistentStateError(
              "witness extraction failed for " + vec_to_string(beta) +
              " at level " + std::to_string(*rec.first_feasible_k));
        rec.witness = std::move(w.witness->x);
      }
      result.records.push_back(std::move(rec));
    }
    result.pool = state.pool.elements;
    result.trace = std::move(state.trace);
  } else {
    const int kmax = ceil_log2(std::max(kbar, 1));
    GRun g = g_run(split, rhs, kmax, flags.budget);
    for (std::size_t i = 0; i < rhs.size(); ++i) {
      RunRecord rec;
      rec.beta = rhs[i];
      rec.verdict = g.verdicts[i];
      result.records.push_back(std::move(rec));
    }
    result.kmax = kmax;
    for (const GRun::Level& level : g.levels)
      result.trace.push_back(TraceEntry{level.k, 0, 0, level.solved,
                                        rhs.size(), level.elapsed_ms});
  }

  result.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
  if (flags.trace) print_trace(result.trace);
  emit(run_result_to_json(result), flags.out);
  return 0;
}

struct OracleFlags {
  std::string path;
  std::string out;
  int k = 0;
  std::size_t budget = kDefaultEnumBudget;
};

int cmd_oracle(const OracleFlags& flags) {
  const auto t0 = std::chrono::steady_clock::now();
  ParsedInstance parsed = parse_instance(read_file(flags.path));
  const Instance split = split_free_variables(parsed.instance);
  std::vector<IntVec> rhs = enumerate_rhs(parsed.rhs);

  const std::size_t per_point =
      simplex_lattice_count(split.num_cols(), flags.k);
  if (per_point > flags.budget / std::max<std::size_t>(rhs.size(), 1))
    throw BudgetError("oracle sweep would scan about " +
                      std::to_string(rhs.size()) + " * " +
                      std::to_string(per_point) +
                      " points, beyond the budget of " +
                      std::to_string(flags.budget));

  RunResult result;
  result.instance_name = parsed.instance.name();
  result.engine = "oracle";
  result.kbar = flags.k;
  result.kbar_certified = false;
  result.bound_note = "brute force at fixed level";
  for (const IntVec& beta : rhs) {
    RunRecord rec;
    rec.beta = beta;
    OracleVerdict v = oracle_F(split, beta, flags.k, flags.budget);
    rec.verdict = v.verdict;
    if (v.witness) rec.witness = std::move(v.witness->x);
    result.records.push_back(std::move(rec));
  }
  result.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
  emit(run_result_to_json(result), flags.out);
  return 0;
}

struct VerifyFlags {
  std::string instance_path;
  std::string result_path;
  std::size_t budget = kDefaultEnumBudget;
};

int cmd_verify(const VerifyFlags& flags) {
  ParsedInstance parsed = parse_instance(read_file(flags.instance_path));
  const Instance split = split_free_variables(parsed.instance);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(flags.result_path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("result file is not valid JSON: ") + e.what());
  }
  RunResult result = run_result_from_json(j);
  std::vector<std::string> failures =
      verify_run_result(split, result, flags.budget);
  if (failures.empty()) {
    std::cout << "verification passed: " << result.records.size()
              << " records against a pool of "
              << (result.pool ? result.pool->size() : 0) << " elements, kbar="
              << result.kbar << "\n";
    return 0;
  }
  for (const std::string& f : failures) std::cout << "FAIL: " << f << "\n";
  std::cout << failures.size() << " check(s) failed\n";
  return 5;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"feasibility tables and certificates for conic integer "
               "programs over families of right-hand sides"};
  app.require_subcommand(1);

  SolveFlags solve_flags;
  CLI::App* solve = app.add_subcommand(
      "solve", "run an engine over the instance's right-hand side family");
  solve->add_option("instance", solve_flags.path, "instance JSON file")
      ->required();
  solve->add_option("--engine", solve_flags.engine, "engine: f or g")
      ->check(CLI::IsMember({"f", "g"}));
  int kbar_flag = -1;
  CLI::Option* kbar_opt =
      solve->add_option("--kbar", kbar_flag, "iteration bound override")
          ->check(CLI::NonNegativeNumber);
  solve->add_option("--out", solve_flags.out, "write the result here");
  solve->add_flag("--trace", solve_flags.trace, "print per-level trace lines");
  solve->add_option("--budget", solve_flags.budget,
                    "enumeration and memo budget");
  solve->add_option("--threads", solve_flags.threads, "worker threads")
      ->check(CLI::PositiveNumber);

  OracleFlags oracle_flags;
  CLI::App* oracle = app.add_subcommand(
      "oracle", "brute-force verdicts at a fixed level, for cross-checking");
  oracle->add_option("instance", oracle_flags.path, "instance JSON file")
      ->required();
  oracle->add_option("--k", oracle_flags.k, "cardinality bound")
      ->required()
      ->check(CLI::NonNegativeNumber);
  oracle->add_option("--out", oracle_flags.out, "write the result here");
  oracle->add_option("--budget", oracle_flags.budget, "enumeration budget");

  VerifyFlags verify_flags;
  CLI::App* verify = app.add_subcommand(
      "verify", "re-validate a solve result against its instance");
  verify->add_option("instance", verify_flags.instance_path,
                     "instance JSON file")
      ->required();
  verify->add_option("result", verify_flags.result_path, "result JSON file")
      ->required();
  verify->add_option("--budget", verify_flags.budget, "enumeration budget");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      if (*kbar_opt) solve_flags.kbar = kbar_flag;
      return cmd_solve(solve_flags);
    }
    if (oracle->parsed()) return cmd_oracle(oracle_flags);
    if (verify->parsed()) return cmd_verify(verify_flags);
  } catch (const cipcert::BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const NoBoundError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const cipcert::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const cipcert::DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const cipcert::IntegralityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const cipcert::ConeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
