#pragma once

#include <memory>
#include <ostream>
#include <string>

#include "uscqed/config.hpp"
#include "uscqed/csv.hpp"
#include "uscqed/observables.hpp"

namespace uscqed {

// One assembled simulation context. Heap members keep the internal pointers
// (ObservableSet -> DressedBasis) valid across moves.
struct Engine {
  ModelParams params;
  std::unique_ptr<DressedBasis> basis;
  std::unique_ptr<DissipatorSet> set;
  std::unique_ptr<LindbladGenerator> gen;
  std::unique_ptr<ObservableSet> obs;

  // check_cutoff re-diagonalizes at doubled n_fock (capped at 64) and
  // requires the dressed ground to be converged; failure throws.
  static Engine make(const RunConfig& cfg, bool check_cutoff);
};

struct PeakInfo {
  double value = 0.0;
  double time = 0.0;
};
// Largest finite sample of the named series.
PeakInfo series_peak(const Trajectory& traj, const std::string& name);

// The shared evolve path: initial state from cfg, pulse resolution when
// enabled, standard or statistics observables.
Trajectory run_time_evolution(const Engine& eng, const RunConfig& cfg, bool statistics);

struct ConvergeReport {
  std::vector<ConvergeRow> rows;
  bool pass = true;
};
// Peak <X-X+> under n_fock doubling (relative, 1e-4) and dt halving
// (absolute, 1e-6).
ConvergeReport converge_report(const RunConfig& cfg);

// Subcommands: levels, evolve, statistics, spectrum, converge,
// audit-dissipators. Returns a process exit code; throws invalid_argument on
// usage/config errors and runtime_error on invariant breaches.
int run_subcommand(const std::string& cmd, const RunConfig& cfg, std::ostream& log);

}  // namespace uscqed
