#pragma once

#include <string>
#include <vector>

#include "uscqed/correlations.hpp"
#include "uscqed/dressed.hpp"
#include "uscqed/dynamics.hpp"

namespace uscqed {

struct AuditRow;  // dissipation.hpp

// Lines are emitted as "# <line>" before the header row. Every file starts
// with a "# schema: <name> v1" line; numbers are %.15g and NaN becomes an
// empty field, so identical inputs give identical bytes.
struct CsvMeta {
  std::vector<std::string> lines;
};

std::string format_field(double v);

void write_levels_csv(const std::string& path, const std::vector<LevelSweepRow>& rows,
                      const CsvMeta& meta);

// Columns: t plus the trajectory's observable names, thinned to every n-th
// step (the final step is always included). schema labels the file kind
// ("trajectory" or "statistics").
void write_series_csv(const std::string& path, const std::string& schema,
                      const Trajectory& traj, int every, const CsvMeta& meta);

void write_spectrum_csv(const std::string& path, const SpectrumResult& spec,
                        const CsvMeta& meta);
void write_peaks_csv(const std::string& path, const SpectrumResult& spec,
                     const CsvMeta& meta);

void write_audit_csv(const std::string& path, const std::vector<AuditRow>& rows,
                     const CsvMeta& meta);

struct ConvergeRow {
  std::string quantity;
  double base = 0.0;
  double variant = 0.0;
  double delta = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

void write_converge_csv(const std::string& path, const std::vector<ConvergeRow>& rows,
                        const CsvMeta& meta);

}  // namespace uscqed
