#include "uscqed/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "uscqed/dissipation.hpp"

namespace uscqed {

namespace {

std::ofstream open_csv(const std::string& path, const std::string& schema,
                       const CsvMeta& meta) {
  std::ofstream out(path, std::ios::binary);  // binary: no platform newline drift
  if (!out) throw std::runtime_error("csv: cannot write " + path);
  out << "# schema: " << schema << " v1\n";
  for (const auto& line : meta.lines) out << "# " << line << "\n";
  return out;
}

}  // namespace

std::string format_field(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

void write_levels_csv(const std::string& path, const std::vector<LevelSweepRow>& rows,
                      const CsvMeta& meta) {
  if (rows.empty()) throw std::invalid_argument("csv: no level rows");
  std::ofstream out = open_csv(path, "levels", meta);
  const std::size_t m = rows.front().energies.size();
  out << "omega_r";
  for (std::size_t k = 0; k < m; ++k) out << ",E_" << k;
  for (std::size_t k = 0; k < m; ++k) out << ",sector_" << k;
  out << ",E_rwa_ground\n";
  for (const auto& row : rows) {
    if (row.energies.size() != m || row.sectors.size() != m)
      throw std::invalid_argument("csv: ragged level rows");
    out << format_field(row.omega_r);
    for (double e : row.energies) out << ',' << format_field(e);
    for (Sector s : row.sectors) out << ',' << (s == Sector::interacting ? 1 : 0);
    out << ',' << format_field(row.rwa_ground) << "\n";
  }
}

void write_series_csv(const std::string& path, const std::string& schema,
                      const Trajectory& traj, int every, const CsvMeta& meta) {
  if (every < 1) throw std::invalid_argument("csv: thinning factor must be >= 1");
  std::ofstream out = open_csv(path, schema, meta);
  out << "t";
  for (const auto& name : traj.observable_names) out << ',' << name;
  out << "\n";
  const std::size_t n = traj.times.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i % static_cast<std::size_t>(every) != 0 && i + 1 != n) continue;
    out << format_field(traj.times[i]);
    for (const auto& series : traj.observables) out << ',' << format_field(series[i]);
    out << "\n";
  }
}

void write_spectrum_csv(const std::string& path, const SpectrumResult& spec,
                        const CsvMeta& meta) {
  CsvMeta all = meta;
  all.lines.push_back("t_end=" + format_field(spec.t_end));
  all.lines.push_back("dt_grid=" + format_field(spec.dt_grid));
  all.lines.push_back("resolution=" + format_field(spec.resolution));
  std::ofstream out = open_csv(path, "spectrum", all);
  out << "omega,s_normalized\n";
  for (std::size_t k = 0; k < spec.frequencies.size(); ++k)
    out << format_field(spec.frequencies[k]) << ',' << format_field(spec.values[k]) << "\n";
}

void write_peaks_csv(const std::string& path, const SpectrumResult& spec,
                     const CsvMeta& meta) {
  CsvMeta all = meta;
  all.lines.push_back("resolution=" + format_field(spec.resolution));
  std::ofstream out = open_csv(path, "peaks", all);
  out << "position,height\n";
  for (const auto& p : spec.peaks)
    out << format_field(p.omega) << ',' << format_field(p.height) << "\n";
}

void write_audit_csv(const std::string& path, const std::vector<AuditRow>& rows,
                     const CsvMeta& meta) {
  std::ofstream out = open_csv(path, "audit", meta);
  out << "channel,atom,j,k,omega,weight\n";
  for (const auto& r : rows)
    out << r.channel << ',' << r.atom << ',' << r.j << ',' << r.k << ','
        << format_field(r.omega) << ',' << format_field(r.weight) << "\n";
}

void write_converge_csv(const std::string& path, const std::vector<ConvergeRow>& rows,
                        const CsvMeta& meta) {
  std::ofstream out = open_csv(path, "converge", meta);
  out << "quantity,base,variant,delta,threshold,pass\n";
  for (const auto& r : rows)
    out << r.quantity << ',' << format_field(r.base) << ',' << format_field(r.variant)
        << ',' << format_field(r.delta) << ',' << format_field(r.threshold) << ','
        << (r.pass ? 1 : 0) << "\n";
}

}  // namespace uscqed
