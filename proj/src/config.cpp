#include "uscqed/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace uscqed {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad numeric value for " + key + ": " + value);
  }
}

// "auto" maps to the negative run-time-resolution sentinel.
double parse_auto(const std::string& key, const std::string& value) {
  if (value == "auto") return -1.0;
  return parse_number(key, value);
}

int parse_int(const std::string& key, const std::string& value) {
  const double v = parse_number(key, value);
  if (v != std::floor(v)) throw std::invalid_argument("config: " + key + " must be an integer");
  return static_cast<int>(v);
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw std::invalid_argument("config: " + key + " must be true or false");
}

void apply_key(RunConfig& cfg, const std::string& section, const std::string& key,
               const std::string& value) {
  const std::string where = section.empty() ? key : section + "." + key;
  if (section == "model") {
    if (key == "omega_r") cfg.model.omega_r = parse_number(where, value);
    else if (key == "omega_s") cfg.model.omega_s = parse_number(where, value);
    else if (key == "omega_g") cfg.model.omega_g = parse_number(where, value);
    else if (key == "omega_e") cfg.model.omega_e = parse_number(where, value);
    else if (key == "n_fock") cfg.n_fock = parse_int(where, value);
    else if (key == "n_atoms") cfg.n_atoms = parse_int(where, value);
    else throw std::invalid_argument("config: unknown key " + where);
  } else if (section == "rates") {
    if (key == "gamma0") cfg.gamma0 = parse_number(where, value);
    else if (key == "gamma_eg") cfg.gamma_eg = parse_number(where, value);
    else if (key == "gamma_gs") cfg.gamma_gs = parse_number(where, value);
    else throw std::invalid_argument("config: unknown key " + where);
  } else if (section == "grid") {
    if (key == "dt") cfg.dt = parse_number(where, value);
    else if (key == "t_end") cfg.t_end = parse_number(where, value);
    else if (key == "store_every") cfg.store_every = parse_int(where, value);
    else throw std::invalid_argument("config: unknown key " + where);
  } else if (section == "initial") {
    if (key == "kind") cfg.initial_kind = value;
    else throw std::invalid_argument("config: unknown key " + where);
  } else if (section == "pulse") {
    if (key == "enabled") cfg.pulse_enabled = parse_bool(where, value);
    else if (key == "sigma") cfg.pulse.sigma = parse_number(where, value);
    else if (key == "omega_drive") cfg.pulse.omega_drive = parse_auto(where, value);
    else if (key == "amplitude_scale") cfg.pulse.amplitude_scale = parse_auto(where, value);
    else if (key == "t_start") cfg.pulse_t_start = (value == "auto") ? 1.0 : parse_number(where, value);
    else throw std::invalid_argument("config: unknown key " + where);
  } else if (section == "spectrum") {
    if (key == "t_end") cfg.spectrum.t_end = parse_number(where, value);
    else if (key == "dt_grid") cfg.spectrum.dt_grid = parse_number(where, value);
    else if (key == "dt_sub") cfg.spectrum.dt_sub = parse_number(where, value);
    else if (key == "omega_min") cfg.spectrum.omega_min = parse_number(where, value);
    else if (key == "omega_max") cfg.spectrum.omega_max = parse_number(where, value);
    else if (key == "n_omega") cfg.spectrum.n_omega = parse_int(where, value);
    else throw std::invalid_argument("config: unknown key " + where);
  } else if (section == "sweep") {
    if (key == "omega_r_min") cfg.sweep.omega_r_min = parse_number(where, value);
    else if (key == "omega_r_max") cfg.sweep.omega_r_max = parse_number(where, value);
    else if (key == "omega_r_step") cfg.sweep.omega_r_step = parse_number(where, value);
    else if (key == "n_levels") cfg.sweep.n_levels = parse_int(where, value);
    else throw std::invalid_argument("config: unknown key " + where);
  } else if (section == "output") {
    if (key == "out_dir") cfg.out_dir = value;
    else throw std::invalid_argument("config: unknown key " + where);
  } else if (section == "physical") {
    if (key == "omega0_hz") cfg.omega0_hz = parse_number(where, value);
    else throw std::invalid_argument("config: unknown key " + where);
  } else {
    throw std::invalid_argument("config: unknown section [" + section + "]");
  }
}

}  // namespace

void RunConfig::validate() const {
  model.validate();
  if (gamma0 < 0.0 || gamma_eg < 0.0 || gamma_gs < 0.0)
    throw std::invalid_argument("config: rates must be nonnegative");
  if (n_fock < 4 || n_fock > 64)
    throw std::invalid_argument("config: n_fock must lie in [4, 64]");
  if (n_atoms < 1 || n_atoms > 4)
    throw std::invalid_argument("config: n_atoms must lie in [1, 4]");
  if (initial_kind != "dressed_ground" && initial_kind != "bare")
    throw std::invalid_argument("config: unknown initial state kind " + initial_kind);
  if (!(dt > 0.0)) throw std::invalid_argument("config: dt must be positive");
  if (!(t_end > 0.0)) throw std::invalid_argument("config: t_end must be positive");
  if (pulse_enabled && !(pulse.sigma > 0.0))
    throw std::invalid_argument("config: pulse sigma must be positive");
  if (!(spectrum.t_end > 0.0) || !(spectrum.dt_grid > 0.0) || !(spectrum.dt_sub > 0.0))
    throw std::invalid_argument("config: spectrum times must be positive");
  if (spectrum.n_omega < 3)
    throw std::invalid_argument("config: spectrum needs at least three frequencies");
  if (!(spectrum.omega_max > spectrum.omega_min))
    throw std::invalid_argument("config: spectrum frequency range is empty");
  if (!(sweep.omega_r_step > 0.0) || sweep.omega_r_max < sweep.omega_r_min)
    throw std::invalid_argument("config: bad omega_r sweep range");
  if (sweep.n_levels < 1)
    throw std::invalid_argument("config: sweep must export at least one level");
  if (omega0_hz < 0.0)
    throw std::invalid_argument("config: omega0_hz must be nonnegative");
}

void apply_ini_text(RunConfig& cfg, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("config: malformed section header at line " +
                                    std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key = value at line " +
                                  std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument("config: empty key or value at line " +
                                  std::to_string(lineno));
    apply_key(cfg, section, key, value);
  }
}

void apply_ini_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  apply_ini_text(cfg, buf.str());
}

double physical_flux_hz(double flux_omega0_units, double omega0_hz) {
  if (!(omega0_hz > 0.0))
    throw std::invalid_argument("physical flux requested without omega0_hz");
  return flux_omega0_units * 2.0 * std::numbers::pi * omega0_hz;
}

}  // namespace uscqed
