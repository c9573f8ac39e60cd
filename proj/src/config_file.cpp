#include "ringsqueeze/config_file.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "ringsqueeze/errors.hpp"

namespace ringsqueeze {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw config_error("config key '" + key + "': cannot parse number '" + v + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const unsigned long long x = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw config_error("config key '" + key + "': cannot parse integer '" + v + "'");
  }
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_double(key, item));
  }
  if (out.empty()) throw config_error("config key '" + key + "': empty list");
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += fmt(v[i]);
  }
  return out;
}

const char* zeeman_name(ZeemanMode m) {
  switch (m) {
    case ZeemanMode::tracked: return "tracked";
    case ZeemanMode::fixed: return "fixed";
    case ZeemanMode::off: return "off";
  }
  return "tracked";
}

using Setter = std::function<void(SimulationConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    auto num = [&t](const char* key, double SimulationConfig::*field) {
      t[key] = [field](SimulationConfig& c, const std::string& k, const std::string& v) {
        c.*field = parse_double(k, v);
      };
    };
    auto phys_num = [&t](const char* key, double PhysicalConfig::*field) {
      t[key] = [field](SimulationConfig& c, const std::string& k, const std::string& v) {
        c.phys.*field = parse_double(k, v);
      };
    };
    auto uns = [&t](const char* key, unsigned SimulationConfig::*field) {
      t[key] = [field](SimulationConfig& c, const std::string& k, const std::string& v) {
        c.*field = static_cast<unsigned>(parse_u64(k, v));
      };
    };
    auto list = [&t](const char* key, std::vector<double> SimulationConfig::*field) {
      t[key] = [field](SimulationConfig& c, const std::string& k, const std::string& v) {
        c.*field = parse_list(k, v);
      };
    };

    phys_num("atom_number", &PhysicalConfig::atom_number);
    phys_num("ring_radius_um", &PhysicalConfig::ring_radius_um);
    phys_num("transverse_area_um2", &PhysicalConfig::transverse_area_um2);
    phys_num("scattering_length_s0_bohr", &PhysicalConfig::scattering_length_s0_bohr);
    phys_num("scattering_length_s2_bohr", &PhysicalConfig::scattering_length_s2_bohr);
    phys_num("atomic_mass_kg", &PhysicalConfig::atomic_mass_kg);
    t["winding_number"] = [](SimulationConfig& c, const std::string& k, const std::string& v) {
      c.phys.winding_number = static_cast<int>(parse_u64(k, v));
    };

    t["modes"] = [](SimulationConfig& c, const std::string& k, const std::string& v) {
      c.modes = static_cast<unsigned>(parse_u64(k, v));
    };
    t["n_traj"] = [](SimulationConfig& c, const std::string& k, const std::string& v) {
      c.n_traj = parse_u64(k, v);
    };
    t["master_seed"] = [](SimulationConfig& c, const std::string& k, const std::string& v) {
      c.master_seed = parse_u64(k, v);
    };
    num("dt_tau", &SimulationConfig::dt_tau);
    num("norm_tol", &SimulationConfig::norm_tol);
    uns("batch_count", &SimulationConfig::batch_count);
    num("fd_delta_phi_rad", &SimulationConfig::fd_delta_phi_rad);

    t["backend"] = [](SimulationConfig& c, const std::string& k, const std::string& v) {
      if (v != "mmtwa" && v != "smtwa" && v != "analytic")
        throw config_error("config key '" + k + "': expected mmtwa|smtwa|analytic");
      c.backend = v;
    };
    num("seed_number", &SimulationConfig::seed_number);
    num("seed_chi_rad", &SimulationConfig::seed_chi_rad);
    num("t_prep_ms", &SimulationConfig::t_prep_ms);
    t["zeeman_mode"] = [](SimulationConfig& c, const std::string& k, const std::string& v) {
      if (v == "tracked") c.zeeman_mode = ZeemanMode::tracked;
      else if (v == "fixed") c.zeeman_mode = ZeemanMode::fixed;
      else if (v == "off") c.zeeman_mode = ZeemanMode::off;
      else throw config_error("config key '" + k + "': expected tracked|fixed|off");
    };
    num("zeeman_fixed", &SimulationConfig::zeeman_fixed);
    num("interrogation_T_ms", &SimulationConfig::interrogation_T_ms);
    num("rotation_rate_rad_s", &SimulationConfig::rotation_rate_rad_s);
    num("delta_c2_scale", &SimulationConfig::delta_c2_scale);
    num("readout_beam_rotation_rad", &SimulationConfig::readout_beam_rotation_rad);
    t["echo_pulse"] = [](SimulationConfig& c, const std::string& k, const std::string& v) {
      if (v == "on" || v == "true") c.echo_pulse = true;
      else if (v == "off" || v == "false") c.echo_pulse = false;
      else throw config_error("config key '" + k + "': expected on|off");
    };

    num("fig4_r_max", &SimulationConfig::fig4_r_max);
    uns("fig4_r_points", &SimulationConfig::fig4_r_points);
    list("fig4_seed_grid", &SimulationConfig::fig4_seed_grid);
    list("fig5_seed_grid", &SimulationConfig::fig5_seed_grid);
    uns("fig5_r_points", &SimulationConfig::fig5_r_points);
    num("fig5_r_margin", &SimulationConfig::fig5_r_margin);
    list("fig6_t_prep_ms", &SimulationConfig::fig6_t_prep_ms);
    list("fig6_seeds", &SimulationConfig::fig6_seeds);
    num("fig6_T_max_s", &SimulationConfig::fig6_T_max_s);
    uns("fig6_T_points", &SimulationConfig::fig6_T_points);
    list("fig7_delta_c2", &SimulationConfig::fig7_delta_c2);
    uns("fig7_T_points", &SimulationConfig::fig7_T_points);
    num("fig7_T_max_s", &SimulationConfig::fig7_T_max_s);
    num("reference_atoms", &SimulationConfig::reference_atoms);
    return t;
  }();
  return table;
}

}  // namespace

SimulationConfig parse_config_text(const std::string& text) {
  SimulationConfig cfg;
  std::vector<std::string> errors;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line.erase(hash_pos);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(lineno) + ": expected 'key = value'");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) {
      errors.push_back("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
      continue;
    }
    try {
      it->second(cfg, key, value);
    } catch (const config_error& e) {
      errors.push_back(e.what());
    }
  }
  if (!errors.empty()) {
    std::string msg = "config errors:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw config_error(msg);
  }
  return cfg;
}

SimulationConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

PulseSchedule SimulationConfig::custom_schedule() const {
  const double T = interrogation_T_ms * 1e-3;
  if (!echo_pulse || T <= 0.0)
    return canonical_schedule(seed_number, seed_chi_rad, t_prep_ms * 1e-3, zeeman_mode,
                              zeeman_fixed, T, rotation_rate_rad_s, delta_c2_scale,
                              readout_beam_rotation_rad);
  PulseSchedule s;
  if (seed_number > 0.0) s.seed(seed_number, seed_chi_rad);
  if (t_prep_ms > 0.0) s.squeeze(t_prep_ms * 1e-3, zeeman_mode, zeeman_fixed);
  s.pulse(PulseAngle::half_pi);
  s.free_evolution(T / 2.0, rotation_rate_rad_s, delta_c2_scale);
  s.pulse(PulseAngle::pi);
  s.free_evolution(T / 2.0, rotation_rate_rad_s, delta_c2_scale);
  s.pulse(PulseAngle::half_pi, readout_beam_rotation_rad);
  return s;
}

std::string SimulationConfig::canonical_text() const {
  std::ostringstream o;
  o << "atom_number=" << fmt(phys.atom_number)
    << ";ring_radius_um=" << fmt(phys.ring_radius_um)
    << ";transverse_area_um2=" << fmt(phys.transverse_area_um2)
    << ";scattering_length_s0_bohr=" << fmt(phys.scattering_length_s0_bohr)
    << ";scattering_length_s2_bohr=" << fmt(phys.scattering_length_s2_bohr)
    << ";atomic_mass_kg=" << fmt(phys.atomic_mass_kg)
    << ";winding_number=" << phys.winding_number << ";modes=" << modes
    << ";n_traj=" << n_traj << ";master_seed=" << master_seed
    << ";dt_tau=" << fmt(dt_tau) << ";norm_tol=" << fmt(norm_tol)
    << ";batch_count=" << batch_count << ";fd_delta_phi_rad=" << fmt(fd_delta_phi_rad)
    << ";backend=" << backend << ";seed_number=" << fmt(seed_number)
    << ";seed_chi_rad=" << fmt(seed_chi_rad) << ";t_prep_ms=" << fmt(t_prep_ms)
    << ";zeeman_mode=" << zeeman_name(zeeman_mode) << ";zeeman_fixed=" << fmt(zeeman_fixed)
    << ";interrogation_T_ms=" << fmt(interrogation_T_ms)
    << ";rotation_rate_rad_s=" << fmt(rotation_rate_rad_s)
    << ";delta_c2_scale=" << fmt(delta_c2_scale)
    << ";readout_beam_rotation_rad=" << fmt(readout_beam_rotation_rad)
    << ";echo_pulse=" << (echo_pulse ? "on" : "off")
    << ";fig4_r_max=" << fmt(fig4_r_max) << ";fig4_r_points=" << fig4_r_points
    << ";fig4_seed_grid=" << fmt(fig4_seed_grid)
    << ";fig5_seed_grid=" << fmt(fig5_seed_grid) << ";fig5_r_points=" << fig5_r_points
    << ";fig5_r_margin=" << fmt(fig5_r_margin)
    << ";fig6_t_prep_ms=" << fmt(fig6_t_prep_ms) << ";fig6_seeds=" << fmt(fig6_seeds)
    << ";fig6_T_max_s=" << fmt(fig6_T_max_s) << ";fig6_T_points=" << fig6_T_points
    << ";fig7_delta_c2=" << fmt(fig7_delta_c2) << ";fig7_T_points=" << fig7_T_points
    << ";fig7_T_max_s=" << fmt(fig7_T_max_s) << ";reference_atoms=" << fmt(reference_atoms);
  return o.str();
}

std::uint64_t SimulationConfig::hash() const {
  const std::string text = canonical_text();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

}
