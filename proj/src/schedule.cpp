#include "ringsqueeze/schedule.hpp"

#include <cmath>

namespace ringsqueeze {

PulseSchedule& PulseSchedule::seed(double n_seed, double chi, double duration_s) {
  segments.push_back(SeedPulse{n_seed, chi, duration_s});
  return *this;
}

PulseSchedule& PulseSchedule::squeeze(double duration_s, ZeemanMode mode, double zeeman_fixed) {
  segments.push_back(SqueezeWindow{duration_s, mode, zeeman_fixed});
  return *this;
}

PulseSchedule& PulseSchedule::pulse(PulseAngle angle, double beam_rotation, double duration_s) {
  segments.push_back(RamanPulse{angle, beam_rotation, duration_s});
  return *this;
}

PulseSchedule& PulseSchedule::free_evolution(double duration_s, double rotation_rate_rad_s,
                                             double interaction_scale) {
  segments.push_back(FreeEvolution{duration_s, rotation_rate_rad_s, interaction_scale});
  return *this;
}

namespace {

struct Validator {
  std::vector<std::string>& errors;
  const PhysicalConfig& config;
  std::size_t index = 0;

  void bad(const std::string& msg) {
    errors.push_back("segment " + std::to_string(index) + ": " + msg);
  }
  void duration(double d) {
    if (!(d >= 0.0) || !std::isfinite(d)) bad("negative duration");
  }

  void operator()(const SeedPulse& s) {
    duration(s.duration_s);
    if (!(s.n_seed >= 0.0) || !std::isfinite(s.n_seed)) bad("negative seed number");
    if (s.n_seed > config.atom_number / 10.0)
      bad("seed number exceeds the perturbative bound N0/10");
  }
  void operator()(const SqueezeWindow& s) {
    duration(s.duration_s);
    if (!std::isfinite(s.zeeman_fixed)) bad("non-finite fixed zeeman value");
  }
  void operator()(const RamanPulse& s) { duration(s.duration_s); }
  void operator()(const FreeEvolution& s) {
    duration(s.duration_s);
    if (!(s.interaction_scale >= 0.0 && s.interaction_scale <= 1.0))
      bad("interaction_scale outside [0, 1]");
    if (!std::isfinite(s.rotation_rate_rad_s)) bad("non-finite rotation rate");
  }
};

}  // namespace

std::vector<std::string> validate_schedule(const PulseSchedule& schedule,
                                           const PhysicalConfig& config) {
  std::vector<std::string> errors;
  Validator v{errors, config};
  for (std::size_t i = 0; i < schedule.segments.size(); ++i) {
    v.index = i;
    std::visit(v, schedule.segments[i]);
  }
  // A trailing free-evolution segment leaves the interferometer open: the
  // readout observable Jz is defined after the closing Raman pulse.
  if (!schedule.segments.empty() &&
      std::holds_alternative<FreeEvolution>(schedule.segments.back())) {
    const auto& f = std::get<FreeEvolution>(schedule.segments.back());
    if (f.duration_s > 0.0)
      errors.push_back("schedule ends inside an open interferometer; close the "
                       "free-evolution segment with a Raman pulse");
  }
  return errors;
}

PulseSchedule canonical_schedule(double n_seed, double chi, double t_prep_s,
                                 ZeemanMode zeeman, double zeeman_fixed,
                                 double interrogation_s, double rotation_rate_rad_s,
                                 double interaction_scale, double readout_beam_rotation) {
  PulseSchedule s;
  if (n_seed > 0.0) s.seed(n_seed, chi);
  if (t_prep_s > 0.0) s.squeeze(t_prep_s, zeeman, zeeman_fixed);
  s.pulse(PulseAngle::half_pi);
  if (interrogation_s > 0.0)
    s.free_evolution(interrogation_s, rotation_rate_rad_s, interaction_scale);
  s.pulse(PulseAngle::half_pi, readout_beam_rotation);
  return s;
}

}
