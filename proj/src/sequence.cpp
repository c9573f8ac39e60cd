#include "ringsqueeze/sequence.hpp"

#include <cmath>
#include <limits>

#include <json.hpp>

#include "ringsqueeze/analytic.hpp"
#include "ringsqueeze/errors.hpp"

namespace ringsqueeze {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct TwaContext {
  DimensionlessParams params;
  ModeLayout layout;
  const SequenceOptions* opts;
  ThreadPool* pool;
};

SegmentDynamics squeeze_dynamics(const TwaContext& ctx, const SqueezeWindow& w) {
  SegmentDynamics d;
  d.duration_tau = w.duration_s * ctx.params.omega;
  d.coupling_scale = 1.0;
  d.zeeman = w.zeeman_mode;
  d.zeeman_fixed = w.zeeman_fixed;
  return d;
}

SegmentDynamics free_dynamics(const TwaContext& ctx, double duration_s, double scale) {
  SegmentDynamics d;
  d.duration_tau = duration_s * ctx.params.omega;
  d.coupling_scale = scale;
  d.zeeman = ZeemanMode::off;
  return d;
}

void run_seed(const TwaContext& ctx, TrajectoryEnsemble& ens, const SeedPulse& s) {
  if (s.duration_s <= 0.0) {
    seed_pulse(ens, s.n_seed, s.chi);
    return;
  }
  // Finite-duration seeding: Raman drive in the drift, kinetic mismatch of the
  // +-l target modes cancelled by a fixed Zeeman shift (the two-photon
  // detuning of the seed beams).
  const double tau = s.duration_s * ctx.params.omega;
  const double pump_n = ens.pump_coherent * ens.pump_coherent;
  SegmentDynamics d;
  d.duration_tau = tau;
  d.coupling_scale = 0.0;
  d.zeeman = ZeemanMode::fixed;
  d.zeeman_fixed = -0.5 * static_cast<double>(ctx.layout.ell) * ctx.layout.ell;
  d.drive_seed = true;
  d.drive_rate = std::sqrt(std::min(1.0, s.n_seed / pump_n)) / tau;
  d.drive_phase = s.chi;
  evolve(ens, ctx.params, d, ctx.opts->step, *ctx.pool);
}

void run_pulse(const TwaContext& ctx, TrajectoryEnsemble& ens, const RamanPulse& p,
               double phi) {
  if (p.duration_s <= 0.0) {
    apply_raman_pulse(ens, p.angle, phi, *ctx.pool);
    return;
  }
  const double tau = p.duration_s * ctx.params.omega;
  const double half = p.angle == PulseAngle::half_pi ? constants::pi / 4.0 : constants::pi / 2.0;
  SegmentDynamics d;
  d.duration_tau = tau;
  d.coupling_scale = 0.0;
  d.zeeman = ZeemanMode::off;
  d.drive_bs = true;
  d.drive_rate = half / tau;
  d.drive_phase = phi;
  evolve(ens, ctx.params, d, ctx.opts->step, *ctx.pool);
}

/// Apply the closing pulse at the given fringe phase on a copy; estimate.
SpinMoments readout_moments(const TwaContext& ctx, const TrajectoryEnsemble& prepared,
                            const RamanPulse& pulse, double phi) {
  TrajectoryEnsemble copy = prepared;
  run_pulse(ctx, copy, pulse, phi);
  return estimate_moments(copy, ctx.opts->batch_count);
}

struct Readout {
  SpinMoments center;
  double slope = 0.0, slope_se = 0.0;
  double delta_phi = kNaN, delta_phi_se = kNaN;
  double xi = kNaN, xi_se = kNaN;
};

Readout fringe_readout(const TwaContext& ctx, const TrajectoryEnsemble& prepared,
                       const RamanPulse& pulse, double phi) {
  Readout r;
  const double d = ctx.opts->fd_delta_phi;
  r.center = readout_moments(ctx, prepared, pulse, phi);
  const SpinMoments plus = readout_moments(ctx, prepared, pulse, phi + d);
  const SpinMoments minus = readout_moments(ctx, prepared, pulse, phi - d);
  r.slope = (plus.mean_jz - minus.mean_jz) / (2.0 * d);
  r.slope_se = std::hypot(plus.se_jz, minus.se_jz) / (2.0 * d);
  const double var = r.center.var_jz;
  const double scale = std::max(1.0, std::abs(r.center.n_total));
  if (std::abs(r.slope) > std::max(1e-12 * scale, 3.0 * r.slope_se)) {
    r.delta_phi = std::sqrt(var) / std::abs(r.slope);
    const double rel_var = var > 0.0 ? 0.5 * r.center.se_var_jz / var : 0.0;
    const double rel_slope = r.slope_se / std::abs(r.slope);
    r.delta_phi_se = r.delta_phi * std::hypot(rel_var, rel_slope);
    if (r.center.n_total > 0.0) {
      r.xi = std::sqrt(r.center.n_total) * r.delta_phi;
      const double rel_nt = 0.5 * r.center.se_n_total / r.center.n_total;
      r.xi_se = r.xi * std::hypot(rel_var, std::hypot(rel_slope, rel_nt));
    }
  }
  return r;
}

InterferometerResult run_sequence_twa(const PhysicalConfig& phys, const PulseSchedule& schedule,
                                      Backend backend, const SequenceOptions& opts,
                                      ThreadPool& pool) {
  TwaContext ctx{derive_dimensionless(phys),
                 ModeLayout{opts.modes, phys.winding_number, backend == Backend::smtwa},
                 &opts, &pool};
  TrajectoryEnsemble ens =
      sample_initial(phys.atom_number, ctx.layout, opts.n_traj, opts.master_seed);

  InterferometerResult out;
  double phi_acc = 0.0;  // beam-frame rotation angle Phi
  bool prep_captured = false;

  const std::size_t n_seg = schedule.segments.size();
  for (std::size_t i = 0; i < n_seg; ++i) {
    const Segment& seg = schedule.segments[i];
    const bool is_last = i + 1 == n_seg;

    if (const auto* p = std::get_if<RamanPulse>(&seg)) {
      if (!prep_captured) {
        const SpinMoments prep = estimate_moments(ens, opts.batch_count);
        out.j_perp_input = prep.j_perp;
        out.xi_input = prep.xi;
        prep_captured = true;
      }
      const double phi = 2.0 * ctx.layout.ell * (phi_acc + p->beam_rotation);
      if (is_last) {
        const Readout r = fringe_readout(ctx, ens, *p, phi);
        out.phi_readout = phi;
        out.signal_mean = r.center.mean_jz;
        out.signal_se = r.center.se_jz;
        out.signal_var = r.center.var_jz;
        out.signal_var_se = r.center.se_var_jz;
        out.var_clamped = r.center.var_jz_clamped;
        out.fringe_slope = r.slope;
        out.fringe_slope_se = r.slope_se;
        out.delta_phi = r.delta_phi;
        out.delta_phi_se = r.delta_phi_se;
        out.xi_readout = r.xi;
        out.xi_readout_se = r.xi_se;
        out.n_t = r.center.n_total;
        if (out.interrogation_s > 0.0 && std::isfinite(r.delta_phi)) {
          out.delta_omega = rotation_uncertainty(r.delta_phi, ctx.layout.ell, out.interrogation_s);
          out.delta_omega_se =
              rotation_uncertainty(r.delta_phi_se, ctx.layout.ell, out.interrogation_s);
        } else {
          out.delta_omega = kNaN;
          out.delta_omega_se = kNaN;
        }
        out.xi_series.push_back(XiPoint{out.interrogation_s, ens.tau, r.xi, r.xi_se,
                                        r.center.n_total, r.delta_phi, out.delta_omega});
        return out;
      }
      run_pulse(ctx, ens, *p, phi);
    } else if (const auto* s = std::get_if<SeedPulse>(&seg)) {
      run_seed(ctx, ens, *s);
    } else if (const auto* w = std::get_if<SqueezeWindow>(&seg)) {
      evolve(ens, ctx.params, squeeze_dynamics(ctx, *w), opts.step, pool);
    } else if (const auto* f = std::get_if<FreeEvolution>(&seg)) {
      evolve(ens, ctx.params, free_dynamics(ctx, f->duration_s, f->interaction_scale),
             opts.step, pool);
      phi_acc += f->rotation_rate_rad_s * f->duration_s;
      out.interrogation_s += f->duration_s;
    }
  }

  // No closing pulse: report the final-state moments (prep-only schedules).
  const SpinMoments m = estimate_moments(ens, opts.batch_count);
  out.signal_mean = m.mean_jz;
  out.signal_se = m.se_jz;
  out.signal_var = m.var_jz;
  out.signal_var_se = m.se_var_jz;
  out.var_clamped = m.var_jz_clamped;
  out.n_t = m.n_total;
  out.j_perp_input = m.j_perp;
  out.xi_input = m.xi;
  out.fringe_slope = kNaN;
  out.delta_phi = kNaN;
  out.delta_omega = kNaN;
  out.xi_readout = m.xi;
  out.xi_readout_se = m.se_xi;
  return out;
}

struct CanonicalShape {
  double n_seed = 0.0;
  double chi = 3.0 * constants::pi / 4.0;
  double t_prep_s = 0.0;
  double interrogation_s = 0.0;
  double rotation_rate = 0.0;
  double final_beam_rotation = 0.0;
  int pulses = 0;
};

CanonicalShape parse_canonical(const PulseSchedule& schedule) {
  CanonicalShape c;
  int stage = 0;  // 0: prep, 1: after first pulse, 2: after final pulse
  for (const Segment& seg : schedule.segments) {
    if (const auto* s = std::get_if<SeedPulse>(&seg)) {
      if (stage != 0 || c.n_seed > 0.0 || s->duration_s > 0.0)
        throw simulation_error("analytic backend: unsupported schedule shape");
      c.n_seed = s->n_seed;
      c.chi = s->chi;
    } else if (const auto* w = std::get_if<SqueezeWindow>(&seg)) {
      if (stage != 0 || c.t_prep_s > 0.0)
        throw simulation_error("analytic backend: unsupported schedule shape");
      c.t_prep_s = w->duration_s;
    } else if (const auto* p = std::get_if<RamanPulse>(&seg)) {
      if (p->angle != PulseAngle::half_pi || p->duration_s > 0.0 || stage > 1)
        throw simulation_error("analytic backend: unsupported schedule shape");
      if (stage == 1) c.final_beam_rotation = p->beam_rotation;
      ++c.pulses;
      ++stage;
    } else if (const auto* f = std::get_if<FreeEvolution>(&seg)) {
      if (stage != 1 || c.interrogation_s > 0.0)
        throw simulation_error("analytic backend: unsupported schedule shape");
      c.interrogation_s = f->duration_s;
      c.rotation_rate = f->rotation_rate_rad_s;
    }
  }
  if (c.pulses != 0 && c.pulses != 2)
    throw simulation_error("analytic backend: expected zero or two pi/2 pulses");
  return c;
}

InterferometerResult run_sequence_analytic(const PhysicalConfig& phys,
                                           const PulseSchedule& schedule) {
  const DimensionlessParams params = derive_dimensionless(phys);
  const CanonicalShape c = parse_canonical(schedule);
  const int ell = phys.winding_number;

  const double r = params.squeeze_rate(phys.atom_number) * params.omega * c.t_prep_s;
  const double n_pm = analytic::mode_population(r, c.chi, c.n_seed);
  const double n_t = 2.0 * n_pm;
  const double j_perp = analytic::perpendicular_spin(r, c.chi, c.n_seed);
  const double xi = c.n_seed > 0.0 ? analytic::wineland_xi(r, c.chi, c.n_seed) : kNaN;
  const double var_jz0 = 0.5 * c.n_seed;  // conserved by the pair Hamiltonian

  InterferometerResult out;
  out.interrogation_s = c.interrogation_s;
  out.j_perp_input = j_perp;
  out.xi_input = xi;
  out.n_t = n_t;

  if (c.pulses == 0) {
    out.signal_mean = 0.0;
    out.signal_var = var_jz0;
    out.fringe_slope = kNaN;
    out.delta_phi = kNaN;
    out.delta_omega = kNaN;
    out.xi_readout = xi;
    return out;
  }

  const double phi =
      2.0 * ell * (c.rotation_rate * c.interrogation_s + c.final_beam_rotation);
  out.phi_readout = phi;
  out.signal_mean = j_perp * std::sin(phi);
  out.fringe_slope = j_perp * std::cos(phi);
  // Var(Jz(t_f)) is available in closed form at the fringe operating points
  // phi = n pi, where it equals the input Var(Jz).
  const bool at_node = std::abs(std::sin(phi)) < 1e-9;
  out.signal_var = at_node ? var_jz0 : kNaN;
  if (at_node && std::abs(out.fringe_slope) > 0.0) {
    out.delta_phi = std::sqrt(var_jz0) / std::abs(out.fringe_slope);
    out.xi_readout = std::sqrt(n_t) * out.delta_phi;
    out.delta_omega = c.interrogation_s > 0.0
                          ? rotation_uncertainty(out.delta_phi, ell, c.interrogation_s)
                          : kNaN;
  } else {
    out.delta_phi = kNaN;
    out.delta_omega = kNaN;
    out.xi_readout = kNaN;
  }
  out.xi_series.push_back(XiPoint{c.interrogation_s,
                                  params.omega * c.interrogation_s, out.xi_readout,
                                  0.0, n_t, out.delta_phi, out.delta_omega});
  return out;
}

}  // namespace

Backend backend_from_name(const std::string& name) {
  if (name == "analytic") return Backend::analytic;
  if (name == "smtwa") return Backend::smtwa;
  if (name == "mmtwa") return Backend::mmtwa;
  throw config_error("unknown backend: " + name);
}

InterferometerResult run_sequence(const PhysicalConfig& phys, const PulseSchedule& schedule,
                                  Backend backend, const SequenceOptions& opts,
                                  ThreadPool& pool) {
  const auto errors = validate_schedule(schedule, phys);
  if (!errors.empty()) {
    std::string msg = "invalid schedule:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw config_error(msg);
  }
  if (backend == Backend::analytic) return run_sequence_analytic(phys, schedule);
  return run_sequence_twa(phys, schedule, backend, opts, pool);
}

double phase_uncertainty(const InterferometerResult& result) {
  const double scale = std::max(1.0, std::abs(result.n_t));
  if (!(std::abs(result.fringe_slope) >
        std::max(1e-12 * scale, 3.0 * result.fringe_slope_se)))
    throw simulation_error("phase uncertainty undefined: fringe slope is zero");
  if (!std::isfinite(result.signal_var))
    throw simulation_error("phase uncertainty unavailable at this readout phase");
  return std::sqrt(result.signal_var) / std::abs(result.fringe_slope);
}

double rotation_uncertainty(double delta_phi, int ell, double interrogation_s) {
  if (ell < 1) throw config_error("rotation_uncertainty: l must be >= 1");
  if (!(interrogation_s > 0.0))
    throw config_error("rotation_uncertainty: interrogation time must be > 0");
  return delta_phi / (2.0 * ell * interrogation_s);
}

std::vector<XiPoint> xi_vs_interrogation(const PhysicalConfig& phys, const PrepSpec& prep,
                                         const std::vector<double>& T_grid_s,
                                         const InterrogationSpec& interrogation,
                                         Backend backend, const SequenceOptions& opts,
                                         ThreadPool& pool, SpinMoments* prep_out) {
  for (std::size_t i = 1; i < T_grid_s.size(); ++i)
    if (!(T_grid_s[i] > T_grid_s[i - 1]))
      throw config_error("xi_vs_interrogation: T grid must be ascending");
  if (!T_grid_s.empty() && T_grid_s.front() < 0.0)
    throw config_error("xi_vs_interrogation: negative interrogation time");

  std::vector<XiPoint> out;
  if (backend == Backend::analytic) {
    const DimensionlessParams params = derive_dimensionless(phys);
    const double r = params.squeeze_rate(phys.atom_number) * params.omega * prep.t_prep_s;
    const double xi = prep.n_seed > 0.0 ? analytic::wineland_xi(r, prep.chi, prep.n_seed) : kNaN;
    const double n_t = 2.0 * analytic::mode_population(r, prep.chi, prep.n_seed);
    for (double T : T_grid_s) {
      XiPoint pt;
      pt.T_s = T;
      pt.tau = params.omega * T;
      pt.xi = xi;  // two-mode model: the seeded pair is static during T
      pt.n_t = n_t;
      pt.delta_phi = xi / std::sqrt(n_t);
      pt.delta_omega = T > 0.0 ? pt.delta_phi / (2.0 * phys.winding_number * T) : kNaN;
      out.push_back(pt);
    }
    return out;
  }

  TwaContext ctx{derive_dimensionless(phys),
                 ModeLayout{opts.modes, phys.winding_number, backend == Backend::smtwa},
                 &opts, &pool};
  TrajectoryEnsemble ens =
      sample_initial(phys.atom_number, ctx.layout, opts.n_traj, opts.master_seed);
  if (prep.n_seed > 0.0) seed_pulse(ens, prep.n_seed, prep.chi);
  if (prep.t_prep_s > 0.0)
    evolve(ens, ctx.params,
           squeeze_dynamics(ctx, SqueezeWindow{prep.t_prep_s, prep.zeeman, prep.zeeman_fixed}),
           opts.step, pool);
  if (prep_out) *prep_out = estimate_moments(ens, opts.batch_count);

  apply_raman_pulse(ens, PulseAngle::half_pi, 0.0, pool);

  const RamanPulse closing{PulseAngle::half_pi, 0.0, 0.0};
  double T_prev = 0.0;
  for (double T : T_grid_s) {
    if (T > T_prev) {
      evolve(ens, ctx.params,
             free_dynamics(ctx, T - T_prev, interrogation.interaction_scale), opts.step,
             pool);
      T_prev = T;
    }
    const double phi = 2.0 * ctx.layout.ell * interrogation.rotation_rate_rad_s * T;
    const Readout r = fringe_readout(ctx, ens, closing, phi);
    XiPoint pt;
    pt.T_s = T;
    pt.tau = ens.tau;
    pt.xi = r.xi;
    pt.xi_se = r.xi_se;
    pt.n_t = r.center.n_total;
    pt.delta_phi = r.delta_phi;
    pt.delta_omega =
        T > 0.0 && std::isfinite(r.delta_phi)
            ? rotation_uncertainty(r.delta_phi, ctx.layout.ell, T)
            : kNaN;
    out.push_back(pt);
  }
  return out;
}

std::string InterferometerResult::to_json() const {
  nlohmann::json j;
  auto put = [&j](const char* key, double v) {
    if (std::isfinite(v)) j[key] = v;
    else j[key] = nullptr;
  };
  put("phi_readout", phi_readout);
  put("interrogation_s", interrogation_s);
  put("signal_mean", signal_mean);
  put("signal_stderr", signal_se);
  put("signal_var", signal_var);
  put("signal_var_stderr", signal_var_se);
  j["var_clamped"] = var_clamped;
  put("fringe_slope", fringe_slope);
  put("fringe_slope_stderr", fringe_slope_se);
  put("delta_phi", delta_phi);
  put("delta_phi_stderr", delta_phi_se);
  put("delta_omega", delta_omega);
  put("delta_omega_stderr", delta_omega_se);
  put("xi_readout", xi_readout);
  put("xi_readout_stderr", xi_readout_se);
  put("n_t", n_t);
  put("j_perp_input", j_perp_input);
  put("xi_input", xi_input);
  nlohmann::json series = nlohmann::json::array();
  for (const auto& p : xi_series) {
    nlohmann::json e;
    e["T_s"] = p.T_s;
    e["tau"] = p.tau;
    e["xi"] = std::isfinite(p.xi) ? nlohmann::json(p.xi) : nlohmann::json(nullptr);
    e["xi_stderr"] = p.xi_se;
    e["n_t"] = p.n_t;
    series.push_back(e);
  }
  j["xi_series"] = series;
  return j.dump(2);
}

}
