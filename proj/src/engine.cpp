#include "ringsqueeze/engine.hpp"

#include <cmath>

#include "ringsqueeze/errors.hpp"

namespace ringsqueeze {

double StepControl::resolve(double phase_rate_estimate) const {
  if (dt_tau > 0.0) return dt_tau;
  const double v = std::max(phase_rate_estimate, 1e-12);
  // RK4 amplification on a phase rotation: |R(i v dt)|^2 - 1 ~ -(v dt)^6/72,
  // so norm drift per unit tau ~ (v dt)^6 / (144 dt).
  const double dt = std::pow(144.0 * norm_tol / std::pow(v, 6.0), 0.2);
  return std::min(max_dt, safety * dt);
}

double zeeman_delta(const DimensionlessParams& params, int ell, double n_plus,
                    double n_zero, double n_minus) {
  return params.c2_tilde / params.ring_length * ((n_plus + n_minus) - n_zero) -
         0.5 * static_cast<double>(ell) * ell;
}

double tracked_zeeman(const TrajectoryEnsemble& ens, const DimensionlessParams& params) {
  double pops[3];
  mean_corrected_populations(ens, pops);
  return zeeman_delta(params, ens.layout.ell, pops[kCompPlus], pops[kCompZero],
                      pops[kCompMinus]);
}

namespace {

constexpr std::size_t kDivergenceCheckStride = 16;

struct Workspace {
  explicit Workspace(const ModeLayout& layout)
      : plan(layout.m),
        ai(3 * layout.m),
        kbuf(3 * layout.m),
        acc(3 * layout.m),
        y(3 * layout.m),
        fbuf(3 * layout.m),
        grid(3 * layout.m),
        fgrid(3 * layout.m) {}

  ModeTransform plan;
  std::vector<cplx> ai, kbuf, acc, y, fbuf, grid, fgrid;
};

inline const double* dptr(const std::vector<cplx>& v, unsigned comp, unsigned m) {
  return reinterpret_cast<const double*>(v.data() + comp * m);
}
inline double* dptr(std::vector<cplx>& v, unsigned comp, unsigned m) {
  return reinterpret_cast<double*>(v.data() + comp * m);
}

/// Per-segment constants shared by all trajectories.
struct SegmentPlan {
  const kernels::Table* k = nullptr;
  ModeLayout layout;
  double c0 = 0.0, c2 = 0.0;
  double dt = 0.0;
  std::size_t steps = 0;
  std::vector<cplx> half_phase;  // e^{-i k^2 dt/4} per slot (P(dt/2))
  // drive coupling arrays on the theta grid (empty when off)
  std::vector<cplx> seed_plus, seed_minus, bs_plus;
  // Galerkin mask slots to zero after each to_modes (single-mode layout)
  bool masked = false;
  unsigned active_slot[3] = {0, 0, 0};

  kernels::DriftCoefs coefs() const {
    kernels::DriftCoefs c;
    c.c0 = c0;
    c.c2 = c2;
    if (!seed_plus.empty()) {
      c.seed_plus = reinterpret_cast<const double*>(seed_plus.data());
      c.seed_minus = reinterpret_cast<const double*>(seed_minus.data());
    }
    if (!bs_plus.empty()) c.bs_plus = reinterpret_cast<const double*>(bs_plus.data());
    return c;
  }
};

SegmentPlan make_plan(const TrajectoryEnsemble& ens, const DimensionlessParams& params,
                      const SegmentDynamics& seg, double dt, std::size_t steps) {
  SegmentPlan p;
  p.k = &kernels::active();
  p.layout = ens.layout;
  p.c0 = params.c0_tilde * seg.coupling_scale;
  p.c2 = params.c2_tilde * seg.coupling_scale;
  p.dt = dt;
  p.steps = steps;
  const unsigned m = ens.layout.m;
  p.half_phase.resize(m);
  for (unsigned s = 0; s < m; ++s) {
    const double kk = static_cast<double>(mode_of_slot(s, m));
    const double ang = -kk * kk * dt / 4.0;
    p.half_phase[s] = cplx(std::cos(ang), std::sin(ang));
  }
  const int ell = ens.layout.ell;
  if (seg.drive_seed) {
    p.seed_plus.resize(m);
    p.seed_minus.resize(m);
    for (unsigned i = 0; i < m; ++i) {
      const double theta = 2.0 * constants::pi * i / m;
      const double angp = seg.drive_phase + ell * theta;
      const double angm = seg.drive_phase - ell * theta;
      p.seed_plus[i] = seg.drive_rate * cplx(std::cos(angp), std::sin(angp));
      p.seed_minus[i] = seg.drive_rate * cplx(std::cos(angm), std::sin(angm));
    }
  }
  if (seg.drive_bs) {
    p.bs_plus.resize(m);
    for (unsigned i = 0; i < m; ++i) {
      const double theta = 2.0 * constants::pi * i / m;
      const double ang = seg.drive_phase + 2.0 * ell * theta;
      p.bs_plus[i] = seg.drive_rate * cplx(std::cos(ang), std::sin(ang));
    }
  }
  if (ens.layout.single_mode) {
    p.masked = true;
    for (unsigned c = 0; c < 3; ++c) p.active_slot[c] = ens.layout.active_slot(c);
  }
  return p;
}

inline void apply_mask(const SegmentPlan& p, cplx* modes3) {
  if (!p.masked) return;
  const unsigned m = p.layout.m;
  for (unsigned c = 0; c < 3; ++c) {
    cplx* comp = modes3 + c * m;
    const cplx keep = comp[p.active_slot[c]];
    for (unsigned s = 0; s < m; ++s) comp[s] = cplx(0.0, 0.0);
    comp[p.active_slot[c]] = keep;
  }
}

/// F(y) = -i (NL(y) + delta_Z P_{+-1} y) in mode space, via the theta grid.
void eval_drift(const SegmentPlan& p, Workspace& ws, const cplx* y, double dz, cplx* out) {
  const unsigned m = p.layout.m;
  for (unsigned c = 0; c < 3; ++c)
    ws.plan.to_grid(y + c * m, ws.grid.data() + c * m);
  p.k->spinor_drift(p.coefs(), dptr(ws.grid, kCompPlus, m), dptr(ws.grid, kCompZero, m),
                    dptr(ws.grid, kCompMinus, m), dptr(ws.fgrid, kCompPlus, m),
                    dptr(ws.fgrid, kCompZero, m), dptr(ws.fgrid, kCompMinus, m), m);
  for (unsigned c = 0; c < 3; ++c)
    ws.plan.to_modes(ws.fgrid.data() + c * m, out + c * m);
  apply_mask(p, out);
  if (dz != 0.0) {
    p.k->accum_neg_i_scaled(dz, reinterpret_cast<const double*>(y + kCompPlus * m),
                            reinterpret_cast<double*>(out + kCompPlus * m), m);
    p.k->accum_neg_i_scaled(dz, reinterpret_cast<const double*>(y + kCompMinus * m),
                            reinterpret_cast<double*>(out + kCompMinus * m), m);
  }
}

inline void apply_half_phase(const SegmentPlan& p, cplx* modes3) {
  const unsigned m = p.layout.m;
  const double* ph = reinterpret_cast<const double*>(p.half_phase.data());
  for (unsigned c = 0; c < 3; ++c)
    p.k->cmul_inplace(reinterpret_cast<double*>(modes3 + c * m), ph, m);
}

/// One RK4-IP step in place. The kinetic half-step phases make free
/// dispersion exact for any dt.
void rk4ip_step(const SegmentPlan& p, Workspace& ws, cplx* a, double dz) {
  const unsigned m = p.layout.m;
  const std::size_t nd = 6 * m;  // doubles per 3-component mode vector
  const double h = p.dt;
  auto* K = p.k;

  double* a_d = reinterpret_cast<double*>(a);
  double* ai_d = dptr(ws.ai, 0, m);
  double* k_d = dptr(ws.kbuf, 0, m);
  double* acc_d = dptr(ws.acc, 0, m);
  double* y_d = dptr(ws.y, 0, m);
  double* f_d = dptr(ws.fbuf, 0, m);

  // k1 = P(h/2)[h F(a)];  A_I = P(h/2) a
  eval_drift(p, ws, a, dz, ws.fbuf.data());
  K->scale(h, f_d, k_d, nd);
  apply_half_phase(p, ws.kbuf.data());
  for (std::size_t i = 0; i < 3 * m; ++i) ws.ai[i] = a[i];
  apply_half_phase(p, ws.ai.data());
  // acc = A_I + k1/6; y = A_I + k1/2
  K->xpay(ai_d, 1.0 / 6.0, k_d, acc_d, nd);
  K->xpay(ai_d, 0.5, k_d, y_d, nd);
  // k2 = h F(y)
  eval_drift(p, ws, ws.y.data(), dz, ws.fbuf.data());
  K->scale(h, f_d, k_d, nd);
  K->axpy(1.0 / 3.0, k_d, acc_d, nd);
  K->xpay(ai_d, 0.5, k_d, y_d, nd);
  // k3 = h F(y)
  eval_drift(p, ws, ws.y.data(), dz, ws.fbuf.data());
  K->scale(h, f_d, k_d, nd);
  K->axpy(1.0 / 3.0, k_d, acc_d, nd);
  K->xpay(ai_d, 1.0, k_d, y_d, nd);
  apply_half_phase(p, ws.y.data());
  // k4 = h F(P(h/2)[A_I + k3]); a' = P(h/2) acc + k4/6
  eval_drift(p, ws, ws.y.data(), dz, ws.fbuf.data());
  K->scale(h, f_d, k_d, nd);
  apply_half_phase(p, ws.acc.data());
  K->xpay(acc_d, 1.0 / 6.0, k_d, a_d, nd);
}

bool finite_amps(const cplx* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (!std::isfinite(a[i].real()) || !std::isfinite(a[i].imag())) return false;
  return true;
}

double phase_rate_estimate(const TrajectoryEnsemble& ens, const DimensionlessParams& params,
                           const SegmentDynamics& seg) {
  double pops[3];
  mean_corrected_populations(ens, pops);
  const double n_tot = std::max(0.0, pops[0]) + std::max(0.0, pops[1]) + std::max(0.0, pops[2]);
  const double density = n_tot / params.ring_length;
  const double scale = seg.coupling_scale;
  double v = 2.0 * density * (std::abs(params.c0_tilde) + 2.0 * std::abs(params.c2_tilde)) * scale;
  if (seg.zeeman == ZeemanMode::tracked)
    v += std::abs(zeeman_delta(params, ens.layout.ell, pops[kCompPlus], pops[kCompZero],
                               pops[kCompMinus]));
  else if (seg.zeeman == ZeemanMode::fixed)
    v += std::abs(seg.zeeman_fixed);
  if (seg.drive_seed || seg.drive_bs) v += std::abs(seg.drive_rate);
  return v;
}

}  // namespace

void free_dispersion(TrajectoryEnsemble& ens, double duration_tau, ThreadPool& pool) {
  const unsigned m = ens.layout.m;
  std::vector<cplx> phase(m);
  for (unsigned s = 0; s < m; ++s) {
    const double kk = static_cast<double>(mode_of_slot(s, m));
    const double ang = -0.5 * kk * kk * duration_tau;
    phase[s] = cplx(std::cos(ang), std::sin(ang));
  }
  const auto& K = kernels::active();
  const double* ph = reinterpret_cast<const double*>(phase.data());
  pool.parallel_for(ens.n_traj(), [&](unsigned, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      for (unsigned c = 0; c < 3; ++c)
        K.cmul_inplace(reinterpret_cast<double*>(ens.component(i, c)), ph, m);
  });
  ens.tau += duration_tau;
}

void evolve(TrajectoryEnsemble& ens, const DimensionlessParams& params,
            const SegmentDynamics& seg, const StepControl& step, ThreadPool& pool) {
  if (seg.duration_tau <= 0.0) return;

  const bool no_couplings = seg.coupling_scale * params.c0_tilde == 0.0 &&
                            seg.coupling_scale * params.c2_tilde == 0.0;
  const bool no_zeeman = seg.zeeman == ZeemanMode::off ||
                         (seg.zeeman == ZeemanMode::fixed && seg.zeeman_fixed == 0.0);
  if (no_couplings && no_zeeman && !seg.drive_seed && !seg.drive_bs) {
    free_dispersion(ens, seg.duration_tau, pool);
    return;
  }

  const double dt_raw = step.resolve(phase_rate_estimate(ens, params, seg));
  const std::size_t steps =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(seg.duration_tau / dt_raw)));
  const double dt = seg.duration_tau / static_cast<double>(steps);
  const SegmentPlan plan = make_plan(ens, params, seg, dt, steps);

  const std::size_t n = ens.n_traj();
  const unsigned m = ens.layout.m;
  std::vector<Workspace> workspaces;
  workspaces.reserve(pool.workers());
  for (unsigned w = 0; w < pool.workers(); ++w) workspaces.emplace_back(ens.layout);

  const double tau0 = ens.tau;
  if (seg.zeeman == ZeemanMode::tracked) {
    // Lockstep: delta_Z is a deterministic c-number control recomputed from
    // the ensemble mean each step (serial trajectory-order reduction).
    for (std::size_t s = 0; s < steps; ++s) {
      const double dz = tracked_zeeman(ens, params);
      pool.parallel_for(n, [&](unsigned w, std::size_t begin, std::size_t end) {
        Workspace& ws = workspaces[w];
        for (std::size_t i = begin; i < end; ++i) {
          rk4ip_step(plan, ws, ens.trajectory(i), dz);
          if (!finite_amps(ens.trajectory(i), 3 * m))
            throw integration_diverged(tau0 + (s + 1) * dt, i);
        }
      });
      ens.tau = tau0 + (s + 1) * dt;
    }
  } else {
    const double dz = seg.zeeman == ZeemanMode::fixed ? seg.zeeman_fixed : 0.0;
    pool.parallel_for(n, [&](unsigned w, std::size_t begin, std::size_t end) {
      Workspace& ws = workspaces[w];
      for (std::size_t i = begin; i < end; ++i) {
        cplx* a = ens.trajectory(i);
        for (std::size_t s = 0; s < steps; ++s) {
          rk4ip_step(plan, ws, a, dz);
          if ((s % kDivergenceCheckStride) == 0 && !finite_amps(a, 3 * m))
            throw integration_diverged(tau0 + (s + 1) * dt, i);
        }
        if (!finite_amps(a, 3 * m)) throw integration_diverged(tau0 + seg.duration_tau, i);
      }
    });
    ens.tau = tau0 + seg.duration_tau;
  }
}

void seed_pulse(TrajectoryEnsemble& ens, double n_seed, double chi) {
  if (!(n_seed >= 0.0)) throw config_error("seed_pulse: n_seed must be >= 0");
  if (n_seed == 0.0) return;
  const double pump_n = ens.pump_coherent * ens.pump_coherent;
  if (2.0 * n_seed >= pump_n)
    throw config_error("seed_pulse: 2*n_seed exceeds the pump population");

  const unsigned m = ens.layout.m;
  const unsigned sp = slot_of_mode(ens.layout.ell, m);
  const unsigned sm = slot_of_mode(-ens.layout.ell, m);
  const unsigned s0 = slot_of_mode(0, m);
  const cplx alpha = cplx(0.0, -1.0) * std::exp(cplx(0.0, chi)) * std::sqrt(n_seed);
  const double depleted = std::sqrt(pump_n - 2.0 * n_seed);
  const double dpump = ens.pump_coherent - depleted;

  for (std::size_t i = 0; i < ens.n_traj(); ++i) {
    ens.component(i, kCompPlus)[sp] += alpha;
    ens.component(i, kCompMinus)[sm] += alpha;
    ens.component(i, kCompZero)[s0] -= dpump;
  }
  ens.pump_coherent = depleted;
}

void apply_raman_pulse(TrajectoryEnsemble& ens, PulseAngle angle, double phi,
                       ThreadPool& pool) {
  const unsigned m = ens.layout.m;
  const int ell = ens.layout.ell;
  if (m < 2u * (2u * static_cast<unsigned>(ell)) + 2u)
    throw simulation_error("raman pulse: mode grid aliases the 2l-coupled band");

  const double half = angle == PulseAngle::half_pi ? constants::pi / 4.0 : constants::pi / 2.0;
  const double c = std::cos(half), s = std::sin(half);
  const cplx up = -cplx(0.0, 1.0) * std::exp(cplx(0.0, phi)) * s;   // -i e^{+i phi} sin
  const cplx dn = -cplx(0.0, 1.0) * std::exp(cplx(0.0, -phi)) * s;  // -i e^{-i phi} sin

  std::vector<unsigned> partner(m);
  for (unsigned k = 0; k < m; ++k)
    partner[k] = slot_of_mode(mode_of_slot(k, m) - 2 * ell, m);

  pool.parallel_for(ens.n_traj(), [&](unsigned, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      cplx* a = ens.component(i, kCompPlus);
      cplx* b = ens.component(i, kCompMinus);
      for (unsigned k = 0; k < m; ++k) {
        const cplx ak = a[k];
        const cplx bp = b[partner[k]];
        a[k] = c * ak + up * bp;
        b[partner[k]] = c * bp + dn * ak;
      }
    }
  });
}

}
