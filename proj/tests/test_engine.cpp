#include <doctest.h>

#include <cmath>
#include <cstring>

#include "ringsqueeze/analytic.hpp"
#include "ringsqueeze/engine.hpp"
#include "ringsqueeze/errors.hpp"

using namespace ringsqueeze;

namespace {

constexpr double kChi34 = 3.0 * constants::pi / 4.0;
const ModeLayout kFull{16, 2, false};
const ModeLayout kSingle{16, 2, true};

DimensionlessParams reference_params() { return derive_dimensionless(PhysicalConfig{}); }

SegmentDynamics squeeze_seg(double duration_tau) {
  SegmentDynamics s;
  s.duration_tau = duration_tau;
  s.coupling_scale = 1.0;
  s.zeeman = ZeemanMode::tracked;
  return s;
}

}  // namespace

TEST_CASE("free dispersion applies exact kinetic phases") {
  ThreadPool pool(1);
  auto ens = sample_initial(100.0, kFull, 4, 9);
  const auto before = ens.amps;
  const double tau = 0.37;
  free_dispersion(ens, tau, pool);
  for (std::size_t i = 0; i < ens.n_traj(); ++i) {
    for (unsigned c = 0; c < 3; ++c) {
      for (unsigned s = 0; s < kFull.m; ++s) {
        const double k = mode_of_slot(s, kFull.m);
        const cplx expect = before[i * 48 + c * 16 + s] *
                            std::exp(cplx(0.0, -0.5 * k * k * tau));
        const cplx got = ens.component(i, c)[s];
        CHECK(std::abs(got - expect) < 1e-13 * (1.0 + std::abs(expect)));
      }
    }
  }
}

TEST_CASE("evolve falls back to exact dispersion when nothing else acts") {
  ThreadPool pool(1);
  auto a = sample_initial(100.0, kFull, 3, 12);
  auto b = a;
  SegmentDynamics seg;
  seg.duration_tau = 0.21;
  seg.coupling_scale = 0.0;
  evolve(a, reference_params(), seg, StepControl{}, pool);
  free_dispersion(b, 0.21, pool);
  CHECK(std::memcmp(a.amps.data(), b.amps.data(), a.amps.size() * sizeof(cplx)) == 0);
}

TEST_CASE("zeeman resonance formula") {
  DimensionlessParams p = reference_params();
  p.c2_tilde = -6.82e-4;  // the rounded value the worked example uses
  const double dz = zeeman_delta(p, 2, 0.0, 1e5, 0.0);
  CHECK(dz == doctest::Approx(8.854367).epsilon(1e-6));
  // symbolic reduction -c2 N0 / L - l^2/2
  CHECK(dz == doctest::Approx(-p.c2_tilde * 1e5 / p.ring_length - 2.0).epsilon(1e-12));
  // c2 = 0: pure kinetic mismatch
  p.c2_tilde = 0.0;
  CHECK(zeeman_delta(p, 2, 3.0, 5.0, 7.0) == doctest::Approx(-2.0));
  // tracked value of a fresh ensemble matches the all-atoms-in-0 formula
  const auto ens = sample_initial(1e5, kFull, 500, 21);
  const DimensionlessParams ref = reference_params();
  const double tracked = tracked_zeeman(ens, ref);
  CHECK(tracked ==
        doctest::Approx(-ref.c2_tilde * 1e5 / ref.ring_length - 2.0).epsilon(5e-4));
}

TEST_CASE("number, magnetization and pair conservation at the default step") {
  ThreadPool pool(2);
  const DimensionlessParams params = reference_params();
  auto ens = sample_initial(1e5, kFull, 6, 33);
  seed_pulse(ens, 10.0, kChi34);

  std::vector<TrajectoryStats> before(ens.n_traj());
  for (std::size_t i = 0; i < ens.n_traj(); ++i) before[i] = trajectory_stats(ens, i);

  const double tau = 0.01;
  StepControl step;  // auto step from norm_tol = 1e-8
  evolve(ens, params, squeeze_seg(tau), step, pool);

  for (std::size_t i = 0; i < ens.n_traj(); ++i) {
    const TrajectoryStats after = trajectory_stats(ens, i);
    const double n_before = before[i].n[0] + before[i].n[1] + before[i].n[2];
    const double n_after = after.n[0] + after.n[1] + after.n[2];
    CHECK(std::abs(n_after - n_before) / n_before < 1e-8 * tau);
    const double mag_drift = (after.n[0] - after.n[2]) - (before[i].n[0] - before[i].n[2]);
    CHECK(std::abs(mag_drift) / n_before < 1e-8 * tau);
    // spin exchange moves pump atoms out in pairs
    const double pump_loss = before[i].n[1] - after.n[1];
    const double pair_gain = (after.n[0] - before[i].n[0]) + (after.n[2] - before[i].n[2]);
    CHECK(std::abs(pump_loss - pair_gain) / n_before < 1e-8 * tau);
  }
}

TEST_CASE("single-component interacting gas conserves number per trajectory") {
  // c2 = 0 by equal scattering lengths: pure c0 self-phase dynamics
  ThreadPool pool(1);
  PhysicalConfig cfg;
  cfg.scattering_length_s2_bohr = cfg.scattering_length_s0_bohr;
  const DimensionlessParams params = derive_dimensionless(cfg);
  auto ens = sample_initial(1e5, kFull, 4, 5);
  SegmentDynamics seg;
  seg.duration_tau = 0.01;
  seg.coupling_scale = 1.0;
  seg.zeeman = ZeemanMode::off;
  std::vector<double> n0(ens.n_traj());
  for (std::size_t i = 0; i < ens.n_traj(); ++i) {
    const auto st = trajectory_stats(ens, i);
    n0[i] = st.n[0] + st.n[1] + st.n[2];
  }
  evolve(ens, params, seg, StepControl{}, pool);
  for (std::size_t i = 0; i < ens.n_traj(); ++i) {
    const auto st = trajectory_stats(ens, i);
    CHECK(std::abs((st.n[0] + st.n[1] + st.n[2]) - n0[i]) / n0[i] < 1e-8 * seg.duration_tau);
  }
}

TEST_CASE("seeded squeeze window reproduces the undepleted-pump growth") {
  ThreadPool pool(2);
  const DimensionlessParams params = reference_params();
  const double rate = params.squeeze_rate(1e5);

  auto ens = sample_initial(1e5, kSingle, 1000, 2024);
  seed_pulse(ens, 10.0, kChi34);

  StepControl step;
  step.dt_tau = 2e-4;
  double tau_prev = 0.0;
  for (double r : {0.5, 1.0}) {
    const double tau = r / rate;
    evolve(ens, params, squeeze_seg(tau - tau_prev), step, pool);
    tau_prev = tau;
    const SpinMoments m = estimate_moments(ens);
    const double expect_n = analytic::mode_population(r, kChi34, 10.0);
    CHECK(m.n_comp[kCompPlus] == doctest::Approx(expect_n).epsilon(0.05));
    CHECK(m.n_comp[kCompMinus] == doctest::Approx(expect_n).epsilon(0.05));
    const double expect_xi = analytic::wineland_xi(r, kChi34, 10.0);
    CHECK(m.xi == doctest::Approx(expect_xi).epsilon(0.10));
    // pair creation does not touch the number difference
    CHECK(std::abs(m.var_jz - 5.0) < 3.0 * m.se_var_jz + 0.2);
  }
}

TEST_CASE("ten-percent zeeman error barely changes the transfer") {
  ThreadPool pool(2);
  const DimensionlessParams params = reference_params();
  const double rate = params.squeeze_rate(1e5);
  const double tau = 0.8 / rate;
  StepControl step;
  step.dt_tau = 2e-4;

  auto tracked = sample_initial(1e5, kSingle, 400, 88);
  seed_pulse(tracked, 10.0, kChi34);
  auto detuned = tracked;
  evolve(tracked, params, squeeze_seg(tau), step, pool);

  SegmentDynamics fixed;
  fixed.duration_tau = tau;
  fixed.coupling_scale = 1.0;
  fixed.zeeman = ZeemanMode::fixed;
  fixed.zeeman_fixed = 1.1 * (-params.c2_tilde * 1e5 / params.ring_length - 2.0);
  evolve(detuned, params, fixed, step, pool);

  const double n_tracked = estimate_moments(tracked).n_comp[kCompPlus];
  const double n_detuned = estimate_moments(detuned).n_comp[kCompPlus];
  CHECK(std::abs(n_detuned - n_tracked) / n_tracked < 0.10);
}

TEST_CASE("single-mode restriction keeps inactive modes empty through evolve") {
  ThreadPool pool(1);
  auto ens = sample_initial(1e5, kSingle, 8, 4);
  seed_pulse(ens, 10.0, kChi34);
  StepControl step;
  step.dt_tau = 5e-4;
  evolve(ens, reference_params(), squeeze_seg(0.02), step, pool);
  for (std::size_t i = 0; i < ens.n_traj(); ++i)
    for (unsigned c = 0; c < 3; ++c)
      for (unsigned s = 0; s < kSingle.m; ++s)
        if (!kSingle.is_active(c, s)) CHECK(ens.component(i, c)[s] == cplx(0.0, 0.0));
}

TEST_CASE("worker count does not change the result bitwise") {
  const DimensionlessParams params = reference_params();
  StepControl step;
  step.dt_tau = 5e-4;

  auto make = [&](unsigned workers) {
    ThreadPool pool(workers);
    auto ens = sample_initial(1e5, kFull, 64, 99);
    seed_pulse(ens, 10.0, kChi34);
    evolve(ens, params, squeeze_seg(0.02), step, pool);
    apply_raman_pulse(ens, PulseAngle::half_pi, 0.3, pool);
    return ens.amps;
  };
  const auto one = make(1);
  const auto two = make(2);
  const auto four = make(4);
  CHECK(std::memcmp(one.data(), two.data(), one.size() * sizeof(cplx)) == 0);
  CHECK(std::memcmp(one.data(), four.data(), one.size() * sizeof(cplx)) == 0);
}

TEST_CASE("NaN amplitudes raise integration_diverged with location info") {
  ThreadPool pool(1);
  auto ens = sample_initial(1e5, kFull, 3, 1);
  ens.component(2, kCompZero)[0] = cplx(std::nan(""), 0.0);
  SegmentDynamics seg;
  seg.duration_tau = 0.001;
  seg.coupling_scale = 1.0;
  seg.zeeman = ZeemanMode::off;  // keep trajectories uncoupled
  try {
    evolve(ens, reference_params(), seg, StepControl{}, pool);
    FAIL("expected integration_diverged");
  } catch (const integration_diverged& e) {
    CHECK(e.trajectory() == 2);
    CHECK(e.tau() > 0.0);
  }
}
