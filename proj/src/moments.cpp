#include "ringsqueeze/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ringsqueeze/errors.hpp"

namespace ringsqueeze {

TrajectoryStats trajectory_stats(const TrajectoryEnsemble& ens, std::size_t i) {
  const unsigned m = ens.layout.m;
  const int twol = 2 * ens.layout.ell;
  const cplx* a = ens.component(i, kCompPlus);
  const cplx* z = ens.component(i, kCompZero);
  const cplx* b = ens.component(i, kCompMinus);

  TrajectoryStats st;
  for (unsigned s = 0; s < m; ++s) {
    st.n[kCompPlus] += std::norm(a[s]);
    st.n[kCompZero] += std::norm(z[s]);
    st.n[kCompMinus] += std::norm(b[s]);
    const unsigned p = slot_of_mode(mode_of_slot(s, m) - twol, m);
    const cplx cross = std::conj(a[s]) * b[p];
    st.jx += cross.real();
    st.jy -= cross.imag();
  }
  st.jz = 0.5 * (st.n[kCompPlus] - st.n[kCompMinus]);
  return st;
}

void mean_corrected_populations(const TrajectoryEnsemble& ens, double out[3]) {
  const std::size_t n = ens.n_traj();
  double acc[3] = {0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const cplx* traj = ens.trajectory(i);
    for (unsigned c = 0; c < 3; ++c) {
      double s = 0.0;
      for (unsigned k = 0; k < ens.layout.m; ++k) s += std::norm(traj[c * ens.layout.m + k]);
      acc[c] += s;
    }
  }
  for (unsigned c = 0; c < 3; ++c)
    out[c] = acc[c] / static_cast<double>(n) - 0.5 * ens.layout.active_count(c);
}

namespace {

struct RawStats {
  double jx = 0, jy = 0, jz = 0, n_t = 0, var_jz = 0;
};

// Corrected statistics over trajectories [begin, end).
RawStats window_stats(const std::vector<TrajectoryStats>& ts, std::size_t begin,
                      std::size_t end, double var_offset, double pop_offset_pm) {
  RawStats r;
  const double n = static_cast<double>(end - begin);
  for (std::size_t i = begin; i < end; ++i) {
    r.jx += ts[i].jx;
    r.jy += ts[i].jy;
    r.jz += ts[i].jz;
    r.n_t += ts[i].n[kCompPlus] + ts[i].n[kCompMinus];
  }
  r.jx /= n;
  r.jy /= n;
  r.jz /= n;
  r.n_t = r.n_t / n - pop_offset_pm;
  if (end - begin >= 2) {
    double ss = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      const double d = ts[i].jz - r.jz;
      ss += d * d;
    }
    r.var_jz = ss / (n - 1.0) - var_offset;
  }
  return r;
}

double xi_of(const RawStats& r) {
  const double jp = std::hypot(r.jx, r.jy);
  if (!(jp > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return std::sqrt(std::max(r.var_jz, 0.0) * std::max(r.n_t, 0.0)) / jp;
}

}  // namespace

SpinMoments estimate_moments(const TrajectoryEnsemble& ens, unsigned batch_count) {
  const std::size_t n = ens.n_traj();
  if (n < 2) throw simulation_error("estimate_moments needs n_traj >= 2");
  const unsigned m = ens.layout.m;

  std::vector<TrajectoryStats> ts(n);
  for (std::size_t i = 0; i < n; ++i) ts[i] = trajectory_stats(ens, i);

  const double var_offset =
      (ens.layout.active_count(kCompPlus) + ens.layout.active_count(kCompMinus)) / 16.0;
  const double pop_offset_pm =
      0.5 * (ens.layout.active_count(kCompPlus) + ens.layout.active_count(kCompMinus));

  const RawStats full = window_stats(ts, 0, n, var_offset, pop_offset_pm);

  SpinMoments out;
  out.n_traj = n;
  out.tau = ens.tau;
  out.mean_jx = full.jx;
  out.mean_jy = full.jy;
  out.mean_jz = full.jz;
  out.var_jz = full.var_jz;
  if (out.var_jz < 0.0) {
    out.var_jz = 0.0;
    out.var_jz_clamped = true;
  }
  out.j_perp = std::hypot(full.jx, full.jy);
  out.n_total = full.n_t;
  out.xi = xi_of(full);

  // per-mode and per-component corrected populations
  out.n_mode.assign(3 * m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx* traj = ens.trajectory(i);
    for (unsigned j = 0; j < 3 * m; ++j) out.n_mode[j] += std::norm(traj[j]);
  }
  for (unsigned c = 0; c < 3; ++c) {
    double total = 0.0;
    for (unsigned s = 0; s < m; ++s) {
      double& v = out.n_mode[c * m + s];
      v /= static_cast<double>(n);
      if (ens.layout.is_active(c, s)) v -= 0.5;
      total += v;
    }
    out.n_comp[c] = total;
  }

  // batch standard errors
  const unsigned b = std::min<std::size_t>(batch_count, n / 2);
  if (b >= 2) {
    std::vector<RawStats> bs(b);
    std::vector<double> bxi(b);
    for (unsigned j = 0; j < b; ++j) {
      const std::size_t begin = n * j / b;
      const std::size_t end = n * (j + 1) / b;
      bs[j] = window_stats(ts, begin, end, var_offset, pop_offset_pm);
      bxi[j] = xi_of(bs[j]);
    }
    auto se = [&](auto&& get) {
      double mean = 0.0;
      for (unsigned j = 0; j < b; ++j) mean += get(j);
      mean /= b;
      double ss = 0.0;
      for (unsigned j = 0; j < b; ++j) {
        const double d = get(j) - mean;
        ss += d * d;
      }
      return std::sqrt(ss / (b - 1.0) / b);
    };
    out.se_jx = se([&](unsigned j) { return bs[j].jx; });
    out.se_jy = se([&](unsigned j) { return bs[j].jy; });
    out.se_jz = se([&](unsigned j) { return bs[j].jz; });
    out.se_var_jz = se([&](unsigned j) { return bs[j].var_jz; });
    out.se_n_total = se([&](unsigned j) { return bs[j].n_t; });
    out.se_xi = se([&](unsigned j) { return bxi[j]; });
  }
  return out;
}

}
