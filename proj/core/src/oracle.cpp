#include "mollow/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bloch_generator.hpp"
#include "mollow/error.hpp"
#include "mollow/parallel.hpp"
#include "mollow/rts_path.hpp"

namespace mollow {

std::string_view to_string(CorrelationKind kind) noexcept {
  return kind == CorrelationKind::DipoleKernel ? "dipole_kernel" : "emission";
}

CorrelationKind correlation_kind_from_string(std::string_view text) {
  if (text == "dipole_kernel") return CorrelationKind::DipoleKernel;
  if (text == "emission") return CorrelationKind::Emission;
  throw Error(ErrorCode::ValidationError,
              "correlation kind must be 'dipole_kernel' or 'emission', got '" + std::string(text) +
                  "'");
}

namespace {

using detail::cdouble;
using detail::Mat4;
using detail::TelegraphPropagator;
using detail::Vec4;
using Mat3 = Eigen::Matrix<cdouble, 3, 3>;
using Row3 = Eigen::Matrix<cdouble, 1, 3>;

// Per-index Welford moments; blocks merge with Chan's update in index order.
struct Moments {
  std::uint64_t n = 0;
  std::vector<double> mean;
  std::vector<double> m2;

  explicit Moments(std::size_t size = 0) : mean(size, 0.0), m2(size, 0.0) {}

  template <typename Get>
  void add(Get&& value) {
    ++n;
    const double inv = 1.0 / static_cast<double>(n);
    for (std::size_t j = 0; j < mean.size(); ++j) {
      const double x = value(j);
      const double d = x - mean[j];
      mean[j] += d * inv;
      m2[j] += d * (x - mean[j]);
    }
  }

  void merge(const Moments& other) {
    if (other.n == 0) return;
    if (n == 0) {
      *this = other;
      return;
    }
    const double na = static_cast<double>(n);
    const double nb = static_cast<double>(other.n);
    const double total = na + nb;
    for (std::size_t j = 0; j < mean.size(); ++j) {
      const double d = other.mean[j] - mean[j];
      mean[j] += d * nb / total;
      m2[j] += other.m2[j] + d * d * na * nb / total;
    }
    n += other.n;
  }

  double variance_of_mean(std::size_t j) const {
    if (n < 2) return 0.0;
    const double dn = static_cast<double>(n);
    return m2[j] / (dn - 1.0) / dn;
  }
};

std::size_t block_count(std::uint64_t n_traj) {
  return static_cast<std::size_t>((n_traj + kTrajectoryBlock - 1) / kTrajectoryBlock);
}

template <typename Fn>
void for_each_trajectory_in_block(std::size_t block, std::uint64_t n_traj, Fn&& fn) {
  const std::uint64_t first = static_cast<std::uint64_t>(block) * kTrajectoryBlock;
  const std::uint64_t last = std::min<std::uint64_t>(first + kTrajectoryBlock, n_traj);
  for (std::uint64_t i = first; i < last; ++i) fn(i);
}

void check_inputs(const PhysicalParams& params, const RtsParams& rts, std::uint64_t n_traj) {
  params.validate();
  if (n_traj < 1) throw Error(ErrorCode::ValidationError, "n_traj must be >= 1");
  if (!(rts.amplitude >= 0) || !(rts.switch_rate >= 0)) {
    throw Error(ErrorCode::DomainError, "telegraph amplitude and switch rate must be >= 0");
  }
}

// sigma_minus rho for a density-matrix vector rho.
Vec4 sigma_minus_times(const Vec4& rho) {
  const cdouble excited = 0.5 * (rho(detail::kTrace) + rho(detail::kInversion));
  Vec4 x;
  x(detail::kEg) = 0.0;
  x(detail::kGe) = excited;
  x(detail::kInversion) = -rho(detail::kEg);
  x(detail::kTrace) = rho(detail::kEg);
  return x;
}

Vec4 sigma_minus() {
  Vec4 x = Vec4::Zero();
  x(detail::kGe) = 1.0;
  return x;
}

// exp(-i omega_j t) for every grid point; uniform grids use a recurrence.
class PhaseTable {
 public:
  explicit PhaseTable(std::span<const double> omega) : omega_(omega) {
    if (omega.size() > 2) {
      const double step = (omega.back() - omega.front()) / static_cast<double>(omega.size() - 1);
      uniform_ = true;
      for (std::size_t j = 1; j < omega.size(); ++j) {
        const double expected = omega.front() + step * static_cast<double>(j);
        if (std::abs(omega[j] - expected) > 1e-12 * std::max(1.0, std::abs(expected))) {
          uniform_ = false;
          break;
        }
      }
      step_ = step;
    }
  }

  void fill(double t, std::vector<cdouble>& out) const {
    if (!uniform_) {
      for (std::size_t j = 0; j < omega_.size(); ++j) out[j] = std::polar(1.0, -omega_[j] * t);
      return;
    }
    // Re-anchor every 64 points to bound recurrence rounding.
    const cdouble rot = std::polar(1.0, -step_ * t);
    cdouble p{};
    for (std::size_t j = 0; j < omega_.size(); ++j) {
      if (j % 64 == 0) {
        p = std::polar(1.0, -omega_[j] * t);
      } else {
        p *= rot;
      }
      out[j] = p;
    }
  }

 private:
  std::span<const double> omega_;
  bool uniform_ = false;
  double step_ = 0.0;
};

// Row kGe of (B - i omega)^{-1}, B the homogeneous 3x3 block of the generator.
std::vector<Row3> resolvent_rows(const Mat4& generator, std::span<const double> omega) {
  const Mat3 block = generator.topLeftCorner<3, 3>();
  std::vector<Row3> rows;
  rows.reserve(omega.size());
  for (const double w : omega) {
    const Mat3 shifted = block - cdouble{0.0, w} * Mat3::Identity();
    const Mat3 inv = shifted.partialPivLu().inverse();
    rows.push_back(inv.row(detail::kGe));
  }
  return rows;
}

inline cdouble row_times(const Row3& r, const Vec4& v) {
  return r(0) * v(0) + r(1) * v(1) + r(2) * v(2);
}

struct KernelBlock {
  Moments spectrum;
  double tail_norm_sum = 0.0;
};

SpectrumCurve kernel_spectrum(const PhysicalParams& params, const RtsParams& rts,
                              std::span<const double> omega, std::uint64_t n_traj,
                              std::uint64_t seed, const OracleOptions& options) {
  const double horizon = options.resolved_tau_max(params.gamma);
  const TelegraphPropagator prop(params, rts.amplitude);
  const std::vector<Row3> rows_plus = resolvent_rows(prop.for_sign(+1).generator(), omega);
  const std::vector<Row3> rows_minus = resolvent_rows(prop.for_sign(-1).generator(), omega);
  const PhaseTable phases(omega);
  const std::size_t n_omega = omega.size();

  std::vector<KernelBlock> blocks(block_count(n_traj));
  parallel_for(blocks.size(), resolve_thread_count(options.threads), [&](std::size_t b) {
    KernelBlock result{Moments(n_omega), 0.0};
    std::vector<cdouble> acc(n_omega);
    std::vector<cdouble> ph_prev(n_omega);
    std::vector<cdouble> ph_next(n_omega);
    std::vector<double> values(n_omega);

    for_each_trajectory_in_block(b, n_traj, [&](std::uint64_t i) {
      const RtsPath path = sample_rts_path(rts, horizon, trajectory_seed(seed, i));
      Vec4 x = sigma_minus();
      std::fill(acc.begin(), acc.end(), cdouble{});
      phases.fill(0.0, ph_prev);
      double t = 0.0;
      const std::size_t n_flips = path.flip_times.size();
      for (std::size_t k = 0; k <= n_flips; ++k) {
        const double boundary = k < n_flips ? path.flip_times[k] : horizon;
        const int sign = detail::sign_after(path, k);
        if (boundary > t) {
          const Vec4 next = prop.for_sign(sign)(boundary - t) * x;
          phases.fill(boundary, ph_next);
          const auto& rows = sign > 0 ? rows_plus : rows_minus;
          for (std::size_t j = 0; j < n_omega; ++j) {
            acc[j] += row_times(rows[j], next) * ph_next[j] - row_times(rows[j], x) * ph_prev[j];
          }
          x = next;
          std::swap(ph_prev, ph_next);
          t = boundary;
        }
      }
      for (std::size_t j = 0; j < n_omega; ++j) values[j] = 2.0 * acc[j].real();
      result.spectrum.add([&](std::size_t j) { return values[j]; });
      result.tail_norm_sum += x.norm();
    });
    blocks[b] = std::move(result);
  });

  Moments total(n_omega);
  double tail = 0.0;
  for (const KernelBlock& block : blocks) {
    total.merge(block.spectrum);
    tail += block.tail_norm_sum;
  }
  tail /= static_cast<double>(n_traj);
  if (tail > 1e-4) {
    throw Error(ErrorCode::PlateauNotReached,
                "dipole kernel still at " + std::to_string(tail) + " of its initial size at tau_max");
  }

  SpectrumCurve curve;
  curve.omega.assign(omega.begin(), omega.end());
  curve.intensity = total.mean;
  OracleProvenance prov;
  prov.n_trajectories = n_traj;
  prov.seed = seed;
  prov.tau_max = horizon;
  prov.kind = std::string(to_string(CorrelationKind::DipoleKernel));
  prov.std_error.resize(n_omega);
  for (std::size_t j = 0; j < n_omega; ++j) prov.std_error[j] = std::sqrt(total.variance_of_mean(j));
  curve.provenance.oracle = std::move(prov);
  return curve;
}

struct CorrelationBlock {
  Moments re;
  Moments im;
  Moments populations;  // [0.9 * burn-in, burn-in]
};

}  // namespace

CorrelationEstimate correlation_function(const PhysicalParams& params, const RtsParams& rts,
                                         std::span<const double> tau_grid, std::uint64_t n_traj,
                                         std::uint64_t seed, const OracleOptions& options) {
  check_inputs(params, rts, n_traj);
  if (tau_grid.empty() || tau_grid.front() != 0.0) {
    throw Error(ErrorCode::InvalidGrid, "tau grid must start at 0");
  }
  for (std::size_t j = 1; j < tau_grid.size(); ++j) {
    if (!(tau_grid[j] > tau_grid[j - 1])) {
      throw Error(ErrorCode::InvalidGrid, "tau grid must be strictly increasing");
    }
  }

  const bool emission = options.kind == CorrelationKind::Emission;
  const double t0 = emission ? options.resolved_burn_in(params.gamma) : 0.0;
  const double t_end = t0 + tau_grid.back();
  const double path_length = t_end > 0 ? t_end : 1.0;
  const TelegraphPropagator prop(params, rts.amplitude);
  const std::size_t n_tau = tau_grid.size();

  std::vector<CorrelationBlock> blocks(block_count(n_traj));
  parallel_for(blocks.size(), resolve_thread_count(options.threads), [&](std::size_t b) {
    CorrelationBlock result{Moments(n_tau), Moments(n_tau), Moments(2)};
    std::vector<cdouble> values(n_tau);
    for_each_trajectory_in_block(b, n_traj, [&](std::uint64_t i) {
      const RtsPath path = sample_rts_path(rts, path_length, trajectory_seed(seed, i));
      std::size_t flips_passed = 0;
      Vec4 x;
      if (emission) {
        Vec4 rho = detail::to_vector(BlochState::ground_state());
        prop.advance(rho, 0.0, 0.9 * t0, path, flips_passed);
        const double early = detail::to_state(rho).excited;
        prop.advance(rho, 0.9 * t0, t0, path, flips_passed);
        const BlochState state = detail::to_state(rho);
        state.check_physical();
        const double late = state.excited;
        result.populations.add([&](std::size_t j) { return j == 0 ? early : late; });
        x = sigma_minus_times(rho);
      } else {
        x = sigma_minus();
      }
      double t = t0;
      for (std::size_t j = 0; j < n_tau; ++j) {
        const double target = t0 + tau_grid[j];
        prop.advance(x, t, target, path, flips_passed);
        t = target;
        values[j] = x(detail::kGe);
      }
      result.re.add([&](std::size_t j) { return values[j].real(); });
      result.im.add([&](std::size_t j) { return values[j].imag(); });
    });
    blocks[b] = std::move(result);
  });

  CorrelationBlock total{Moments(n_tau), Moments(n_tau), Moments(2)};
  for (const CorrelationBlock& block : blocks) {
    total.re.merge(block.re);
    total.im.merge(block.im);
    total.populations.merge(block.populations);
  }

  CorrelationEstimate est;
  est.tau_grid.assign(tau_grid.begin(), tau_grid.end());
  est.values.resize(n_tau);
  est.std_error.resize(n_tau);
  for (std::size_t j = 0; j < n_tau; ++j) {
    est.values[j] = {total.re.mean[j], total.im.mean[j]};
    est.std_error[j] = std::sqrt(total.re.variance_of_mean(j) + total.im.variance_of_mean(j));
  }
  est.n_trajectories = n_traj;
  est.seed = seed;
  est.kind = options.kind;

  if (emission) {
    const double early = total.populations.mean[0];
    const double late = total.populations.mean[1];
    const double slack = 3.0 * std::sqrt(total.populations.variance_of_mean(0) +
                                         total.populations.variance_of_mean(1));
    if (std::abs(late - early) > 1e-4 * std::abs(late) + slack) {
      throw Error(ErrorCode::InsufficientEquilibration,
                  "excited population drifted from " + std::to_string(early) + " to " +
                      std::to_string(late) + " over the last 10% of the burn-in");
    }
    est.mean_excited_population = late;
    est.excited_population_std_error = std::sqrt(total.populations.variance_of_mean(1));
  }
  return est;
}

SpectrumCurve oracle_spectrum(const PhysicalParams& params, const RtsParams& rts,
                              std::span<const double> omega_grid, std::uint64_t n_traj,
                              std::uint64_t seed, const OracleOptions& options) {
  check_inputs(params, rts, n_traj);
  validate_grid(omega_grid);

  SpectrumCurve curve;
  if (options.kind == CorrelationKind::DipoleKernel) {
    curve = kernel_spectrum(params, rts, omega_grid, n_traj, seed, options);
  } else {
    if (options.tau_points < 16) {
      throw Error(ErrorCode::ValidationError, "tau_points must be >= 16");
    }
    const double horizon = options.resolved_tau_max(params.gamma);
    const std::vector<double> tau = linear_grid(0.0, horizon, options.tau_points);
    const CorrelationEstimate est = correlation_function(params, rts, tau, n_traj, seed, options);

    const std::size_t n_tau = tau.size();
    const std::size_t tail_start = n_tau - std::max<std::size_t>(1, n_tau / 10);
    cdouble plateau{};
    for (std::size_t j = tail_start; j < n_tau; ++j) plateau += est.values[j];
    plateau /= static_cast<double>(n_tau - tail_start);

    const double initial = std::abs(est.values.front() - plateau);
    const double residual = std::abs(est.values.back() - plateau);
    if (residual > 1e-4 * initial + 3.0 * est.std_error.back()) {
      throw Error(ErrorCode::PlateauNotReached,
                  "correlation still " + std::to_string(residual) + " away from its plateau at tau_max");
    }

    const double h = tau[1] - tau[0];
    curve.omega.assign(omega_grid.begin(), omega_grid.end());
    curve.intensity.assign(omega_grid.size(), 0.0);
    OracleProvenance prov;
    prov.std_error.assign(omega_grid.size(), 0.0);
    for (std::size_t k = 0; k < omega_grid.size(); ++k) {
      cdouble sum{};
      double band = 0.0;
      for (std::size_t j = 0; j < n_tau; ++j) {
        const double w = (j == 0 || j + 1 == n_tau) ? 0.5 * h : h;
        sum += w * (est.values[j] - plateau) * std::polar(1.0, -omega_grid[k] * tau[j]);
        band += w * est.std_error[j];
      }
      curve.intensity[k] = 2.0 * sum.real();
      prov.std_error[k] = 2.0 * band;
    }
    prov.n_trajectories = n_traj;
    prov.seed = seed;
    prov.tau_max = horizon;
    prov.kind = std::string(to_string(CorrelationKind::Emission));
    curve.provenance.oracle = std::move(prov);
  }

  curve.provenance.params = params;
  curve.provenance.mode = AveragingMode::Oracle;
  curve.provenance.rts = rts;
  return curve;
}

}  // namespace mollow
