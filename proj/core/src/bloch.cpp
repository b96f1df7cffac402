#include "mollow/bloch.hpp"

#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <string>

#include "bloch_generator.hpp"
#include "mollow/error.hpp"

namespace mollow {

void BlochState::check_physical(double tolerance) const {
  const auto fail = [](const std::string& what) {
    throw Error(ErrorCode::NonPhysicalState, what);
  };
  if (!std::isfinite(excited) || !std::isfinite(ground) || !std::isfinite(coherence.real()) ||
      !std::isfinite(coherence.imag())) {
    fail("non-finite density matrix element");
  }
  if (std::abs(excited + ground - 1.0) > tolerance) {
    fail("population sum drifted to " + std::to_string(excited + ground));
  }
  if (excited < -tolerance || excited > 1.0 + tolerance || ground < -tolerance ||
      ground > 1.0 + tolerance) {
    fail("population outside [0, 1]");
  }
  if (std::norm(coherence) > excited * ground + tolerance) {
    fail("|rho_eg|^2 exceeds rho_ee * rho_gg");
  }
}

namespace detail {

Mat4 bloch_generator(const PhysicalParams& params, double noise) {
  const double g = params.gamma;
  const double d = params.detuning + noise;
  const double w = params.rabi_frequency;
  const cdouble i{0.0, 1.0};
  Mat4 m = Mat4::Zero();
  m(kEg, kEg) = -(g + i * d);
  m(kEg, kInversion) = i * (0.5 * w);
  m(kGe, kGe) = -(g - i * d);
  m(kGe, kInversion) = -i * (0.5 * w);
  m(kInversion, kEg) = i * w;
  m(kInversion, kGe) = -i * w;
  m(kInversion, kInversion) = -2.0 * g;
  m(kInversion, kTrace) = -2.0 * g;
  return m;
}

Vec4 to_vector(const BlochState& state) {
  Vec4 v;
  v(kEg) = state.coherence;
  v(kGe) = std::conj(state.coherence);
  v(kInversion) = state.excited - state.ground;
  v(kTrace) = state.excited + state.ground;
  return v;
}

BlochState to_state(const Vec4& v) {
  BlochState s;
  s.coherence = v(kEg);
  s.excited = 0.5 * (v(kTrace).real() + v(kInversion).real());
  s.ground = 0.5 * (v(kTrace).real() - v(kInversion).real());
  return s;
}

SegmentExp::SegmentExp(const Mat4& generator) : generator_(generator) {
  Eigen::ComplexEigenSolver<Mat4> solver(generator_);
  if (solver.info() != Eigen::Success) return;
  vectors_ = solver.eigenvectors();
  values_ = solver.eigenvalues();
  Eigen::FullPivLU<Mat4> lu(vectors_);
  if (!lu.isInvertible()) return;
  inverse_ = lu.inverse();
  const double cond = vectors_.norm() * inverse_.norm();
  const double residual =
      (vectors_ * values_.asDiagonal() * inverse_ - generator_).norm() /
      std::max(generator_.norm(), 1e-300);
  diagonalized_ = cond < 1e6 && residual < 1e-12;
}

Mat4 SegmentExp::operator()(double t) const {
  if (!diagonalized_) {
    const Mat4 scaled = generator_ * t;
    return scaled.exp();
  }
  Vec4 e;
  for (int k = 0; k < 4; ++k) e(k) = std::exp(values_(k) * t);
  return vectors_ * e.asDiagonal() * inverse_;
}

TelegraphPropagator::TelegraphPropagator(const PhysicalParams& params, double amplitude)
    : plus_(bloch_generator(params, amplitude)), minus_(bloch_generator(params, -amplitude)) {}

void TelegraphPropagator::advance(Vec4& x, double t_from, double t_to, const RtsPath& path,
                                  std::size_t& flips_passed) const {
  double t = t_from;
  const auto& flips = path.flip_times;
  while (flips_passed < flips.size() && flips[flips_passed] <= t_to) {
    const double flip = flips[flips_passed];
    if (flip > t) {
      x = for_sign(sign_after(path, flips_passed))(flip - t) * x;
      t = flip;
    }
    ++flips_passed;
  }
  if (t_to > t) x = for_sign(sign_after(path, flips_passed))(t_to - t) * x;
}

}  // namespace detail

std::vector<BlochState> propagate_bloch(const PhysicalParams& params, const RtsPath& path,
                                        const BlochState& state0, std::span<const double> t_grid) {
  if (!(params.gamma > 0) || !(params.rabi_frequency >= 0) || !std::isfinite(params.detuning)) {
    throw Error(ErrorCode::DomainError, "propagate_bloch needs gamma > 0 and rabi_frequency >= 0");
  }
  state0.check_physical();
  const detail::TelegraphPropagator prop(params, path.amplitude);

  std::vector<BlochState> out;
  out.reserve(t_grid.size());
  detail::Vec4 x = detail::to_vector(state0);
  double t = 0.0;
  std::size_t flips_passed = 0;
  for (const double target : t_grid) {
    if (!(target >= t) || target > path.t_max) {
      throw Error(ErrorCode::DomainError,
                  "t_grid must be nondecreasing within [0, t_max] (t=" + std::to_string(target) + ")");
    }
    prop.advance(x, t, target, path, flips_passed);
    t = target;
    BlochState s = detail::to_state(x);
    s.check_physical();
    out.push_back(s);
  }
  return out;
}

}  // namespace mollow
