#pragma once

// Internal: Bloch-vector generator and exact segment propagators shared by
// bloch.cpp and oracle.cpp.

#include <Eigen/Dense>
#include <complex>
#include <cstddef>

#include "mollow/bloch.hpp"
#include "mollow/params.hpp"
#include "mollow/rts_path.hpp"

namespace mollow::detail {

using cdouble = std::complex<double>;
using Vec4 = Eigen::Matrix<cdouble, 4, 1>;
using Mat4 = Eigen::Matrix<cdouble, 4, 4>;

// Component order of the Bloch vector. The trace is carried as a fourth
// component so the decay towards the ground state stays linear; operators
// that are not density matrices (sigma_minus rho, sigma_minus) simply carry
// their own trace.
enum Component : int { kEg = 0, kGe = 1, kInversion = 2, kTrace = 3 };

Mat4 bloch_generator(const PhysicalParams& params, double noise);

Vec4 to_vector(const BlochState& state);
BlochState to_state(const Vec4& v);

/// exp(G t) for one fixed generator. Uses a cached eigendecomposition and
/// falls back to scaling-and-squaring when the eigenvectors are ill conditioned.
class SegmentExp {
 public:
  explicit SegmentExp(const Mat4& generator);

  Mat4 operator()(double t) const;
  const Mat4& generator() const noexcept { return generator_; }
  bool diagonalized() const noexcept { return diagonalized_; }

 private:
  Mat4 generator_;
  Mat4 vectors_;
  Mat4 inverse_;
  Vec4 values_;
  bool diagonalized_ = false;
};

/// Generators for the two telegraph states x = +a and x = -a.
class TelegraphPropagator {
 public:
  TelegraphPropagator(const PhysicalParams& params, double amplitude);

  const SegmentExp& for_sign(int sign) const noexcept { return sign > 0 ? plus_ : minus_; }

  /// Advances `x` from t_from to t_to along `path`. `flips_passed` counts the
  /// flips at or before t_from and is updated.
  void advance(Vec4& x, double t_from, double t_to, const RtsPath& path,
               std::size_t& flips_passed) const;

 private:
  SegmentExp plus_;
  SegmentExp minus_;
};

inline int sign_after(const RtsPath& path, std::size_t flips_passed) noexcept {
  return (flips_passed % 2 == 0) ? path.initial_sign : -path.initial_sign;
}

}  // namespace mollow::detail
