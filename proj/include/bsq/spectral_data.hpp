#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "bsq/chebyshev.hpp"
#include "bsq/common.hpp"

namespace bsq {

enum class SpectralMode { FromInitialData, UserSupplied };

// Evaluators for r1 on Gamma_hat_1 = (0, i) U (-i, -i inf) U circle and r2 on
// Gamma_hat_4 = (0, -i) U (i, i inf) U circle.
class SpectralData {
 public:
  virtual ~SpectralData() = default;
  virtual SpectralMode mode() const = 0;
  virtual std::string name() const = 0;

  cd r1(cd k) const;
  cd r2(cd k) const;
  // r1 r2, 1 + r1 r2 + r1 r2 (1/(omega^2 k)), both on the unit circle
  cd g(cd k) const;
  cd f(cd k) const;
  cd r1_hat(cd k) const { return r1(k) / (1.0 + g(k)); }
  cd r2_hat(cd k) const { return r2(k) / (1.0 + g(k)); }

  static bool on_circle(cd k) { return std::abs(std::abs(k) - 1.0) <= 1e-10; }

 protected:
  virtual cd r1_circle(cd k) const = 0;
  virtual cd r2_circle(cd k) const;
  virtual cd r1_ray(cd k) const;
  virtual cd r1_segment(cd k) const;
};

using SpectralPtr = std::shared_ptr<const SpectralData>;

class ZeroSpectral : public SpectralData {
 public:
  SpectralMode mode() const override { return SpectralMode::UserSupplied; }
  std::string name() const override { return "zero"; }

 protected:
  cd r1_circle(cd) const override { return 0.0; }
  cd r2_circle(cd) const override { return 0.0; }
  cd r1_ray(cd) const override { return 0.0; }
};

// Bump-modulated trigonometric profile family. r1 is prescribed on the three
// arcs (0, pi/3), (2pi/3, pi), (4pi/3, 5pi/3) and completed on the other three
// so that the unit-circle relation between r1 and r2 holds exactly; r2 follows
// from the conjugation relation with r_tilde.
struct SyntheticParams {
  double amp_a = 0.5, rate_a = 1.0;
  double amp_b = 0.4, rate_b = -0.7;
  double amp_c = 0.45, rate_c = 0.3;
  double ray_amp = 0.3, ray_rate = 0.5;
  double scale = 1.0;

  static SyntheticParams from_seed(std::uint64_t seed);
};

class SyntheticSpectral : public SpectralData {
 public:
  explicit SyntheticSpectral(SyntheticParams p = {});
  SpectralMode mode() const override { return SpectralMode::UserSupplied; }
  std::string name() const override { return "synthetic"; }
  const SyntheticParams& params() const { return p_; }

  struct ArcValues {
    cd a, b, c, x, y, w;
  };
  ArcValues solve(double phi) const;

 protected:
  cd r1_circle(cd k) const override;
  cd r1_ray(cd k) const override;

 private:
  SyntheticParams p_;
};

// Circle values tabulated per sextant, barycentric interpolation in angle.
struct SpectralRecord {
  std::string contour_id;
  cd k, r1, r2;
};

class TabulatedSpectral : public SpectralData {
 public:
  TabulatedSpectral(const std::vector<SpectralRecord>& recs, SpectralMode mode);
  SpectralMode mode() const override { return mode_; }
  std::string name() const override { return "tabulated"; }

 protected:
  cd r1_circle(cd k) const override;
  cd r2_circle(cd k) const override;

 private:
  SpectralMode mode_;
  BaryInterp r1_[6], r2_[6];
};

// Adds a smooth bump to r1 or r2 on the circle; used for defect injection.
class PerturbedSpectral : public SpectralData {
 public:
  enum class Target { R1, R2 };
  PerturbedSpectral(SpectralPtr base, Target target, double eps,
                    double center = 0.5, double width = 0.3);
  SpectralMode mode() const override { return base_->mode(); }
  std::string name() const override { return base_->name() + "+perturbed"; }

 protected:
  cd r1_circle(cd k) const override;
  cd r2_circle(cd k) const override;
  cd r1_ray(cd k) const override { return base_->r1(k); }
  cd r1_segment(cd k) const override { return base_->r1(k); }

 private:
  cd bump(cd k) const;
  SpectralPtr base_;
  Target target_;
  double eps_, center_, width_;
};

}  // namespace bsq
