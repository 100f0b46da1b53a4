#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "bsq/common.hpp"
#include "bsq/spectral_data.hpp"

namespace bsq {

// Target accuracy of r1, r2 from the default march.
inline constexpr double kSolverTol = 1e-8;

// Real initial data u0, u1 = v0' on a truncation window.
struct InitialData {
  std::string preset;
  std::function<double(double)> u0, u0x, u1, v0;
  double x_min = -12, x_max = 12;
  int n_samples = 2400;
  double tail_tol = 1e-12;
  nlohmann::json params;

  // u0 = a e^{-((x-c)/w)^2}, v0 = b e^{-((x-c)/wv)^2}
  static InitialData gaussian(double a, double w, double b, double wv, double c = 0.0);
  // u0 = a sech^2((x-c)/w), v0 = b sech^2((x-c)/wv)
  static InitialData sech2(double a, double w, double b, double wv, double c = 0.0);
  // Monotone cubic interpolation of u0 and u1; v0 is the running integral of u1.
  static InitialData table(const std::vector<double>& x, const std::vector<double>& u0,
                           const std::vector<double>& u1);
  static InitialData from_json(const nlohmann::json& j);

  InitialData scaled(double eps) const;
  double step() const { return (x_max - x_min) / n_samples; }
  // Throws DomainError when the data do not decay to tail_tol at the window
  // edges or when the integral of u1 differs from 0 by more than tail_tol.
  void validate() const;
};

struct PU {
  Mat3 P, U;
};

// P(k) Vandermonde in l_j(k) and U(x, k) = P^{-1} M(x) P.
PU build_P_and_U(double x, cd k, const InitialData& d);
Mat3 vandermonde_P(cd k);

enum class VolterraKind { X, XA };

struct VolterraResult {
  Mat3 X_min;        // X at x_min
  Mat3 s;            // s or s^A
  // Largest exponential factor exp(max(0, -Re D_ij) (x_max - x_min)) met by each column.
  std::array<double, 3> growth{1, 1, 1};
};

// Downward march from x_max with a fourth-order implicit Adams step on the
// exponentially weighted integrand.
VolterraResult solve_volterra(cd k, const InitialData& d, VolterraKind kind, int n_steps = 0);

struct KNode {
  std::string contour_id;  // "circle", "segment_0i", "ray_minus_i"
  cd k;
};

// Chebyshev nodes per sextant of the circle, kept at least `exclusion` from the kappa points.
std::vector<KNode> circle_grid(int per_sextant = 24, double exclusion = 1e-3);
// Geometric nodes on (0, i) and on (-i, -i inf).
std::vector<KNode> segment_grid(int n = 12);
std::vector<KNode> ray_grid(int n = 12);

class ForwardScattering {
 public:
  explicit ForwardScattering(InitialData d, int n_steps = 0, double growth_limit = 1e8);

  Mat3 s(cd k) const;
  Mat3 sA(cd k) const;
  // s11 alone; only the first column has to stay bounded.
  cd s11(cd k) const;
  cd r1(cd k) const;
  cd r2(cd k) const;
  const InitialData& data() const { return d_; }

  // Limit of fn(k) as k -> kstar along the unit circle by three-node
  // polynomial extrapolation from the side given by sign.
  cd circle_limit(const std::function<cd(cd)>& fn, cd kstar, double sign = 1.0,
                  double h = 2e-3) const;
  // Symmetric four-node limit from both sides of kstar on the circle, O(h^4).
  cd circle_limit_two_sided(const std::function<cd(cd)>& fn, cd kstar, double h = 5e-4) const;

  std::vector<SpectralRecord> tabulate(const std::vector<KNode>& nodes,
                                       std::vector<std::string>* skipped = nullptr) const;

 private:
  void check(const VolterraResult& r, cd k, int ncols) const;
  InitialData d_;
  int n_;
  double growth_limit_;
};

struct AssumptionReport {
  double min_abs_s11 = 0;                 // (i) over closure of D2 and the circle
  cd min_abs_s11_at;
  bool no_solitons = false;
  std::vector<std::pair<std::string, cd>> limits;  // (ii) at k = 1 and k = -1
  bool generic = false;
  double max_abs_r1_segment = 0;          // (iii)
  bool global = false;
  std::vector<std::string> notes;
};

AssumptionReport check_assumptions(const ForwardScattering& fs, int circle_nodes = 48,
                                   double tol = 1e-6);
// Report-only variant for user supplied spectral data: only (iii) is meaningful.
AssumptionReport check_assumptions(const SpectralData& sd, int segment_nodes = 24, double tol = 1e-6);

nlohmann::json spectral_cache_json(const std::vector<SpectralRecord>& recs);
std::vector<SpectralRecord> spectral_cache_records(const nlohmann::json& j);
void write_spectral_cache(const std::string& path, const std::vector<SpectralRecord>& recs);
std::vector<SpectralRecord> read_spectral_cache(const std::string& path);

}  // namespace bsq
