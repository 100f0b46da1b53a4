#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bsq/spectral_data.hpp"

namespace bsq {

struct Tolerances {
  double saddle_stationarity = 1e-8;
  double saddle_modulus = 1e-12;
  double index_relations = 1e-13;
  double d10_modulus = 1e-8;
  double d20_modulus = 1e-6;
  double delta_jump = 1e-6;
  double delta_slope = 0.05;
  double delta_dual = 1e-7;
  double vsymm = 1e-9;
  double factorization = 1e-8;
  double coefficients = 1e-10;
  double determinant = 1e-10;
  double spectral_symmetry = 1e-10;
  double solver = 1e-8;  // r1, r2 from the Volterra march
  double r_at_pm1 = 1e-3;
  double born_linearity = 1e-3;
  double march_order = 0.5;
  double beta_product = 1e-12;
  double gamma_modulus = 1e-12;
  double vpsi_constancy = 1e-7;
  double mX_jump = 1e-7;
  double m1_pattern = 1e-3;
  double envelope = 0.01;
  double phase_law = 1e-8;
  double amplitude_real = 1e-9;
  double nu_sign = 1e-12;

  static Tolerances from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct CheckRecord {
  std::string suite, check, at;
  double residual = 0, tol = 0;
  bool pass = false;
};

struct VerifyOptions {
  std::vector<std::string> only;  // empty runs every suite
  Tolerances tol;
  SpectralPtr spectral;  // synthetic admissible data when null
};

struct VerifyReport {
  std::vector<CheckRecord> records;
  bool all_pass() const;
  std::vector<std::string> failing() const;
  nlohmann::json to_json() const;
};

const std::vector<std::string>& verify_suites();

// Spectral data used when none is given: the synthetic family, seeded when a
// seed is supplied.
SpectralPtr default_spectral(std::optional<std::uint64_t> seed = std::nullopt);

VerifyReport run_verify(const VerifyOptions& opt);

// Individual suites, appending to rep.
void verify_core(VerifyReport& rep, const Tolerances& tol);
void verify_scattering(VerifyReport& rep, const Tolerances& tol, const SpectralData& sd);
void verify_jumps(VerifyReport& rep, const Tolerances& tol, const SpectralData& sd);
void verify_parametrix(VerifyReport& rep, const Tolerances& tol, SpectralPtr sd);
void verify_asymptotics(VerifyReport& rep, const Tolerances& tol, SpectralPtr sd);
void verify_model_rhp(VerifyReport& rep, const Tolerances& tol);

}  // namespace bsq
