#include <catch_amalgamated.hpp>

#include <set>

#include "bsq/verify.hpp"

using namespace bsq;

namespace {

const VerifyReport& full() {
  static VerifyReport r = run_verify({});
  return r;
}

const CheckRecord* find(const VerifyReport& r, const std::string& name) {
  for (const auto& c : r.records)
    if (c.check == name) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("default run passes and names its checks") {
  INFO(full().to_json().dump(1));
  CHECK(full().all_pass());
  for (const char* n : {"d10_modulus", "d20_modulus", "vsymm_A", "vsymm_B", "beta_product_2", "r2_symmetry",
                        "saddle_stationarity", "delta_dual_3", "factorization_789", "mX_jump", "envelope_bound"})
    CHECK(find(full(), n) != nullptr);
  std::set<std::string> suites;
  for (const auto& c : full().records) {
    suites.insert(c.suite);
    CHECK(c.tol >= 0);
  }
  CHECK(suites.size() == verify_suites().size());
}

TEST_CASE("only restricts to one suite") {
  VerifyOptions o;
  o.only = {"model-rhp"};
  auto r = run_verify(o);
  CHECK(r.all_pass());
  CHECK_FALSE(r.records.empty());
  for (const auto& c : r.records) CHECK(c.suite == "model-rhp");
  o.only = {"nonsense"};
  CHECK_THROWS_AS(run_verify(o), DomainError);
}

TEST_CASE("perturbed r2 fails r2_symmetry") {
  VerifyOptions o;
  o.only = {"scattering", "jumps"};
  o.spectral = std::make_shared<const PerturbedSpectral>(default_spectral(), PerturbedSpectral::Target::R2, 1e-3,
                                                         2.2, 0.1);
  auto r = run_verify(o);
  CHECK_FALSE(r.all_pass());
  auto* c = find(r, "r2_symmetry");
  REQUIRE(c != nullptr);
  CHECK_FALSE(c->pass);
  CHECK(c->residual > 1e-4);
  auto fails = r.failing();
  CHECK(std::find(fails.begin(), fails.end(), "scattering/r2_symmetry") != fails.end());
}

TEST_CASE("seeded synthetic data also pass the spectral suites") {
  VerifyOptions o;
  o.only = {"jumps", "parametrix"};
  o.spectral = default_spectral(42);
  CHECK(run_verify(o).all_pass());
}

TEST_CASE("tolerance block round trips and rejects unknown keys") {
  Tolerances t;
  t.vsymm = 3e-9;
  auto back = Tolerances::from_json(t.to_json());
  CHECK(back.vsymm == 3e-9);
  CHECK(back.to_json() == t.to_json());
  CHECK_THROWS_AS(Tolerances::from_json({{"vsym", 1.0}}), DomainError);
  CHECK_THROWS_AS(Tolerances::from_json({{"vsymm", -1.0}}), DomainError);
}

TEST_CASE("report json is deterministic") {
  VerifyOptions o;
  o.only = {"core", "model-rhp"};
  CHECK(run_verify(o).to_json().dump() == run_verify(o).to_json().dump());
}
