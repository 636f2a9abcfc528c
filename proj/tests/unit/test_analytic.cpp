// Copyright 2026 The rabistat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rabistat/analytic.hpp"

#include <memory>

#include "rabistat/dressed.hpp"
#include "rabistat/lindblad.hpp"
#include "rabistat/observables.hpp"
#include "support.hpp"

using namespace rabistat;

namespace {

SystemParams jcm_params(double g, double Gamma) {
  SystemParams p;
  p.eta = g;
  p.Gamma = Gamma;
  return p;
}

double master_equation_g2(const SystemParams& p) {
  return g2_zero(steady_state(liouvillian_jcm(p)), bare_operators(p.dims()).a);
}

}  // namespace

TEST_SUITE("analytic") {

TEST_CASE("weak-coupling limit of the moment hierarchy") {
  const MomentVector m = jcm_weak_pump_moments(jcm_params(1e-6, 1e-8));
  REQUIRE(m.g2.has_value());
  CHECK(testutil::relative(*m.g2, (2.0 / 3.0) * (1e-3 / 0.05)) < 0.05);
  CHECK_FALSE(m.outside_validity);
}

TEST_CASE("strong-coupling limit of the moment hierarchy") {
  const MomentVector m = jcm_weak_pump_moments(jcm_params(0.5, 1e-8));
  REQUIRE(m.g2.has_value());
  CHECK(testutil::relative(*m.g2, 2.0 / 3.0) < 0.05);
}

TEST_CASE("moment hierarchy agrees with the master equation") {
  for (const double g : {1e-3, 2.5e-2}) {
    const SystemParams p = jcm_params(g, 1e-6 * 1e-3);
    const MomentVector m = jcm_weak_pump_moments(p);
    CHECK(testutil::relative(*m.g2, master_equation_g2(p)) < 0.05);
    const BareOperators ops = bare_operators(p.dims());
    CHECK(testutil::relative(m.photons(), expect(ops.number, steady_state(liouvillian_jcm(p))).real()) < 0.05);
  }
}

TEST_CASE("closed-form moments in their limits") {
  SystemParams weak = jcm_params(1e-6, 1e-8);
  MomentVector m = jcm_weak_pump_moments(weak);
  LimitFormulas f = jcm_limit_formulas(weak);
  CHECK(testutil::relative(f.n_approx, m.photons()) < 0.05);
  CHECK(testutil::relative(f.n2_approx, m.pair_correlation()) < 0.1);
  // The residual mismatch is the gamma/kappa correction and vanishes with it.
  weak.gamma = 1e-5;
  weak.Gamma = 1e-10;
  CHECK(testutil::relative(jcm_limit_formulas(weak).n_approx, jcm_weak_pump_moments(weak).photons()) < 1e-3);
  CHECK(f.cooperativity == doctest::Approx(4e-12 / 5e-5));

  const SystemParams strong = jcm_params(0.5, 1e-8);
  m = jcm_weak_pump_moments(strong);
  f = jcm_limit_formulas(strong);
  CHECK(testutil::relative(f.n2_approx, m.pair_correlation()) < 0.1);
}

TEST_CASE("validity flag and degenerate rates") {
  CHECK(jcm_weak_pump_moments(jcm_params(0.1, 1e-3)).outside_validity);
  SystemParams p = jcm_params(0.1, 0.0);
  p.kappa = 0.0;
  p.gamma = 0.0;
  CHECK_ERROR_CODE(jcm_weak_pump_moments(p), ErrorCode::degenerate_parameters);
}

TEST_CASE("Bose weight of a unit-energy state") {
  const ThermalParams tp = ThermalParams::make(3000.0);
  CHECK(tp.kT_over_hw0() == doctest::Approx(0.25852).epsilon(1e-4));
  SystemParams p;
  p.eta = 0.0;
  const EigenSystem es = labeled_eigensystem(Model::qrm, p);
  const DensityMatrix rho = thermal_state(es, tp, ThermalMode::bose_weights);
  const double r = rho.data(es.index_of(PolaritonLabel::branch(1, '-')), es.index_of(PolaritonLabel::branch(1, '-'))).real();
  CHECK(r == doctest::Approx(1.0 / (std::exp(1.0 / 0.25852) - 1.0)).epsilon(1e-3));
  CHECK(r == doctest::Approx(2.1e-2).epsilon(0.05));
}

TEST_CASE("thermal state modes") {
  SystemParams p;
  p.eta = 0.01;
  const EigenSystem es = labeled_eigensystem(Model::qrm, p);
  const DensityMatrix gibbs = thermal_state(es, ThermalParams::make(1500.0), ThermalMode::gibbs);
  CHECK(std::abs(gibbs.data.trace() - 1.0) < 1e-12);
  CHECK(gibbs.frame == Frame::energy);
  CHECK_ERROR_CODE(thermal_state(es, ThermalParams::make(30000.0), ThermalMode::bose_weights),
                   ErrorCode::thermal_normalization);
  CHECK_ERROR_CODE(ThermalParams::make(-1.0), ErrorCode::invalid_parameter);
  CHECK(parse_thermal_mode("bose_weights") == ThermalMode::bose_weights);
  CHECK_ERROR_CODE(parse_thermal_mode("boltzmann"), ErrorCode::invalid_parameter);
}

TEST_CASE("thermal map keeps going past invalid cells") {
  const std::vector<double> etas = {0.01, 0.5};
  const std::vector<double> temps = {1500.0, 30000.0};
  const ThermalMap map = thermal_g2_map(etas, temps, ThermalMode::bose_weights, 8);
  CHECK(std::isfinite(map.g2(0, 0)));
  CHECK(std::isnan(map.g2(1, 0)));
  CHECK(map.errors[2] == ErrorCode::thermal_normalization);
  CHECK(map.g2(0, 0) == doctest::Approx(2.0).epsilon(0.1));
}

}
