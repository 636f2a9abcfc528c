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

#include "rabistat/recipes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>

#include "rabistat/error.hpp"
#include "rabistat/sweep.hpp"

#ifndef RABISTAT_VERSION
#define RABISTAT_VERSION "0.0.0"
#endif

namespace rabistat {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct RecipeInfo {
  std::string_view name;
  std::string_view layout;
};

constexpr RecipeInfo kRecipes[] = {
    {"fig1b", "eta, g2 for qrm/jcm at pump_ratio 1e-6 (weak) and 10 (strong)"},
    {"fig2", "eta, energy:<label> for the first eight labels, qrm_ and jcm_ prefixed"},
    {"fig3", "eta, exact g2, truncated diagonal g2, single-pathway g2, derivative-detector g2; qrm, pump_ratio 1e-3"},
    {"fig4b", "eta, |<3-|x_sigma^dag|0>|^2 and populations of 0..3-, qrm_ and jcm_ prefixed, pump_ratio 1e-3"},
    {"fig4c", "eta (outer), pump_ratio (inner), pop:3- in the qrm"},
    {"fig5", "eta (outer), x=(omega-1)/eta, omega, S normalized per eta; qrm, pump_ratio 1e-3"},
    {"fig6", "pump_ratio (outer), eta (inner), qrm_g2, jcm_g2"},
    {"fig7", "T (outer), eta (inner), gibbs_g2, bose_g2 of thermal mixtures"},
    {"fig8", "eta, mu, nu (indices into 0 1- 1+ 2- 2+ 3-), re, im, abs of R^mu_nu; qrm, pump_ratio 1e-3"},
    {"fig9", "pump_ratio, eta, omega, S_qrm, S_jcm (each normalized per curve)"},
};

SweepSpec base_spec(SweepModel model, const RecipeOptions& o) {
  SweepSpec s;
  s.model = model;
  s.params.n_fock = o.n_fock;
  s.jobs = o.jobs;
  return s;
}

Axis eta_log(int count) { return {"eta", GridSpec::logarithmic(1e-3, 1.0, count)}; }

// Columns after the first `axes` of each part are appended with a prefix;
// all parts must share the same axis grid.
ResultTable wide_join(const std::vector<std::pair<std::string, ResultTable>>& parts, std::size_t axes) {
  ResultTable out;
  const ResultTable& first = parts.front().second;
  out.columns.assign(first.columns.begin(), first.columns.begin() + static_cast<std::ptrdiff_t>(axes));
  for (const auto& [prefix, t] : parts) {
    for (std::size_t c = axes; c < t.columns.size(); ++c) out.columns.push_back(prefix + t.columns[c]);
  }
  for (std::size_t r = 0; r < first.rows.size(); ++r) {
    std::vector<double> row(first.rows[r].begin(), first.rows[r].begin() + static_cast<std::ptrdiff_t>(axes));
    std::string error;
    for (const auto& [prefix, t] : parts) {
      row.insert(row.end(), t.rows[r].begin() + static_cast<std::ptrdiff_t>(axes), t.rows[r].end());
      if (!t.errors[r].empty()) error += (error.empty() ? "" : ";") + prefix + t.errors[r];
    }
    out.append(std::move(row), std::move(error));
  }
  for (const auto& [prefix, t] : parts) {
    for (const auto& [k, v] : t.metadata) {
      if (k == "tool" && prefix != parts.front().first) continue;
      out.add_meta(k == "tool" ? k : prefix + k, v);
    }
  }
  return out;
}

ResultTable fig1b(const RecipeOptions& o) {
  std::vector<std::pair<std::string, ResultTable>> parts;
  for (const SweepModel m : {SweepModel::qrm, SweepModel::jcm}) {
    for (const auto& [tag, ratio] : {std::pair{"weak", 1e-6}, std::pair{"strong", 10.0}}) {
      SweepSpec s = base_spec(m, o);
      s.pump_ratio = ratio;
      s.axis1 = eta_log(61);
      s.outputs = {"g2"};
      parts.emplace_back(std::string(to_string(m)) + "_" + tag + "_", run_sweep(s));
    }
  }
  return wide_join(parts, 1);
}

ResultTable fig2(const RecipeOptions& o) {
  std::vector<std::pair<std::string, ResultTable>> parts;
  for (const SweepModel m : {SweepModel::qrm, SweepModel::jcm}) {
    SweepSpec s = base_spec(m, o);
    s.axis1 = Axis{"eta", GridSpec::linear(0.0, 1.0, 101)};
    for (const char* l : {"0", "1-", "1+", "2-", "2+", "3-", "3+", "4-"}) s.outputs.push_back(std::string("energy:") + l);
    parts.emplace_back(std::string(to_string(m)) + "_", run_sweep(s));
  }
  return wide_join(parts, 1);
}

ResultTable fig3(const RecipeOptions& o) {
  SweepSpec s = base_spec(SweepModel::qrm, o);
  s.pump_ratio = 1e-3;
  s.axis1 = eta_log(61);
  s.outputs = {"g2", "g2_diag", "g2_single", "g2_xdot", "g2_xddot"};
  return run_sweep(s);
}

ResultTable fig4b(const RecipeOptions& o) {
  std::vector<std::pair<std::string, ResultTable>> parts;
  for (const SweepModel m : {SweepModel::qrm, SweepModel::jcm}) {
    SweepSpec s = base_spec(m, o);
    s.pump_ratio = 1e-3;
    s.axis1 = eta_log(61);
    s.outputs = {"strength:x_sigma_dag:0:3-", "pop:0", "pop:1-", "pop:1+", "pop:2-", "pop:2+", "pop:3-"};
    parts.emplace_back(std::string(to_string(m)) + "_", run_sweep(s));
  }
  return wide_join(parts, 1);
}

ResultTable fig4c(const RecipeOptions& o) {
  SweepSpec s = base_spec(SweepModel::qrm, o);
  s.axis1 = Axis{"eta", GridSpec::list({1e-3, 5e-3, 1e-2, 5e-2, 0.1, 0.5, 1.0})};
  s.axis2 = Axis{"pump_ratio", GridSpec::logarithmic(1e-6, 10.0, 29)};
  s.outputs = {"pop:3-"};
  return run_sweep(s);
}

ResultTable fig6(const RecipeOptions& o) {
  std::vector<std::pair<std::string, ResultTable>> parts;
  for (const SweepModel m : {SweepModel::qrm, SweepModel::jcm}) {
    SweepSpec s = base_spec(m, o);
    s.axis1 = Axis{"pump_ratio", GridSpec::logarithmic(1e-6, 10.0, 29)};
    s.axis2 = eta_log(31);
    s.outputs = {"g2"};
    parts.emplace_back(std::string(to_string(m)) + "_", run_sweep(s));
  }
  return wide_join(parts, 2);
}

ResultTable fig7(const RecipeOptions& o) {
  std::vector<std::pair<std::string, ResultTable>> parts;
  for (const ThermalMode mode : {ThermalMode::gibbs, ThermalMode::bose_weights}) {
    SweepSpec s = base_spec(SweepModel::thermal, o);
    s.thermal_mode = mode;
    s.axis1 = Axis{"T", GridSpec::linear(750.0, 3000.0, 19)};
    s.axis2 = eta_log(31);
    s.outputs = {"g2"};
    parts.emplace_back(mode == ThermalMode::gibbs ? "gibbs_" : "bose_", run_sweep(s));
  }
  return wide_join(parts, 2);
}

ResultTable fig8(const RecipeOptions& o) {
  const std::vector<double> etas = {1e-3, 0.1, 0.25, 1.0};
  constexpr int k = 6;
  std::vector<std::optional<DMElementMap>> maps(etas.size());
  std::vector<std::string> errors(etas.size());
  std::vector<double> residuals(etas.size(), 0.0);
  parallel_for(etas.size(), o.jobs, [&](std::size_t i) {
    SystemParams p;
    p.eta = etas[i];
    p.n_fock = o.n_fock;
    p.Gamma = 1e-3 * p.gamma;
    try {
      Solution sol(Model::qrm, p);
      maps[i] = dm_element_map(sol.steady_state(), sol.labeled(), k);
      residuals[i] = sol.steady_state().residual;
    } catch (const Error& e) {
      errors[i] = to_string(e.code());
    }
  });
  ResultTable t;
  t.columns = {"eta", "mu", "nu", "re", "im", "abs"};
  for (std::size_t i = 0; i < etas.size(); ++i) {
    for (int mu = 0; mu < k; ++mu) {
      for (int nu = 0; nu < k; ++nu) {
        const Complex v = maps[i] ? maps[i]->values(mu, nu) : Complex(kNaN, kNaN);
        t.append({etas[i], double(mu), double(nu), v.real(), v.imag(), std::abs(v)}, errors[i]);
      }
    }
  }
  SystemParams p;
  p.n_fock = o.n_fock;
  p.Gamma = 1e-3 * p.gamma;
  t.add_meta("model", "qrm");
  t.add_meta("params", describe_params(p) + " (eta per row)");
  t.add_meta("labels", "0 1- 1+ 2- 2+ 3-");
  t.add_meta("max_residual", format_double(*std::max_element(residuals.begin(), residuals.end())));
  return t;
}

struct SpectrumCurve {
  Spectrum s;
  std::string error;
};

SpectrumCurve solve_spectrum(Model model, const SystemParams& p, const std::vector<double>& omegas) {
  try {
    Solution sol(model, p);
    return {sol.spectrum(omegas), {}};
  } catch (const Error& e) {
    return {{}, to_string(e.code())};
  }
}

ResultTable fig5(const RecipeOptions& o) {
  const std::vector<double> etas = GridSpec::linear(0.1, 0.7, 31).points();
  const std::vector<double> xs = GridSpec::linear(-2.0, 2.0, 2001).points();
  std::vector<SpectrumCurve> curves(etas.size());
  parallel_for(etas.size(), o.jobs, [&](std::size_t i) {
    SystemParams p;
    p.eta = etas[i];
    p.n_fock = o.n_fock;
    p.Gamma = 1e-3 * p.gamma;
    std::vector<double> omegas;
    for (const double x : xs) omegas.push_back(1.0 + etas[i] * x);
    curves[i] = solve_spectrum(Model::qrm, p, omegas);
  });
  ResultTable t;
  t.columns = {"eta", "x", "omega", "S"};
  for (std::size_t i = 0; i < etas.size(); ++i) {
    for (std::size_t j = 0; j < xs.size(); ++j) {
      const double s = curves[i].error.empty() ? curves[i].s.values[j] : kNaN;
      t.append({etas[i], xs[j], 1.0 + etas[i] * xs[j], s}, curves[i].error);
    }
  }
  SystemParams p;
  p.n_fock = o.n_fock;
  p.Gamma = 1e-3 * p.gamma;
  t.add_meta("model", "qrm");
  t.add_meta("params", describe_params(p) + " (eta per block)");
  t.add_meta("normalization", "max per eta");
  return t;
}

ResultTable fig9(const RecipeOptions& o) {
  const std::vector<double> ratios = {1e-3, 1e-6};
  const std::vector<double> etas = {1e-3, 1e-2, 0.1};
  const std::vector<double> omegas = GridSpec::linear(0.8, 1.2, 2001).points();
  const std::size_t n = ratios.size() * etas.size();
  std::vector<SpectrumCurve> qrm(n), jcm(n);
  parallel_for(2 * n, o.jobs, [&](std::size_t job) {
    const std::size_t i = job % n;
    SystemParams p;
    p.eta = etas[i % etas.size()];
    p.n_fock = o.n_fock;
    p.Gamma = ratios[i / etas.size()] * p.gamma;
    (job < n ? qrm[i] : jcm[i]) = solve_spectrum(job < n ? Model::qrm : Model::jcm, p, omegas);
  });
  ResultTable t;
  t.columns = {"pump_ratio", "eta", "omega", "S_qrm", "S_jcm"};
  for (std::size_t i = 0; i < n; ++i) {
    std::string error;
    if (!qrm[i].error.empty()) error = "qrm_" + qrm[i].error;
    if (!jcm[i].error.empty()) error += (error.empty() ? "jcm_" : ";jcm_") + jcm[i].error;
    for (std::size_t j = 0; j < omegas.size(); ++j) {
      t.append({ratios[i / etas.size()], etas[i % etas.size()], omegas[j],
                qrm[i].error.empty() ? qrm[i].s.values[j] : kNaN, jcm[i].error.empty() ? jcm[i].s.values[j] : kNaN},
               error);
    }
  }
  SystemParams p;
  p.n_fock = o.n_fock;
  t.add_meta("params", describe_params(p) + " (eta, Gamma per block)");
  t.add_meta("normalization", "max per curve");
  return t;
}

}  // namespace

std::vector<std::string> recipe_names() {
  std::vector<std::string> out;
  for (const auto& r : kRecipes) out.emplace_back(r.name);
  return out;
}

std::string recipe_layout(std::string_view name) {
  for (const auto& r : kRecipes) {
    if (r.name == name) return std::string(r.layout);
  }
  throw Error(ErrorCode::invalid_spec, "unknown recipe '" + std::string(name) + "'");
}

ResultTable run_recipe(std::string_view name, const RecipeOptions& options) {
  const std::string layout = recipe_layout(name);
  if (options.jobs < 1) throw Error(ErrorCode::invalid_spec, "jobs must be at least 1");
  HilbertDims::make(options.n_fock);
  static const std::map<std::string_view, ResultTable (*)(const RecipeOptions&)> table = {
      {"fig1b", fig1b}, {"fig2", fig2}, {"fig3", fig3}, {"fig4b", fig4b}, {"fig4c", fig4c},
      {"fig5", fig5},   {"fig6", fig6}, {"fig7", fig7}, {"fig8", fig8},   {"fig9", fig9},
  };
  ResultTable t = table.at(name)(options);
  t.metadata.erase(std::remove_if(t.metadata.begin(), t.metadata.end(), [](const auto& m) { return m.first == "tool"; }),
                   t.metadata.end());
  t.metadata.insert(t.metadata.begin(), {{"tool", std::string("rabistat ") + RABISTAT_VERSION},
                                         {"recipe", std::string(name)},
                                         {"layout", layout}});
  return t;
}

}  // namespace rabistat
