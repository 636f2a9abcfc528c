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

// Command-line front end. Talks to the library only through rabistat.h.

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rabistat.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

// Carries a library status out to main().
struct Failure {
  rabi_status status;
  std::string message;
};

void check(rabi_status s) {
  if (s != RABI_OK) throw Failure{s, rabi_last_error()};
}

struct TableDeleter {
  void operator()(rabi_table* t) const { rabi_table_destroy(t); }
};
struct SystemDeleter {
  void operator()(rabi_system* s) const { rabi_system_destroy(s); }
};
using TablePtr = std::unique_ptr<rabi_table, TableDeleter>;
using SystemPtr = std::unique_ptr<rabi_system, SystemDeleter>;

std::string num(double v) {
  if (v != v) return "nan";
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, end) : "nan";
}

struct PointOptions {
  std::string model = "qrm";
  double eta = 0.0;
  std::optional<double> pump_ratio;
  std::optional<double> Gamma;
  std::optional<double> kappa;
  std::optional<double> gamma;
  int n_fock = 10;

  rabi_params params() const {
    rabi_params p;
    rabi_params_default(&p);
    p.eta = eta;
    p.n_fock = n_fock;
    if (kappa) p.kappa = *kappa;
    if (gamma) p.gamma = *gamma;
    if (Gamma) p.Gamma = *Gamma;
    if (pump_ratio) p.Gamma = *pump_ratio * p.gamma;
    return p;
  }

  rabi_model model_id() const {
    if (model == "qrm") return RABI_MODEL_QRM;
    if (model == "jcm") return RABI_MODEL_JCM;
    throw Failure{RABI_ERR_INVALID_PARAMETER, "unknown model '" + model + "'"};
  }

  std::string describe() const {
    const rabi_params p = params();
    return "model=" + model + " omega0=" + num(p.omega0) + " eta=" + num(p.eta) + " kappa=" + num(p.kappa) +
           " gamma=" + num(p.gamma) + " Gamma=" + num(p.Gamma) + " n_fock=" + std::to_string(p.n_fock);
  }
};

void add_point_options(CLI::App* cmd, PointOptions& o, bool with_model = true) {
  if (with_model) cmd->add_option("--model", o.model, "qrm or jcm")->check(CLI::IsMember({"qrm", "jcm"}));
  cmd->add_option("--eta", o.eta, "coupling g/omega0");
  cmd->add_option("--pump-ratio", o.pump_ratio, "Gamma/gamma");
  cmd->add_option("--Gamma", o.Gamma, "pump rate (omega0 units)");
  cmd->add_option("--kappa", o.kappa, "cavity loss");
  cmd->add_option("--gamma", o.gamma, "TLS decay");
  cmd->add_option("--n-fock", o.n_fock, "cavity truncation");
}

// Text output for label-keyed results that do not fit a numeric table.
class TextOut {
 public:
  explicit TextOut(const std::string& path) : path_(path) {}
  std::ostringstream& buf() { return buf_; }
  void flush() {
    if (path_ == "-") {
      std::cout << buf_.str();
      return;
    }
    std::ofstream f(path_, std::ios::binary | std::ios::trunc);
    if (!f || !(f << buf_.str())) throw Failure{RABI_ERR_IO, "cannot write '" + path_ + "'"};
  }

 private:
  std::string path_;
  std::ostringstream buf_;
};

SystemPtr make_system(const PointOptions& o) {
  const rabi_params p = o.params();
  rabi_system* raw = nullptr;
  check(rabi_system_create(o.model_id(), &p, &raw));
  return SystemPtr(raw);
}

TablePtr make_table(const std::vector<std::string>& columns) {
  std::vector<const char*> names;
  for (const auto& c : columns) names.push_back(c.c_str());
  rabi_table* raw = nullptr;
  check(rabi_table_create(names.data(), names.size(), &raw));
  return TablePtr(raw);
}

void meta(rabi_table* t, const std::string& k, const std::string& v) { check(rabi_table_add_meta(t, k.c_str(), v.c_str())); }

void write(const TablePtr& t, const std::string& out) { check(rabi_table_write_csv(t.get(), out.c_str())); }

// Records a failure in the row instead of aborting.
double attempt(rabi_status s, double value, std::string& error) {
  if (s == RABI_OK) return value;
  if (error.empty()) error = rabi_status_name(s);
  return std::numeric_limits<double>::quiet_NaN();
}

template <class F>
double attempt(F&& query, std::string& error) {
  double v = 0.0;
  const rabi_status s = query(&v);
  return attempt(s, v, error);
}

void cmd_eigen(const PointOptions& o, int states, const std::string& out) {
  auto sys = make_system(o);
  int d = 0;
  check(rabi_system_dimension(sys.get(), &d));
  if (states > 0 && states < d) d = states;
  TextOut text(out);
  text.buf() << "# params: " << o.describe() << "\nindex,label,energy\n";
  for (int i = 0; i < d; ++i) {
    double e = 0.0;
    char label[16];
    check(rabi_system_state(sys.get(), i, &e, label, sizeof label));
    text.buf() << i << ',' << label << ',' << num(e) << '\n';
  }
  text.flush();
}

void cmd_steady(const PointOptions& o, const std::string& out) {
  auto sys = make_system(o);
  double residual = 0, norm = 0, min_eig = 0, trace = 0, g2 = 0, n = 0;
  check(rabi_system_steady_info(sys.get(), &residual, &norm, &min_eig, &trace));
  std::string error;
  const rabi_status s = rabi_system_g2(sys.get(), RABI_DETECTOR_X, &g2, &n);
  g2 = attempt(s, g2, error);
  n = attempt(s, n, error);
  auto t = make_table({"residual", "residual_rel", "min_eig", "trace", "n_photon", "g2"});
  meta(t.get(), "params", o.describe());
  const double row[] = {residual, residual / norm, min_eig, trace, n, g2};
  check(rabi_table_append(t.get(), row, 6, error.c_str()));
  write(t, out);
}

void cmd_g2(const PointOptions& o, bool all, const std::string& out) {
  auto sys = make_system(o);
  std::vector<std::string> cols = {"g2", "n_photon"};
  std::vector<double> row;
  std::string error;
  double g2 = 0, n = 0;
  const rabi_status s = rabi_system_g2(sys.get(), RABI_DETECTOR_X, &g2, &n);
  if (s != RABI_OK && !all) check(s);
  row.push_back(attempt(s, g2, error));
  row.push_back(attempt(s, n, error));
  if (all) {
    cols.push_back("g2_diag");
    row.push_back(attempt([&](double* v) { return rabi_system_g2_diagonal(sys.get(), 1, v); }, error));
    cols.push_back("g2_diag_full");
    row.push_back(attempt([&](double* v) { return rabi_system_g2_diagonal(sys.get(), 0, v); }, error));
    cols.push_back("g2_single");
    row.push_back(attempt([&](double* v) { return rabi_system_g2_single_pathway(sys.get(), v); }, error));
    if (o.model == "qrm") {
      cols.push_back("g2_xdot");
      row.push_back(attempt([&](double* v) { return rabi_system_g2(sys.get(), RABI_DETECTOR_XDOT, v, nullptr); }, error));
      cols.push_back("g2_xddot");
      row.push_back(attempt([&](double* v) { return rabi_system_g2(sys.get(), RABI_DETECTOR_XDDOT, v, nullptr); }, error));
    }
  }
  auto t = make_table(cols);
  meta(t.get(), "params", o.describe());
  check(rabi_table_append(t.get(), row.data(), row.size(), error.c_str()));
  write(t, out);
}

void cmd_spectrum(const PointOptions& o, double lo, double hi, int points, const std::string& out) {
  if (points < 2 || !(hi > lo)) throw Failure{RABI_ERR_INVALID_SPEC, "spectrum needs points >= 2 and max > min"};
  auto sys = make_system(o);
  std::vector<double> omegas(points), values(points);
  for (int i = 0; i < points; ++i) omegas[i] = i == points - 1 ? hi : lo + (hi - lo) * i / (points - 1);
  const char* path = nullptr;
  check(rabi_system_spectrum(sys.get(), omegas.data(), omegas.size(), values.data(), &path));
  auto t = make_table({"omega", "S"});
  meta(t.get(), "params", o.describe());
  meta(t.get(), "path", path ? path : "");
  meta(t.get(), "normalization", "max");
  for (int i = 0; i < points; ++i) {
    const double row[] = {omegas[i], values[i]};
    check(rabi_table_append(t.get(), row, 2, nullptr));
  }
  write(t, out);
}

void cmd_populations(const PointOptions& o, const std::string& out) {
  auto sys = make_system(o);
  int d = 0;
  check(rabi_system_dimension(sys.get(), &d));
  TextOut text(out);
  text.buf() << "# params: " << o.describe() << "\nlabel,energy,population\n";
  for (int i = 0; i < d; ++i) {
    double e = 0.0, r = 0.0;
    char label[16];
    check(rabi_system_state(sys.get(), i, &e, label, sizeof label));
    check(rabi_system_population(sys.get(), label, &r));
    text.buf() << label << ',' << num(e) << ',' << num(r) << '\n';
  }
  text.flush();
}

void cmd_dmmap(const PointOptions& o, int k, const std::string& out) {
  static const char* const order[] = {"0", "1-", "1+", "2-", "2+", "3-", "3+", "4-", "4+", "5-", "5+"};
  if (k < 1 || k > 11) throw Failure{RABI_ERR_INVALID_SPEC, "--k must be between 1 and 11"};
  auto sys = make_system(o);
  TextOut text(out);
  text.buf() << "# params: " << o.describe() << "\nmu,nu,re,im,abs\n";
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      double re = 0, im = 0;
      check(rabi_system_dm_element(sys.get(), order[i], order[j], &re, &im));
      text.buf() << order[i] << ',' << order[j] << ',' << num(re) << ',' << num(im) << ',' << num(std::hypot(re, im))
                 << '\n';
    }
  }
  text.flush();
}

void cmd_thermal(const PointOptions& o, const std::vector<double>& temps, const std::string& mode,
                 const std::string& out) {
  const rabi_params p = o.params();
  auto t = make_table({"T", "eta", "g2"});
  meta(t.get(), "params", o.describe());
  meta(t.get(), "mode", mode);
  for (const double temp : temps) {
    std::string error;
    const double g2 = attempt([&](double* v) { return rabi_thermal_g2(&p, temp, mode.c_str(), v); }, error);
    const double row[] = {temp, p.eta, g2};
    check(rabi_table_append(t.get(), row, 3, error.c_str()));
  }
  write(t, out);
}

void cmd_jcm_analytic(const PointOptions& o, const std::string& out) {
  const rabi_params p = o.params();
  double m[8], g2 = 0, n1 = 0, n2 = 0, c = 0;
  int outside = 0;
  check(rabi_jcm_analytic(&p, m, &g2, &outside, &n1, &n2, &c));
  auto t = make_table({"n_photon", "n_sigma", "n2", "g2", "n_approx", "n2_approx", "cooperativity", "outside_validity"});
  meta(t.get(), "params", o.describe());
  const double row[] = {m[0], m[1], m[7], g2, n1, n2, c, double(outside)};
  check(rabi_table_append(t.get(), row, 8, outside ? "outside-validity" : ""));
  write(t, out);
}

void cmd_converge(const PointOptions& o, const std::string& observable, int extra, const std::string& out) {
  const rabi_params p = o.params();
  double base = 0, ext = 0, rel = 0;
  int ok = 0;
  check(rabi_converge(o.model_id(), &p, observable.c_str(), extra, &base, &ext, &rel, &ok));
  auto t = make_table({"n_fock", "n_fock_extended", "base", "extended", "relative_change", "converged"});
  meta(t.get(), "params", o.describe());
  meta(t.get(), "observable", observable);
  meta(t.get(), "tolerance", "0.01");
  const double row[] = {double(p.n_fock), double(p.n_fock + extra), base, ext, rel, double(ok)};
  check(rabi_table_append(t.get(), row, 6, ok ? "" : "not-converged"));
  write(t, out);
}

void cmd_sweep(const std::string& config, std::vector<std::string> overrides, int jobs, const std::string& out) {
  std::string text;
  if (!config.empty()) {
    std::ifstream in(config);
    if (!in) throw Failure{RABI_ERR_IO, "cannot read config '" + config + "'"};
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  std::vector<const char*> raw;
  for (const auto& s : overrides) raw.push_back(s.c_str());
  rabi_table* t = nullptr;
  check(rabi_sweep_run(text.c_str(), raw.data(), raw.size(), jobs, &t));
  TablePtr owned(t);
  write(owned, out);
}

void cmd_recipe(const std::string& name, int jobs, int n_fock, const std::string& out) {
  if (name == "list") {
    size_t n = 0;
    check(rabi_recipe_count(&n));
    for (size_t i = 0; i < n; ++i) {
      const char* r = nullptr;
      check(rabi_recipe_name(i, &r));
      std::cout << r << '\n';
    }
    return;
  }
  rabi_table* t = nullptr;
  check(rabi_recipe_run(name.c_str(), jobs, n_fock, &t));
  TablePtr owned(t);
  write(owned, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photon statistics of an incoherently pumped emitter in a lossy cavity (Rabi and Jaynes-Cummings)"};
  app.set_version_flag("--version", std::string(rabi_version()));
  app.require_subcommand(1);

  std::string out = "-";
  int jobs = 1;
  PointOptions point;

  auto* eigen = app.add_subcommand("eigen", "eigenenergies and polariton labels");
  int states = 0;
  add_point_options(eigen, point);
  eigen->add_option("--states", states, "number of states to list (default all)");

  auto* steady = app.add_subcommand("steady", "steady-state diagnostics");
  add_point_options(steady, point);

  auto* g2 = app.add_subcommand("g2", "zero-delay intensity correlation");
  bool all = false;
  add_point_options(g2, point);
  g2->add_flag("--all", all, "also diagonal, single-pathway and derivative-detector variants");

  auto* spectrum = app.add_subcommand("spectrum", "one-photon emission spectrum");
  double omega_min = 0.8, omega_max = 1.2;
  int points = 2001;
  add_point_options(spectrum, point);
  spectrum->add_option("--omega-min", omega_min);
  spectrum->add_option("--omega-max", omega_max);
  spectrum->add_option("--points", points);

  auto* pops = app.add_subcommand("populations", "steady-state populations of the eigenstates");
  add_point_options(pops, point);

  auto* dmmap = app.add_subcommand("dmmap", "steady-state density matrix in the labeled eigenbasis");
  int k = 6;
  add_point_options(dmmap, point);
  dmmap->add_option("--k", k, "number of labeled states");

  auto* sweep = app.add_subcommand("sweep", "parameter sweep from a config file");
  std::string config;
  std::vector<std::string> overrides;
  sweep->add_option("--config", config, "key=value config file")->check(CLI::ExistingFile);
  sweep->add_option("--set", overrides, "override, e.g. params.eta=0.3 or axis1.count=11");
  std::optional<std::string> sweep_model;
  std::optional<double> sweep_eta, sweep_ratio;
  std::optional<int> sweep_n_fock;
  sweep->add_option("--model", sweep_model, "qrm, jcm, jcm_analytic or thermal");
  sweep->add_option("--eta", sweep_eta);
  sweep->add_option("--pump-ratio", sweep_ratio);
  sweep->add_option("--n-fock", sweep_n_fock);

  auto* thermal = app.add_subcommand("thermal", "g2 of a thermal mixture of Rabi eigenstates");
  std::vector<double> temps = {1500.0};
  std::string mode = "gibbs";
  add_point_options(thermal, point, false);
  thermal->add_option("--T", temps, "temperatures in Kelvin");
  thermal->add_option("--mode", mode)->check(CLI::IsMember({"gibbs", "bose_weights"}));

  auto* analytic = app.add_subcommand("jcm-analytic", "weak-pump moment hierarchy of the JCM");
  add_point_options(analytic, point, false);

  auto* converge = app.add_subcommand("converge", "truncation convergence check");
  std::string observable = "g2";
  int extra = 4;
  add_point_options(converge, point);
  converge->add_option("--observable", observable);
  converge->add_option("--extra", extra, "additional Fock states");

  auto* recipe = app.add_subcommand("recipe", "reproduce a figure as CSV ('list' to enumerate)");
  std::string recipe_name;
  int recipe_n_fock = 10;
  recipe->add_option("name", recipe_name)->required();
  recipe->add_option("--n-fock", recipe_n_fock);

  for (auto* cmd : app.get_subcommands({})) {
    cmd->add_option("--out", out, "output path, '-' for stdout");
    cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*eigen) cmd_eigen(point, states, out);
    else if (*steady) cmd_steady(point, out);
    else if (*g2) cmd_g2(point, all, out);
    else if (*spectrum) cmd_spectrum(point, omega_min, omega_max, points, out);
    else if (*pops) cmd_populations(point, out);
    else if (*dmmap) cmd_dmmap(point, k, out);
    else if (*thermal) cmd_thermal(point, temps, mode, out);
    else if (*analytic) cmd_jcm_analytic(point, out);
    else if (*converge) cmd_converge(point, observable, extra, out);
    else if (*recipe) cmd_recipe(recipe_name, jobs, recipe_n_fock, out);
    else if (*sweep) {
      if (sweep_model) overrides.push_back("model=" + *sweep_model);
      if (sweep_eta) overrides.push_back("params.eta=" + num(*sweep_eta));
      if (sweep_ratio) overrides.push_back("params.pump_ratio=" + num(*sweep_ratio));
      if (sweep_n_fock) overrides.push_back("params.n_fock=" + std::to_string(*sweep_n_fock));
      cmd_sweep(config, overrides, jobs, out);
    }
  } catch (const Failure& f) {
    const std::string name = rabi_status_name(f.status);
    const bool named = f.message.compare(0, name.size(), name) == 0;
    std::cerr << "rabistat: " << (named ? "" : name + ": ") << f.message << '\n';
    return rabi_status_is_numerical(f.status) ? kExitNumerical : kExitUsage;
  }
  return 0;
}
