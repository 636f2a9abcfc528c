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

#include "rabistat/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rabistat/error.hpp"

namespace rabistat {

namespace {

void require_same_frame(const DensityMatrix& rho, const Operator& x) {
  if (!(rho.dims == x.dims) || rho.frame != x.frame) {
    throw Error(ErrorCode::dimension_mismatch, "operator and state do not share a space and frame");
  }
}

Operator in_energy_frame(const Operator& x, const EigenSystem& es) {
  return x.frame == Frame::energy ? x : es.to_energy(x);
}

// Solves (z - H) y = rhs for upper Hessenberg H with adjacent-row pivoting.
Vector solve_shifted_hessenberg(const Matrix& h, Complex z, const Vector& rhs) {
  const Eigen::Index n = h.rows();
  Matrix m = -h;
  m.diagonal().array() += z;
  Vector b = rhs;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (std::abs(m(k + 1, k)) > std::abs(m(k, k))) {
      m.row(k).tail(n - k).swap(m.row(k + 1).tail(n - k));
      std::swap(b(k), b(k + 1));
    }
    if (m(k + 1, k) == Complex(0.0)) continue;
    const Complex factor = m(k + 1, k) / m(k, k);
    m.row(k + 1).tail(n - k) -= factor * m.row(k).tail(n - k);
    b(k + 1) -= factor * b(k);
  }
  return m.triangularView<Eigen::Upper>().solve(b);
}

}  // namespace

EmissionMoments emission_moments(const DensityMatrix& rho, const Operator& x) {
  require_same_frame(rho, x);
  const Matrix xx = x.data * x.data;
  const Matrix xr = x.data * rho.data;
  EmissionMoments m;
  m.n1 = (x.data.adjoint() * xr).trace().real();
  m.n2 = (xx.adjoint() * (xx * rho.data)).trace().real();
  return m;
}

double g2_zero(const DensityMatrix& rho, const Operator& x) {
  const EmissionMoments m = emission_moments(rho, x);
  if (!(m.n1 > 1e-300)) throw Error(ErrorCode::no_emission, "<X^dag X> vanishes");
  return m.n2 / (m.n1 * m.n1);
}

double PopulationTable::at(const PolaritonLabel& label) const {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw Error(ErrorCode::unknown_label, "no population for label " + label.str());
  return values[it - labels.begin()];
}

double PopulationTable::total() const { return std::accumulate(values.begin(), values.end(), 0.0); }

PopulationTable populations(const DensityMatrix& rho, const EigenSystem& es, double Gamma) {
  if (!es.labeled()) throw Error(ErrorCode::missing_labels, "populations need a labeled eigensystem");
  const DensityMatrix re = es.to_energy(rho);
  PopulationTable t;
  t.labels = es.labels;
  t.values.resize(es.size());
  for (int k = 0; k < es.size(); ++k) t.values[k] = re.data(k, k).real();
  t.eta = es.eta;
  t.Gamma = Gamma;
  return t;
}

std::vector<PolaritonLabel> canonical_labels(int count) {
  std::vector<PolaritonLabel> out;
  for (int rank = 0; rank < count; ++rank) {
    out.push_back(rank == 0 ? PolaritonLabel::ground()
                            : PolaritonLabel::branch((rank + 1) / 2, rank % 2 == 1 ? '-' : '+'));
  }
  return out;
}

DMElementMap dm_element_map(const DensityMatrix& rho, const EigenSystem& es, int k) {
  if (!es.labeled()) throw Error(ErrorCode::missing_labels, "element map needs a labeled eigensystem");
  if (k < 1 || k > es.size()) throw Error(ErrorCode::invalid_parameter, "element map size out of range");
  const DensityMatrix re = es.to_energy(rho);
  DMElementMap map{canonical_labels(k), Matrix(k, k)};
  std::vector<int> idx;
  for (const auto& l : map.labels) idx.push_back(es.index_of(l));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) map.values(i, j) = re.data(idx[i], idx[j]);
  }
  return map;
}

std::vector<PolaritonLabel> default_diagonal_truncation() { return canonical_labels(6); }

double g2_diagonal(const PopulationTable& pops, const Operator& x, const EigenSystem& es,
                   const std::optional<std::vector<PolaritonLabel>>& truncation) {
  if (truncation && truncation->empty()) throw Error(ErrorCode::empty_truncation, "diagonal g2 truncation is empty");
  const Operator xe = in_energy_frame(x, es);
  const Matrix xx = xe.data * xe.data;
  double den = 0.0;
  for (int nu = 0; nu < es.size(); ++nu) den += pops.at(es.labels[nu]) * xe.data.col(nu).squaredNorm();
  double num = 0.0;
  if (truncation) {
    for (const auto& label : *truncation) num += pops.at(label) * xx.col(es.index_of(label)).squaredNorm();
  } else {
    for (int nu = 0; nu < es.size(); ++nu) num += pops.at(es.labels[nu]) * xx.col(nu).squaredNorm();
  }
  if (!(den > 1e-300)) throw Error(ErrorCode::no_emission, "diagonal g2 denominator vanishes");
  return num / (den * den);
}

double g2_single_pathway(const PopulationTable& pops, const Operator& x, const EigenSystem& es) {
  const auto upper = PolaritonLabel::branch(3, '-');
  const auto lower = PolaritonLabel::branch(1, '-');
  if (!es.labeled() || std::find(es.labels.begin(), es.labels.end(), upper) == es.labels.end() ||
      std::find(es.labels.begin(), es.labels.end(), lower) == es.labels.end()) {
    throw Error(ErrorCode::missing_labels, "single-pathway g2 needs states 3- and 1-");
  }
  const Operator xe = in_energy_frame(x, es);
  const Matrix xx = xe.data * xe.data;
  double den = 0.0;
  for (int nu = 0; nu < es.size(); ++nu) den += pops.at(es.labels[nu]) * xe.data.col(nu).squaredNorm();
  if (!(den > 1e-300)) throw Error(ErrorCode::no_emission, "single-pathway g2 denominator vanishes");
  const double num = pops.at(upper) * std::norm(xx(es.index_of(lower), es.index_of(upper)));
  return num / (den * den);
}

Spectrum emission_spectrum(const SuperOperator& l, const Operator& x, const DensityMatrix& rho,
                           std::span<const double> omegas) {
  require_same_frame(rho, x);
  if (!(l.dims == x.dims) || l.frame != x.frame) {
    throw Error(ErrorCode::dimension_mismatch, "spectrum: operator does not match the Liouvillian space");
  }
  const Operator xd = x.adjoint();
  const Vector source = vec(x.data * rho.data);
  const Eigen::RowVectorXcd f = vec(xd.data.transpose()).transpose();

  Spectrum s;
  s.omegas.assign(omegas.begin(), omegas.end());
  s.values.resize(omegas.size());

  const ModeDecomposition modes = decompose(l);
  if (modes.condition <= kDefectiveCondition) {
    const Vector p = (f * modes.right).transpose().cwiseProduct(modes.right_inverse * source);
    for (std::size_t k = 0; k < omegas.size(); ++k) {
      const Complex z(0.0, omegas[k]);
      Complex acc = 0.0;
      for (Eigen::Index m = 0; m < p.size(); ++m) {
        if (m == modes.zero_mode) continue;
        acc += p(m) / (z - modes.lambda(m));
      }
      s.values[k] = 2.0 * acc.real();
    }
    s.path = CorrelatorPath::eigen;
  } else {
    // Resolvent through one Hessenberg reduction; DC part <X^dag><X>/(i w) removed.
    Eigen::HessenbergDecomposition<Matrix> hess(l.data);
    const Matrix q = hess.matrixQ();
    const Matrix h = hess.matrixH();
    const Vector qs = q.adjoint() * source;
    const Eigen::RowVectorXcd fq = f * q;
    const Complex dc = (xd.data * rho.data).trace() * (x.data * rho.data).trace();
    for (std::size_t k = 0; k < omegas.size(); ++k) {
      const Complex z(0.0, omegas[k]);
      Complex acc = (fq * solve_shifted_hessenberg(h, z, qs))(0);
      if (omegas[k] != 0.0) acc -= dc / z;
      s.values[k] = 2.0 * acc.real();
    }
    s.path = CorrelatorPath::resolvent;
  }

  if (s.values.empty()) return s;
  const auto [lo, hi] = std::minmax_element(s.values.begin(), s.values.end());
  s.peak_raw = *hi;
  if (!(s.peak_raw > 0.0)) throw Error(ErrorCode::no_emission, "emission spectrum has no positive weight");
  s.min_relative = *lo / s.peak_raw;
  for (double& v : s.values) v = std::max(0.0, v / s.peak_raw);
  return s;
}

Spectrum emission_spectrum(const SuperOperator& l, const DressedOperators& d, const DensityMatrix& rho,
                           std::span<const double> omegas) {
  return emission_spectrum(l, d.x_a, rho, omegas);
}

std::vector<Peak> find_peaks(const Spectrum& s, double min_height) {
  std::vector<Peak> peaks;
  const auto& v = s.values;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i] > v[i - 1] && v[i] >= v[i + 1] && v[i] >= min_height) peaks.push_back({i, s.omegas[i], v[i]});
  }
  return peaks;
}

}  // namespace rabistat
