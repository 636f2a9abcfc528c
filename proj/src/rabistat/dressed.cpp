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

#include "rabistat/dressed.hpp"

#include <cmath>

#include "rabistat/error.hpp"

namespace rabistat {

Operator dress_positive_frequency(const Operator& op, const EigenSystem& es, GapWeight weight) {
  const Operator oe = op.frame == Frame::energy ? op : es.to_energy(op);
  if (!(oe.dims == es.dims)) throw Error(ErrorCode::dimension_mismatch, "dressing: dimension mismatch");
  const int d = es.size();
  Matrix x = Matrix::Zero(d, d);
  for (int nu = 0; nu < d; ++nu) {
    for (int mu = 0; mu < d; ++mu) {
      const double gap = es.energies(nu) - es.energies(mu);
      if (gap <= kDressingGapTolerance) continue;
      Complex w = 1.0;
      if (weight == GapWeight::gap) w = -kI * gap;
      if (weight == GapWeight::gap_squared) w = -gap * gap;
      x(mu, nu) = w * oe.data(mu, nu);
    }
  }
  return {es.dims, std::move(x), Frame::energy};
}

DressedOperators dress(EigenSystemPtr es) {
  if (!es) throw Error(ErrorCode::invalid_parameter, "dressing needs an eigensystem");
  const auto ops = bare_operators(es->dims);
  const Operator quadrature = kI * (ops.a.adjoint() - ops.a);
  const Operator dipole = ops.sigma.adjoint() + ops.sigma;
  const Operator qe = es->to_energy(quadrature);
  DressedOperators out{es,
                       dress_positive_frequency(qe, *es, GapWeight::one),
                       dress_positive_frequency(dipole, *es, GapWeight::one),
                       dress_positive_frequency(qe, *es, GapWeight::gap),
                       dress_positive_frequency(qe, *es, GapWeight::gap_squared)};
  return out;
}

double transition_strength(const Operator& x, const PolaritonLabel& from, const PolaritonLabel& to,
                           const EigenSystem& es, Direction direction) {
  const Operator xe = x.frame == Frame::energy ? x : es.to_energy(x);
  const int i = es.index_of(from);
  const int j = es.index_of(to);
  const Complex element = direction == Direction::forward ? xe.data(j, i) : std::conj(xe.data(i, j));
  return std::norm(element);
}

}  // namespace rabistat
