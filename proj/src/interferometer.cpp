// Copyright 2026 The bosim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "bosim/interferometer.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace bosim {

Unitary::Unitary(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 1) {
    throw std::invalid_argument("Unitary: matrix must be square and non-empty");
  }
}

Unitary Unitary::checked(ComplexMatrix matrix, double tolerance) {
  Unitary u(std::move(matrix));
  const double deviation = unitarity_deviation(u.matrix_);
  if (!(deviation <= tolerance)) {
    throw std::invalid_argument("Unitary: unitarity deviation " + std::to_string(deviation) +
                                " exceeds tolerance " + std::to_string(tolerance));
  }
  return u;
}

void CircuitLayout::validate() const {
  if (modes < 1) {
    throw std::invalid_argument("CircuitLayout: mode count must be >= 1");
  }
  for (const auto& element : elements) {
    if (const auto* c = std::get_if<Coupler>(&element)) {
      if (c->mode < 1 || c->mode + 1 > modes) {
        throw std::invalid_argument("CircuitLayout: coupler on modes (" + std::to_string(c->mode) +
                                    "," + std::to_string(c->mode + 1) + ") outside [1," +
                                    std::to_string(modes) + "]");
      }
      if (!(c->t2 >= 0.0 && c->t2 <= 1.0)) {
        throw std::invalid_argument("CircuitLayout: coupler transmittivity outside [0,1]");
      }
    } else {
      const auto& p = std::get<PhaseShift>(element);
      if (p.mode < 1 || p.mode > modes) {
        throw std::invalid_argument("CircuitLayout: phase on mode " + std::to_string(p.mode) +
                                    " outside [1," + std::to_string(modes) + "]");
      }
      if (!std::isfinite(p.phi)) {
        throw std::invalid_argument("CircuitLayout: non-finite phase");
      }
    }
  }
}

Unitary haar_random_unitary(int modes, std::uint64_t seed) {
  if (modes < 1) {
    throw std::invalid_argument("haar_random_unitary: mode count must be >= 1");
  }
  Rng rng(seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  ComplexMatrix z(modes, modes);
  for (int i = 0; i < modes; ++i) {
    for (int j = 0; j < modes; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      z(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (int j = 0; j < modes; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) {
      q.col(j) *= d / mag;
    }
  }
  return Unitary(std::move(q));
}

Unitary compile_layout(const CircuitLayout& layout) {
  layout.validate();
  ComplexMatrix u = ComplexMatrix::Identity(layout.modes, layout.modes);
  // Right-multiplying by each element mixes columns.
  for (const auto& element : layout.elements) {
    if (const auto* c = std::get_if<Coupler>(&element)) {
      const int a = c->mode - 1;
      const int b = c->mode;
      const double t = std::sqrt(c->t2);
      const Complex ir(0.0, std::sqrt(1.0 - c->t2));
      const Eigen::VectorXcd col_a = u.col(a);
      const Eigen::VectorXcd col_b = u.col(b);
      u.col(a) = t * col_a + ir * col_b;
      u.col(b) = ir * col_a + t * col_b;
    } else {
      const auto& p = std::get<PhaseShift>(element);
      u.col(p.mode - 1) *= std::polar(1.0, p.phi);
    }
  }
  return Unitary(std::move(u));
}

CircuitLayout random_chip_layout(int modes, int depth, std::uint64_t seed) {
  if (modes < 2) {
    throw std::invalid_argument("random_chip_layout: mode count must be >= 2");
  }
  if (depth < 1) {
    throw std::invalid_argument("random_chip_layout: depth must be >= 1");
  }
  Rng rng(seed);
  CircuitLayout layout;
  layout.modes = modes;
  for (int row = 0; row < depth; ++row) {
    for (int upper = 1 + row % 2; upper + 1 <= modes; upper += 2) {
      layout.elements.emplace_back(PhaseShift{upper, 2.0 * std::numbers::pi * uniform01(rng)});
      layout.elements.emplace_back(Coupler{upper, 0.5});
    }
  }
  return layout;
}

CircuitLayout random_chip_layout(int modes, std::uint64_t seed) {
  return random_chip_layout(modes, modes, seed);
}

CircuitLayout perturb_layout(const CircuitLayout& layout, const NoiseSpec& noise) {
  if (!(noise.sigma_t >= 0.0) || !(noise.sigma_phi >= 0.0)) {
    throw std::invalid_argument("perturb_layout: noise sigmas must be >= 0");
  }
  layout.validate();
  CircuitLayout out = layout;
  Rng rng(noise.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (auto& element : out.elements) {
    if (auto* c = std::get_if<Coupler>(&element)) {
      if (noise.sigma_t > 0.0) {
        c->t2 = std::clamp(c->t2 + noise.sigma_t * gauss(rng), 0.0, 1.0);
      }
    } else if (noise.sigma_phi > 0.0) {
      auto& p = std::get<PhaseShift>(element);
      double phi = std::fmod(p.phi + noise.sigma_phi * gauss(rng), two_pi);
      if (phi < 0.0) {
        phi += two_pi;
      }
      if (phi >= two_pi) {
        phi = 0.0;
      }
      p.phi = phi;
    }
  }
  return out;
}

double unitarity_deviation(const ComplexMatrix& matrix) {
  if (matrix.rows() != matrix.cols()) {
    throw std::invalid_argument("unitarity_deviation: matrix is not square");
  }
  const ComplexMatrix gram = matrix.adjoint() * matrix;
  return (gram - ComplexMatrix::Identity(matrix.rows(), matrix.cols())).cwiseAbs().maxCoeff();
}

ComplexMatrix submatrix(const Unitary& u, std::span<const int> input_modes,
                        std::span<const int> occupation) {
  const int m = u.modes();
  if (static_cast<int>(occupation.size()) != m) {
    throw std::invalid_argument("submatrix: occupation length " + std::to_string(occupation.size()) +
                                " does not match mode count " + std::to_string(m));
  }
  int total = 0;
  for (int count : occupation) {
    if (count < 0) {
      throw std::invalid_argument("submatrix: negative occupation");
    }
    total += count;
  }
  const int n = static_cast<int>(input_modes.size());
  if (total != n) {
    throw std::invalid_argument("submatrix: " + std::to_string(n) + " inputs but " +
                                std::to_string(total) + " output photons");
  }
  std::vector<bool> seen(m, false);
  for (int mode : input_modes) {
    if (mode < 1 || mode > m) {
      throw std::out_of_range("submatrix: input mode " + std::to_string(mode) + " out of range");
    }
    if (seen[mode - 1]) {
      throw std::invalid_argument("submatrix: repeated input mode " + std::to_string(mode));
    }
    seen[mode - 1] = true;
  }
  ComplexMatrix out(n, n);
  int col = 0;
  for (int t = 0; t < m; ++t) {
    for (int rep = 0; rep < occupation[t]; ++rep, ++col) {
      for (int row = 0; row < n; ++row) {
        out(row, col) = u.matrix()(input_modes[row] - 1, t);
      }
    }
  }
  return out;
}

}  // namespace bosim
