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


#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "bosim/common.hpp"

namespace bosim {

/// m x m interferometer transfer matrix. Row index is the input mode and
/// column index the output mode, so u(s, t) is the amplitude for a photon
/// entering s to leave through t. Mode numbers in the public API are 1-based;
/// matrix() is indexed from 0.
class Unitary {
 public:
  Unitary() = default;
  /// Requires a square, non-empty matrix; unitarity is not checked here.
  explicit Unitary(ComplexMatrix matrix);

  /// Same as the constructor but rejects matrices with unitarity_deviation > tolerance.
  static Unitary checked(ComplexMatrix matrix, double tolerance = 1e-9);

  int modes() const { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }
  /// 1-based amplitude lookup.
  Complex amplitude(int input_mode, int output_mode) const {
    return matrix_(input_mode - 1, output_mode - 1);
  }

 private:
  ComplexMatrix matrix_;
};

/// Directional coupler between adjacent modes (mode, mode + 1) with power
/// transmittivity t2. Its 2x2 block is [[t, i r], [i r, t]], t = sqrt(t2),
/// r = sqrt(1 - t2).
struct Coupler {
  int mode = 1;
  double t2 = 0.5;
  bool operator==(const Coupler&) const = default;
};

/// Multiplies one mode by exp(i phi), phi in [0, 2 pi).
struct PhaseShift {
  int mode = 1;
  double phi = 0.0;
  bool operator==(const PhaseShift&) const = default;
};

using LayoutElement = std::variant<Coupler, PhaseShift>;

/// Planar chip description: elements act in order on an m-mode register.
struct CircuitLayout {
  int modes = 0;
  std::vector<LayoutElement> elements;

  /// Throws std::invalid_argument on bad mode indices or parameters.
  void validate() const;
  bool operator==(const CircuitLayout&) const = default;
};

/// Fabrication tolerance model: Gaussian jitter on every t2 and phi.
struct NoiseSpec {
  double sigma_t = 0.05;
  double sigma_phi = 0.1;
  std::uint64_t seed = 0;
};

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases
/// of diag(R) divided out.
Unitary haar_random_unitary(int modes, std::uint64_t seed);

/// Product E_1 E_2 ... E_K of the element matrices in layout order, so
/// compile(a ++ b) == compile(a) * compile(b).
Unitary compile_layout(const CircuitLayout& layout);

/// Brick-wall of balanced couplers: row r couples (1,2),(3,4),... when r is
/// even and (2,3),(4,5),... when odd. Each coupler is preceded by a uniform
/// random phase on its upper mode.
CircuitLayout random_chip_layout(int modes, int depth, std::uint64_t seed);
/// Depth defaults to the mode count, which reaches every output from every input.
CircuitLayout random_chip_layout(int modes, std::uint64_t seed);

/// t2 += N(0, sigma_t^2) clamped to [0, 1]; phi += N(0, sigma_phi^2) wrapped
/// into [0, 2 pi). Zero sigmas leave the layout untouched.
CircuitLayout perturb_layout(const CircuitLayout& layout, const NoiseSpec& noise);

/// max |(U^dagger U - I)_ij|.
double unitarity_deviation(const ComplexMatrix& matrix);
inline double unitarity_deviation(const Unitary& u) { return unitarity_deviation(u.matrix()); }

/// n x n matrix whose rows are the input modes and whose columns are the
/// output modes, each repeated by its occupation.
ComplexMatrix submatrix(const Unitary& u, std::span<const int> input_modes,
                        std::span<const int> occupation);

}  // namespace bosim
