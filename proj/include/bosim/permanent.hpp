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

#include <cstddef>

#include "bosim/common.hpp"

namespace bosim {

inline constexpr int kNaivePermanentMaxDim = 10;
inline constexpr int kFastPermanentMaxDim = 30;

/// Work partitioning for the O(n 2^n) algorithms. The subset range is cut
/// into `workers` contiguous chunks whose partial sums are reduced in chunk
/// order, so a given worker count always produces the same bits.
struct PermanentOptions {
  unsigned workers = 1;
};

/// Permutation-sum definition, O(n * n!). Reference oracle; n <= 10.
Complex permanent_naive(const ComplexMatrix& matrix);

/// Ryser inclusion-exclusion with Gray-code column updates, O(n 2^n); n <= 30.
Complex permanent_ryser(const ComplexMatrix& matrix, PermanentOptions options = {});

/// Glynn formula over +-1 row weightings in Gray-code order, O(n 2^n); n <= 30.
Complex permanent_glynn(const ComplexMatrix& matrix, PermanentOptions options = {});

/// Default route used by the probability code: closed forms for n <= 3,
/// Glynn otherwise.
Complex permanent(const ComplexMatrix& matrix);

}  // namespace bosim
