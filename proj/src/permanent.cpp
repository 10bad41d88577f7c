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


#include "bosim/permanent.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

namespace bosim {
namespace {

// Extended-precision accumulator. Written out by hand because
// std::complex<long double>::operator* goes through the Annex G slow path.
struct WideComplex {
  long double re = 0.0L;
  long double im = 0.0L;

  WideComplex& operator+=(const WideComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  WideComplex& operator-=(const WideComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  WideComplex& operator*=(const WideComplex& o) {
    const long double r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
  }
  WideComplex operator*(long double s) const { return {re * s, im * s}; }
};

WideComplex widen(const Complex& z) { return {z.real(), z.imag()}; }
Complex narrow(const WideComplex& z) {
  return {static_cast<double>(z.re), static_cast<double>(z.im)};
}

void check_square(const ComplexMatrix& matrix, int max_dim, const char* who) {
  if (matrix.rows() != matrix.cols()) {
    throw std::invalid_argument(std::string(who) + ": matrix is not square");
  }
  if (matrix.rows() < 1) {
    throw std::invalid_argument(std::string(who) + ": matrix dimension must be >= 1");
  }
  if (matrix.rows() > max_dim) {
    throw GuardExceeded(std::string(who) + ": dimension " + std::to_string(matrix.rows()) +
                        " exceeds limit " + std::to_string(max_dim));
  }
  if (!matrix.allFinite()) {
    throw std::invalid_argument(std::string(who) + ": matrix has non-finite entries");
  }
}

std::uint64_t gray(std::uint64_t k) { return k ^ (k >> 1); }

// Runs chunk(begin, end) over [first, last) split into `workers` pieces and
// sums the partial results in chunk order.
template <typename Chunk>
WideComplex reduce_chunks(std::uint64_t first, std::uint64_t last, unsigned workers,
                          Chunk chunk) {
  const std::uint64_t total = last - first;
  std::uint64_t pieces = std::max<unsigned>(workers, 1);
  if (pieces > total) {
    pieces = std::max<std::uint64_t>(total, 1);
  }
  if (pieces == 1) {
    return chunk(first, last);
  }
  std::vector<WideComplex> partial(pieces);
  std::vector<std::thread> threads;
  threads.reserve(pieces);
  for (std::uint64_t p = 0; p < pieces; ++p) {
    const std::uint64_t begin = first + total * p / pieces;
    const std::uint64_t end = first + total * (p + 1) / pieces;
    threads.emplace_back([&partial, &chunk, p, begin, end] { partial[p] = chunk(begin, end); });
  }
  for (auto& t : threads) {
    t.join();
  }
  WideComplex sum;
  for (const auto& v : partial) {
    sum += v;
  }
  return sum;
}

}  // namespace

Complex permanent_naive(const ComplexMatrix& matrix) {
  check_square(matrix, kNaivePermanentMaxDim, "permanent_naive");
  const int n = static_cast<int>(matrix.rows());
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  WideComplex sum;
  do {
    WideComplex term{1.0L, 0.0L};
    for (int i = 0; i < n; ++i) {
      term *= widen(matrix(i, sigma[i]));
    }
    sum += term;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return narrow(sum);
}

Complex permanent_ryser(const ComplexMatrix& matrix, PermanentOptions options) {
  check_square(matrix, kFastPermanentMaxDim, "permanent_ryser");
  const int n = static_cast<int>(matrix.rows());

  // Per(M) = (-1)^n sum_{S != {}} (-1)^{|S|} prod_i sum_{j in S} M[i,j],
  // with S walking the reflected Gray code so each step toggles one column.
  auto chunk = [&matrix, n](std::uint64_t begin, std::uint64_t end) {
    std::vector<WideComplex> row_sums(n);
    const std::uint64_t start_set = gray(begin);
    for (int j = 0; j < n; ++j) {
      if ((start_set >> j) & 1U) {
        for (int i = 0; i < n; ++i) {
          row_sums[i] += widen(matrix(i, j));
        }
      }
    }
    WideComplex sum;
    for (std::uint64_t k = begin; k < end; ++k) {
      const std::uint64_t set = gray(k);
      if (k != begin) {
        const int col = std::countr_zero(k);
        if ((set >> col) & 1U) {
          for (int i = 0; i < n; ++i) {
            row_sums[i] += widen(matrix(i, col));
          }
        } else {
          for (int i = 0; i < n; ++i) {
            row_sums[i] -= widen(matrix(i, col));
          }
        }
      }
      WideComplex prod = row_sums[0];
      for (int i = 1; i < n; ++i) {
        prod *= row_sums[i];
      }
      if ((std::popcount(set) & 1) != 0) {
        sum -= prod;
      } else {
        sum += prod;
      }
    }
    return sum;
  };

  WideComplex sum = reduce_chunks(1, std::uint64_t{1} << n, options.workers, chunk);
  if (n % 2 != 0) {
    sum = sum * -1.0L;
  }
  return narrow(sum);
}

Complex permanent_glynn(const ComplexMatrix& matrix, PermanentOptions options) {
  check_square(matrix, kFastPermanentMaxDim, "permanent_glynn");
  const int n = static_cast<int>(matrix.rows());

  // Per(M) = 2^{1-n} sum_{d in {+-1}^n, d_0 = +1} (prod_k d_k) prod_j sum_i d_i M[i,j].
  // Bit b of gray(k) set means row b+1 carries weight -1.
  auto chunk = [&matrix, n](std::uint64_t begin, std::uint64_t end) {
    std::vector<WideComplex> col_sums(n);
    const std::uint64_t start_set = gray(begin);
    for (int i = 0; i < n; ++i) {
      const bool negative = i > 0 && ((start_set >> (i - 1)) & 1U);
      for (int j = 0; j < n; ++j) {
        if (negative) {
          col_sums[j] -= widen(matrix(i, j));
        } else {
          col_sums[j] += widen(matrix(i, j));
        }
      }
    }
    WideComplex sum;
    for (std::uint64_t k = begin; k < end; ++k) {
      const std::uint64_t set = gray(k);
      if (k != begin) {
        const int bit = std::countr_zero(k);
        const int row = bit + 1;
        if ((set >> bit) & 1U) {
          for (int j = 0; j < n; ++j) {
            col_sums[j] -= widen(matrix(row, j)) * 2.0L;
          }
        } else {
          for (int j = 0; j < n; ++j) {
            col_sums[j] += widen(matrix(row, j)) * 2.0L;
          }
        }
      }
      WideComplex prod = col_sums[0];
      for (int j = 1; j < n; ++j) {
        prod *= col_sums[j];
      }
      if ((std::popcount(set) & 1) != 0) {
        sum -= prod;
      } else {
        sum += prod;
      }
    }
    return sum;
  };

  const WideComplex sum = reduce_chunks(0, std::uint64_t{1} << (n - 1), options.workers, chunk);
  return narrow(sum * std::ldexp(1.0L, 1 - n));
}

Complex permanent(const ComplexMatrix& m) {
  check_square(m, kFastPermanentMaxDim, "permanent");
  switch (m.rows()) {
    case 1:
      return m(0, 0);
    case 2:
      return m(0, 0) * m(1, 1) + m(0, 1) * m(1, 0);
    case 3:
      return m(0, 0) * (m(1, 1) * m(2, 2) + m(1, 2) * m(2, 1)) +
             m(0, 1) * (m(1, 0) * m(2, 2) + m(1, 2) * m(2, 0)) +
             m(0, 2) * (m(1, 0) * m(2, 1) + m(1, 1) * m(2, 0));
    default:
      return permanent_glynn(m);
  }
}

}  // namespace bosim
