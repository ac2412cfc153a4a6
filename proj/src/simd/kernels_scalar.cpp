// Copyright 2026 The incidentqa Authors.
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

#include "kernels_impl.hpp"

namespace incidentqa::simd::detail {

double dot_scalar(const float* a, const float* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  }
  return sum;
}

void dot_rows_scalar(const float* matrix, std::size_t rows, std::size_t dim, const float* query,
                     double* out) {
  for (std::size_t r = 0; r < rows; ++r) {
    out[r] = dot_scalar(matrix + r * dim, query, dim);
  }
}

double sum_squares_scalar(const float* a, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += static_cast<double>(a[i]) * static_cast<double>(a[i]);
  }
  return sum;
}

void scale_scalar(float* a, std::size_t n, float factor) {
  for (std::size_t i = 0; i < n; ++i) a[i] *= factor;
}

}  // namespace incidentqa::simd::detail
