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

#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Dense-vector kernels. Every variant accumulates in double so the SIMD paths
// agree with the scalar reference to rounding of the final sum.
namespace incidentqa::simd {

struct Kernels {
  std::string_view name;
  /// sum_i a[i] * b[i]
  double (*dot)(const float* a, const float* b, std::size_t n);
  /// out[r] = dot(matrix + r * dim, query, dim) for r in [0, rows)
  void (*dot_rows)(const float* matrix, std::size_t rows, std::size_t dim, const float* query,
                   double* out);
  /// sum_i a[i]^2
  double (*sum_squares)(const float* a, std::size_t n);
  /// a[i] *= factor
  void (*scale)(float* a, std::size_t n, float factor);
};

const Kernels& scalar_kernels() noexcept;

/// nullptr when the variant is not compiled in or the CPU lacks it.
const Kernels* avx2_kernels() noexcept;
const Kernels* neon_kernels() noexcept;

/// Best available variant, chosen once. INCIDENTQA_SIMD=scalar|avx2|neon
/// forces a choice (falling back to scalar when unavailable).
const Kernels& active() noexcept;

// Convenience wrappers over active().
double dot(std::span<const float> a, std::span<const float> b) noexcept;
double l2_norm(std::span<const float> a) noexcept;
/// Scales to unit length; leaves an all-zero vector untouched and returns
/// false for it.
bool normalize(std::span<float> a) noexcept;

}  // namespace incidentqa::simd
