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

#if defined(INCIDENTQA_HAVE_NEON)
#include <arm_neon.h>

namespace incidentqa::simd::detail {

double dot_neon(const float* a, const float* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float32x4_t va = vld1q_f32(a + i);
    const float32x4_t vb = vld1q_f32(b + i);
    acc0 = vfmaq_f64(acc0, vcvt_f64_f32(vget_low_f32(va)), vcvt_f64_f32(vget_low_f32(vb)));
    acc1 = vfmaq_f64(acc1, vcvt_high_f64_f32(va), vcvt_high_f64_f32(vb));
  }
  double sum = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) {
    sum += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  }
  return sum;
}

void dot_rows_neon(const float* matrix, std::size_t rows, std::size_t dim, const float* query,
                   double* out) {
  for (std::size_t r = 0; r < rows; ++r) {
    out[r] = dot_neon(matrix + r * dim, query, dim);
  }
}

double sum_squares_neon(const float* a, std::size_t n) { return dot_neon(a, a, n); }

void scale_neon(float* a, std::size_t n, float factor) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    vst1q_f32(a + i, vmulq_n_f32(vld1q_f32(a + i), factor));
  }
  for (; i < n; ++i) a[i] *= factor;
}

}  // namespace incidentqa::simd::detail

#endif
