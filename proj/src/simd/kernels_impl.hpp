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

namespace incidentqa::simd::detail {

double dot_scalar(const float* a, const float* b, std::size_t n);
void dot_rows_scalar(const float* matrix, std::size_t rows, std::size_t dim, const float* query,
                     double* out);
double sum_squares_scalar(const float* a, std::size_t n);
void scale_scalar(float* a, std::size_t n, float factor);

#if defined(INCIDENTQA_HAVE_AVX2)
double dot_avx2(const float* a, const float* b, std::size_t n);
void dot_rows_avx2(const float* matrix, std::size_t rows, std::size_t dim, const float* query,
                   double* out);
double sum_squares_avx2(const float* a, std::size_t n);
void scale_avx2(float* a, std::size_t n, float factor);
#endif

#if defined(INCIDENTQA_HAVE_NEON)
double dot_neon(const float* a, const float* b, std::size_t n);
void dot_rows_neon(const float* matrix, std::size_t rows, std::size_t dim, const float* query,
                   double* out);
double sum_squares_neon(const float* a, std::size_t n);
void scale_neon(float* a, std::size_t n, float factor);
#endif

}  // namespace incidentqa::simd::detail
