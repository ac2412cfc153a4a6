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

#include <cmath>
#include <cstdlib>
#include <string_view>

#include "incidentqa/simd/kernels.hpp"
#include "kernels_impl.hpp"

namespace incidentqa::simd {

namespace {

constexpr Kernels kScalar{"scalar", detail::dot_scalar, detail::dot_rows_scalar,
                          detail::sum_squares_scalar, detail::scale_scalar};

#if defined(INCIDENTQA_HAVE_AVX2)
constexpr Kernels kAvx2{"avx2", detail::dot_avx2, detail::dot_rows_avx2, detail::sum_squares_avx2,
                        detail::scale_avx2};
#endif

#if defined(INCIDENTQA_HAVE_NEON)
constexpr Kernels kNeon{"neon", detail::dot_neon, detail::dot_rows_neon, detail::sum_squares_neon,
                        detail::scale_neon};
#endif

const Kernels& select() noexcept {
  const char* forced = std::getenv("INCIDENTQA_SIMD");
  const std::string_view choice = forced ? forced : "auto";
  if (choice == "scalar") return kScalar;
  if (choice == "avx2") {
    const Kernels* k = avx2_kernels();
    return k ? *k : kScalar;
  }
  if (choice == "neon") {
    const Kernels* k = neon_kernels();
    return k ? *k : kScalar;
  }
  if (const Kernels* k = avx2_kernels()) return *k;
  if (const Kernels* k = neon_kernels()) return *k;
  return kScalar;
}

}  // namespace

const Kernels& scalar_kernels() noexcept { return kScalar; }

const Kernels* avx2_kernels() noexcept {
#if defined(INCIDENTQA_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const Kernels* neon_kernels() noexcept {
#if defined(INCIDENTQA_HAVE_NEON)
  return &kNeon;
#else
  return nullptr;
#endif
}

const Kernels& active() noexcept {
  static const Kernels& chosen = select();
  return chosen;
}

double dot(std::span<const float> a, std::span<const float> b) noexcept {
  return active().dot(a.data(), b.data(), a.size() < b.size() ? a.size() : b.size());
}

double l2_norm(std::span<const float> a) noexcept {
  return std::sqrt(active().sum_squares(a.data(), a.size()));
}

bool normalize(std::span<float> a) noexcept {
  const double norm = l2_norm(a);
  if (norm == 0.0 || !std::isfinite(norm)) return false;
  active().scale(a.data(), a.size(), static_cast<float>(1.0 / norm));
  return true;
}

}  // namespace incidentqa::simd
