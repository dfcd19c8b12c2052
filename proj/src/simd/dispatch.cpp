// Copyright 2026 The ramcube Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <cstdlib>
#include <string>

#include "ramcube/simd/kernels.hpp"

namespace ramcube::simd {

#if defined(RAMCUBE_WITH_AVX2)
const KernelTable& avx2_table();
#endif

const KernelTable* avx2_kernels() {
#if defined(RAMCUBE_WITH_AVX2)
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  if (supported) return &avx2_table();
#endif
  return nullptr;
}

namespace {

const KernelTable* initial_table() {
  const char* env = std::getenv("RAMCUBE_SIMD");
  if (env != nullptr && std::string(env) == "generic") return &generic_kernels();
  if (const KernelTable* t = avx2_kernels()) return t;
  return &generic_kernels();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

const KernelTable& active() { return *current().load(std::memory_order_relaxed); }

bool select(std::string_view name) {
  if (name == "generic") {
    current().store(&generic_kernels());
    return true;
  }
  if (name == "avx2") {
    if (const KernelTable* t = avx2_kernels()) {
      current().store(t);
      return true;
    }
  }
  return false;
}

std::vector<std::string_view> available() {
  std::vector<std::string_view> names{"generic"};
  if (avx2_kernels() != nullptr) names.emplace_back("avx2");
  return names;
}

}  // namespace ramcube::simd
