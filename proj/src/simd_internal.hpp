#pragma once

#include "siri/simd.hpp"

namespace siri::simd::detail {

const Ops& scalar_table();

/// Table compiled with AVX2+FMA code generation, or nullptr when this
/// translation unit was built without it. The caller is responsible for
/// checking CPU support before executing these kernels.
const Ops* avx2_table();

}  // namespace siri::simd::detail
