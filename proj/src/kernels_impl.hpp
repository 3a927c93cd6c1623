#pragma once
// Per-ISA kernel tables; only the variants compiled for this target exist.

#include "gridflex/kernels.hpp"

namespace gridflex::kernels::detail {

#if defined(GRIDFLEX_HAVE_AVX2)
const KernelTable& avx2_table();
#endif
#if defined(GRIDFLEX_HAVE_NEON)
const KernelTable& neon_table();
#endif

}  // namespace gridflex::kernels::detail
