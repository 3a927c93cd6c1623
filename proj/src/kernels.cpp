#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace gridflex::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(GRIDFLEX_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable& select() {
  const char* forced = std::getenv("GRIDFLEX_SIMD");
  if (forced != nullptr && std::string_view(forced) == "scalar") return scalar_table();
  const auto tables = available_tables();
  return *tables.back();
}

}  // namespace

std::vector<const KernelTable*> available_tables() {
  std::vector<const KernelTable*> out{&scalar_table()};
#if defined(GRIDFLEX_HAVE_AVX2)
  if (cpu_has_avx2()) out.push_back(&detail::avx2_table());
#endif
#if defined(GRIDFLEX_HAVE_NEON)
  out.push_back(&detail::neon_table());
#endif
  return out;
}

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace gridflex::kernels
