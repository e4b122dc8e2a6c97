#include <cstdlib>
#include <string_view>

#include "bjs/kernels.hpp"

namespace bjs::kernels {

const KernelSet& active() {
  static const KernelSet& chosen = [] () -> const KernelSet& {
    const char* env = std::getenv("BJS_KERNELS");
    if (env != nullptr && std::string_view(env) == "scalar") return scalar();
    if (const KernelSet* v = avx2()) return *v;
    return scalar();
  }();
  return chosen;
}

}  // namespace bjs::kernels
