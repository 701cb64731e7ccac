#include "ffr/kernels.hpp"

#include <cstdlib>

namespace ffr::kernels {
namespace {

const Backend* pick() {
    const char* force = std::getenv("FFR_FORCE_SCALAR");
    if (force && force[0] == '1') return &scalar_backend();
#if defined(__GNUC__) && (defined(__x86_64__) || defined(_M_X64))
    if (const Backend* b = avx2_backend(); b && __builtin_cpu_supports("avx2"))
        return b;
#endif
    return &scalar_backend();
}

}  // namespace

const Backend& active() {
    static const Backend* chosen = pick();
    return *chosen;
}

}  // namespace ffr::kernels
