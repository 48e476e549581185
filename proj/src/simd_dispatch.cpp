#include "siri/simd.hpp"

#include <atomic>
#include <cstdlib>

#include "simd_internal.hpp"

namespace siri::simd {
namespace {

bool cpu_has_avx2_fma() {
#if defined(__GNUC__) && (defined(__x86_64__) || defined(__i386__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Ops* select_auto() {
    if (const Ops* a = avx2_ops()) return a;
    return &scalar_ops();
}

const Ops* select_initial() {
    const char* env = std::getenv("SIRI_SIMD");
    if (env) {
        std::string_view mode(env);
        if (mode == "scalar") return &scalar_ops();
        if (mode == "avx2") {
            if (const Ops* a = avx2_ops()) return a;
            // Requested ISA unavailable: fall through to auto rather than
            // aborting library initialization.
        }
    }
    return select_auto();
}

std::atomic<const Ops*>& current() {
    static std::atomic<const Ops*> g_current{select_initial()};
    return g_current;
}

}  // namespace

const Ops& scalar_ops() { return detail::scalar_table(); }

const Ops* avx2_ops() {
    static const Ops* table =
        cpu_has_avx2_fma() ? detail::avx2_table() : nullptr;
    return table;
}

const Ops& ops() { return *current().load(std::memory_order_relaxed); }

bool set_backend(std::string_view name) {
    const Ops* next = nullptr;
    if (name == "scalar") {
        next = &scalar_ops();
    } else if (name == "avx2") {
        next = avx2_ops();
    } else if (name == "auto") {
        next = select_auto();
    }
    if (!next) return false;
    current().store(next, std::memory_order_relaxed);
    return true;
}

}  // namespace siri::simd
