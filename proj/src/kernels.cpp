#include "assc/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace assc::kernels {

// Defined in kernels_avx2.cpp; returns nullptr when not compiled in.
const Table* avx2_table();

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Table* try_avx2() {
    const Table* table = avx2_table();
    return (table != nullptr && cpu_has_avx2()) ? table : nullptr;
}

const Table& select() {
    const char* env = std::getenv("ASSC_SIMD");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) return scalar_table();
    if (env != nullptr && std::strcmp(env, "avx2") == 0) {
        if (const Table* t = try_avx2()) return *t;
        return scalar_table();
    }
    if (const Table* t = try_avx2()) return *t;
    return scalar_table();
}

}  // namespace

const Table& active_table() {
    static const Table& chosen = select();
    return chosen;
}

std::vector<const Table*> available_tables() {
    std::vector<const Table*> tables{&scalar_table()};
    if (const Table* t = try_avx2()) tables.push_back(t);
    return tables;
}

}  // namespace assc::kernels
