#include "uscqed/kernels.hpp"

#include <cstring>

namespace uscqed::kernels {

const Ops* avx2_ops_or_null();

namespace {

const Ops* g_active = nullptr;
const char* g_name = "scalar";

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

}  // namespace

bool select_isa(const char* name) {
  if (std::strcmp(name, "scalar") == 0) {
    g_active = &scalar_ops();
    g_name = "scalar";
    return true;
  }
  if (std::strcmp(name, "avx2") == 0) {
    const Ops* v = avx2_ops_or_null();
    if (!v || !cpu_has_avx2()) return false;
    g_active = v;
    g_name = "avx2";
    return true;
  }
  if (std::strcmp(name, "auto") == 0) {
    if (!select_isa("avx2")) select_isa("scalar");
    return true;
  }
  return false;
}

const Ops& ops() {
  if (!g_active) select_isa("auto");
  return *g_active;
}

const char* active_isa() {
  if (!g_active) select_isa("auto");
  return g_name;
}

}  // namespace uscqed::kernels
