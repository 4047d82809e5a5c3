#include "dialg/parallel.hpp"

#include <cstdlib>
#include <string>

namespace dialg {

namespace {
std::atomic<std::size_t> g_override{0};
}

void set_thread_count(std::size_t n) { g_override = n; }

std::size_t thread_count() {
  if (const std::size_t n = g_override.load()) return n;
  if (const char* env = std::getenv("DIALG_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (...) {
      // fall through to the hardware default
    }
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

}  // namespace dialg
