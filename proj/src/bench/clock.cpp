#include "scope/clock.hpp"

#include <ctime>

namespace scope {

Nanoseconds SystemClock::wall_now() {
  return std::chrono::duration_cast<Nanoseconds>(
      std::chrono::steady_clock::now().time_since_epoch());
}

Nanoseconds SystemClock::cpu_now() {
#if defined(CLOCK_PROCESS_CPUTIME_ID)
  timespec ts{};
  if (clock_gettime(CLOCK_PROCESS_CPUTIME_ID, &ts) == 0) {
    return Nanoseconds(static_cast<std::int64_t>(ts.tv_sec) * 1'000'000'000 + ts.tv_nsec);
  }
#endif
  return std::chrono::duration_cast<Nanoseconds>(
      Seconds(static_cast<double>(std::clock()) / CLOCKS_PER_SEC));
}

}  // namespace scope
