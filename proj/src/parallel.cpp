#include "uamm/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace uamm {

namespace {

unsigned threadsFromEnv()
{
  const char* env = std::getenv("UAMM_THREADS");
  if (env == nullptr || *env == '\0')
  {
    return 0;
  }
  try
  {
    return static_cast<unsigned>(std::stoul(env));
  }
  catch (const std::exception&)
  {
    return 0;
  }
}

std::atomic<unsigned>& requested()
{
  static std::atomic<unsigned> value{ threadsFromEnv() };
  return value;
}

} // namespace

unsigned workerThreads()
{
  const unsigned n = requested().load();
  if (n != 0)
  {
    return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void setWorkerThreads(unsigned n) { requested().store(n); }

} // namespace uamm
