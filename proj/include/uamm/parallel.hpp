#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace uamm {

// Worker cap for the data-parallel loops. 0 = hardware concurrency.
// Initialised from the UAMM_THREADS environment variable.
unsigned workerThreads();
void setWorkerThreads(unsigned n);

// Runs body(i) for i in [0, n). Each index is visited exactly once; callers
// write results by index so output order never depends on scheduling.
template<typename Body>
void parallelFor(int n, Body&& body)
{
  const unsigned workers = std::min<unsigned>(workerThreads(), static_cast<unsigned>(std::max(n, 0)));
  if (workers <= 1)
  {
    for (int i = 0; i < n; i++)
    {
      body(i);
    }
    return;
  }

  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; w++)
    {
      pool.emplace_back([&, w] {
        try
        {
          for (int i = static_cast<int>(w); i < n; i += static_cast<int>(workers))
          {
            body(i);
          }
        }
        catch (...)
        {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e: errors)
  {
    if (e)
    {
      std::rethrow_exception(e);
    }
  }
}

} // namespace uamm
