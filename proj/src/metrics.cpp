#include "uamm/metrics.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace uamm {

namespace {

void requireSameSize(const Plane& a, const Plane& b)
{
  if (a.width() != b.width() || a.height() != b.height())
  {
    throw Error("plane size mismatch: " + std::to_string(a.width()) + "x" + std::to_string(a.height()) + " vs "
                + std::to_string(b.width()) + "x" + std::to_string(b.height()));
  }
}

} // namespace

uint64_t sad(const Plane& a, const Plane& b)
{
  requireSameSize(a, b);
  uint64_t sum = 0;
  auto sa      = a.samples();
  auto sb      = b.samples();
  for (size_t i = 0; i < sa.size(); i++)
  {
    sum += static_cast<uint64_t>(std::abs(int(sa[i]) - int(sb[i])));
  }
  return sum;
}

uint64_t sse(const Plane& a, const Plane& b)
{
  requireSameSize(a, b);
  uint64_t sum = 0;
  auto sa      = a.samples();
  auto sb      = b.samples();
  for (size_t i = 0; i < sa.size(); i++)
  {
    const int64_t d = int(sa[i]) - int(sb[i]);
    sum += static_cast<uint64_t>(d * d);
  }
  return sum;
}

double mse(const Plane& a, const Plane& b)
{
  return static_cast<double>(sse(a, b)) / static_cast<double>(a.samples().size());
}

double psnrFromMse(double m)
{
  if (m <= 0.0)
  {
    return kPsnrInfinite;
  }
  return 10.0 * std::log10(255.0 * 255.0 / m);
}

double psnr(const Plane& a, const Plane& b) { return psnrFromMse(mse(a, b)); }

} // namespace uamm
