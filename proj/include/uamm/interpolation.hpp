#pragma once

#include "uamm/frame.hpp"
#include "uamm/mv.hpp"

namespace uamm {

// Bilinear sample of plane at (x16, y16), a position on the 1/16-pel grid.
// Out-of-plane neighbours replicate the border. Weights sum to 256 and the
// result is rounded half away from zero (all terms are non-negative).
inline Pel bilinearSample(const Plane& plane, int x16, int y16)
{
  const int ix = x16 >> kMvFracBits;
  const int iy = y16 >> kMvFracBits;
  const int fx = x16 & (kMvUnitsPerPel - 1);
  const int fy = y16 & (kMvUnitsPerPel - 1);

  if (fx == 0 && fy == 0)
  {
    return plane.atClamped(ix, iy);
  }

  const int w00 = (kMvUnitsPerPel - fx) * (kMvUnitsPerPel - fy);
  const int w10 = fx * (kMvUnitsPerPel - fy);
  const int w01 = (kMvUnitsPerPel - fx) * fy;
  const int w11 = fx * fy;

  const int sum = w00 * plane.atClamped(ix, iy) + w10 * plane.atClamped(ix + 1, iy)
                  + w01 * plane.atClamped(ix, iy + 1) + w11 * plane.atClamped(ix + 1, iy + 1);
  return static_cast<Pel>((sum + 128) >> 8);
}

} // namespace uamm
