#pragma once

#include <span>

namespace uamm {

struct RdPoint
{
  double rate = 0.0; // bits or a bit proxy, > 0
  double psnr = 0.0; // dB
};

// Bjontegaard delta rate of curve b against anchor curve a, in percent.
// Negative means b needs less rate for the same quality.
//
// Classic cubic variant: log10(rate) is fitted as a cubic in PSNR (least
// squares, exact for four points), both fits are integrated over the common
// PSNR interval and the mean log-rate difference is mapped back to percent.
//
// Each curve needs at least four points with rate and PSNR both strictly
// increasing; the curves must overlap in PSNR.
double bdRate(std::span<const RdPoint> anchor, std::span<const RdPoint> test);

} // namespace uamm
