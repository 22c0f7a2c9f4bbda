#pragma once

#include <cstdint>
#include <limits>

#include "uamm/frame.hpp"

namespace uamm {

// Returned by psnr() for identical inputs.
inline constexpr double kPsnrInfinite = std::numeric_limits<double>::infinity();

uint64_t sad(const Plane& a, const Plane& b);
uint64_t sse(const Plane& a, const Plane& b);
double mse(const Plane& a, const Plane& b);

// 10*log10(255^2 / MSE), kPsnrInfinite when MSE is 0. Throws on size mismatch.
double psnr(const Plane& a, const Plane& b);
double psnrFromMse(double mse);

} // namespace uamm
