#pragma once

// Fixed-point uniformly accelerated motion model.
//
// A trajectory is x(t) = v0*t + a*t^2/2 per axis. Positions and MVs are in
// 1/16-pel units; v0 and a are additionally scaled by kPrec so that the
// divisions in the parameter derivation keep 1/64 of an MV unit. All
// intermediates are 64-bit and checked; rounding is half away from zero.

#include <cstdint>
#include <string_view>

#include "uamm/mv.hpp"

namespace uamm {

enum class ModelKind : uint8_t
{
  Accelerated,
  Linear,
  Constant,
  Unavailable,
};

std::string_view toString(ModelKind kind);

struct UammParams
{
  int64_t v0x = 0;
  int64_t v0y = 0;
  int64_t ax = 0;
  int64_t ay = 0;
  ModelKind kind = ModelKind::Unavailable;

  static UammParams unavailable() { return {}; }

  // Builds params from scaled components and picks the degenerate kind:
  // Constant when everything is zero, Linear when only the acceleration is.
  static UammParams fromScaled(int64_t v0x, int64_t v0y, int64_t ax, int64_t ay);

  bool available() const { return kind != ModelKind::Unavailable; }

  bool operator==(const UammParams&) const = default;
};

// Scaled velocity (MV units per tick, times kPrec).
struct ScaledVelocity
{
  int64_t x = 0;
  int64_t y = 0;

  bool operator==(const ScaledVelocity&) const = default;
};

// round((v0*t + a*t^2/2) / kPrec) per axis.
MotionVector displacement(const UammParams& p, TimeInterval t);

// v0 + a*t per axis, exact.
ScaledVelocity velocityAt(const UammParams& p, TimeInterval t);

// Solves (v0, a) from two chained MVs: mv0 spans t0 starting at the
// trajectory origin, mv1 spans t1 right after it.
UammParams deriveParams(MotionVector mv0, MotionVector mv1, TimeInterval t0, TimeInterval t1);

// MV over the segment of length t2 that follows t0 and t1 on the trajectory.
// Throws for Unavailable params; the caller is expected to fall back.
MotionVector extrapolateMv(const UammParams& p, TimeInterval t0, TimeInterval t1, TimeInterval t2);

// Uniform-speed temporal scaling: colMv * currDist / colDist.
MotionVector tmvpScale(MotionVector colMv, TimeInterval currDist, TimeInterval colDist);

} // namespace uamm
