#pragma once

#include <cstdint>
#include <compare>
#include <string>

#include "uamm/error.hpp"

namespace uamm {

// MVs are stored in 1/16-pel units.
inline constexpr int kMvFracBits = 4;
inline constexpr int32_t kMvUnitsPerPel = 1 << kMvFracBits;
inline constexpr int32_t kMvMax = (1 << 15) - 1;

// Velocity and acceleration are kept in MV units scaled by this factor.
inline constexpr int kPrecBits = 6;
inline constexpr int64_t kPrec = int64_t{ 1 } << kPrecBits;

struct MotionVector
{
  int32_t x = 0;
  int32_t y = 0;

  constexpr MotionVector() = default;
  constexpr MotionVector(int32_t x_, int32_t y_) : x(x_), y(y_) {}

  constexpr MotionVector operator+(const MotionVector& o) const { return { x + o.x, y + o.y }; }
  constexpr MotionVector operator-(const MotionVector& o) const { return { x - o.x, y - o.y }; }
  constexpr MotionVector operator-() const { return { -x, -y }; }

  constexpr bool operator==(const MotionVector&) const = default;

  constexpr bool inRange(int32_t limit = kMvMax) const
  {
    return x >= -limit && x <= limit && y >= -limit && y <= limit;
  }

  std::string toString() const { return "(" + std::to_string(x) + "," + std::to_string(y) + ")"; }
};

// A positive distance between two pictures, in POC ticks.
class TimeInterval
{
public:
  explicit TimeInterval(int64_t ticks) : m_ticks(ticks)
  {
    if (ticks < 1)
    {
      throw Error("time interval must be >= 1 tick, got " + std::to_string(ticks));
    }
  }

  int64_t ticks() const { return m_ticks; }

  bool operator==(const TimeInterval&) const = default;

private:
  int64_t m_ticks;
};

// Checked 64-bit arithmetic. Every fixed-point path goes through these.
int64_t checkedAdd(int64_t a, int64_t b);
int64_t checkedSub(int64_t a, int64_t b);
int64_t checkedMul(int64_t a, int64_t b);

// num / den rounded half away from zero. den must be nonzero.
int64_t divRound(int64_t num, int64_t den);

// Converts a widened value into an MV component, throwing past kMvMax.
int32_t toMvComponent(int64_t v);

// Integer-pel displacement of an MV, rounded half away from zero.
inline int32_t mvToPelRounded(int32_t units) { return static_cast<int32_t>(divRound(units, kMvUnitsPerPel)); }

} // namespace uamm
