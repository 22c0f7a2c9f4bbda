#include "uamm/mv.hpp"

#include <limits>

namespace uamm {

int64_t checkedAdd(int64_t a, int64_t b)
{
  int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r))
  {
    throw OverflowError("fixed-point overflow in addition");
  }
  return r;
}

int64_t checkedSub(int64_t a, int64_t b)
{
  int64_t r = 0;
  if (__builtin_sub_overflow(a, b, &r))
  {
    throw OverflowError("fixed-point overflow in subtraction");
  }
  return r;
}

int64_t checkedMul(int64_t a, int64_t b)
{
  int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r))
  {
    throw OverflowError("fixed-point overflow in multiplication");
  }
  return r;
}

int64_t divRound(int64_t num, int64_t den)
{
  if (den == 0)
  {
    throw Error("division by zero");
  }
  if (num == std::numeric_limits<int64_t>::min() || den == std::numeric_limits<int64_t>::min())
  {
    throw OverflowError("fixed-point overflow in division");
  }
  if (den < 0)
  {
    num = -num;
    den = -den;
  }
  const int64_t mag = num < 0 ? -num : num;
  const int64_t rem = mag % den;
  // ties (2*rem == den) go up in magnitude
  const int64_t rounded = (mag / den) + ((rem >= den - rem) ? 1 : 0);
  return num < 0 ? -rounded : rounded;
}

int32_t toMvComponent(int64_t v)
{
  if (v > kMvMax || v < -kMvMax)
  {
    throw OverflowError("MV component " + std::to_string(v) + " exceeds +/-" + std::to_string(kMvMax));
  }
  return static_cast<int32_t>(v);
}

} // namespace uamm
