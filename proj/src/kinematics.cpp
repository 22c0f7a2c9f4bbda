#include "uamm/kinematics.hpp"

namespace uamm {

namespace {

void requireAvailable(const UammParams& p, const char* op)
{
  if (!p.available())
  {
    throw Error(std::string(op) + ": UAMM parameters are unavailable");
  }
}

// round((v0*t + a*t^2/2) / kPrec), evaluated as (2*v0*t + a*t^2) / (2*kPrec).
int64_t displacementAxis(int64_t v0, int64_t a, int64_t t)
{
  const int64_t num = checkedAdd(checkedMul(checkedMul(2, v0), t), checkedMul(a, checkedMul(t, t)));
  return divRound(num, 2 * kPrec);
}

struct AxisParams
{
  int64_t v0;
  int64_t a;
};

AxisParams deriveAxis(int64_t mv0, int64_t mv1, int64_t t0, int64_t t1)
{
  // a  = 2 (mv1 t0 - mv0 t1) / (t0 t1 (t0 + t1))
  // v0 = (mv0 - a t0^2 / 2) / t0 = (mv0 D - N t0^2) / (t0 D)
  const int64_t n   = checkedSub(checkedMul(mv1, t0), checkedMul(mv0, t1));
  const int64_t den = checkedMul(checkedMul(t0, t1), checkedAdd(t0, t1));

  const int64_t a  = divRound(checkedMul(2 * kPrec, n), den);
  const int64_t vn = checkedSub(checkedMul(mv0, den), checkedMul(n, checkedMul(t0, t0)));
  const int64_t v0 = divRound(checkedMul(kPrec, vn), checkedMul(t0, den));
  return { v0, a };
}

int64_t extrapolateAxis(int64_t v0, int64_t a, int64_t t0, int64_t t1, int64_t t2)
{
  // v0 t2 + a t2 (t0 + t1) + a t2^2 / 2, doubled to stay integral
  const int64_t span = checkedAdd(t0, t1);
  int64_t num        = checkedMul(checkedMul(2, v0), t2);
  num                = checkedAdd(num, checkedMul(checkedMul(2, a), checkedMul(t2, span)));
  num                = checkedAdd(num, checkedMul(a, checkedMul(t2, t2)));
  return divRound(num, 2 * kPrec);
}

} // namespace

std::string_view toString(ModelKind kind)
{
  switch (kind)
  {
  case ModelKind::Accelerated: return "accelerated";
  case ModelKind::Linear: return "linear";
  case ModelKind::Constant: return "constant";
  case ModelKind::Unavailable: return "unavailable";
  }
  return "unknown";
}

UammParams UammParams::fromScaled(int64_t v0x, int64_t v0y, int64_t ax, int64_t ay)
{
  UammParams p{ v0x, v0y, ax, ay, ModelKind::Accelerated };
  if (ax == 0 && ay == 0)
  {
    p.kind = (v0x == 0 && v0y == 0) ? ModelKind::Constant : ModelKind::Linear;
  }
  return p;
}

MotionVector displacement(const UammParams& p, TimeInterval t)
{
  requireAvailable(p, "displacement");
  return { toMvComponent(displacementAxis(p.v0x, p.ax, t.ticks())),
           toMvComponent(displacementAxis(p.v0y, p.ay, t.ticks())) };
}

ScaledVelocity velocityAt(const UammParams& p, TimeInterval t)
{
  requireAvailable(p, "velocityAt");
  return { checkedAdd(p.v0x, checkedMul(p.ax, t.ticks())), checkedAdd(p.v0y, checkedMul(p.ay, t.ticks())) };
}

UammParams deriveParams(MotionVector mv0, MotionVector mv1, TimeInterval t0, TimeInterval t1)
{
  const AxisParams px = deriveAxis(mv0.x, mv1.x, t0.ticks(), t1.ticks());
  const AxisParams py = deriveAxis(mv0.y, mv1.y, t0.ticks(), t1.ticks());
  return UammParams::fromScaled(px.v0, py.v0, px.a, py.a);
}

MotionVector extrapolateMv(const UammParams& p, TimeInterval t0, TimeInterval t1, TimeInterval t2)
{
  requireAvailable(p, "extrapolateMv");
  return { toMvComponent(extrapolateAxis(p.v0x, p.ax, t0.ticks(), t1.ticks(), t2.ticks())),
           toMvComponent(extrapolateAxis(p.v0y, p.ay, t0.ticks(), t1.ticks(), t2.ticks())) };
}

MotionVector tmvpScale(MotionVector colMv, TimeInterval currDist, TimeInterval colDist)
{
  return { toMvComponent(divRound(checkedMul(colMv.x, currDist.ticks()), colDist.ticks())),
           toMvComponent(divRound(checkedMul(colMv.y, currDist.ticks()), colDist.ticks())) };
}

} // namespace uamm
