#include "doctest_setup.hpp"

#include <random>

#include "oracles.hpp"
#include "uamm/kinematics.hpp"

using namespace uamm;
using oracle::Frac;

namespace {

constexpr int64_t P = kPrec;

UammParams accel(int64_t v0x, int64_t v0y, int64_t ax, int64_t ay) { return UammParams::fromScaled(v0x, v0y, ax, ay); }

TimeInterval T(int64_t t) { return TimeInterval(t); }

} // namespace

TEST_CASE("divRound rounds half away from zero")
{
  CHECK(divRound(3, 2) == 2);
  CHECK(divRound(-3, 2) == -2);
  CHECK(divRound(5, 4) == 1);
  CHECK(divRound(-5, 4) == -1);
  CHECK(divRound(7, 4) == 2);
  CHECK(divRound(0, 7) == 0);
  CHECK(divRound(3, -2) == -2);
  CHECK(divRound(1, 3) == 0);
  CHECK_THROWS_AS(divRound(1, 0), Error);

  std::mt19937 rng(7);
  for (int i = 0; i < 2000; i++)
  {
    const int64_t n = static_cast<int64_t>(rng() % 20001) - 10000;
    const int64_t d = static_cast<int64_t>(rng() % 97) + 1;
    CHECK(divRound(n, d) == Frac(n, d).round());
  }
}

TEST_CASE("TimeInterval rejects non-positive ticks")
{
  CHECK_THROWS_AS(TimeInterval(0), Error);
  CHECK_THROWS_AS(TimeInterval(-3), Error);
  CHECK(TimeInterval(4).ticks() == 4);
}

TEST_CASE("UammParams classification")
{
  CHECK(accel(P, 0, 2 * P, 0).kind == ModelKind::Accelerated);
  CHECK(accel(0, 0, 0, 5).kind == ModelKind::Accelerated);
  CHECK(accel(4, 0, 0, 0).kind == ModelKind::Linear);
  CHECK(accel(0, 0, 0, 0).kind == ModelKind::Constant);
  const UammParams u = UammParams::unavailable();
  CHECK(u.kind == ModelKind::Unavailable);
  CHECK((u.v0x == 0 && u.v0y == 0 && u.ax == 0 && u.ay == 0));
}

TEST_CASE("displacement")
{
  CHECK(displacement(accel(P, 0, 2 * P, 0), T(1)) == MotionVector(2, 0));
  CHECK(displacement(accel(0, 0, 0, 0), T(5)) == MotionVector(0, 0));
  CHECK(displacement(accel(0, P, 0, 2 * P), T(2)) == MotionVector(0, 6));

  SUBCASE("half-unit results round away from zero")
  {
    // v0 = 0, a = 1 unit: x(1) = 0.5
    CHECK(displacement(accel(0, 0, P, -P), T(1)) == MotionVector(1, -1));
  }
  SUBCASE("unavailable params are rejected")
  {
    CHECK_THROWS_AS(displacement(UammParams::unavailable(), T(1)), Error);
  }
  SUBCASE("overflow is reported")
  {
    CHECK_THROWS_AS(displacement(accel(INT64_MAX / 2, 0, 0, 0), T(3)), OverflowError);
    // representable intermediate, result beyond the MV range
    CHECK_THROWS_AS(displacement(accel((kMvMax + 1) * P, 0, 0, 0), T(1)), OverflowError);
  }
  SUBCASE("matches the rational trajectory")
  {
    std::mt19937 rng(11);
    for (int i = 0; i < 3000; i++)
    {
      const int64_t v0 = static_cast<int64_t>(rng() % 20001) - 10000;
      const int64_t a  = static_cast<int64_t>(rng() % 4001) - 2000;
      const int64_t t  = static_cast<int64_t>(rng() % 8) + 1;
      const Frac x     = oracle::position(Frac(v0, P), Frac(a, P), Frac(t));
      CHECK(displacement(accel(v0, 0, a, 0), T(t)).x == x.round());
    }
  }
}

TEST_CASE("velocityAt")
{
  CHECK(velocityAt(accel(P, 0, 2 * P, 0), T(1)) == ScaledVelocity{ 3 * P, 0 });
  CHECK(velocityAt(accel(5 * P, -7, 0, 0), T(9)) == ScaledVelocity{ 5 * P, -7 });
  CHECK(velocityAt(accel(0, 0, 0, -P), T(3)) == ScaledVelocity{ 0, -3 * P });
  CHECK_THROWS_AS(velocityAt(UammParams::unavailable(), T(1)), Error);
  CHECK_THROWS_AS(velocityAt(accel(0, 0, INT64_MAX / 2, 0), T(3)), OverflowError);
}

TEST_CASE("deriveParams")
{
  SUBCASE("equal MVs give zero acceleration")
  {
    const UammParams p = deriveParams({ 4, 4 }, { 4, 4 }, T(1), T(1));
    CHECK(p == UammParams{ 4 * P, 4 * P, 0, 0, ModelKind::Linear });
  }
  SUBCASE("inverts the forward trajectory")
  {
    const UammParams p = deriveParams({ 2, 0 }, { 4, 0 }, T(1), T(1));
    CHECK(p == UammParams{ P, 0, 2 * P, 0, ModelKind::Accelerated });
  }
  SUBCASE("stationary")
  {
    CHECK(deriveParams({ 0, 0 }, { 0, 0 }, T(2), T(3)) == UammParams{ 0, 0, 0, 0, ModelKind::Constant });
  }
  SUBCASE("pure acceleration from rest")
  {
    // v0 = 0, a = 4: mv0 = x(1) = 2, mv1 = x(2) - x(1) = 6
    const UammParams p = deriveParams({ 0, 2 }, { 0, 6 }, T(1), T(1));
    CHECK(p == UammParams{ 0, 0, 0, 4 * P, ModelKind::Accelerated });
  }
  SUBCASE("agrees with Cramer's rule on random chains")
  {
    std::mt19937 rng(3);
    for (int i = 0; i < 5000; i++)
    {
      const int64_t mv0 = static_cast<int64_t>(rng() % 2001) - 1000;
      const int64_t mv1 = static_cast<int64_t>(rng() % 2001) - 1000;
      const int64_t t0  = static_cast<int64_t>(rng() % 8) + 1;
      const int64_t t1  = static_cast<int64_t>(rng() % 8) + 1;
      const auto exact  = oracle::solveChain(mv0, mv1, t0, t1);
      const UammParams p = deriveParams({ int32_t(mv0), 0 }, { int32_t(mv1), 0 }, T(t0), T(t1));
      CHECK(p.ax == (exact.a * Frac(P)).round());
      CHECK(p.v0x == (exact.v0 * Frac(P)).round());
    }
  }
}

TEST_CASE("extrapolateMv")
{
  CHECK(extrapolateMv(accel(P, 0, 2 * P, 0), T(1), T(1), T(1)) == MotionVector(6, 0));
  CHECK(extrapolateMv(accel(4 * P, 4 * P, 0, 0), T(1), T(1), T(3)) == MotionVector(12, 12));
  for (int t = 1; t <= 4; t++)
  {
    CHECK(extrapolateMv(accel(0, 0, 0, 0), T(t), T(t + 1), T(t + 2)) == MotionVector(0, 0));
  }
  CHECK_THROWS_AS(extrapolateMv(UammParams::unavailable(), T(1), T(1), T(1)), Error);

  SUBCASE("equals the trajectory segment after t0 + t1")
  {
    std::mt19937 rng(5);
    for (int i = 0; i < 3000; i++)
    {
      const int64_t v0 = static_cast<int64_t>(rng() % 4001) - 2000;
      const int64_t a  = static_cast<int64_t>(rng() % 801) - 400;
      const int64_t t0 = rng() % 4 + 1, t1 = rng() % 4 + 1, t2 = rng() % 4 + 1;
      const Frac mv2   = oracle::extrapolate(Frac(v0, P), Frac(a, P), t0, t1, t2);
      CHECK(extrapolateMv(accel(v0, 0, a, 0), T(t0), T(t1), T(t2)).x == mv2.round());
    }
  }
}

TEST_CASE("tmvpScale")
{
  CHECK(tmvpScale({ 8, -4 }, T(2), T(2)) == MotionVector(8, -4));
  CHECK(tmvpScale({ 8, -4 }, T(1), T(2)) == MotionVector(4, -2));
  CHECK(tmvpScale({ 3, 0 }, T(1), T(2)) == MotionVector(2, 0));
  CHECK(tmvpScale({ -3, 0 }, T(1), T(2)) == MotionVector(-2, 0));
  CHECK_THROWS_AS(tmvpScale({ kMvMax, 0 }, T(2), T(1)), OverflowError);

  std::mt19937 rng(9);
  for (int i = 0; i < 1000; i++)
  {
    const MotionVector mv{ int32_t(rng() % 20001) - 10000, int32_t(rng() % 20001) - 10000 };
    const int64_t d = rng() % 16 + 1;
    CHECK(tmvpScale(mv, T(d), T(d)) == mv);
  }
}

TEST_CASE("axis independence of extrapolation")
{
  std::mt19937 rng(21);
  for (int i = 0; i < 2000; i++)
  {
    const int64_t v0x = int64_t(rng() % 4001) - 2000, v0y = int64_t(rng() % 4001) - 2000;
    const int64_t ax = int64_t(rng() % 801) - 400, ay = int64_t(rng() % 801) - 400;
    const int64_t t0 = rng() % 4 + 1, t1 = rng() % 4 + 1, t2 = rng() % 8 + 1;
    const MotionVector both = extrapolateMv(accel(v0x, v0y, ax, ay), T(t0), T(t1), T(t2));
    const MotionVector onlyX = ax == 0 && v0x == 0 ? MotionVector{}
                                                    : extrapolateMv(accel(v0x, 0, ax, 0), T(t0), T(t1), T(t2));
    const MotionVector onlyY = ay == 0 && v0y == 0 ? MotionVector{}
                                                    : extrapolateMv(accel(0, v0y, 0, ay), T(t0), T(t1), T(t2));
    CHECK(both == MotionVector(onlyX.x, onlyY.y));
  }
}

TEST_CASE("extrapolation agrees with the velocity form within one unit")
{
  std::mt19937 rng(33);
  for (int i = 0; i < 3000; i++)
  {
    const MotionVector mv0{ int32_t(rng() % 801) - 400, int32_t(rng() % 801) - 400 };
    const MotionVector mv1{ int32_t(rng() % 801) - 400, int32_t(rng() % 801) - 400 };
    const int64_t t0 = rng() % 4 + 1, t1 = rng() % 4 + 1, t2 = rng() % 4 + 1;
    const UammParams p = deriveParams(mv0, mv1, T(t0), T(t1));
    if (!p.available())
    {
      continue;
    }
    const ScaledVelocity v2 = velocityAt(p, T(t0 + t1));
    // mv2 = v2 t2 + a t2^2 / 2
    const int64_t ex = oracle::position(Frac(v2.x, P), Frac(p.ax, P), Frac(t2)).round();
    const int64_t ey = oracle::position(Frac(v2.y, P), Frac(p.ay, P), Frac(t2)).round();
    const MotionVector mv2 = extrapolateMv(p, T(t0), T(t1), T(t2));
    CHECK(std::abs(mv2.x - ex) <= 1);
    CHECK(std::abs(mv2.y - ey) <= 1);
  }
}

TEST_CASE("degenerate linear params continue like temporal scaling")
{
  std::mt19937 rng(41);
  int linear = 0;
  for (int i = 0; i < 20000; i++)
  {
    const int64_t t0 = rng() % 4 + 1, t1 = rng() % 4 + 1;
    // build chains with zero acceleration: mv0/t0 == mv1/t1
    const int32_t base = int32_t(rng() % 201) - 100;
    const MotionVector mv0{ int32_t(base * t0), int32_t(-base * t0) };
    const MotionVector mv1{ int32_t(base * t1), int32_t(-base * t1) };
    const UammParams p = deriveParams(mv0, mv1, T(t0), T(t1));
    if (p.kind != ModelKind::Linear)
    {
      CHECK(base == 0);
      continue;
    }
    linear++;
    for (int64_t t2 = 1; t2 <= 8; t2++)
    {
      CHECK(extrapolateMv(p, T(t0), T(t1), T(t2)) == tmvpScale(mv1, T(t2), T(t1)));
    }
  }
  CHECK(linear > 1000);
}
