#include "doctest_setup.hpp"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "uamm/interpolation.hpp"
#include "uamm/predictor.hpp"
#include "uamm/sequences.hpp"

using namespace uamm;

namespace {

Plane noisePlane(int w, int h, uint32_t seed)
{
  Plane p(w, h);
  std::mt19937 rng(seed);
  for (Pel& v: p.samples())
  {
    v = static_cast<Pel>(rng() % 256);
  }
  return p;
}

// out(x, y) = in(x - dx, y - dy), borders replicated
Plane shifted(const Plane& in, int dx, int dy)
{
  Plane out(in.width(), in.height());
  for (int y = 0; y < in.height(); y++)
  {
    for (int x = 0; x < in.width(); x++)
    {
      out.at(x, y) = in.atClamped(x - dx, y - dy);
    }
  }
  return out;
}

FrameBuffer frame(Plane p, int poc)
{
  FrameBuffer f;
  f.poc  = poc;
  f.luma = std::move(p);
  return f;
}

Grid<MotionVector> grid2x2(MotionVector a, MotionVector b, MotionVector c, MotionVector d)
{
  Grid<MotionVector> g(2, 2);
  g(0, 0) = a;
  g(1, 0) = b;
  g(0, 1) = c;
  g(1, 1) = d;
  return g;
}

} // namespace

TEST_CASE("validateBlock")
{
  CHECK_NOTHROW(validateBlock({ 0, 0, 16, 16 }, 64, 64));
  CHECK_THROWS_AS(validateBlock({ 0, 0, 6, 8 }, 64, 64), Error);
  CHECK_THROWS_AS(validateBlock({ 0, 0, 0, 8 }, 64, 64), Error);
  CHECK_THROWS_AS(validateBlock({ 56, 0, 16, 16 }, 64, 64), Error);
  CHECK_THROWS_AS(validateBlock({ -4, 0, 16, 16 }, 64, 64), Error);
}

TEST_CASE("fullSearchMe")
{
  const Plane base = noisePlane(48, 48, 1);

  CHECK(fullSearchMe(base, base, { 16, 16, 16, 16 }, 4) == MotionVector(0, 0));

  SUBCASE("recovers an integer shift")
  {
    // ref content sits 3 pels right of src content
    const Plane ref = shifted(base, 3, 0);
    CHECK(fullSearchMe(base, ref, { 16, 16, 16, 16 }, 4) == MotionVector(48, 0));
    const Plane ref2 = shifted(base, -2, 1);
    CHECK(fullSearchMe(base, ref2, { 16, 16, 16, 16 }, 4) == MotionVector(-32, 16));
  }
  SUBCASE("flat pictures prefer the zero MV")
  {
    const Plane flat(32, 32, 90);
    CHECK(fullSearchMe(flat, flat, { 8, 8, 8, 8 }, 5) == MotionVector(0, 0));
  }
  SUBCASE("tie-break ordering")
  {
    // a vertical edge: every vertical offset matches equally well
    Plane src(32, 32, 0);
    for (int y = 0; y < 32; y++)
    {
      for (int x = 16; x < 32; x++)
      {
        src.at(x, y) = 200;
      }
    }
    const Plane ref = shifted(src, 0, 0);
    CHECK(fullSearchMe(src, ref, { 12, 8, 8, 8 }, 3) == MotionVector(0, 0));
    // edge displaced by one pel: (+1, dy) for all dy tie, the smallest norm wins
    const Plane ref2 = shifted(src, 1, 0);
    CHECK(fullSearchMe(src, ref2, { 12, 8, 8, 8 }, 3) == MotionVector(16, 0));
  }
  SUBCASE("matches brute force near the borders")
  {
    std::mt19937 rng(5);
    const Plane ref = noisePlane(32, 32, 2);
    for (int i = 0; i < 40; i++)
    {
      const BlockSpec b{ int(rng() % 7) * 4, int(rng() % 7) * 4, 8, 8 };
      CHECK(fullSearchMe(base, ref, b, 6) == oracle::bruteForceMe(base, ref, b, 6));
    }
  }
  CHECK_THROWS_AS(fullSearchMe(base, base, { 0, 0, 16, 16 }, -1), Error);
}

TEST_CASE("motionCompensate")
{
  const Plane base = noisePlane(40, 40, 4);

  SUBCASE("zero MV copies the co-located block")
  {
    const Plane out = motionCompensate(base, { 8, 12, 16, 8 }, {});
    for (int j = 0; j < 8; j++)
    {
      for (int i = 0; i < 16; i++)
      {
        CHECK(out.at(i, j) == base.at(8 + i, 12 + j));
      }
    }
  }
  SUBCASE("half-pel on a horizontal ramp")
  {
    Plane ramp(32, 8);
    for (int y = 0; y < 8; y++)
    {
      for (int x = 0; x < 32; x++)
      {
        ramp.at(x, y) = static_cast<Pel>(x);
      }
    }
    const Plane out = motionCompensate(ramp, { 4, 0, 16, 8 }, { 8, 0 });
    for (int j = 0; j < 8; j++)
    {
      for (int i = 0; i < 16; i++)
      {
        // x + 0.5 rounds up
        CHECK(out.at(i, j) == 4 + i + 1);
      }
    }
  }
  SUBCASE("MV far outside the picture replicates the border")
  {
    const Plane out = motionCompensate(base, { 0, 0, 8, 8 }, { -16 * 200, -16 * 200 });
    for (Pel v: out.samples())
    {
      CHECK(v == base.at(0, 0));
    }
    const Plane out2 = motionCompensate(base, { 0, 0, 8, 8 }, { 16 * 200, 0 });
    for (int j = 0; j < 8; j++)
    {
      CHECK(out2.at(3, j) == base.at(39, j));
    }
  }
  SUBCASE("integer MVs copy samples without interpolation")
  {
    std::mt19937 rng(8);
    for (int i = 0; i < 50; i++)
    {
      const MotionVector mv{ (int32_t(rng() % 17) - 8) * 16, (int32_t(rng() % 17) - 8) * 16 };
      const Plane out = motionCompensate(base, { 12, 12, 8, 8 }, mv);
      for (int y = 0; y < 8; y++)
      {
        for (int x = 0; x < 8; x++)
        {
          CHECK(out.at(x, y) == base.at(12 + x + mv.x / 16, 12 + y + mv.y / 16));
        }
      }
    }
  }
  SUBCASE("agrees with floating-point bilinear")
  {
    std::mt19937 rng(9);
    for (int i = 0; i < 200; i++)
    {
      const MotionVector mv{ int32_t(rng() % 257) - 128, int32_t(rng() % 257) - 128 };
      const Plane out = motionCompensate(base, { 16, 16, 4, 4 }, mv);
      for (int y = 0; y < 4; y++)
      {
        for (int x = 0; x < 4; x++)
        {
          const int expect = oracle::bilinearReference(base, 16 + x + mv.x / 16.0, 16 + y + mv.y / 16.0);
          CHECK(int(out.at(x, y)) == expect);
        }
      }
    }
  }
  CHECK_THROWS_AS(motionCompensate(base, { 0, 0, 4, 4 }, { kMvMax + 1, 0 }), OverflowError);
}

TEST_CASE("correctMvs")
{
  const MotionVector init{ 16, -32 };
  SUBCASE("MVs inside the band are unchanged")
  {
    const auto g   = grid2x2(init, init + MotionVector{ 32, 0 }, init - MotionVector{ 0, 32 }, init);
    const auto res = correctMvs(g, init, 32);
    CHECK(res.mvs == g);
    CHECK(res.correctedCount == 0);
  }
  SUBCASE("single outlier is clamped")
  {
    const auto g   = grid2x2(init, init + MotionVector{ 40, 0 }, init, init);
    const auto res = correctMvs(g, init, 32);
    CHECK(res.mvs(1, 0) == init + MotionVector{ 32, 0 });
    CHECK(res.mvs(0, 0) == init);
    CHECK(res.correctedCount == 1);
  }
  SUBCASE("majority out of band resets everything")
  {
    const auto g   = grid2x2(init + MotionVector{ 40, 0 }, init - MotionVector{ 0, 50 }, init + MotionVector{ 33, 33 },
                             init + MotionVector{ 5, 5 });
    const auto res = correctMvs(g, init, 32);
    CHECK(res.correctedCount == 3);
    for (const MotionVector& mv: res.mvs)
    {
      CHECK(mv == init);
    }
  }
  SUBCASE("exactly half clamped is not a majority")
  {
    const auto g   = grid2x2(init + MotionVector{ 40, 0 }, init - MotionVector{ 0, 50 }, init, init);
    const auto res = correctMvs(g, init, 32);
    CHECK(res.correctedCount == 2);
    CHECK(res.mvs(0, 0) == init + MotionVector{ 32, 0 });
    CHECK(res.mvs(1, 0) == init - MotionVector{ 0, 32 });
  }
  SUBCASE("zero band")
  {
    const auto g   = grid2x2(init, init, init, init + MotionVector{ 1, 0 });
    const auto res = correctMvs(g, init, 0);
    CHECK(res.correctedCount == 1);
    CHECK(res.mvs(1, 1) == init);
  }
  CHECK_THROWS_AS(correctMvs(Grid<MotionVector>(2, 2), init, -1), Error);
}

TEST_CASE("predictUniform")
{
  const Plane base = noisePlane(64, 64, 12);
  SUBCASE("static scene")
  {
    const auto r = predictUniform(frame(base, 1), frame(base, 0), { 16, 16, 16, 16 }, 4);
    CHECK(r.initialMv == MotionVector(0, 0));
    CHECK(r.sad == 0);
    CHECK(r.mode == PredictionMode::UniformBaseline);
    CHECK(r.subblockMvs.width() == 4);
    CHECK(r.subblockMvs.height() == 4);
  }
  SUBCASE("integer translation within range")
  {
    const Plane src = shifted(base, 2, -3);
    const auto r    = predictUniform(frame(src, 1), frame(base, 0), { 16, 16, 16, 16 }, 4);
    CHECK(r.initialMv == MotionVector(-32, 48));
    CHECK(r.sad == 0);
    for (const MotionVector& mv: r.subblockMvs)
    {
      CHECK(mv == r.initialMv);
    }
  }
  SUBCASE("sad equals the sum of absolute differences of the prediction")
  {
    const Plane src = noisePlane(64, 64, 13);
    const auto r    = predictUniform(frame(src, 1), frame(base, 0), { 8, 24, 16, 8 }, 2);
    uint64_t s      = 0;
    for (int j = 0; j < 8; j++)
    {
      for (int i = 0; i < 16; i++)
      {
        s += std::abs(int(src.at(8 + i, 24 + j)) - int(r.pred.at(i, j)));
      }
    }
    CHECK(r.sad == s);
  }
}

TEST_CASE("predictUamm")
{
  const Plane base = noisePlane(64, 64, 21);
  const Plane src  = shifted(base, 1, 1);
  const BlockSpec blk{ 16, 16, 16, 16 };

  SUBCASE("unavailable field falls back to the uniform result")
  {
    const MotionField field = MotionField::forPicture(0, 64, 64);
    const auto u            = predictUniform(frame(src, 1), frame(base, 0), blk, 4);
    const auto r            = predictUamm(frame(src, 1), frame(base, 0), field, blk, 4, {});
    CHECK(r == u);
  }
  SUBCASE("linear field extrapolates like temporal scaling")
  {
    MotionField cur  = MotionField::forPicture(0, 64, 64);
    MotionField prev = MotionField::forPicture(-1, 64, 64);
    for (int cy = 0; cy < 16; cy++)
    {
      for (int cx = 0; cx < 16; cx++)
      {
        cur.setInter(cx, cy, { -6, 10 }, TimeInterval(1));
        prev.setInter(cx, cy, { -6, 10 }, TimeInterval(1));
      }
    }
    cur = deriveFieldParams(cur, prev);
    for (int64_t t2 = 1; t2 <= 3; t2++)
    {
      const auto r = predictUamm(frame(src, 1), frame(base, 0), cur, blk, 4,
                                 { TimeInterval(1), TimeInterval(1), TimeInterval(t2) }, 1000);
      CHECK(r.mode == PredictionMode::UammRefined);
      for (const MotionVector& mv: r.subblockMvs)
      {
        CHECK(mv == tmvpScale({ -6, 10 }, TimeInterval(t2), TimeInterval(1)));
      }
    }
  }
  SUBCASE("garbage params are reset by the correction")
  {
    MotionField f = MotionField::forPicture(0, 64, 64);
    for (int cy = 0; cy < 16; cy++)
    {
      for (int cx = 0; cx < 16; cx++)
      {
        f.setInter(cx, cy, {}, TimeInterval(1));
        f.setParams(cx, cy, UammParams::fromScaled(900 * kPrec, 0, 0, 0));
      }
    }
    const auto u = predictUniform(frame(src, 1), frame(base, 0), blk, 4);
    const auto r = predictUamm(frame(src, 1), frame(base, 0), f, blk, 4, {});
    CHECK(r.correctedCount == 16);
    CHECK(r.mode == PredictionMode::UammRefined);
    CHECK(r.subblockMvs == u.subblockMvs);
    CHECK(r.pred == u.pred);
  }
  SUBCASE("field POC must match the reference")
  {
    const MotionField field = MotionField::forPicture(3, 64, 64);
    CHECK_THROWS_AS(predictUamm(frame(src, 1), frame(base, 0), field, blk, 4, {}), Error);
  }
}

TEST_CASE("exact recovery on an accelerating object")
{
  TrajectorySpec spec;
  spec.startX = 4 * 16;
  spec.startY = 4 * 16;
  spec.v0x    = 16;
  spec.v0y    = 0;
  spec.ax     = 32;
  spec.ay     = 16;
  spec.patch  = { 24, 24, TextureKind::ColumnNoise, 3 };
  const SyntheticSequence seq = synthSequence(spec, 6, 64, 64);

  std::vector<MotionField> fields;
  for (int k = 0; k < 6; k++)
  {
    MotionField f = groundTruthField(spec, seq, k);
    fields.push_back(k == 0 ? f : deriveFieldParams(f, fields.back()));
  }

  auto inside = [](const PixelRect& r, double x0, double y0, double x1, double y1) {
    return x0 >= r.x + 4 && y0 >= r.y + 4 && x1 < r.x + r.w - 4 && y1 < r.y + r.h - 4;
  };
  for (int k = 3; k < 6; k++)
  {
    const PixelRect fp    = objectFootprint(spec, k);
    const PixelRect prev  = objectFootprint(spec, k - 1);
    const MotionVector gt = -*seq.groundTruth[static_cast<size_t>(k)];
    int checked           = 0;
    // sub-blocks one motion cell inside the object, in this frame and in the reference
    for (int y = 0; y + 4 <= 64; y += 4)
    {
      for (int x = 0; x + 4 <= 64; x += 4)
      {
        const double rx = x + gt.x / 16.0, ry = y + gt.y / 16.0;
        if (!inside(fp, x, y, x + 3, y + 3) || !inside(prev, std::floor(rx), std::floor(ry), std::ceil(rx + 3), std::ceil(ry + 3)))
        {
          continue;
        }
        checked++;
        const BlockSpec b{ x, y, 4, 4 };
        const auto r = predictUamm(seq.frames[static_cast<size_t>(k)], seq.frames[static_cast<size_t>(k - 1)],
                                   fields[static_cast<size_t>(k - 1)], b, 16, {});
        CHECK(r.subblockMvs(0, 0) == gt);
        CHECK(r.sad == 0);
        CHECK(predictUniform(seq.frames[static_cast<size_t>(k)], seq.frames[static_cast<size_t>(k - 1)], b, 16).sad > 0);
      }
    }
    CHECK(checked > 0);
  }
}
