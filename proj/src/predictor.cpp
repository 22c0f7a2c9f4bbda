#include "uamm/predictor.hpp"

#include <cstdlib>
#include <string>
#include <tuple>

#include "uamm/interpolation.hpp"

namespace uamm {

namespace {

bool insidePlane(const Plane& p, int x, int y, int w, int h)
{
  return x >= 0 && y >= 0 && x + w <= p.width() && y + h <= p.height();
}

void compensateInto(Plane& dst, int dstX, int dstY, const Plane& ref, int x, int y, int w, int h, MotionVector mv)
{
  for (int j = 0; j < h; j++)
  {
    for (int i = 0; i < w; i++)
    {
      const int x16          = ((x + i) << kMvFracBits) + mv.x;
      const int y16          = ((y + j) << kMvFracBits) + mv.y;
      dst.at(dstX + i, dstY + j) = bilinearSample(ref, x16, y16);
    }
  }
}

} // namespace

void validateBlock(const BlockSpec& block, int width, int height)
{
  if (block.w < kUnitSize || block.h < kUnitSize || block.w % kUnitSize != 0 || block.h % kUnitSize != 0)
  {
    throw Error("block size " + std::to_string(block.w) + "x" + std::to_string(block.h)
                + " must be a multiple of 4 and at least 4x4");
  }
  if (block.x < 0 || block.y < 0 || block.x + block.w > width || block.y + block.h > height)
  {
    throw Error("block at (" + std::to_string(block.x) + "," + std::to_string(block.y) + ") exceeds picture "
                + std::to_string(width) + "x" + std::to_string(height));
  }
}

std::string_view toString(PredictionMode mode)
{
  switch (mode)
  {
  case PredictionMode::UniformBaseline: return "uniform";
  case PredictionMode::UammRefined: return "uamm";
  }
  return "unknown";
}

uint64_t blockSad(const Plane& src, const Plane& ref, const BlockSpec& block, int dx, int dy)
{
  uint64_t sad = 0;
  if (insidePlane(ref, block.x + dx, block.y + dy, block.w, block.h))
  {
    for (int j = 0; j < block.h; j++)
    {
      const Pel* s = src.samples().data() + static_cast<size_t>(block.y + j) * src.width() + block.x;
      const Pel* r = ref.samples().data() + static_cast<size_t>(block.y + dy + j) * ref.width() + block.x + dx;
      for (int i = 0; i < block.w; i++)
      {
        sad += static_cast<uint64_t>(std::abs(int(s[i]) - int(r[i])));
      }
    }
    return sad;
  }
  for (int j = 0; j < block.h; j++)
  {
    for (int i = 0; i < block.w; i++)
    {
      const int s = src.at(block.x + i, block.y + j);
      const int r = ref.atClamped(block.x + dx + i, block.y + dy + j);
      sad += static_cast<uint64_t>(std::abs(s - r));
    }
  }
  return sad;
}

uint64_t patchSad(const Plane& src, const BlockSpec& block, const Plane& patch)
{
  uint64_t sad = 0;
  for (int j = 0; j < block.h; j++)
  {
    for (int i = 0; i < block.w; i++)
    {
      sad += static_cast<uint64_t>(std::abs(int(src.at(block.x + i, block.y + j)) - int(patch.at(i, j))));
    }
  }
  return sad;
}

MotionVector fullSearchMe(const Plane& src, const Plane& ref, const BlockSpec& block, int range)
{
  if (range < 0)
  {
    throw Error("search range must be >= 0, got " + std::to_string(range));
  }
  validateBlock(block, src.width(), src.height());

  auto key = [](uint64_t sad, int dx, int dy) { return std::make_tuple(sad, std::abs(dx) + std::abs(dy), dy, dx); };

  int bestX     = 0;
  int bestY     = 0;
  auto bestKey  = key(blockSad(src, ref, block, 0, 0), 0, 0);
  for (int dy = -range; dy <= range; dy++)
  {
    for (int dx = -range; dx <= range; dx++)
    {
      const auto k = key(blockSad(src, ref, block, dx, dy), dx, dy);
      if (k < bestKey)
      {
        bestKey = k;
        bestX   = dx;
        bestY   = dy;
      }
    }
  }
  return { toMvComponent(int64_t{ bestX } * kMvUnitsPerPel), toMvComponent(int64_t{ bestY } * kMvUnitsPerPel) };
}

Plane motionCompensate(const Plane& ref, const BlockSpec& block, MotionVector mv)
{
  if (!mv.inRange())
  {
    throw OverflowError("MV " + mv.toString() + " exceeds MV range");
  }
  Plane out(block.w, block.h);
  compensateInto(out, 0, 0, ref, block.x, block.y, block.w, block.h, mv);
  return out;
}

CorrectionResult correctMvs(const Grid<MotionVector>& mvs, MotionVector initial, int deltaMax)
{
  if (deltaMax < 0)
  {
    throw Error("delta_max must be >= 0, got " + std::to_string(deltaMax));
  }
  CorrectionResult res{ mvs, 0 };
  for (MotionVector& mv: res.mvs.cells())
  {
    const MotionVector clamped{ std::clamp(mv.x, initial.x - deltaMax, initial.x + deltaMax),
                                std::clamp(mv.y, initial.y - deltaMax, initial.y + deltaMax) };
    if (clamped != mv)
    {
      res.correctedCount++;
      mv = clamped;
    }
  }
  if (2 * static_cast<size_t>(res.correctedCount) > res.mvs.size())
  {
    for (MotionVector& mv: res.mvs.cells())
    {
      mv = initial;
    }
  }
  return res;
}

PredictionResult predictUniform(const FrameBuffer& src, const FrameBuffer& ref, const BlockSpec& block, int range)
{
  PredictionResult res;
  res.mode        = PredictionMode::UniformBaseline;
  res.initialMv   = fullSearchMe(src.luma, ref.luma, block, range);
  res.subblockMvs = Grid<MotionVector>(block.w / kUnitSize, block.h / kUnitSize, res.initialMv);
  res.pred        = motionCompensate(ref.luma, block, res.initialMv);
  res.sad         = patchSad(src.luma, block, res.pred);
  return res;
}

PredictionResult predictUamm(const FrameBuffer& src, const FrameBuffer& ref, const MotionField& refField,
                             const BlockSpec& block, int range, const UammTiming& timing, int deltaMax)
{
  if (refField.poc() != ref.poc)
  {
    throw Error("reference field POC " + std::to_string(refField.poc()) + " does not match reference picture POC "
                + std::to_string(ref.poc));
  }

  PredictionResult res;
  res.initialMv = fullSearchMe(src.luma, ref.luma, block, range);

  const Grid<UammParams> params = inheritParams(refField, block, res.initialMv);
  Grid<MotionVector> mvs(params.width(), params.height(), res.initialMv);
  bool extrapolated = false;
  for (int sy = 0; sy < params.height(); sy++)
  {
    for (int sx = 0; sx < params.width(); sx++)
    {
      const UammParams& p = params(sx, sy);
      if (!p.available())
      {
        continue;
      }
      try
      {
        // params are forward-signed; the sub-block MV points back into ref
        mvs(sx, sy)  = -extrapolateMv(p, timing.t0, timing.t1, timing.t2);
        extrapolated = true;
      }
      catch (const OverflowError&)
      {
        // unrepresentable extrapolation: keep the searched MV
      }
    }
  }

  CorrectionResult corrected = correctMvs(mvs, res.initialMv, deltaMax);
  res.subblockMvs            = std::move(corrected.mvs);
  res.correctedCount         = corrected.correctedCount;
  res.mode                   = extrapolated ? PredictionMode::UammRefined : PredictionMode::UniformBaseline;

  res.pred = Plane(block.w, block.h);
  for (int sy = 0; sy < res.subblockMvs.height(); sy++)
  {
    for (int sx = 0; sx < res.subblockMvs.width(); sx++)
    {
      compensateInto(res.pred, sx * kUnitSize, sy * kUnitSize, ref.luma, block.x + sx * kUnitSize,
                     block.y + sy * kUnitSize, kUnitSize, kUnitSize, res.subblockMvs(sx, sy));
    }
  }
  res.sad = patchSad(src.luma, block, res.pred);
  return res;
}

} // namespace uamm
