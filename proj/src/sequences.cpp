#include "uamm/sequences.hpp"

#include <fstream>
#include <random>
#include <string>

#include "uamm/interpolation.hpp"

namespace uamm {

namespace {

int floorDiv(int64_t a, int64_t b) { return static_cast<int>(a >= 0 ? a / b : -((-a + b - 1) / b)); }
int ceilDiv(int64_t a, int64_t b) { return -floorDiv(-a, b); }

int chromaDim(int v) { return (v + 1) / 2; }

void readPlane(std::istream& is, Plane& plane)
{
  is.read(reinterpret_cast<char*>(plane.samples().data()), static_cast<std::streamsize>(plane.samples().size()));
}

void writePlane(std::ostream& os, const Plane& plane)
{
  os.write(reinterpret_cast<const char*>(plane.samples().data()), static_cast<std::streamsize>(plane.samples().size()));
}

Plane makeBackground(const Background& bg, int width, int height)
{
  Plane p(width, height);
  switch (bg.kind)
  {
  case BackgroundKind::Flat:
    if (bg.level < 0 || bg.level > 255)
    {
      throw ConfigError("flat background level must be in [0, 255], got " + std::to_string(bg.level));
    }
    std::fill(p.samples().begin(), p.samples().end(), static_cast<Pel>(bg.level));
    break;
  case BackgroundKind::Noise:
  {
    std::mt19937 rng(bg.seed);
    for (Pel& v: p.samples())
    {
      v = static_cast<Pel>(rng() % 256);
    }
    break;
  }
  case BackgroundKind::Ramp:
    for (int y = 0; y < height; y++)
    {
      for (int x = 0; x < width; x++)
      {
        p.at(x, y) = static_cast<Pel>((x + y) * 255 / std::max(1, width + height - 2));
      }
    }
    break;
  }
  return p;
}

} // namespace

size_t yuv420FrameBytes(int width, int height)
{
  return static_cast<size_t>(width) * height + 2 * static_cast<size_t>(chromaDim(width)) * chromaDim(height);
}

std::vector<FrameBuffer> readYuv(const std::filesystem::path& path, int width, int height, int count)
{
  if (width <= 0 || height <= 0)
  {
    throw ConfigError("invalid YUV dimensions " + std::to_string(width) + "x" + std::to_string(height) + " for "
                      + path.string());
  }
  if (count < 0)
  {
    throw ConfigError("frame count must be >= 0");
  }
  std::ifstream is(path, std::ios::binary);
  if (!is)
  {
    throw ConfigError("cannot open " + path.string());
  }
  const size_t frameBytes = yuv420FrameBytes(width, height);
  const size_t expected   = frameBytes * static_cast<size_t>(count);
  std::error_code ec;
  const auto actual = std::filesystem::file_size(path, ec);
  if (ec)
  {
    throw ConfigError("cannot stat " + path.string() + ": " + ec.message());
  }
  if (actual < expected)
  {
    const size_t badFrame = actual / frameBytes;
    throw Error(path.string() + ": expected at least " + std::to_string(expected) + " bytes for " + std::to_string(count)
                + " frames of " + std::to_string(width) + "x" + std::to_string(height) + ", got " + std::to_string(actual)
                + " (frame " + std::to_string(badFrame) + " truncated at byte offset " + std::to_string(actual) + ")");
  }

  std::vector<FrameBuffer> frames;
  frames.reserve(static_cast<size_t>(count));
  for (int k = 0; k < count; k++)
  {
    FrameBuffer f;
    f.poc  = k;
    f.luma = Plane(width, height);
    f.cb   = Plane(chromaDim(width), chromaDim(height));
    f.cr   = Plane(chromaDim(width), chromaDim(height));
    readPlane(is, f.luma);
    readPlane(is, *f.cb);
    readPlane(is, *f.cr);
    if (!is)
    {
      throw Error(path.string() + ": read failed at byte offset " + std::to_string(frameBytes * static_cast<size_t>(k)));
    }
    frames.push_back(std::move(f));
  }
  return frames;
}

void writeYuv(const std::filesystem::path& path, std::span<const FrameBuffer> frames)
{
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os)
  {
    throw Error("cannot open " + path.string() + " for writing");
  }
  for (const FrameBuffer& f: frames)
  {
    writePlane(os, f.luma);
    const Plane grey(chromaDim(f.width()), chromaDim(f.height()), 128);
    writePlane(os, f.cb ? *f.cb : grey);
    writePlane(os, f.cr ? *f.cr : grey);
  }
  if (!os)
  {
    throw Error("write failed for " + path.string());
  }
}

MotionVector objectPosition(const TrajectorySpec& spec, int frame)
{
  const int64_t k = frame;
  auto axis       = [k](int64_t start, int64_t v0, int64_t a) {
    return checkedAdd(checkedAdd(start, checkedMul(v0, k)), checkedMul(a, checkedMul(k, k)) / 2);
  };
  return { toMvComponent(axis(spec.startX, spec.v0x, spec.ax)), toMvComponent(axis(spec.startY, spec.v0y, spec.ay)) };
}

PixelRect objectFootprint(const TrajectorySpec& spec, int frame)
{
  const MotionVector pos = objectPosition(spec, frame);
  const int x0           = ceilDiv(pos.x, kMvUnitsPerPel);
  const int y0           = ceilDiv(pos.y, kMvUnitsPerPel);
  const int x1 = floorDiv(pos.x + int64_t{ kMvUnitsPerPel } * (spec.patch.width - 1), kMvUnitsPerPel);
  const int y1 = floorDiv(pos.y + int64_t{ kMvUnitsPerPel } * (spec.patch.height - 1), kMvUnitsPerPel);
  return { x0, y0, x1 - x0 + 1, y1 - y0 + 1 };
}

Plane makePatch(const PatchSpec& spec)
{
  if (spec.width <= 0 || spec.height <= 0)
  {
    throw ConfigError("patch dimensions must be positive");
  }
  Plane p(spec.width, spec.height);
  std::mt19937 rng(spec.seed);
  switch (spec.texture)
  {
  case TextureKind::Noise:
    for (Pel& v: p.samples())
    {
      v = static_cast<Pel>(40 + rng() % 177);
    }
    break;
  case TextureKind::ColumnNoise:
  {
    if (spec.height > 64)
    {
      throw ConfigError("column_noise patches are limited to 64 rows");
    }
    std::vector<int> column(static_cast<size_t>(spec.width));
    for (int& c: column)
    {
      c = 16 + static_cast<int>(rng() % 113);
    }
    for (int y = 0; y < spec.height; y++)
    {
      for (int x = 0; x < spec.width; x++)
      {
        p.at(x, y) = static_cast<Pel>(column[static_cast<size_t>(x)] + 2 * y);
      }
    }
    break;
  }
  }
  return p;
}

SyntheticSequence synthSequence(const TrajectorySpec& spec, int nFrames, int width, int height)
{
  if (width <= 0 || height <= 0 || nFrames <= 0)
  {
    throw ConfigError("synthetic sequence needs positive width, height and frame count");
  }
  if (spec.ax % 2 != 0 || spec.ay % 2 != 0)
  {
    throw ConfigError("acceleration must be even in 1/16-pel units so every position is exact");
  }

  const Plane patch      = makePatch(spec.patch);
  const Plane background = makeBackground(spec.background, width, height);

  SyntheticSequence seq;
  for (int k = 0; k < nFrames; k++)
  {
    const PixelRect fp = objectFootprint(spec, k);
    if (fp.x < 0 || fp.y < 0 || fp.x + fp.w > width || fp.y + fp.h > height)
    {
      throw ConfigError("object leaves the " + std::to_string(width) + "x" + std::to_string(height)
                        + " picture at frame " + std::to_string(k));
    }
    const MotionVector pos = objectPosition(spec, k);

    FrameBuffer f;
    f.poc  = k;
    f.luma = background;
    for (int y = fp.y; y < fp.y + fp.h; y++)
    {
      for (int x = fp.x; x < fp.x + fp.w; x++)
      {
        f.luma.at(x, y) = bilinearSample(patch, x * kMvUnitsPerPel - pos.x, y * kMvUnitsPerPel - pos.y);
      }
    }
    seq.frames.push_back(std::move(f));
    seq.groundTruth.push_back(k == 0 ? std::nullopt : std::optional(pos - objectPosition(spec, k - 1)));
  }
  return seq;
}

MotionField groundTruthField(const TrajectorySpec& spec, const SyntheticSequence& seq, int frame)
{
  const FrameBuffer& f = seq.frames.at(static_cast<size_t>(frame));
  MotionField field    = MotionField::forPicture(f.poc, f.width(), f.height());
  if (frame == 0)
  {
    return field;
  }
  const PixelRect fp     = objectFootprint(spec, frame);
  const MotionVector bwd = -*seq.groundTruth[static_cast<size_t>(frame)];
  for (int cy = 0; cy < field.heightUnits(); cy++)
  {
    for (int cx = 0; cx < field.widthUnits(); cx++)
    {
      const int px       = cx * kUnitSize + kUnitSize / 2;
      const int py       = cy * kUnitSize + kUnitSize / 2;
      const bool onObject = px >= fp.x && px < fp.x + fp.w && py >= fp.y && py < fp.y + fp.h;
      field.setInter(cx, cy, onObject ? bwd : MotionVector{}, TimeInterval(1));
    }
  }
  return field;
}

} // namespace uamm
