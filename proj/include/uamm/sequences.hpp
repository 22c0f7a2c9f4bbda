#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "uamm/frame.hpp"
#include "uamm/motion_field.hpp"
#include "uamm/mv.hpp"

namespace uamm {

// ---------------------------------------------------------------------------
// Raw 8-bit YUV 4:2:0 planar files, no header. Chroma planes are
// ceil(w/2) x ceil(h/2).
// ---------------------------------------------------------------------------

size_t yuv420FrameBytes(int width, int height);

// Reads count frames; POC = frame index. Throws on bad dimensions or when the
// file is shorter than count frames (the message names both lengths).
std::vector<FrameBuffer> readYuv(const std::filesystem::path& path, int width, int height, int count);

// Frames without chroma are written with mid-grey (128) chroma planes.
void writeYuv(const std::filesystem::path& path, std::span<const FrameBuffer> frames);

// ---------------------------------------------------------------------------
// Synthetic constant-acceleration sequences
// ---------------------------------------------------------------------------

enum class BackgroundKind : uint8_t
{
  Flat,
  Noise,
  Ramp,
};

struct Background
{
  BackgroundKind kind = BackgroundKind::Flat;
  int level           = 64; // Flat
  uint32_t seed       = 0;  // Noise
};

enum class TextureKind : uint8_t
{
  // i.i.d. samples
  Noise,
  // random per column plus a vertical gradient of 2 per row; bilinear
  // half-pel shifts of this texture are exact in the vertical direction
  ColumnNoise,
};

struct PatchSpec
{
  int width           = 16;
  int height          = 16;
  TextureKind texture = TextureKind::Noise;
  uint32_t seed       = 1;
};

// Object path in 1/16-pel units; one frame is one tick.
// position(k) = start + v0*k + a*k^2/2
struct TrajectorySpec
{
  int32_t startX = 0;
  int32_t startY = 0;
  int32_t v0x    = 0;
  int32_t v0y    = 0;
  int32_t ax     = 0;
  int32_t ay     = 0;
  PatchSpec patch;
  Background background;
};

MotionVector objectPosition(const TrajectorySpec& spec, int frame);

// Pixels whose sampling position falls inside the patch in the given frame.
PixelRect objectFootprint(const TrajectorySpec& spec, int frame);

Plane makePatch(const PatchSpec& spec);

struct SyntheticSequence
{
  std::vector<FrameBuffer> frames;
  // forward displacement of the object from frame k-1 to frame k; empty for k = 0
  std::vector<std::optional<MotionVector>> groundTruth;
};

// Throws when the object leaves the picture, when an acceleration is odd
// (positions would not be whole 1/16-pel units), or on bad dimensions.
SyntheticSequence synthSequence(const TrajectorySpec& spec, int nFrames, int width, int height);

// Motion buffer as an ideal encoder would store it for frame k: cells whose
// center lies on the object carry the backward ground-truth MV, every other
// cell the zero MV of the static background. Frame 0 is all intra.
MotionField groundTruthField(const TrajectorySpec& spec, const SyntheticSequence& seq, int frame);

} // namespace uamm
