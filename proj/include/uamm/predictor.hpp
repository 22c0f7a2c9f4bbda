#pragma once

#include <cstdint>
#include <string_view>

#include "uamm/frame.hpp"
#include "uamm/grid.hpp"
#include "uamm/kinematics.hpp"
#include "uamm/motion_field.hpp"

namespace uamm {

// Coding block in pixels. w and h are multiples of 4.
using BlockSpec = PixelRect;

inline constexpr int kDefaultBlockSize = 16;
inline constexpr int kDefaultDeltaMax  = 32;

// Throws unless the block is 4-aligned in size, at least 4x4 and inside a
// width x height picture.
void validateBlock(const BlockSpec& block, int width, int height);

enum class PredictionMode : uint8_t
{
  UniformBaseline,
  UammRefined,
};

std::string_view toString(PredictionMode mode);

struct PredictionResult
{
  PredictionMode mode = PredictionMode::UniformBaseline;
  MotionVector initialMv;
  Grid<MotionVector> subblockMvs; // (w/4) x (h/4)
  Plane pred;                     // w x h
  uint64_t sad       = 0;
  int correctedCount = 0;

  bool operator==(const PredictionResult&) const = default;
};

// SAD between the block of src and the block of ref displaced by whole pels.
uint64_t blockSad(const Plane& src, const Plane& ref, const BlockSpec& block, int dx, int dy);

// SAD between the block of src and a w x h patch.
uint64_t patchSad(const Plane& src, const BlockSpec& block, const Plane& patch);

// Exhaustive integer-pel search over [-range, range]^2, returned in 1/16-pel
// units. Ties prefer the smaller |mvx|+|mvy|, then the smaller mvy, then the
// smaller mvx.
MotionVector fullSearchMe(const Plane& src, const Plane& ref, const BlockSpec& block, int range);

// Bilinear motion compensation on the 1/16-pel grid with border replication.
Plane motionCompensate(const Plane& ref, const BlockSpec& block, MotionVector mv);

struct CorrectionResult
{
  Grid<MotionVector> mvs;
  int correctedCount = 0;
};

// Clamps each sub-block MV per axis into initial +/- deltaMax. When more
// than half of the sub-blocks needed clamping, every MV is reset to the
// initial MV. correctedCount counts clamped sub-blocks before the reset.
CorrectionResult correctMvs(const Grid<MotionVector>& mvs, MotionVector initial, int deltaMax);

// Uniform-speed baseline: one MV for the whole block.
PredictionResult predictUniform(const FrameBuffer& src, const FrameBuffer& ref, const BlockSpec& block, int range);

struct UammTiming
{
  TimeInterval t0{ 1 };
  TimeInterval t1{ 1 };
  TimeInterval t2{ 1 };
};

// UAMM refinement: the searched MV locates the reference block, every 4x4
// sub-block inherits the parameters found there and extrapolates its own
// MV, the MVs are corrected, and each sub-block is compensated separately.
// Sub-blocks with unavailable parameters keep the searched MV. When no
// sub-block could extrapolate, the result equals predictUniform exactly,
// mode included.
PredictionResult predictUamm(const FrameBuffer& src, const FrameBuffer& ref, const MotionField& refField,
                             const BlockSpec& block, int range, const UammTiming& timing,
                             int deltaMax = kDefaultDeltaMax);

} // namespace uamm
