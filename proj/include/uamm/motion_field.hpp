#pragma once

// Per-picture motion buffer at 4x4 granularity.
//
// Stored MVs point backward: a cell of picture P with mv m and distance T
// is predicted from picture P-T at (position + m). UAMM parameters held in
// the cells use the forward (physical motion) sign, so a trajectory moving
// right has positive v0x regardless of how the MVs are stored.

#include <iosfwd>
#include <optional>
#include <vector>

#include "uamm/grid.hpp"
#include "uamm/kinematics.hpp"

namespace uamm {

inline constexpr int kUnitSize = 4;

struct FieldCell
{
  std::optional<MotionVector> mv;
  std::optional<TimeInterval> refDistance;
  UammParams params;

  static FieldCell intra() { return {}; }
  static FieldCell inter(MotionVector mv, TimeInterval dist) { return { mv, dist, UammParams::unavailable() }; }

  bool hasMv() const { return mv.has_value(); }

  bool operator==(const FieldCell&) const = default;
};

struct PixelRect
{
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  bool operator==(const PixelRect&) const = default;
};

class MotionField
{
public:
  MotionField(int poc, int widthUnits, int heightUnits);

  // Field covering a widthPx x heightPx picture (dimensions rounded up to units).
  static MotionField forPicture(int poc, int widthPx, int heightPx);

  int poc() const { return m_poc; }
  int widthUnits() const { return m_cells.width(); }
  int heightUnits() const { return m_cells.height(); }

  const FieldCell& cell(int cx, int cy) const { return m_cells(cx, cy); }

  // Cell containing pixel (px, py). Throws when the pixel is outside the field.
  const FieldCell& cellAt(int px, int py) const;

  // Cell containing the pixel, with the pixel clamped into the field first.
  const FieldCell& cellAtClamped(int px, int py) const;

  void setInter(int cx, int cy, MotionVector mv, TimeInterval dist);
  void setIntra(int cx, int cy);
  void setParams(int cx, int cy, const UammParams& p);

  const Grid<FieldCell>& cells() const { return m_cells; }

  bool operator==(const MotionField&) const = default;

private:
  int m_poc;
  Grid<FieldCell> m_cells;
};

// Fills the UAMM parameters of curr by chaining each cell's MV into prev,
// the picture curr's MVs reference. Cells whose chain breaks degrade to the
// linear model built from their own MV; cells without an MV stay unavailable.
MotionField deriveFieldParams(const MotionField& curr, const MotionField& prev);

// Parameters for every 4x4 sub-block of block, found by displacing each
// sub-block center by mvC into field. Row-major, (w/4) x (h/4).
Grid<UammParams> inheritParams(const MotionField& field, const PixelRect& block, MotionVector mvC);

// Debug dump, one row per cell:
// poc,cx,cy,mvx,mvy,ref_dist,kind,v0x,v0y,ax,ay
void writeFieldCsv(std::ostream& os, const MotionField& field);

} // namespace uamm
