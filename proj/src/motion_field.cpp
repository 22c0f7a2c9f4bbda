#include "uamm/motion_field.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "uamm/parallel.hpp"

namespace uamm {

namespace {

struct PelPos
{
  int x;
  int y;
};

PelPos unitCenter(int cx, int cy) { return { cx * kUnitSize + kUnitSize / 2, cy * kUnitSize + kUnitSize / 2 }; }

PelPos displace(PelPos p, MotionVector mv) { return { p.x + mvToPelRounded(mv.x), p.y + mvToPelRounded(mv.y) }; }

UammParams linearFallback(MotionVector fwd, TimeInterval t1)
{
  return UammParams::fromScaled(divRound(checkedMul(fwd.x, kPrec), t1.ticks()),
                                divRound(checkedMul(fwd.y, kPrec), t1.ticks()), 0, 0);
}

} // namespace

MotionField::MotionField(int poc, int widthUnits, int heightUnits) : m_poc(poc)
{
  if (widthUnits <= 0 || heightUnits <= 0)
  {
    throw Error("motion field dimensions must be positive");
  }
  m_cells = Grid<FieldCell>(widthUnits, heightUnits, FieldCell::intra());
}

MotionField MotionField::forPicture(int poc, int widthPx, int heightPx)
{
  return MotionField(poc, (widthPx + kUnitSize - 1) / kUnitSize, (heightPx + kUnitSize - 1) / kUnitSize);
}

const FieldCell& MotionField::cellAt(int px, int py) const
{
  if (px < 0 || py < 0 || px >= widthUnits() * kUnitSize || py >= heightUnits() * kUnitSize)
  {
    throw Error("pixel (" + std::to_string(px) + "," + std::to_string(py) + ") outside motion field of "
                + std::to_string(widthUnits() * kUnitSize) + "x" + std::to_string(heightUnits() * kUnitSize));
  }
  return m_cells(px / kUnitSize, py / kUnitSize);
}

const FieldCell& MotionField::cellAtClamped(int px, int py) const
{
  px = std::clamp(px, 0, widthUnits() * kUnitSize - 1);
  py = std::clamp(py, 0, heightUnits() * kUnitSize - 1);
  return m_cells(px / kUnitSize, py / kUnitSize);
}

void MotionField::setInter(int cx, int cy, MotionVector mv, TimeInterval dist)
{
  if (!mv.inRange())
  {
    throw OverflowError("field MV " + mv.toString() + " exceeds MV range");
  }
  m_cells(cx, cy) = FieldCell::inter(mv, dist);
}

void MotionField::setIntra(int cx, int cy) { m_cells(cx, cy) = FieldCell::intra(); }

void MotionField::setParams(int cx, int cy, const UammParams& p)
{
  FieldCell& c = m_cells(cx, cy);
  if (!c.hasMv() && p.available())
  {
    throw Error("cannot attach UAMM parameters to a cell without an MV");
  }
  c.params = p;
}

MotionField deriveFieldParams(const MotionField& curr, const MotionField& prev)
{
  if (curr.poc() <= prev.poc())
  {
    throw Error("derivation needs curr.poc > prev.poc, got " + std::to_string(curr.poc()) + " and "
                + std::to_string(prev.poc()));
  }
  const TimeInterval t1(curr.poc() - prev.poc());

  MotionField out = curr;
  parallelFor(curr.heightUnits(), [&](int cy) {
    for (int cx = 0; cx < curr.widthUnits(); cx++)
    {
      const FieldCell& c = curr.cell(cx, cy);
      if (!c.hasMv())
      {
        out.setParams(cx, cy, UammParams::unavailable());
        continue;
      }
      // forward-signed segment that ends in curr
      const MotionVector mv1 = -*c.mv;

      const PelPos at      = displace(unitCenter(cx, cy), *c.mv);
      const FieldCell& src = prev.cellAtClamped(at.x, at.y);
      if (src.hasMv())
      {
        const MotionVector mv0 = -*src.mv;
        out.setParams(cx, cy, deriveParams(mv0, mv1, *src.refDistance, t1));
      }
      else
      {
        out.setParams(cx, cy, linearFallback(mv1, t1));
      }
    }
  });
  return out;
}

Grid<UammParams> inheritParams(const MotionField& field, const PixelRect& block, MotionVector mvC)
{
  const int sw = block.w / kUnitSize;
  const int sh = block.h / kUnitSize;
  Grid<UammParams> out(sw, sh);
  for (int sy = 0; sy < sh; sy++)
  {
    for (int sx = 0; sx < sw; sx++)
    {
      const PelPos c  = { block.x + sx * kUnitSize + kUnitSize / 2, block.y + sy * kUnitSize + kUnitSize / 2 };
      const PelPos at = displace(c, mvC);
      out(sx, sy)     = field.cellAtClamped(at.x, at.y).params;
    }
  }
  return out;
}

void writeFieldCsv(std::ostream& os, const MotionField& field)
{
  os << "poc,cx,cy,mvx,mvy,ref_dist,kind,v0x,v0y,ax,ay\n";
  for (int cy = 0; cy < field.heightUnits(); cy++)
  {
    for (int cx = 0; cx < field.widthUnits(); cx++)
    {
      const FieldCell& c = field.cell(cx, cy);
      os << field.poc() << ',' << cx << ',' << cy << ',';
      if (c.hasMv())
      {
        os << c.mv->x << ',' << c.mv->y << ',' << c.refDistance->ticks() << ',';
      }
      else
      {
        os << ",,,";
      }
      const UammParams& p = c.params;
      os << toString(p.kind) << ',' << p.v0x << ',' << p.v0y << ',' << p.ax << ',' << p.ay << '\n';
    }
  }
}

} // namespace uamm
