#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "uamm/error.hpp"

namespace uamm {

using Pel = uint8_t;

// 8-bit sample plane, row-major, no padding. Reads outside the plane
// replicate the nearest border sample.
class Plane
{
public:
  Plane() = default;
  Plane(int width, int height, Pel fill = 0);

  int width() const { return m_width; }
  int height() const { return m_height; }
  bool empty() const { return m_data.empty(); }

  Pel at(int x, int y) const { return m_data[static_cast<size_t>(y) * m_width + x]; }
  Pel& at(int x, int y) { return m_data[static_cast<size_t>(y) * m_width + x]; }

  Pel atClamped(int x, int y) const
  {
    return at(std::clamp(x, 0, m_width - 1), std::clamp(y, 0, m_height - 1));
  }

  std::span<const Pel> samples() const { return m_data; }
  std::span<Pel> samples() { return m_data; }

  bool operator==(const Plane&) const = default;

private:
  int m_width  = 0;
  int m_height = 0;
  std::vector<Pel> m_data;
};

struct FrameBuffer
{
  int poc = 0;
  Plane luma;
  std::optional<Plane> cb;
  std::optional<Plane> cr;

  int width() const { return luma.width(); }
  int height() const { return luma.height(); }

  bool operator==(const FrameBuffer&) const = default;
};

} // namespace uamm
