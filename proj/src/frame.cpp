#include "uamm/frame.hpp"

#include <string>

namespace uamm {

Plane::Plane(int width, int height, Pel fill) : m_width(width), m_height(height)
{
  if (width <= 0 || height <= 0)
  {
    throw Error("plane dimensions must be positive, got " + std::to_string(width) + "x" + std::to_string(height));
  }
  m_data.assign(static_cast<size_t>(width) * height, fill);
}

} // namespace uamm
