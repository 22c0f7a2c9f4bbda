#pragma once

#include <string>
#include <vector>

#include "uamm/error.hpp"

namespace uamm {

// Dense row-major 2-D array.
template<typename T>
class Grid
{
public:
  Grid() = default;
  Grid(int width, int height, const T& fill = T{}) : m_width(width), m_height(height)
  {
    if (width < 0 || height < 0)
    {
      throw Error("grid dimensions must be non-negative");
    }
    m_cells.assign(static_cast<size_t>(width) * height, fill);
  }

  int width() const { return m_width; }
  int height() const { return m_height; }
  size_t size() const { return m_cells.size(); }

  const T& operator()(int x, int y) const { return m_cells[index(x, y)]; }
  T& operator()(int x, int y) { return m_cells[index(x, y)]; }

  const std::vector<T>& cells() const { return m_cells; }
  std::vector<T>& cells() { return m_cells; }

  auto begin() const { return m_cells.begin(); }
  auto end() const { return m_cells.end(); }

  bool operator==(const Grid&) const = default;

private:
  size_t index(int x, int y) const { return static_cast<size_t>(y) * m_width + x; }

  int m_width  = 0;
  int m_height = 0;
  std::vector<T> m_cells;
};

} // namespace uamm
