#include "ibstab/grid.hpp"

#include <stdexcept>

namespace ibstab {

Grid::Grid(int n, double length) : n_(n), length_(length) {
  if (n < 1) throw std::invalid_argument("grid: n must be positive");
  if (!(length > 0.0)) throw std::invalid_argument("grid: length must be positive");
}

VectorField::VectorField(const Grid& grid) : grid_(grid) {
  for (auto& c : comp_) c.assign(grid_.size(), 0.0);
}

void VectorField::fill(double value) {
  for (auto& c : comp_) std::fill(c.begin(), c.end(), value);
}

double VectorField::sum_squares() const {
  double s = 0.0;
  for (const auto& c : comp_)
    for (double v : c) s += v * v;
  return s;
}

double VectorField::dot(const VectorField& other) const {
  if (!(grid_ == other.grid_)) throw std::invalid_argument("field: grid mismatch");
  double s = 0.0;
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < comp_[c].size(); ++i) s += comp_[c][i] * other.comp_[c][i];
  return s;
}

SheetField::SheetField(int m) : m_(m) {
  if (m < 1) throw std::invalid_argument("sheet field: size must be positive");
  values_.assign(static_cast<std::size_t>(m) * m, Vec3{0.0, 0.0, 0.0});
}

void SheetField::fill(const Vec3& value) { std::fill(values_.begin(), values_.end(), value); }

double SheetField::sum_squares() const {
  double s = 0.0;
  for (const auto& v : values_) s += v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
  return s;
}

double SheetField::dot(const SheetField& other) const {
  if (m_ != other.m_) throw std::invalid_argument("sheet field: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i)
    for (int c = 0; c < 3; ++c) s += values_[i][c] * other.values_[i][c];
  return s;
}

}  // namespace ibstab
