#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace ibstab {

using Vec3 = std::array<double, 3>;

/// Periodic n^3 collocated grid on [0, length)^3. The last index varies fastest.
class Grid {
 public:
  Grid(int n, double length);

  int n() const { return n_; }
  double length() const { return length_; }
  double h() const { return length_ / n_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_ * n_; }

  std::size_t index(int j1, int j2, int j3) const {
    return (static_cast<std::size_t>(j1) * n_ + j2) * n_ + j3;
  }
  int wrap(long j) const {
    long r = j % n_;
    return static_cast<int>(r < 0 ? r + n_ : r);
  }

  bool operator==(const Grid&) const = default;

 private:
  int n_;
  double length_;
};

/// Three real components on a grid.
class VectorField {
 public:
  explicit VectorField(const Grid& grid);

  const Grid& grid() const { return grid_; }
  std::vector<double>& operator[](int c) { return comp_[c]; }
  const std::vector<double>& operator[](int c) const { return comp_[c]; }

  void fill(double value);
  /// Sum over points of |u|^2 (no volume weight).
  double sum_squares() const;
  /// Sum over points of u.v (no volume weight).
  double dot(const VectorField& other) const;

 private:
  Grid grid_;
  std::array<std::vector<double>, 3> comp_;
};

/// A 3-vector per marker on the m x m boundary lattice, k2 fastest.
class SheetField {
 public:
  explicit SheetField(int m);

  int m() const { return m_; }
  std::size_t size() const { return values_.size(); }
  std::size_t index(int k1, int k2) const { return static_cast<std::size_t>(k1) * m_ + k2; }
  int wrap(long k) const {
    long r = k % m_;
    return static_cast<int>(r < 0 ? r + m_ : r);
  }

  Vec3& at(int k1, int k2) { return values_[index(k1, k2)]; }
  const Vec3& at(int k1, int k2) const { return values_[index(k1, k2)]; }
  Vec3& operator[](std::size_t i) { return values_[i]; }
  const Vec3& operator[](std::size_t i) const { return values_[i]; }

  void fill(const Vec3& value);
  double sum_squares() const;
  double dot(const SheetField& other) const;

 private:
  int m_;
  std::vector<Vec3> values_;
};

}  // namespace ibstab
