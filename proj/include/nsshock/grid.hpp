#pragma once

#include <cstddef>
#include <vector>

namespace nsshock::flow {

/// Axial interval [x1_min, x1_max] sampled at n1 nodes (both ends included)
/// times a unit periodic torus with n2 x n3 nodes.  n2 = n3 = 1 is the planar
/// (1D) mode.  Storage order is (i, j, k) with k fastest, so an axial index i
/// addresses one contiguous transverse slab.
class Grid {
 public:
  Grid(double x1_min, double x1_max, std::size_t n1, std::size_t n2 = 1, std::size_t n3 = 1);

  double x1_min() const { return x1_min_; }
  double x1_max() const { return x1_max_; }
  std::size_t n1() const { return n1_; }
  std::size_t n2() const { return n2_; }
  std::size_t n3() const { return n3_; }
  double dx1() const { return dx1_; }
  double dx2() const { return 1.0 / static_cast<double>(n2_); }
  double dx3() const { return 1.0 / static_cast<double>(n3_); }

  std::size_t size() const { return n1_ * n2_ * n3_; }
  std::size_t slab() const { return n2_ * n3_; }
  bool planar() const { return n2_ == 1 && n3_ == 1; }

  double x1(std::size_t i) const { return x1_min_ + static_cast<double>(i) * dx1_; }
  double x2(std::size_t j) const { return static_cast<double>(j) * dx2(); }
  double x3(std::size_t k) const { return static_cast<double>(k) * dx3(); }
  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * n2_ + j) * n3_ + k;
  }

  /// Trapezoid weight of axial node i (times the unit torus measure split
  /// evenly over the slab).
  double weight(std::size_t i) const {
    const double w = (i == 0 || i + 1 == n1_) ? 0.5 * dx1_ : dx1_;
    return w / static_cast<double>(slab());
  }

  std::vector<double> x1_nodes(double offset = 0.0) const;

 private:
  double x1_min_;
  double x1_max_;
  std::size_t n1_;
  std::size_t n2_;
  std::size_t n3_;
  double dx1_;
};

}  // namespace nsshock::flow
