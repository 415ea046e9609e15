#include "nsshock/grid.hpp"

#include "nsshock/error.hpp"

namespace nsshock::flow {

Grid::Grid(double x1_min, double x1_max, std::size_t n1, std::size_t n2, std::size_t n3)
    : x1_min_(x1_min), x1_max_(x1_max), n1_(n1), n2_(n2), n3_(n3) {
  if (n1 < 16) throw Error(ErrorKind::InvalidArgument, "grid needs n1 >= 16");
  if (n2 == 0 || n3 == 0) throw Error(ErrorKind::InvalidArgument, "transverse counts must be >= 1");
  if (n2 * n3 > 1 && (n2 < 4 || n3 < 4)) {
    throw Error(ErrorKind::InvalidArgument, "resolved transverse directions need n2, n3 >= 4");
  }
  dx1_ = (x1_max - x1_min) / static_cast<double>(n1 - 1);
  if (!(dx1_ > 0.0)) throw Error(ErrorKind::InvalidArgument, "grid needs x1_max > x1_min");
}

std::vector<double> Grid::x1_nodes(double offset) const {
  std::vector<double> x(n1_);
  for (std::size_t i = 0; i < n1_; ++i) x[i] = x1(i) + offset;
  return x;
}

}  // namespace nsshock::flow
