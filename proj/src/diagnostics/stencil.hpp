#pragma once

#include <cstddef>
#include <vector>

#include "nsshock/grid.hpp"

namespace nsshock::diagnostics::detail {

// Centered difference along axis 0 (zero ghosts), 1 or 2 (periodic).
inline std::vector<double> derivative(const flow::Grid& g, const std::vector<double>& f,
                                      int axis) {
  std::vector<double> out(f.size());
  const std::size_t n1 = g.n1(), n2 = g.n2(), n3 = g.n3();
  const double h = axis == 0 ? g.dx1() : (axis == 1 ? g.dx2() : g.dx3());
  const double s = 0.5 / h;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n1); ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    for (std::size_t j = 0; j < n2; ++j) {
      for (std::size_t k = 0; k < n3; ++k) {
        double fp, fm;
        if (axis == 0) {
          fp = i + 1 < n1 ? f[g.index(i + 1, j, k)] : 0.0;
          fm = i > 0 ? f[g.index(i - 1, j, k)] : 0.0;
        } else if (axis == 1) {
          fp = f[g.index(i, (j + 1) % n2, k)];
          fm = f[g.index(i, (j + n2 - 1) % n2, k)];
        } else {
          fp = f[g.index(i, j, (k + 1) % n3)];
          fm = f[g.index(i, j, (k + n3 - 1) % n3)];
        }
        out[g.index(i, j, k)] = (fp - fm) * s;
      }
    }
  }
  return out;
}

}  // namespace nsshock::diagnostics::detail
