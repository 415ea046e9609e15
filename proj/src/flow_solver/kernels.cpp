#include <cmath>
#include <cstddef>
#include <vector>

#include "nsshock/flow.hpp"

namespace nsshock::flow::kernels {

namespace {

using Index = std::ptrdiff_t;

// Read-only view of the fields with axial ghost values and periodic wrap.
struct Ctx {
  Index n1, n2, n3;
  double idx1, idx2, idx3;
  const double* f[5];  // v, u1, u2, u3, p(v)
  double left[5];
  double right[5];
  const FluidParams* fluid;
  double frame_speed;
  const double* sponge;

  double at(int c, Index i, Index j, Index k) const {
    if (i < 0) return left[c];
    if (i >= n1) return right[c];
    // stencil offsets never exceed the transverse period
    if (j < 0) j += n2;
    else if (j >= n2) j -= n2;
    if (k < 0) k += n3;
    else if (k >= n3) k -= n3;
    return f[c][(i * n2 + j) * n3 + k];
  }
  double p_at(Index i, Index j, Index k) const { return at(4, i, j, k); }
};

// Second-order upwind difference of field c along one axis; (di, dj, dk) is
// the unit step of the axis, h its inverse spacing.
inline double upwind(const Ctx& x, int c, Index i, Index j, Index k, Index di, Index dj,
                     Index dk, double speed, double inv_h) {
  const double f0 = x.at(c, i, j, k);
  if (speed >= 0.0) {
    return (3.0 * f0 - 4.0 * x.at(c, i - di, j - dj, k - dk) +
            x.at(c, i - 2 * di, j - 2 * dj, k - 2 * dk)) * 0.5 * inv_h;
  }
  return (-3.0 * f0 + 4.0 * x.at(c, i + di, j + dj, k + dk) -
          x.at(c, i + 2 * di, j + 2 * dj, k + 2 * dk)) * 0.5 * inv_h;
}

template <bool Planar>
void rhs_node(const Ctx& x, Index i, Index j, Index k, FlowState& out) {
  const std::size_t n = static_cast<std::size_t>((i * x.n2 + j) * x.n3 + k);
  const double v = x.at(0, i, j, k);
  const double u[3] = {x.at(1, i, j, k), x.at(2, i, j, k), x.at(3, i, j, k)};
  const double a1 = u[0] - x.frame_speed;
  const double h1 = x.idx1;

  // first derivatives (centered) and compact second derivatives along x1
  double d1[3][3] = {};   // d1[axis][component]
  double d2[3][3] = {};   // compact second derivative d_aa u_c
  double dp[3] = {};
  double adv[4] = {};     // upwind advection of v, u1, u2, u3
  for (int c = 0; c < 3; ++c) {
    const double um = x.at(c + 1, i - 1, j, k), up = x.at(c + 1, i + 1, j, k);
    d1[0][c] = (up - um) * 0.5 * h1;
    d2[0][c] = (up - 2.0 * u[c] + um) * h1 * h1;
  }
  dp[0] = (x.p_at(i + 1, j, k) - x.p_at(i - 1, j, k)) * 0.5 * h1;
  for (int c = 0; c < 4; ++c) adv[c] = a1 * upwind(x, c, i, j, k, 1, 0, 0, a1, h1);

  double mixed[3][3][3] = {};  // mixed[a][b][c] = d_a d_b u_c for a != b
  if constexpr (!Planar) {
    const double h2 = x.idx2, h3 = x.idx3;
    for (int c = 0; c < 3; ++c) {
      const double jm = x.at(c + 1, i, j - 1, k), jp = x.at(c + 1, i, j + 1, k);
      const double km = x.at(c + 1, i, j, k - 1), kp = x.at(c + 1, i, j, k + 1);
      d1[1][c] = (jp - jm) * 0.5 * h2;
      d1[2][c] = (kp - km) * 0.5 * h3;
      d2[1][c] = (jp - 2.0 * u[c] + jm) * h2 * h2;
      d2[2][c] = (kp - 2.0 * u[c] + km) * h3 * h3;
      const double m12 = (x.at(c + 1, i + 1, j + 1, k) - x.at(c + 1, i + 1, j - 1, k) -
                          x.at(c + 1, i - 1, j + 1, k) + x.at(c + 1, i - 1, j - 1, k)) *
                         0.25 * h1 * h2;
      const double m13 = (x.at(c + 1, i + 1, j, k + 1) - x.at(c + 1, i + 1, j, k - 1) -
                          x.at(c + 1, i - 1, j, k + 1) + x.at(c + 1, i - 1, j, k - 1)) *
                         0.25 * h1 * h3;
      const double m23 = (x.at(c + 1, i, j + 1, k + 1) - x.at(c + 1, i, j + 1, k - 1) -
                          x.at(c + 1, i, j - 1, k + 1) + x.at(c + 1, i, j - 1, k - 1)) *
                         0.25 * h2 * h3;
      mixed[0][1][c] = mixed[1][0][c] = m12;
      mixed[0][2][c] = mixed[2][0][c] = m13;
      mixed[1][2][c] = mixed[2][1][c] = m23;
    }
    dp[1] = (x.p_at(i, j + 1, k) - x.p_at(i, j - 1, k)) * 0.5 * h2;
    dp[2] = (x.p_at(i, j, k + 1) - x.p_at(i, j, k - 1)) * 0.5 * h3;
    for (int c = 0; c < 4; ++c) {
      adv[c] += u[1] * upwind(x, c, i, j, k, 0, 1, 0, u[1], h2);
      adv[c] += u[2] * upwind(x, c, i, j, k, 0, 0, 1, u[2], h3);
    }
  }

  const double div = d1[0][0] + d1[1][1] + d1[2][2];
  const double mu = x.fluid->mu();
  const double nu = x.fluid->eff_visc();
  const double kappa = x.sponge[i];
  const double* far = (2 * i < x.n1) ? x.left : x.right;

  out.v[n] = -adv[0] + v * div - kappa * (v - far[0]);
  double* du[3] = {&out.u1[n], &out.u2[n], &out.u3[n]};
  for (int c = 0; c < 3; ++c) {
    // grad div: compact on the diagonal, centered products off it
    double graddiv = 0.0;
    double lap = 0.0;
    for (int b = 0; b < 3; ++b) {
      graddiv += (b == c) ? d2[c][c] : mixed[c][b][b];
      lap += d2[b][c];
    }
    const double curlcurl = graddiv - lap;
    *du[c] = -adv[c + 1] - v * dp[c] + v * (nu * graddiv - mu * curlcurl) -
             kappa * (u[c] - far[c + 1]);
  }
}

Ctx make_ctx(const Grid& grid, const SolverConfig& config, std::span<const double> sponge,
             const FlowState& s, const std::vector<double>& pressure) {
  Ctx x{};
  x.n1 = static_cast<Index>(grid.n1());
  x.n2 = static_cast<Index>(grid.n2());
  x.n3 = static_cast<Index>(grid.n3());
  x.idx1 = 1.0 / grid.dx1();
  x.idx2 = 1.0 / grid.dx2();
  x.idx3 = 1.0 / grid.dx3();
  x.f[0] = s.v.data();
  x.f[1] = s.u1.data();
  x.f[2] = s.u2.data();
  x.f[3] = s.u3.data();
  x.f[4] = pressure.data();
  x.left[0] = config.far.v_left;
  x.left[1] = config.far.u_left;
  x.right[0] = config.far.v_right;
  x.right[1] = config.far.u_right;
  x.left[4] = config.fluid.pressure(config.far.v_left);
  x.right[4] = config.fluid.pressure(config.far.v_right);
  x.fluid = &config.fluid;
  x.frame_speed = config.frame_speed;
  x.sponge = sponge.data();
  return x;
}

void resize_like(FlowState& out, std::size_t n) {
  out.v.resize(n);
  out.u1.resize(n);
  out.u2.resize(n);
  out.u3.resize(n);
}

template <bool Planar>
void slab(const Ctx& x, Index i, FlowState& out) {
  for (Index j = 0; j < x.n2; ++j) {
    for (Index k = 0; k < x.n3; ++k) rhs_node<Planar>(x, i, j, k, out);
  }
}

}  // namespace

std::vector<double> sponge_profile(const Grid& grid, const SolverConfig& config) {
  std::vector<double> kappa(grid.n1(), 0.0);
  const double width = config.sponge_fraction * (grid.x1_max() - grid.x1_min());
  if (width <= 0.0) return kappa;
  for (std::size_t i = 0; i < grid.n1(); ++i) {
    const double x = grid.x1(i);
    const double depth = std::max(grid.x1_min() + width - x, x - (grid.x1_max() - width));
    if (depth > 0.0) {
      const double s = depth / width;
      kappa[i] = config.sponge_strength * s * s;
    }
  }
  return kappa;
}

void rhs_serial(const Grid& grid, const SolverConfig& config, std::span<const double> sponge,
                const FlowState& state, FlowState& out) {
  resize_like(out, state.size());
  std::vector<double> p(state.size());
  for (std::size_t n = 0; n < p.size(); ++n) p[n] = config.fluid.pressure(state.v[n]);
  const Ctx x = make_ctx(grid, config, sponge, state, p);
  if (grid.planar()) {
    for (Index i = 0; i < x.n1; ++i) rhs_node<true>(x, i, 0, 0, out);
  } else {
    for (Index i = 0; i < x.n1; ++i) slab<false>(x, i, out);
  }
}

void rhs_parallel(const Grid& grid, const SolverConfig& config, std::span<const double> sponge,
                  const FlowState& state, FlowState& out) {
  resize_like(out, state.size());
  std::vector<double> p(state.size());
#pragma omp parallel for schedule(static)
  for (std::size_t n = 0; n < p.size(); ++n) p[n] = config.fluid.pressure(state.v[n]);
  const Ctx x = make_ctx(grid, config, sponge, state, p);
  if (grid.planar()) {
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < x.n1; ++i) rhs_node<true>(x, i, 0, 0, out);
  } else {
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < x.n1; ++i) slab<false>(x, i, out);
  }
}

}  // namespace nsshock::flow::kernels
