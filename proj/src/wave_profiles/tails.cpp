#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "nsshock/error.hpp"
#include "nsshock/profile.hpp"

namespace nsshock::profiles {

namespace {

struct LineFit {
  double slope = 0.0;
  double r2 = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

}  // namespace

TailReport certify_tail_bounds(const ShockProfile& profile) {
  const double fastest = std::max(profile.decay_rate_left(), profile.decay_rate_right());
  if (profile.spacing() > 0.1 / fastest) {
    std::ostringstream os;
    os << "table spacing " << profile.spacing() << " exceeds 0.1 / rate = " << 0.1 / fastest;
    throw Error(ErrorKind::UnresolvedDerivatives, os.str());
  }
  const auto& xi = profile.xi();
  const auto& off = profile.offset_tab();
  const std::size_t n = xi.size();
  const std::size_t c = profile.center_index();
  const double h = profile.spacing();
  const double jump = profile.v_left() - profile.v_right();

  // Offsets of node k expressed relative to the end state used by node i.
  auto rel = [&](std::size_t k, std::size_t i) {
    const bool side_i = i > c;
    const bool side_k = k > c;
    if (side_i == side_k) return off[k];
    return side_i ? off[k] + jump : off[k] - jump;
  };

  std::vector<double> dv(n, 0.0), du(n, 0.0), d2v(n, 0.0), d3v(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    dv[i] = (rel(i + 1, i) - rel(i - 1, i)) / (2.0 * h);
    du[i] = -profile.sigma_star() * dv[i];
  }
  for (std::size_t i = 2; i + 2 < n; ++i) d2v[i] = (dv[i + 1] - dv[i - 1]) / (2.0 * h);
  for (std::size_t i = 3; i + 3 < n; ++i) d3v[i] = (d2v[i + 1] - d2v[i - 1]) / (2.0 * h);

  TailReport r;
  const double delta = profile.delta();
  std::size_t argmax = 1;
  for (std::size_t i = 3; i + 3 < n; ++i) {
    const double a = std::abs(dv[i]);
    const double b = std::abs(du[i]);
    if (a == 0.0 || b == 0.0) continue;
    r.comparability = std::max(r.comparability, std::max(b / a, a / b));
    r.second_derivative_ratio = std::max(r.second_derivative_ratio, std::abs(d2v[i]) / (delta * a));
    r.third_derivative_ratio =
        std::max(r.third_derivative_ratio, std::abs(d3v[i]) / (delta * delta * a));
    if (a > std::abs(dv[argmax])) argmax = i;
  }
  r.argmax_xi = xi[argmax];

  bool monotone = true;
  for (std::size_t i = argmax; i + 4 < n; ++i) {
    if (std::abs(dv[i + 1]) > std::abs(dv[i])) monotone = false;
  }
  for (std::size_t i = argmax; i > 4; --i) {
    if (std::abs(dv[i - 1]) > std::abs(dv[i])) monotone = false;
  }
  r.monotone_decay = monotone;

  // Log-linear fits over the outer quarter of each half.
  const std::size_t quarter = c / 4;
  {
    std::vector<double> x, y;
    for (std::size_t i = 3; i <= quarter; ++i) {
      if (dv[i] == 0.0) continue;
      x.push_back(xi[i]);
      y.push_back(std::log(std::abs(dv[i])));
    }
    const LineFit f = fit_line(x, y);
    r.rate_left = f.slope;
    r.fit_r2_left = f.r2;
  }
  {
    std::vector<double> x, y;
    for (std::size_t i = n - 1 - quarter; i + 3 < n; ++i) {
      if (dv[i] == 0.0) continue;
      x.push_back(xi[i]);
      y.push_back(std::log(std::abs(dv[i])));
    }
    const LineFit f = fit_line(x, y);
    r.rate_right = -f.slope;
    r.fit_r2_right = f.r2;
  }
  r.rate_left_over_delta = r.rate_left / delta;
  r.rate_right_over_delta = r.rate_right / delta;
  r.finite = std::isfinite(r.comparability) && std::isfinite(r.rate_left) &&
             std::isfinite(r.rate_right) && std::isfinite(r.second_derivative_ratio) &&
             std::isfinite(r.third_derivative_ratio);
  return r;
}

}  // namespace nsshock::profiles
