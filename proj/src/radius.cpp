#include "virlab/radius.hpp"

#include <cmath>

#include "virlab/errors.hpp"

namespace virlab {

RadiusEstimate radius_estimate(std::span<const double> seq, RadiusMethod method, int first_index) {
  int trailing = 0;
  for (auto it = seq.rbegin(); it != seq.rend() && *it != 0.0; ++it) ++trailing;
  if (trailing < 5) throw TooShort("radius estimate needs at least 5 nonzero trailing terms");

  RadiusEstimate out;
  const std::size_t start = seq.size() - static_cast<std::size_t>(trailing);
  std::vector<double> n_inv, ratio;
  for (std::size_t i = start + 1; i < seq.size(); ++i) {
    const double r = seq[i] / seq[i - 1];
    out.partial.push_back(std::abs(1.0 / r));
    n_inv.push_back(1.0 / static_cast<double>(first_index + static_cast<int>(i)));
    ratio.push_back(r);
  }

  if (method == RadiusMethod::ratio) {
    out.estimate = out.partial.back();
    out.points_used = 1;
    return out;
  }

  const std::size_t m = ratio.size();
  const std::size_t from = m / 2;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double cnt = static_cast<double>(m - from);
  for (std::size_t i = from; i < m; ++i) {
    sx += n_inv[i];
    sy += ratio[i];
    sxx += n_inv[i] * n_inv[i];
    sxy += n_inv[i] * ratio[i];
  }
  const double denom = cnt * sxx - sx * sx;
  if (denom == 0.0) throw TooShort("degenerate Domb-Sykes fit");
  out.slope = (cnt * sxy - sx * sy) / denom;
  const double intercept = (sy - out.slope * sx) / cnt;
  out.estimate = std::abs(1.0 / intercept);
  out.points_used = static_cast<int>(m - from);
  return out;
}

}  // namespace virlab
