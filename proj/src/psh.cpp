#include <carrier/weights.hpp>

#include <cmath>

namespace carrier {

namespace {

constexpr std::size_t kKeptViolations = 5;

// Mean of w over the nodes j * 2pi/n with j odd when `odd_only`, else all j.
double circle_mean(const std::function<double(const CVector&)>& w, const CVector& c,
                   const CVector& u, double r, std::size_t n, bool odd_only) {
  double sum = 0;
  std::size_t count = 0;
  CVector z(c.size());
  for (std::size_t j = odd_only ? 1 : 0; j < n; j += odd_only ? 2 : 1) {
    const Complex e = std::polar(r, 2 * M_PI * static_cast<double>(j) / static_cast<double>(n));
    for (std::size_t i = 0; i < c.size(); ++i) z[i] = c[i] + e * u[i];
    sum += w(z);
    ++count;
  }
  return sum / static_cast<double>(count);
}

}  // namespace

PshReport check_plurisubharmonic(const std::function<double(const CVector&)>& w,
                                 const std::vector<CVector>& centers,
                                 const std::vector<CVector>& directions,
                                 const std::vector<double>& radii, const PshOptions& opts) {
  PshReport rep;
  for (const auto& c : centers) {
    const double w0 = w(c);
    for (const auto& u : directions)
      for (double r : radii) {
        ++rep.checks;
        if (w0 == -std::numeric_limits<double>::infinity()) continue;
        std::size_t n = opts.nodes;
        double mean = circle_mean(w, c, u, r, n, false);
        while (!(mean >= w0 - opts.tolerance) && n < opts.max_nodes) {
          n *= 2;
          mean = (mean + circle_mean(w, c, u, r, n, true)) / 2;
        }
        rep.max_nodes_used = std::max(rep.max_nodes_used, n);
        if (mean >= w0 - opts.tolerance) continue;
        ++rep.failures;
        if (rep.violations.size() < kKeptViolations) rep.violations.push_back({c, u, r, w0, mean});
      }
  }
  return rep;
}

}  // namespace carrier
