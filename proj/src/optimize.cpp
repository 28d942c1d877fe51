#include "qfpsim/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qfpsim/error.hpp"

namespace qfp {

namespace {
const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;

Extremum better(const Extremum& a, const Extremum& b) { return b.value > a.value ? b : a; }
}  // namespace

Extremum golden_section_maximize(const ScalarFunction& f, double lo, double hi, double tol) {
  if (!(hi >= lo)) throw InvalidArgument("golden_section_maximize: empty bracket");
  Extremum best{lo, f(lo)};
  best = better(best, {hi, f(hi)});
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  best = better(best, fc >= fd ? Extremum{c, fc} : Extremum{d, fd});
  const double mid = 0.5 * (a + b);
  return better(best, {mid, f(mid)});
}

Extremum maximize_on_grid_then_golden(const ScalarFunction& f, double lo, double hi, int points,
                                      double tol) {
  if (points < 2) throw InvalidArgument("maximize_on_grid_then_golden: need >= 2 grid points");
  if (hi == lo) return {lo, f(lo)};
  const double step = (hi - lo) / (points - 1);
  Extremum best{lo, f(lo)};
  int best_i = 0;
  for (int i = 1; i < points; ++i) {
    const double x = (i == points - 1) ? hi : lo + i * step;
    const double v = f(x);
    if (v > best.value) {
      best = {x, v};
      best_i = i;
    }
  }
  const double a = best_i == 0 ? lo : lo + (best_i - 1) * step;
  const double b = best_i == points - 1 ? hi : std::min(hi, lo + (best_i + 1) * step);
  return better(best, golden_section_maximize(f, a, b, tol));
}

Extremum maximize_periodic(const ScalarFunction& f, int points, double tol) {
  if (points < 3) throw InvalidArgument("maximize_periodic: need >= 3 grid points");
  const double two_pi = 2.0 * std::numbers::pi;
  const double step = two_pi / points;
  Extremum best{0.0, f(0.0)};
  for (int i = 1; i < points; ++i) {
    const double x = i * step;
    const double v = f(x);
    if (v > best.value) best = {x, v};
  }
  best = better(best, golden_section_maximize(f, best.x - step, best.x + step, tol));
  best.x = std::fmod(best.x, two_pi);
  if (best.x < 0.0) best.x += two_pi;
  return best;
}

}  // namespace qfp
