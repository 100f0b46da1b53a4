#include "bsq/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace bsq {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

struct Seg {
  double a, b;
  cd val;
  double err, l1;
};

Seg rule(const std::function<cd(double)>& fn, double a, double b) {
  Seg s{a, b, 0.0, 0.0, 0.0};
  s.val = GK::integrate(fn, a, b, 0, 0.0, &s.err, &s.l1);
  s.err *= s.l1;
  return s;
}

cd refine(const std::function<cd(double)>& fn, const Seg& s, double abstol, int depth) {
  if (s.err <= abstol || depth == 0 || s.b - s.a < 1e-12 * std::max(1.0, std::abs(s.a)))
    return s.val;
  double m = 0.5 * (s.a + s.b);
  return refine(fn, rule(fn, s.a, m), 0.5 * abstol, depth - 1) +
         refine(fn, rule(fn, m, s.b), 0.5 * abstol, depth - 1);
}

// Breakpoints from p toward q (exclusive of p) at widths shrinking by 1/5.
void graded(double p, double q, std::vector<double>& out) {
  double len = q - p;
  for (double w = len * 0.2; std::abs(w) > 1e-11 * std::max(1.0, std::abs(p)); w *= 0.2)
    out.push_back(p + w);
}

}  // namespace

cd integrate(const std::function<cd(double)>& fn, double a, double b,
             const std::vector<double>& focus, double tol) {
  if (a == b) return 0.0;
  if (b < a) return -integrate(fn, b, a, focus, tol);
  std::vector<double> cuts{a, b};
  for (double f : focus)
    if (f > a && f < b) cuts.push_back(f);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto is_focus = [&](double x) {
    return std::any_of(focus.begin(), focus.end(),
                       [&](double f) { return std::abs(f - x) <= 1e-15 * std::max(1.0, std::abs(x)); });
  };

  std::vector<double> pts;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double p = cuts[i], q = cuts[i + 1];
    bool fp = is_focus(p), fq = is_focus(q);
    pts.push_back(p);
    if (fp && fq) {
      double m = 0.5 * (p + q);
      std::vector<double> left, right;
      graded(p, m, left);
      graded(q, m, right);
      std::reverse(left.begin(), left.end());
      pts.insert(pts.end(), left.begin(), left.end());
      pts.push_back(m);
      pts.insert(pts.end(), right.begin(), right.end());
    } else if (fp) {
      std::vector<double> g;
      graded(p, q, g);
      std::reverse(g.begin(), g.end());
      pts.insert(pts.end(), g.begin(), g.end());
    } else if (fq) {
      graded(q, p, pts);
    }
  }
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  std::vector<Seg> segs;
  double l1 = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i + 1] <= pts[i]) continue;
    segs.push_back(rule(fn, pts[i], pts[i + 1]));
    l1 += segs.back().l1;
  }
  double abstol = tol * std::max(l1, 1e-300);
  cd sum = 0.0;
  for (const auto& s : segs) sum += refine(fn, s, abstol, 14);
  return sum;
}

}  // namespace bsq
