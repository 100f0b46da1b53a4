#include "bsq/chebyshev.hpp"

#include <algorithm>
#include <cmath>

namespace bsq {

std::vector<double> cheb_nodes(int n, double a, double b) {
  std::vector<double> x(n);
  for (int j = 0; j < n; ++j) {
    double c = -std::cos((2.0 * j + 1.0) * kPi / (2.0 * n));
    x[j] = 0.5 * (a + b) + 0.5 * (b - a) * c;
  }
  return x;
}

BaryInterp::BaryInterp(std::vector<double> x, std::vector<cd> f)
    : x_(std::move(x)), f_(std::move(f)) {
  if (x_.size() != f_.size() || x_.empty())
    throw DomainError("BaryInterp: node/value size mismatch");
  const size_t n = x_.size();
  lo_ = *std::min_element(x_.begin(), x_.end());
  hi_ = *std::max_element(x_.begin(), x_.end());
  const double scale = 4.0 / (hi_ - lo_ + 1e-300);
  w_.assign(n, 1.0);
  for (size_t j = 0; j < n; ++j)
    for (size_t m = 0; m < n; ++m)
      if (m != j) w_[j] /= scale * (x_[j] - x_[m]);
}

cd BaryInterp::operator()(double t) const {
  cd num = 0.0;
  double den = 0.0;
  for (size_t j = 0; j < x_.size(); ++j) {
    double d = t - x_[j];
    if (d == 0.0) return f_[j];
    double c = w_[j] / d;
    num += c * f_[j];
    den += c;
  }
  return num / den;
}

PiecewiseCheb::PiecewiseCheb(const std::function<cd(double)>& fn, double a,
                             double b, int pieces, int order)
    : a_(a), b_(b), h_((b - a) / pieces) {
  const int n = order;
  for (int p = 0; p < pieces; ++p) {
    double lo = a + p * h_, hi = lo + h_;
    std::vector<cd> v(n);
    for (int j = 0; j < n; ++j) {
      double th = (2.0 * j + 1.0) * kPi / (2.0 * n);
      v[j] = fn(0.5 * (lo + hi) + 0.5 * (hi - lo) * std::cos(th));
    }
    std::vector<cd> c(n, 0.0);
    for (int m = 0; m < n; ++m) {
      cd s = 0.0;
      for (int j = 0; j < n; ++j)
        s += v[j] * std::cos(m * (2.0 * j + 1.0) * kPi / (2.0 * n));
      c[m] = s * (2.0 / n);
    }
    c[0] *= 0.5;
    // derivative coefficients in the local variable u in [-1, 1]
    std::vector<cd> d(n + 1, 0.0);
    for (int m = n - 1; m >= 1; --m) d[m - 1] = d[m + 1] + 2.0 * m * c[m];
    d[0] *= 0.5;
    d.resize(n);
    for (auto& x : d) x *= 2.0 / (hi - lo);
    tail_ = std::max(tail_, std::abs(c[n - 1]) + std::abs(c[n - 2]));
    c_.push_back(std::move(c));
    dc_.push_back(std::move(d));
  }
}

int PiecewiseCheb::piece(double t) const {
  int p = static_cast<int>(std::floor((t - a_) / h_));
  return std::clamp(p, 0, static_cast<int>(c_.size()) - 1);
}

namespace {

cd clenshaw(const std::vector<cd>& c, double u) {
  cd b1 = 0.0, b2 = 0.0;
  for (int m = static_cast<int>(c.size()) - 1; m >= 1; --m) {
    cd b0 = c[m] + 2.0 * u * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return c[0] + u * b1 - b2;
}

}  // namespace

cd PiecewiseCheb::value(double t) const {
  int p = piece(t);
  double lo = a_ + p * h_;
  return clenshaw(c_[p], 2.0 * (t - lo) / h_ - 1.0);
}

cd PiecewiseCheb::deriv(double t) const {
  int p = piece(t);
  double lo = a_ + p * h_;
  return clenshaw(dc_[p], 2.0 * (t - lo) / h_ - 1.0);
}

}  // namespace bsq
