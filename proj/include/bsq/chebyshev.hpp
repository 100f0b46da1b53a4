#pragma once

#include <functional>
#include <vector>

#include "bsq/common.hpp"

namespace bsq {

// Chebyshev points of the first kind on [a, b], ascending.
std::vector<double> cheb_nodes(int n, double a, double b);

// Barycentric Lagrange interpolant on arbitrary distinct nodes.
class BaryInterp {
 public:
  BaryInterp() = default;
  BaryInterp(std::vector<double> x, std::vector<cd> f);
  cd operator()(double t) const;
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  bool empty() const { return x_.empty(); }

 private:
  std::vector<double> x_, w_;
  std::vector<cd> f_;
  double lo_ = 0, hi_ = 0;
};

// Piecewise Chebyshev expansion of a complex function of one real variable;
// exposes the value and the first derivative.
class PiecewiseCheb {
 public:
  PiecewiseCheb() = default;
  PiecewiseCheb(const std::function<cd(double)>& fn, double a, double b,
                int pieces, int order);
  cd value(double t) const;
  cd deriv(double t) const;
  double a() const { return a_; }
  double b() const { return b_; }
  // Largest trailing coefficient magnitude, a cheap resolution indicator.
  double tail() const { return tail_; }

 private:
  int piece(double t) const;
  double a_ = 0, b_ = 0, h_ = 0;
  std::vector<std::vector<cd>> c_, dc_;
  double tail_ = 0;
};

}  // namespace bsq
