#include "aimh/targets/quadrature.hpp"

#include <algorithm>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace aimh {

double integrate(const std::function<double(double)>& g, double a, double b, std::span<const double> breaks,
                 double rel_tol, double* error) {
  std::vector<double> nodes{a};
  for (double x : breaks)
    if (x > a && x < b) nodes.push_back(x);
  nodes.push_back(b);
  std::sort(nodes.begin(), nodes.end());
  double total = 0.0;
  double err_total = 0.0;
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    double err = 0.0;
    total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, nodes[k], nodes[k + 1], 12, rel_tol, &err);
    err_total += err;
  }
  if (error) *error = err_total;
  return total;
}

}  // namespace aimh
