#include "bdmfio/fd.hpp"

namespace bdmfio::fd {

double central7(const std::function<double(double)>& g, double t0, double h) {
  return (45.0 * (g(t0 + h) - g(t0 - h)) -
          9.0 * (g(t0 + 2.0 * h) - g(t0 - 2.0 * h)) +
          (g(t0 + 3.0 * h) - g(t0 - 3.0 * h))) /
         (60.0 * h);
}

double partial(const std::function<double(const Eigen::VectorXd&)>& F,
               const Eigen::VectorXd& z, const std::vector<int>& dirs,
               double h) {
  if (dirs.empty()) return F(z);
  const int d = dirs.front();
  const std::vector<int> rest(dirs.begin() + 1, dirs.end());
  return central7(
      [&](double t) {
        Eigen::VectorXd zt = z;
        zt(d) = t;
        return partial(F, zt, rest, h);
      },
      z(d), h);
}

cplx cpartial(const std::function<cplx(const Eigen::VectorXd&)>& F,
              const Eigen::VectorXd& z, const std::vector<int>& dirs,
              double h) {
  const double re = partial(
      [&F](const Eigen::VectorXd& w) { return F(w).real(); }, z, dirs, h);
  const double im = partial(
      [&F](const Eigen::VectorXd& w) { return F(w).imag(); }, z, dirs, h);
  return {re, im};
}

}  // namespace bdmfio::fd
