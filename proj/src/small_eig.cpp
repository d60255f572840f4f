#include "ripbound/small_eig.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ripbound::linalg {

std::vector<double> symmetric_eigenvalues(std::span<const double> matrix,
                                          std::size_t dim) {
  if (dim == 0) throw std::domain_error("symmetric_eigenvalues: dim must be >= 1");
  if (matrix.size() != dim * dim)
    throw std::domain_error("symmetric_eigenvalues: matrix size != dim^2");

  std::vector<double> a(matrix.begin(), matrix.end());
  const auto at = [&](std::size_t i, std::size_t j) -> double& {
    return a[i * dim + j];
  };

  if (dim == 1) return {a[0]};

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i + 1; j < dim; ++j) off += at(i, j) * at(i, j);
    double diag = 0.0;
    for (std::size_t i = 0; i < dim; ++i) diag += at(i, i) * at(i, i);
    if (off <= 1e-30 * std::max(diag, 1e-300)) break;

    for (std::size_t p = 0; p < dim - 1; ++p) {
      for (std::size_t q = p + 1; q < dim; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double app = at(p, p), aqq = at(q, q);
        const double theta = 0.5 * (aqq - app) / apq;
        // smaller-root tangent keeps rotations well conditioned
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        at(p, p) = app - t * apq;
        at(q, q) = aqq + t * apq;
        at(p, q) = 0.0;
        at(q, p) = 0.0;
        for (std::size_t r = 0; r < dim; ++r) {
          if (r == p || r == q) continue;
          const double arp = at(r, p), arq = at(r, q);
          at(r, p) = arp - s * (arq + tau * arp);
          at(p, r) = at(r, p);
          at(r, q) = arq + s * (arp - tau * arq);
          at(q, r) = at(r, q);
        }
      }
    }
  }

  std::vector<double> ev(dim);
  for (std::size_t i = 0; i < dim; ++i) ev[i] = at(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

} // namespace ripbound::linalg
