#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ripbound::linalg {

// Eigenvalues of a dense symmetric matrix (row-major, dim x dim) by cyclic
// Jacobi rotations, returned in ascending order. Converges to machine
// precision for the small Gram matrices used here; dim is expected to stay
// tiny (a few dozen at most).
std::vector<double> symmetric_eigenvalues(std::span<const double> matrix,
                                          std::size_t dim);

} // namespace ripbound::linalg
