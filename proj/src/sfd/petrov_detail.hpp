#pragma once

#include <functional>
#include <vector>

#include "fraclab/sfd.hpp"

namespace fraclab {
namespace sfd_detail {

// Load vector (f, tilde phi_i) over the interior test functions, 4-point
// Gauss-Legendre per cell. A null sampler yields the zero vector.
std::vector<double> petrov_load(const FemSystem& sys, const std::function<double(double)>& f);

// Petrov-Galerkin mass (phi_j, tilde phi_i): the stored symmetric Gram minus
// the rank-one test-space correction gamma_i * (phi_j, 1 - x).
DenseMatrix petrov_mass(const FemSystem& sys);

} // namespace sfd_detail
} // namespace fraclab
