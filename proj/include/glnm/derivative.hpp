#pragma once

#include <cstddef>
#include <vector>

#include "glnm/propagate.hpp"

namespace glnm {

enum class EndpointSide { left, right };

/// First derivative at interior node i from the three-point formula
/// y'_i = (S+ y+ - S- y- - S0 y0) / (2 a h); local error O(h^4). At a
/// junction the coarse-spaced triple is used.
double derivative_interior(const FieldSamples& fields, const SolutionSamples& y, std::size_t i);

/// Endpoint derivative. Centered at the node adjacent to the endpoint, it
/// consumes the already-computed interior derivatives there (y_prime_center)
/// and one node further in (y_prime_inner):
///   y'+- = [(3 -+ h g-+) y'-+  -+ h (4 g0 y'0 + 4 f0 y0 + f+ y+ + f- y-)] / (3 +- h g+-)
double derivative_endpoint(const FieldSamples& fields, const SolutionSamples& y,
                           double y_prime_inner, double y_prime_center, EndpointSide side);

/// y' at every node: interior formula inside, endpoint formula at the two
/// ends.
std::vector<double> derivative_all(const FieldSamples& fields, const SolutionSamples& y);

} // namespace glnm
