#pragma once

#include <cstdint>
#include <string>

#include "carlab/car_space.hpp"

namespace carlab {

/// A reference space together with a basis projection and a Gamma-invariant q.
struct Instance {
  std::string id;
  CarSpace space;
  BasisProjection p;
  InvariantSubspace q;
};

/// E1: C^2, P = e1 e1*, q = span{(1, e^{i pi/3}) / sqrt 2}.
Instance instance_e1();
/// E2: C^4, seeded random P and q of complex dimension 2 (generic position).
Instance instance_e2();
/// E3: E1 plus a commuting block on C^4 contributing one h01 and one h02 pair.
Instance instance_e3();
/// Looks up "E1", "E2" or "E3"; throws InvalidStructure for other names.
Instance builtin_instance(const std::string& name);

/// Standard space of dimension dim_h, random P, random q with real_dim = dim_h / 2.
Instance random_generic_instance(Index dim_h, std::uint64_t seed);

/// Sizes of the Halmos blocks of a mixed instance, as complex dimensions of
/// h01, h02 and h1 (each even).
struct MixedLayout {
  Index h01 = 0;
  Index h02 = 0;
  Index h1 = 0;
};

/// h01 (+) h02 (+) h1 assembled block-wise with a generic h1 block, then
/// rotated by a random unitary commuting with Gamma so that no block is
/// aligned with the coordinate axes.
Instance random_mixed_instance(const MixedLayout& layout, std::uint64_t seed);

/// Fock dimension 2^{dim h / 2} of an instance.
Index fock_dim(const Instance& inst);

}  // namespace carlab
