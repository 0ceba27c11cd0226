#pragma once

// Periodic trapezoid quadrature. On a periodic grid it is the exact mean of
// the trigonometric interpolant, hence spectrally accurate for smooth data.

#include "vortexlab/torus/field.hpp"

namespace vortexlab::torus {

/// mean(values) * volume
double integrate(const ScalarField& field);

/// Quadrature inner product: volume * mean(f * g).
double inner_product(const ScalarField& f, const ScalarField& g);

/// (integral of mask * |f|^p)^(1/p). Throws EmptyMask if the mask has no area.
double lp_norm(const ScalarField& field, double p, const RegionMask& mask);
double lp_norm(const ScalarField& field, double p);

/// Max |f| over samples whose mask weight exceeds 1/2.
double sup_norm(const ScalarField& field, const RegionMask& mask);
double sup_norm(const ScalarField& field);

}  // namespace vortexlab::torus
