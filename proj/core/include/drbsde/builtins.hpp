#pragma once

#include <string>
#include <vector>

#include "drbsde/generator.hpp"

namespace drbsde {

/// Concave Osgood modulus with a non-integrable reciprocal at 0:
/// x|ln x| on (0, 1/e], constant 1/e above (the zero-slope linear
/// extension), 0 at and below 0.
double osgood_h(double x);

/// Builtin generator catalog:
///   zero
///   constant(c)
///   linear(a,b)              a*y + b*z
///   clamp_drive(c)           constant drive, default c = 2
///   osgood_example           h(|y|) - e^{|b|y} + (e^{-y} ^ 1)|z| sin|z| + t^{-1/4} 1_{t>0}
///   discontinuous_example    1_{y<=0} cbrt|y| + 1_{y>0} cos y + sqrt(|y||z|) + |b|
/// Unknown names throw InvalidArgumentError.
GeneratorSpec builtin(const std::string& name, const std::vector<double>& params);

/// Parses "name" or "name(p1,p2)" and dispatches to the catalog.
GeneratorSpec builtin(const std::string& name_with_args);

}  // namespace drbsde
