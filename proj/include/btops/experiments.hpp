#pragma once

#include <string>

#include "btops/manifest.hpp"

namespace btops {

/// Runs the manifest's experiment and writes <out>/<experiment>.csv and
/// <out>/summary.json. Returns true when every checked invariant passed.
/// Throws ValidationError / NumericalError on the corresponding failures.
bool run_experiment(const Manifest& manifest);

}  // namespace btops
