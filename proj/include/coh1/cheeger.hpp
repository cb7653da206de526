#pragma once

// Cheeger deformation of a metric family: every block profile p is replaced
// by p_s = p / (1 + s p), which shrinks the orbit directions while keeping
// the orbit interval fixed.  Deformations compose additively in s, and s = 0
// reproduces the input exactly (the jet quotient by the constant jet 1 is
// bitwise the identity).

#include <stdexcept>

#include "coh1/family.hpp"

namespace coh1 {

inline MetricFamily cheeger_deform(const MetricFamily& fam, double s) {
  if (!(s >= 0.0) || !std::isfinite(s))
    throw std::invalid_argument(
        "cheeger_deform: parameter s must be finite and >= 0");
  MetricFamily out = fam;
  for (auto& b : out.blocks) b.profile = Profile::cheeger(b.profile, s);
  out.params["cheeger_s"] += s;  // accumulates across repeated deformation
  return out;
}

}  // namespace coh1
