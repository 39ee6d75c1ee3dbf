#pragma once

#include "wavecoex/psd.hpp"
#include "wavecoex/types.hpp"

namespace wavecoex {

// BandSpec of the interference integral; identical layout to Band.
using BandSpec = Band;

// Adaptive Simpson quadrature of a PSD over a band, clipped to the curve's
// support. Panels are seeded from the curve's feature scale and refined by
// recursive bisection until the local tolerance is met. Exceeding the
// subdivision limit raises QuadratureError with the partial estimate.
double integrate_psd(const PsdCurve& curve, const Band& band, double rel_tol = 1e-9,
                     int max_depth = 40);

}  // namespace wavecoex
