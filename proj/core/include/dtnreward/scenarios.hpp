#pragma once

#include "dtnreward/model.hpp"

namespace dtnreward::scenarios {

/// c_d = 0.4, c_r = 0.04, c_s = 0.01
CostParams reference_costs();

/// Ten heterogeneous relays r1..r10, all exponential at the tabulated rates.
RelaySet heterogeneous_exponential();

/// The same rates with mixed laws: r1-r2 exponential, r3-r4
/// hyperexponential, r5-r7 Weibull, r8-r10 folded normal. Each law has mean
/// 1/rate; the shape parameters are fixed here:
///   hyperexponential  probs (0.5, 0.5), phase rates (2r/3, 2r)
///   Weibull           shape 1.5
///   folded normal     scale = location / 2
RelaySet heterogeneous_mixed();

/// Ten taxis t1..t10 with exponential laws at rates fitted from GPS traces.
RelaySet taxis();

}  // namespace dtnreward::scenarios
