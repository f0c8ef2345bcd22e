#pragma once

// Radial Littlewood-Paley cutoff.
//
//   chi(r) = 1 for r <= 1, 0 for r >= 2, and on (1,2) the smooth bridge
//   h(2-r) / (h(2-r) + h(r-1)) with h(s) = exp(-1/s) for s > 0, else 0.
//
// chi is nonincreasing and C^infinity; phi(r) = chi(r) - chi(2r) is the
// induced annulus bump, supported in [1/2, 2], and the family
// {chi(r)} + {phi(2^-j r)}_{j>=1} telescopes exactly to 1.
//
// A second, quintic-smoothstep bridge is provided so that cutoff-dependence
// of derived quantities can be measured against an independent transition.

#include <cmath>

#include "zygwave/common.hpp"

namespace zyg {

enum class CutoffBridge { exponential, smoothstep };

struct RadialCutoff {
    CutoffBridge bridge = CutoffBridge::exponential;

    double chi(double r) const {
        if (r <= 1.0) return 1.0;
        if (r >= 2.0) return 0.0;
        if (bridge == CutoffBridge::exponential) {
            const double a = std::exp(-1.0 / (2.0 - r));
            const double b = std::exp(-1.0 / (r - 1.0));
            return a / (a + b);
        }
        const double s = r - 1.0;
        return 1.0 - s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
    }

    double phi(double r) const { return chi(r) - chi(2.0 * r); }
};

}  // namespace zyg
