#pragma once

#include <cmath>

namespace npchange {

/// Symmetric nonnegative kernels supported on [-1, 1].
enum class KernelKind { Epanechnikov, Uniform, Triangular };

struct KernelSpec {
    KernelKind kind = KernelKind::Epanechnikov;
};

/// K(u); zero outside [-1, 1]. Total function, no error paths.
inline double kernel_eval(KernelSpec spec, double u) {
    double a = std::fabs(u);
    if (a > 1.0)
        return 0.0;
    switch (spec.kind) {
    case KernelKind::Epanechnikov:
        return 0.75 * (1.0 - u * u);
    case KernelKind::Uniform:
        return 0.5;
    case KernelKind::Triangular:
        return 1.0 - a;
    }
    return 0.0;
}

} // namespace npchange
