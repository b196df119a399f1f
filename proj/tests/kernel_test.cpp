#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include <npchange/kernel.hpp>

using namespace npchange;

TEST_CASE("epanechnikov values") {
    KernelSpec spec{KernelKind::Epanechnikov};
    CHECK(kernel_eval(spec, 0.0) == doctest::Approx(0.75));
    CHECK(kernel_eval(spec, 1.0) == 0.0);
    CHECK(kernel_eval(spec, -1.0) == 0.0);
    CHECK(kernel_eval(spec, -0.5) == doctest::Approx(0.5625));
}

TEST_CASE("kernel axioms: symmetry, support, nonnegativity") {
    for (KernelKind kind :
         {KernelKind::Epanechnikov, KernelKind::Uniform, KernelKind::Triangular}) {
        KernelSpec spec{kind};
        for (int i = 0; i <= 400; ++i) {
            const double u = -2.0 + i * 0.01;
            const double v = kernel_eval(spec, u);
            CHECK(v >= 0.0);
            CHECK(v == kernel_eval(spec, -u));
            if (std::fabs(u) > 1.0)
                CHECK(v == 0.0);
        }
    }
}
