#pragma once

namespace npchange {

/// Compensated (Kahan) accumulator. Long prefix sums are reused by every
/// window query, so construction drift must stay well below test tolerances.
class KahanSum {
public:
    void add(double v) {
        double y = v - comp_;
        double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace npchange
