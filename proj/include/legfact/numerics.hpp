#pragma once

#include <cmath>

namespace legfact {

// Neumaier compensated accumulator.  Long real-number sums go through this so
// that results are reproducible to the last bit in the serial code paths.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace legfact
