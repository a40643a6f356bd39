#include "simcal/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace simcal {

std::array<double, kNumObservables> ObservableVector::to_array() const {
    return {gamma_bang_time, gamma_burnwidth, log10_yield_dt, tion_dt,
            log10_yield_dd, tion_dd, dsr};
}

ObservableVector ObservableVector::from_array(const std::array<double, kNumObservables>& a) {
    ObservableVector v;
    v.gamma_bang_time = a[0];
    v.gamma_burnwidth = a[1];
    v.log10_yield_dt = a[2];
    v.tion_dt = a[3];
    v.log10_yield_dd = a[4];
    v.tion_dd = a[5];
    v.dsr = a[6];
    return v;
}

const std::array<std::string, kNumObservables>& observable_names() {
    static const std::array<std::string, kNumObservables> names = {
        "bang_time", "burnwidth",      "log10_yield_dt", "tion_dt",
        "log10_yield_dd", "tion_dd", "dsr"};
    return names;
}

void require_finite(const ObservableVector& v, const std::string& context) {
    const auto a = v.to_array();
    const auto& names = observable_names();
    for (std::size_t i = 0; i < kNumObservables; ++i) {
        if (!std::isfinite(a[i])) {
            throw std::invalid_argument(context + ": " + names[i] + " is not finite");
        }
    }
}

void validate_observables(const ObservableVector& v, const std::string& context) {
    require_finite(v, context);
    if (v.gamma_burnwidth <= 0.0) {
        throw std::invalid_argument(context + ": burnwidth must be positive, got " +
                                    std::to_string(v.gamma_burnwidth));
    }
    if (v.dsr < 0.0 || v.dsr > 1.0) {
        throw std::invalid_argument(context + ": dsr must lie in [0, 1], got " +
                                    std::to_string(v.dsr));
    }
}

}  // namespace simcal
