#pragma once

#include <array>
#include <cstddef>
#include <string>

#include "simcal/linalg.hpp"

namespace simcal {

inline constexpr std::size_t kNumObservables = 7;

// The seven implosion diagnostics, in canonical order. Yields are carried
// as log10 values end to end.
struct ObservableVector {
    double gamma_bang_time = 0.0;  // ns
    double gamma_burnwidth = 0.0;  // ns
    double log10_yield_dt = 0.0;
    double tion_dt = 0.0;          // keV
    double log10_yield_dd = 0.0;
    double tion_dd = 0.0;          // keV
    double dsr = 0.0;              // fraction of [0,1]

    std::array<double, kNumObservables> to_array() const;
    static ObservableVector from_array(const std::array<double, kNumObservables>& a);
};

// Short observable names used in file headers and reports, same order as
// the struct fields.
const std::array<std::string, kNumObservables>& observable_names();

// Finiteness check only; model predictions are reported unvalidated.
void require_finite(const ObservableVector& v, const std::string& context);

// Finiteness plus the physical ranges (burnwidth > 0, dsr in [0,1]).
// Applied at data boundaries: generators and file ingestion.
void validate_observables(const ObservableVector& v, const std::string& context);

// One experiment paired with its simulation prediction.
struct ShotRecord {
    std::size_t shot_index = 0;  // chronological ordinal, unique in a series
    std::string campaign;
    ObservableVector sim;
    ObservableVector exp;
};

}  // namespace simcal
