#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pglab {

// Verdict for one registered claim.  witness_x is the worst point observed:
// the first violation when the check fails, the margin-minimizing abscissa
// when it passes.  margin is the minimum signed slack over all samples, so
// passed holds exactly when margin stayed above the (scaled) noise floor.
struct CheckOutcome {
    std::string claim_id;
    bool passed = false;
    std::optional<double> witness_x;
    double margin = 0.0;
    std::size_t samples = 0;
    std::string witness_note;   // extra context, e.g. which derivative order
};

struct ScanSample {
    double x = 0.0;
    double value = 0.0;
    double first_diff = 0.0;    // secant slope to the next sample (0 at the edge)
    double second_diff = 0.0;   // slope change at this sample (0 at the edges)
};

enum class ScanClass { consistent, violated, inconclusive };

// Non-gating classification of a conjectured or open property.  A violated
// classification always carries a witness (x, value) pair.
struct ConjectureScan {
    std::string claim_id;
    std::vector<ScanSample> sample_points;
    ScanClass classification = ScanClass::inconclusive;
    std::optional<std::pair<double, double>> witness;
    std::string observed;       // short human-readable summary of the behaviour
};

} // namespace pglab
