#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace spectra1d {

struct CriterionResult {
    int number = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct AcceptanceOptions {
    bool quick = false;        // trims trial counts on the randomized checks
    std::uint64_t seed = 12345;
};

// Runs the end-to-end verification suite (one result per criterion).  When a
// stream is given, one PASS/FAIL line is printed per criterion as it lands.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts,
                                            std::ostream* progress = nullptr);

} // namespace spectra1d
