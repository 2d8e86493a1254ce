#pragma once

#include <json.hpp>
#include <string>

#include "spectra1d/contact_tensor.hpp"
#include "spectra1d/exact_diag.hpp"
#include "spectra1d/one_body.hpp"
#include "spectra1d/unitary_limit.hpp"
#include "spectra1d/weak_coupling.hpp"

namespace spectra1d {

using ordered_json = nlohmann::ordered_json;

// Serialize with floating-point numbers fixed to 12 significant digits, so
// identical inputs give byte-identical reports.
std::string dump_json(const ordered_json& j, int indent = 2);

ordered_json trap_to_json(const TrapSpec& trap);
TrapSpec trap_from_json(const nlohmann::json& j);

ordered_json basis_to_json(const OneBodyBasis& basis);
// Re-solves the stored trap and cross-checks the stored energies.
OneBodyBasis basis_from_json(const nlohmann::json& j);
std::string basis_to_csv(const OneBodyBasis& basis);

ordered_json tensor_to_json(const TwoBodyTensor& tensor);
// Validates canonical (sorted) keys — which is what makes every one of the
// 24 index orders retrieve one stored value — and finiteness.
TwoBodyTensor tensor_from_json(const nlohmann::json& j);

ordered_json level_to_json(const DegenerateLevel& level);

ordered_json splitting_report_to_json(const SplittingReport& report,
                                      const std::vector<std::pair<Statistics, int>>& views = {});
std::string splitting_report_to_csv(const SplittingReport& report);

ordered_json near_unitary_report_to_json(const NearUnitaryReport& report, double level_energy,
                                         const std::vector<std::pair<Statistics, int>>& views = {});

ordered_json unitary_levels_to_json(const std::vector<UnitaryLevel>& levels, int J,
                                    Statistics stat);

ordered_json spectrum_to_json(const ManyBodyMatrix& mb, const std::string& sector,
                              const std::vector<double>& eigenvalues);

ordered_json tunneling_fit_to_json(const TunnelingFit& fit);

ordered_json convergence_to_json(const ConvergenceReport& report);

std::string statistics_name(Statistics s);
Statistics statistics_from_name(const std::string& name);

} // namespace spectra1d
