#include "spectra1d/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "spectra1d/errors.hpp"

namespace spectra1d {

namespace {

std::string format_double(double v) {
    if (!std::isfinite(v))
        throw Error("json_io", "refusing to serialize a non-finite number");
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    std::string s(buf);
    // keep pure integers recognizable as numbers yet round-trippable
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

void dump_rec(const ordered_json& j, std::string& out, int indent, int depth) {
    const std::string pad(indent * depth, ' ');
    const std::string pad_in(indent * (depth + 1), ' ');
    switch (j.type()) {
        case nlohmann::detail::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in + nlohmann::json(key).dump() + ": ";
                dump_rec(value, out, indent, depth + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case nlohmann::detail::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& value : j) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                dump_rec(value, out, indent, depth + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case nlohmann::detail::value_t::number_float:
            out += format_double(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

std::string lambda_string(const YoungDiagram& d) { return d.to_string(); }

ordered_json lambda_json(const YoungDiagram& d) {
    ordered_json arr = ordered_json::array();
    for (int r : d.rows) arr.push_back(r);
    return arr;
}

} // namespace

std::string dump_json(const ordered_json& j, int indent) {
    std::string out;
    dump_rec(j, out, indent, 0);
    out += "\n";
    return out;
}

std::string statistics_name(Statistics s) {
    return s == Statistics::fermion ? "fermion" : "boson";
}

Statistics statistics_from_name(const std::string& name) {
    if (name == "fermion" || name == "f") return Statistics::fermion;
    if (name == "boson" || name == "b") return Statistics::boson;
    throw Error("cli", "unknown statistics '" + name + "' (use fermion|boson)");
}

ordered_json trap_to_json(const TrapSpec& trap) {
    ordered_json j;
    j["kind"] = trap.kind_name();
    if (trap.kind == TrapKind::grid) {
        j["x_min"] = trap.x_min;
        j["x_max"] = trap.x_max;
        j["m"] = trap.grid_points();
        j["v"] = trap.v;
    }
    return j;
}

TrapSpec trap_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "harmonic") return TrapSpec::harmonic();
    if (kind == "infinite_well" || kind == "well") return TrapSpec::infinite_well();
    if (kind == "grid") {
        auto v = j.at("v").get<std::vector<double>>();
        if (j.contains("m") && j.at("m").get<int>() != static_cast<int>(v.size()))
            throw Error("json_io", "grid trap: 'm' disagrees with the sample count");
        return TrapSpec::grid(j.at("x_min").get<double>(), j.at("x_max").get<double>(),
                              std::move(v));
    }
    throw Error("json_io", "unknown trap kind '" + kind + "'");
}

ordered_json basis_to_json(const OneBodyBasis& basis) {
    ordered_json j;
    j["schema"] = "v1";
    j["trap"] = trap_to_json(basis.trap());
    j["n_levels"] = basis.size();
    j["basis_hash"] = basis.hash();
    j["energies"] = basis.energies();
    if (basis.parity()) j["parity"] = *basis.parity();
    if (basis.trap().kind == TrapKind::grid) {
        j["grid_x"] = basis.grid_x();
        ordered_json orbitals = ordered_json::array();
        for (int n = 0; n < basis.size(); ++n) {
            std::vector<double> col(basis.grid_orbitals().rows());
            for (int i = 0; i < basis.grid_orbitals().rows(); ++i)
                col[i] = basis.grid_orbitals()(i, n);
            orbitals.push_back(col);
        }
        j["orbitals"] = std::move(orbitals);
    }
    return j;
}

OneBodyBasis basis_from_json(const nlohmann::json& j) {
    const auto trap = trap_from_json(j.at("trap"));
    const int n_levels = j.at("n_levels").get<int>();
    auto basis = one_body_solve(trap, n_levels);
    const auto energies = j.at("energies").get<std::vector<double>>();
    if (static_cast<int>(energies.size()) != basis.size())
        throw Error("json_io", "basis import: level count mismatch");
    for (int n = 0; n < basis.size(); ++n)
        if (std::abs(energies[n] - basis.energy(n)) >
            1e-8 * std::max(1.0, std::abs(energies[n])))
            throw Error("json_io", "basis import: stored energies disagree with the re-solve");
    return basis;
}

std::string basis_to_csv(const OneBodyBasis& basis) {
    std::ostringstream out;
    out << "n,energy" << (basis.parity() ? ",parity" : "") << "\n";
    char buf[40];
    for (int n = 0; n < basis.size(); ++n) {
        std::snprintf(buf, sizeof(buf), "%.12g", basis.energy(n));
        out << n << "," << buf;
        if (basis.parity()) out << "," << (*basis.parity())[n];
        out << "\n";
    }
    return out.str();
}

ordered_json tensor_to_json(const TwoBodyTensor& tensor) {
    ordered_json j;
    j["schema"] = "v1";
    j["basis_hash"] = tensor.basis_hash();
    j["cutoff"] = tensor.cutoff();
    j["quadrature_error"] = tensor.quadrature_error();
    // canonical keys, emitted in sorted order for determinism
    std::vector<std::pair<std::uint32_t, double>> entries(tensor.raw().begin(),
                                                          tensor.raw().end());
    std::sort(entries.begin(), entries.end());
    ordered_json values;
    for (const auto& [key, value] : entries) {
        const int a = key & 0xff, b = (key >> 8) & 0xff, c = (key >> 16) & 0xff,
                  d = (key >> 24) & 0xff;
        values[std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "," +
               std::to_string(d)] = value;
    }
    j["values"] = std::move(values);
    return j;
}

TwoBodyTensor tensor_from_json(const nlohmann::json& j) {
    const int cutoff = j.at("cutoff").get<int>();
    std::unordered_map<std::uint32_t, double> values;
    for (const auto& [key, value] : j.at("values").items()) {
        int a, b, c, d;
        if (std::sscanf(key.c_str(), "%d,%d,%d,%d", &a, &b, &c, &d) != 4)
            throw Error("json_io", "tensor import: malformed key '" + key + "'");
        if (!(0 <= a && a <= b && b <= c && c <= d && d < cutoff))
            throw Error("json_io", "tensor import: key '" + key +
                                       "' is not canonical (sorted, below cutoff); the stored "
                                       "tensor would not be state-permutation symmetric");
        const double v = value.get<double>();
        if (!std::isfinite(v))
            throw Error("json_io", "tensor import: non-finite value at '" + key + "'");
        values[TwoBodyTensor::canonical_key(a, b, c, d)] = v;
    }
    return TwoBodyTensor(j.value("basis_hash", std::uint64_t{0}), cutoff, std::move(values),
                         j.value("quadrature_error", 0.0));
}

ordered_json level_to_json(const DegenerateLevel& level) {
    ordered_json j;
    j["energy"] = level.energy;
    j["multiset"] = level.multiset;
    j["state_count"] = static_cast<int>(level.states.size());
    j["accidental_partners"] = level.accidental_partners;
    return j;
}

ordered_json splitting_report_to_json(const SplittingReport& report,
                                      const std::vector<std::pair<Statistics, int>>& views) {
    ordered_json j;
    j["energy"] = report.level_energy;
    j["multiset"] = report.multiset;
    if (!report.merged_multisets.empty()) j["merged_multisets"] = report.merged_multisets;
    j["state_count"] = report.state_count;
    j["generic"] = report.generic;
    ordered_json blocks = ordered_json::array();
    for (const auto& block : report.blocks) {
        ordered_json b;
        b["lambda"] = lambda_json(block.lambda);
        b["size"] = block.size;
        b["eigenvalues"] = block.eigenvalues;
        blocks.push_back(std::move(b));
    }
    j["blocks"] = std::move(blocks);
    j["solvable"] = report.solvable;
    j["w_trace"] = report.w_trace;
    if (!views.empty()) {
        ordered_json sv = ordered_json::array();
        for (const auto& [stat, jj] : views) {
            ordered_json view;
            view["statistics"] = statistics_name(stat);
            view["j"] = jj;
            ordered_json lines = ordered_json::array();
            for (const auto& line : assemble_statistics(report, stat, jj)) {
                ordered_json l;
                l["shift"] = line.shift;
                l["lambda"] = lambda_json(line.lambda);
                l["spin_multiplicity"] = line.spin_multiplicity;
                lines.push_back(std::move(l));
            }
            view["lines"] = std::move(lines);
            sv.push_back(std::move(view));
        }
        j["statistics_views"] = std::move(sv);
    }
    return j;
}

std::string splitting_report_to_csv(const SplittingReport& report) {
    std::ostringstream out;
    out << "energy,lambda,shift\n";
    char buf[40];
    for (const auto& block : report.blocks) {
        for (double ev : block.eigenvalues) {
            std::snprintf(buf, sizeof(buf), "%.12g", ev);
            out << report.level_energy << "," << lambda_string(block.lambda) << "," << buf << "\n";
        }
    }
    return out.str();
}

ordered_json near_unitary_report_to_json(const NearUnitaryReport& report, double level_energy,
                                         const std::vector<std::pair<Statistics, int>>& views) {
    ordered_json j;
    j["level_energy"] = level_energy;
    j["n"] = report.n_particles;
    j["t"] = report.tunneling;
    j["trap_symmetric"] = report.trap_symmetric;
    ordered_json blocks = ordered_json::array();
    for (const auto& block : report.blocks) {
        ordered_json b;
        b["lambda"] = lambda_json(block.lambda);
        if (block.reversal_parity) b["reversal_parity"] = *block.reversal_parity;
        b["size"] = block.size;
        b["eigenvalues"] = block.eigenvalues;
        blocks.push_back(std::move(b));
    }
    j["blocks"] = std::move(blocks);
    j["solvable"] = report.solvable;
    if (report.discrepancy) j["discrepancy"] = report.discrepancy_note;
    if (!views.empty()) {
        ordered_json sv = ordered_json::array();
        for (const auto& [stat, jj] : views) {
            ordered_json view;
            view["statistics"] = statistics_name(stat);
            view["j"] = jj;
            ordered_json lines = ordered_json::array();
            for (const auto& line : assemble_unitary_statistics(report, stat, jj)) {
                ordered_json l;
                l["shift"] = line.shift;
                l["lambda"] = lambda_json(line.lambda);
                l["spin_multiplicity"] = line.spin_multiplicity;
                lines.push_back(std::move(l));
            }
            view["lines"] = std::move(lines);
            sv.push_back(std::move(view));
        }
        j["statistics_views"] = std::move(sv);
    }
    return j;
}

ordered_json unitary_levels_to_json(const std::vector<UnitaryLevel>& levels, int J,
                                    Statistics stat) {
    ordered_json j;
    j["schema"] = "v1";
    ordered_json arr = ordered_json::array();
    for (const auto& level : levels) {
        ordered_json l;
        l["orbitals"] = level.orbitals;
        l["energy"] = level.energy;
        l["pre_symmetrization_degeneracy"] = level.pre_symmetrization_degeneracy;
        arr.push_back(std::move(l));
    }
    j["levels"] = std::move(arr);
    if (!levels.empty()) {
        const int n = static_cast<int>(levels.front().orbitals.size());
        j["physical_degeneracy_per_level"] = degeneracy_count(n, J, stat);
        ordered_json breakdown = ordered_json::array();
        for (const auto& line : degeneracy_breakdown(n, J, stat)) {
            ordered_json b;
            b["lambda"] = lambda_json(line.lambda);
            b["tableaux"] = line.tableaux;
            b["spin"] = line.spin;
            breakdown.push_back(std::move(b));
        }
        j["degeneracy_breakdown"] = std::move(breakdown);
    }
    return j;
}

ordered_json spectrum_to_json(const ManyBodyMatrix& mb, const std::string& sector,
                              const std::vector<double>& eigenvalues) {
    ordered_json j;
    j["g"] = mb.g;
    j["e_cut"] = mb.e_cut;
    j["dimension"] = mb.dimension();
    j["sector"] = sector;
    j["eigenvalues"] = eigenvalues;
    return j;
}

ordered_json tunneling_fit_to_json(const TunnelingFit& fit) {
    ordered_json j;
    j["g_values"] = fit.g_values;
    j["splittings"] = fit.splittings;
    j["coefficient"] = fit.coefficient;
    j["curvature"] = fit.curvature;
    j["exponent"] = fit.exponent;
    j["exponent_residual"] = fit.exponent_residual;
    j["t_estimates"] = fit.t_estimates;
    j["e_cut_schedule"] = fit.e_cut_schedule;
    return j;
}

ordered_json convergence_to_json(const ConvergenceReport& report) {
    ordered_json j;
    j["e_cuts"] = report.e_cuts;
    j["eigenvalues"] = report.eigenvalues;
    j["drifts"] = report.drifts;
    j["flagged"] = report.flagged;
    j["tolerance"] = report.tolerance;
    return j;
}

} // namespace spectra1d
