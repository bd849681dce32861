#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ptsusy/partner.hpp"
#include "ptsusy/verify.hpp"

/// Config-driven jobs behind the command-line front end.
///
/// A config is a JSON object:
///   {"params": {"lambda": 5, "nu": 8},
///    "transform": {"case": "create_two", "eps1": 128, "eps2": 115.52, "q1": 1, "q2": -1},
///    "output": {"samples": 1000, "x_min": 0.02, "x_max": 1.55, "eigenfunctions": [0, 1]},
///    "oracle": {"grid_points": 4000, "guard_delta": 1e-4, "levels": 6, "richardson": true, "rel_tol": 1e-4},
///    "expected_spectrum": [84.5, 112.5]}
/// Everything except "params" and "transform" is optional.
namespace ptsusy::jobs {

using json = nlohmann::json;

struct OutputOptions {
    int samples = 1000;
    double x_min = 0.02;
    double x_max = kHalfPi - 0.02;
    std::vector<int> eigenfunctions;  ///< positions in the list of present levels
};

struct JobConfig {
    PTParams params{2.0, 2.0};
    json transform;
    OutputOptions output;
    verify::OracleConfig oracle;
    double rel_tol = 1e-4;
    double residual_tol = 1e-5;
    /// Claimed spectrum to check instead of the prediction (all tagged present).
    std::optional<std::vector<double>> expected_spectrum;
};

/// The transform case names accepted in "transform.case".
const std::vector<std::string>& case_names();

/// ValidationError (with the offending field path) on any malformed entry.
JobConfig parse_config(const json& j);
JobConfig load_config(const std::filesystem::path& path);

/// Builds the transform. ValidationError on violated preconditions,
/// ConstructionError if the transformation function has a zero.
std::shared_ptr<PartnerPotential> build_transform(const JobConfig& cfg);

/// Spectrum, endpoint data and case metadata as written to spectrum.json.
json spectrum_json(const JobConfig& cfg, const PartnerPotential& t);

/// Writes potential.csv, spectrum.json and (if requested) eigenfunctions.csv.
void generate(const JobConfig& cfg, const std::filesystem::path& out);

struct ResidualEntry {
    double energy;
    double residual;
};

struct VerifyOutcome {
    verify::SpectrumReport report;
    std::vector<ResidualEntry> residuals;
    bool pass = false;
};

VerifyOutcome run_verify(const JobConfig& cfg, const PartnerPotential& t);

json report_json(const JobConfig& cfg, const PartnerPotential& t, const VerifyOutcome& outcome);

/// Writes report.json and returns the outcome.
VerifyOutcome verify_job(const JobConfig& cfg, const std::filesystem::path& out);

struct FigureCase {
    std::string name;
    int figure;
    std::string description;
    json config;
};

/// The preconfigured cases behind the four figures (one per plotted curve).
std::vector<FigureCase> figure_cases();

/// One CSV per case plus manifest.json.
void figures(const std::filesystem::path& out);

/// Fixed 17-significant-digit formatting used in every CSV.
std::string format_number(double v);

} // namespace ptsusy::jobs
