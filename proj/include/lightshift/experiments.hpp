#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lightshift/pulses.hpp"
#include "lightshift/regimes.hpp"

namespace lightshift {

/// Named parameter overrides, values in s^-1 (n_atoms as a count).
using ParamOverrides = std::map<std::string, double>;

/// Names accepted by apply_overrides.
const std::vector<std::string>& override_names();
SchemeParams apply_overrides(SchemeParams p, const ParamOverrides& overrides);

struct ScenarioOptions {
    VMode mode = VMode::Physical;
    Tier tier = Tier::Eliminated;
    std::size_t grid_points = 512;
    CalibrationOptions calibration;
    /// Half-width of the frame-rate scan, relative to N g^2/(2 Delta_1).
    double frame_bracket = 0.2;
    std::size_t frame_grid = 2001;
};

struct Branch {
    int n_atoms = 1;
    int photons = 1;
};

struct FrameCalibration {
    double r_lin = 0.0;          ///< s^-1 per photon
    double nominal = 0.0;        ///< centre of the scan
    double linear_rate = 0.0;    ///< N g^2 / (2 Delta_1)
    double max_deviation = 0.0;  ///< max |Y - cos(kappa t)| of n = 1 at r_lin
    bool within_tolerance = false; ///< |r_lin - linear_rate| <= 0.1 linear_rate (physical only)
    bool interior = false;       ///< minimum not at a bracket edge
};

struct BranchSeries {
    int n_atoms = 1;
    int photons = 0;
    SchemeParams params;
    double kappa = 0.0;
    double reference_energy = 0.0; ///< removed as exp(+i E t)
    FrameSpec frame;
    std::vector<double> t, X, Y, reference, plus_population, X_ideal;
    double max_abs_error = 0.0;
    double rms_error = 0.0;
    double min_X = 1.0;
    double max_plus_population = 0.0;
    double max_unitarity_defect = 0.0;
    std::optional<double> max_ideal_deviation; ///< max |X - X_ideal|
    std::optional<FrameCalibration> frame_calibration;
    std::optional<PulseCalibration> pulse_calibration;
};

struct CrossKerrResult {
    Scheme variant = Scheme::CrossPolarization;
    int n_atoms = 1;
    SchemeParams params;
    double nu_hat = 0.0;        ///< fitted conditional phase rate, s^-1
    double nu_effective = 0.0;  ///< cross coefficient of the effective model
    double window = 0.0;
    double fit_rms = 0.0;       ///< rms residual of the linear fit, rad
    double max_unitarity_defect = 0.0;
    std::vector<double> t, combination;
    std::optional<PulseCalibration> pulse_calibration;
};

struct ScenarioResult {
    std::string scenario;
    VMode mode = VMode::Physical;
    Tier tier = Tier::Eliminated;
    ParamOverrides overrides;
    std::size_t grid_points = 0;
    std::vector<BranchSeries> branches;
    std::optional<CrossKerrResult> cross;
    std::vector<RegimeReport> regimes; ///< one per distinct N
};

/// n_max >= 2 spaces; n = 1 series scanned over r_lin.
FrameCalibration calibrate_frame(const SchemeParams& p, const ScenarioOptions& options,
                                 const std::optional<PulseCalibration>& pulse = std::nullopt);

/// Single (N, n) series over t in [0, 2 pi / kappa].
BranchSeries run_branch(const SchemeParams& p, int photons, const ScenarioOptions& options,
                        const std::optional<PulseCalibration>& pulse = std::nullopt,
                        const std::optional<FrameCalibration>& frame = std::nullopt);

/// Defaults (1,2),(2,2). The physical run also evaluates the ideal-mode oracle.
ScenarioResult run_fig3a(const ParamOverrides& overrides = {}, const ScenarioOptions& options = {},
                         std::vector<Branch> branches = {});
/// Defaults (1,1),(1,2),(2,1),(2,2); an "n_atoms" override restricts to that N.
ScenarioResult run_fig3b(const ParamOverrides& overrides = {}, const ScenarioOptions& options = {},
                         std::vector<Branch> branches = {});
ScenarioResult run_cross_kerr(Scheme variant, const ParamOverrides& overrides = {},
                              const ScenarioOptions& options = {});

using ScenarioFn = std::function<ScenarioResult(const ParamOverrides&)>;

struct SweepPoint {
    std::string parameter;
    double value = 0.0;
    std::optional<ScenarioResult> result;
    std::string error; ///< set when the point failed
};

/// Runs `scenario` once per value (merged into `base`), order-preserving.
/// Failures are recorded per point; the sweep continues.
std::vector<SweepPoint> sweep(const std::string& parameter, const std::vector<double>& values,
                              const ScenarioFn& scenario, const ParamOverrides& base = {}, int jobs = 1);

/// Angular frequency maximizing the least-squares fit of a cos(wt) + b sin(wt) + c.
double dominant_frequency(const std::vector<double>& t, const std::vector<double>& y, double w_min, double w_max,
                          std::size_t grid = 4000);
/// Same, over [pi / T, pi / dt] of the sample grid.
double dominant_frequency(const std::vector<double>& t, const std::vector<double>& y);

} // namespace lightshift
