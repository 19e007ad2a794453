#include "lightshift/report.hpp"

#include <charconv>
#include <cmath>

namespace lightshift {

std::string format_number(double v)
{
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc())
        return "nan";
    return std::string(buf, end);
}

namespace {

template <class T>
Json optional_json(const std::optional<T>& v)
{
    return v ? Json(*v) : Json(nullptr);
}

} // namespace

Json to_json(const SchemeParams& p)
{
    Json j;
    j["scheme"] = to_string(p.scheme);
    j["n_atoms"] = p.n_atoms;
    j["g"] = p.g;
    j["delta1"] = p.delta1;
    j["theta"] = optional_json(p.theta);
    j["lambda"] = optional_json(p.lambda);
    j["delta2"] = optional_json(p.delta2);
    j["omega"] = p.omega;
    if (mode_count(p.scheme) == 2) {
        j["g_a"] = optional_json(p.g_a);
        j["g_b"] = optional_json(p.g_b);
        j["delta1_a"] = optional_json(p.delta1_a);
        j["delta1_b"] = optional_json(p.delta1_b);
        j["delta"] = optional_json(p.delta);
    }
    j["laser_detuning_ratio"] = p.laser_detuning_ratio;
    if (p.derived) {
        j["mu"] = p.mu;
        j["kappa"] = p.kappa;
    }
    return j;
}

Json to_json(const RegimeReport& r)
{
    Json j;
    Json ratios = Json::object();
    for (const auto& x : r.ratios)
        ratios[x.name] = {{"value", optional_json(x.value)}, {"threshold", x.threshold}, {"status", to_string(x.status)}};
    j["ratios"] = ratios;
    j["strengths"] = {{"kappa", r.kappa},
                      {"rot_strength", r.rot_strength},
                      {"theta_choice", r.enhanced.theta_choice},
                      {"enhanced_strength", r.enhanced.strength},
                      {"enhanced_strength_quoted", r.enhanced.quoted_expression}};
    j["notes"] = r.notes;
    return j;
}

Json to_json(const PulseCalibration& c)
{
    return {{"tier", to_string(c.tier)},
            {"phase_forward_rad", c.phase_forward},
            {"phase_inverse_rad", c.phase_inverse},
            {"fidelity_forward", c.fidelity_forward},
            {"fidelity_inverse", c.fidelity_inverse},
            {"beta_forward_rad_per_photon", c.beta_forward},
            {"beta_inverse_rad_per_photon", c.beta_inverse}};
}

Json to_json(const FrameCalibration& c)
{
    return {{"r_lin", c.r_lin},
            {"nominal", c.nominal},
            {"linear_rate", c.linear_rate},
            {"max_deviation_n1", c.max_deviation},
            {"within_tolerance", c.within_tolerance},
            {"interior_minimum", c.interior}};
}

Json to_json(const BranchSeries& b)
{
    Json j;
    j["N"] = b.n_atoms;
    j["n"] = b.photons;
    j["kappa"] = b.kappa;
    j["max_abs_error"] = b.max_abs_error;
    j["rms_error"] = b.rms_error;
    j["min_X"] = b.min_X;
    j["max_plus_population"] = b.max_plus_population;
    j["max_unitarity_defect"] = b.max_unitarity_defect;
    j["max_ideal_deviation"] = optional_json(b.max_ideal_deviation);
    j["reference_energy"] = b.reference_energy;
    j["frame"] = {{"photon_rates", b.frame.photon_rates}, {"photon_offsets", b.frame.photon_offsets}};
    j["frame_calibration"] = b.frame_calibration ? to_json(*b.frame_calibration) : Json(nullptr);
    j["pulse_calibration"] = b.pulse_calibration ? to_json(*b.pulse_calibration) : Json(nullptr);
    j["params"] = to_json(b.params);
    return j;
}

Json to_json(const CrossKerrResult& c)
{
    Json j;
    j["variant"] = to_string(c.variant);
    j["N"] = c.n_atoms;
    j["nu_hat"] = c.nu_hat;
    j["nu_effective"] = c.nu_effective;
    j["relative_error"] = c.nu_effective != 0.0 ? Json(std::abs(c.nu_hat - c.nu_effective) / std::abs(c.nu_effective))
                                                : Json(nullptr);
    j["window"] = c.window;
    j["fit_rms_rad"] = c.fit_rms;
    j["max_unitarity_defect"] = c.max_unitarity_defect;
    j["pulse_calibration"] = c.pulse_calibration ? to_json(*c.pulse_calibration) : Json(nullptr);
    j["params"] = to_json(c.params);
    return j;
}

Json to_json(const ScenarioResult& r)
{
    Json j;
    j["scenario"] = r.scenario;
    j["mode"] = to_string(r.mode);
    j["tier"] = to_string(r.tier);
    j["grid_points"] = r.grid_points;
    Json ov = Json::object();
    for (const auto& [k, v] : r.overrides)
        ov[k] = v;
    j["overrides"] = ov;
    Json regimes = Json::array();
    for (const auto& x : r.regimes)
        regimes.push_back(to_json(x));
    j["regimes"] = regimes;
    Json branches = Json::array();
    for (const auto& b : r.branches)
        branches.push_back(to_json(b));
    j["branches"] = branches;
    j["cross"] = r.cross ? to_json(*r.cross) : Json(nullptr);
    return j;
}

Json to_json(const SweepPoint& p)
{
    Json j;
    j["parameter"] = p.parameter;
    j["value"] = p.value;
    j["error"] = p.error.empty() ? Json(nullptr) : Json(p.error);
    j["result"] = p.result ? to_json(*p.result) : Json(nullptr);
    return j;
}

void write_csv(std::ostream& os, const ScenarioResult& r)
{
    if (r.cross) {
        os << "t_seconds,N,combination_phase\n";
        const auto& c = *r.cross;
        for (std::size_t k = 0; k < c.t.size(); ++k)
            os << format_number(c.t[k]) << ',' << c.n_atoms << ',' << format_number(c.combination[k]) << '\n';
        return;
    }
    os << "t_seconds,N,n,X,Y,reference,abs_error\n";
    for (const auto& b : r.branches)
        for (std::size_t k = 0; k < b.t.size(); ++k)
            os << format_number(b.t[k]) << ',' << b.n_atoms << ',' << b.photons << ',' << format_number(b.X[k]) << ','
               << format_number(b.Y[k]) << ',' << format_number(b.reference[k]) << ','
               << format_number(std::abs(b.Y[k] - b.reference[k])) << '\n';
}

} // namespace lightshift
