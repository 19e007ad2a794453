#include "lightshift/regimes.hpp"

#include <cmath>
#include <sstream>

#include "lightshift/error.hpp"

namespace lightshift {

std::string to_string(RegimeStatus s)
{
    switch (s) {
    case RegimeStatus::Pass:
        return "pass";
    case RegimeStatus::Warn:
        return "warn";
    case RegimeStatus::NotEvaluated:
        break;
    }
    return "not_evaluated";
}

double RegimeThresholds::for_ratio(const std::string& name) const
{
    if (auto it = overrides.find(name); it != overrides.end())
        return it->second;
    return name == "separation" ? separation : small;
}

const std::vector<std::string>& regime_ratio_names()
{
    static const std::vector<std::string> names{"dispersive_cavity", "dispersive_laser", "separation",
                                                "second_dispersive", "rot_condition",    "footnote_ratio"};
    return names;
}

const RegimeRatio& RegimeReport::ratio(const std::string& name) const
{
    for (const auto& r : ratios)
        if (r.name == name)
            return r;
    throw ValidationError("unknown regime ratio '" + name + "'");
}

bool RegimeReport::all_pass() const
{
    for (const auto& r : ratios)
        if (r.status == RegimeStatus::Warn)
            return false;
    return true;
}

namespace {

double require_theta(const SchemeParams& p)
{
    if (!p.theta)
        throw ValidationError("regime check needs theta (or lambda and delta2)");
    return *p.theta;
}

} // namespace

double kerr_strength(const SchemeParams& p)
{
    const double theta = require_theta(p);
    return p.n_atoms * std::pow(p.g, 4) / (4.0 * p.delta1 * p.delta1 * theta);
}

EnhancedStrength enhanced_strength(const SchemeParams& p)
{
    if (p.n_atoms < 1)
        throw ValidationError("enhanced strength needs N >= 1");
    const double n = p.n_atoms;
    const double a = p.g * p.g / (2.0 * p.delta1);
    EnhancedStrength e;
    e.theta_choice = std::pow(n, 0.25) * a;
    e.strength = n * a * a / e.theta_choice;
    e.quoted_expression = (std::sqrt(n) * p.g / p.delta1) * std::pow(n, 0.25) * p.g;
    return e;
}

RegimeReport check(const SchemeParams& p_in, const RegimeThresholds& th)
{
    const SchemeParams p = p_in.derived ? p_in : derive_params(p_in);
    const double theta = require_theta(p);
    const double sn = std::sqrt(static_cast<double>(p.n_atoms));
    const bool laser = p.lambda && p.delta2;

    // Worst case over the cavity couplings for two-mode schemes.
    double cav = 0.0, a_max = 0.0, g_max = 0.0;
    for (const auto& c : cavity_couplings(p)) {
        cav = std::max(cav, sn * std::abs(c.g) / std::abs(c.detuning));
        a_max = std::max(a_max, std::abs(c.half_shift()));
        g_max = std::max(g_max, std::abs(c.g));
    }

    std::map<std::string, std::optional<double>> values;
    values["dispersive_cavity"] = cav;
    values["second_dispersive"] = sn * a_max / std::abs(theta);
    values["rot_condition"] = std::pow(a_max, 3) * sn / std::pow(std::abs(theta), 3);
    if (laser) {
        const double lam = std::abs(*p.lambda), d2 = *p.delta2;
        values["dispersive_laser"] = sn * lam / std::abs(d2);
        double sep = 0.0;
        for (const auto& c : cavity_couplings(p))
            sep = std::max(sep, std::max(sn * g_max, sn * lam) / std::abs(d2 - c.detuning));
        values["separation"] = sep;
        values["footnote_ratio"] = (std::pow(lam, 3) / (d2 * d2)) / (g_max * g_max / std::abs(p.delta1));
    }

    RegimeReport r;
    for (const auto& name : regime_ratio_names()) {
        RegimeRatio x{name, values[name], th.for_ratio(name), RegimeStatus::NotEvaluated};
        if (x.value)
            x.status = *x.value <= x.threshold ? RegimeStatus::Pass : RegimeStatus::Warn;
        r.ratios.push_back(x);
    }
    r.kappa = kerr_strength(p);
    r.rot_strength = p.n_atoms * std::pow(p.g * p.g / (2.0 * p.delta1), 2) / theta;
    r.enhanced = enhanced_strength(p);

    if (!laser)
        r.notes.push_back("laser ratios not evaluated: only theta was supplied");
    std::ostringstream os;
    os.precision(6);
    os << "enhanced strength at theta_choice: exact N^(3/4) g^2/(2 Delta_1) = " << r.enhanced.strength
       << " s^-1; the quoted (sqrt(N) g/Delta_1) N^(1/4) g gives " << r.enhanced.quoted_expression
       << " s^-1 (factor " << r.enhanced.quoted_expression / r.enhanced.strength << ")";
    r.notes.push_back(os.str());
    return r;
}

} // namespace lightshift
