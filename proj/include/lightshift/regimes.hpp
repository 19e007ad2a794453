#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lightshift/params.hpp"

namespace lightshift {

enum class RegimeStatus { Pass, Warn, NotEvaluated };
std::string to_string(RegimeStatus s);

struct RegimeThresholds {
    double small = 0.15;      ///< every "<< 1" condition
    double separation = 0.1;
    std::map<std::string, double> overrides; ///< per-ratio thresholds by name

    double for_ratio(const std::string& name) const;
};

struct RegimeRatio {
    std::string name;
    std::optional<double> value; ///< empty when not evaluated
    double threshold = 0.0;
    RegimeStatus status = RegimeStatus::NotEvaluated;
};

struct EnhancedStrength {
    double theta_choice = 0.0;      ///< N^{1/4} g^2 / (2 Delta_1)
    double strength = 0.0;          ///< N (g^2/2Delta_1)^2 / theta_choice = N^{3/4} g^2/(2 Delta_1)
    double quoted_expression = 0.0;  ///< (sqrt(N) g / Delta_1) N^{1/4} g
};

struct RegimeReport {
    std::vector<RegimeRatio> ratios; ///< fixed order
    double kappa = 0.0;
    double rot_strength = 0.0;
    EnhancedStrength enhanced;
    std::vector<std::string> notes;

    const RegimeRatio& ratio(const std::string& name) const;
    bool all_pass() const; ///< no ratio in Warn
};

/// Ratio names, in report order.
const std::vector<std::string>& regime_ratio_names();

RegimeReport check(const SchemeParams& p, const RegimeThresholds& thresholds = {});

/// N g^4 / (4 Delta_1^2 Theta).
double kerr_strength(const SchemeParams& p);
EnhancedStrength enhanced_strength(const SchemeParams& p);

} // namespace lightshift
