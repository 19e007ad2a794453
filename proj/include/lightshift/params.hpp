#pragma once

#include <optional>
#include <string>
#include <vector>

namespace lightshift {

enum class Scheme { SelfKerr, CrossPolarization, CrossToroidal };

std::string to_string(Scheme s);
Scheme parse_scheme(const std::string& s);

/// Physical rates and detunings of one scenario, all in s^-1.
///
/// Exactly one of `theta` or (`lambda`, `delta2`) is supplied by the user;
/// derive_params fills the other side and the derived quantities.
struct SchemeParams {
    Scheme scheme = Scheme::SelfKerr;
    int n_atoms = 1;

    double g = 0.0;      ///< cavity-atom Rabi frequency
    double delta1 = 0.0; ///< cavity detuning
    std::optional<double> lambda; ///< Raman laser Rabi frequency
    std::optional<double> delta2; ///< Raman laser detuning
    std::optional<double> theta;  ///< effective Raman rate 2 Lambda^2 / Delta_2
    double omega = 0.0; ///< pulse Rabi frequency (pi/2 pulse lasts pi / (2 Omega))

    // Two-mode variants.
    std::optional<double> g_a, g_b;
    std::optional<double> delta1_a, delta1_b; ///< polarization variant
    std::optional<double> delta;              ///< toroidal splitting (uses delta1)

    /// Delta_2 / |Delta_1| used when a laser has to be synthesized from theta.
    double laser_detuning_ratio = 25.0;

    // Derived by derive_params.
    double mu = 0.0;    ///< g^2 / (Delta_1 Theta)
    double kappa = 0.0; ///< N g^4 / (4 Delta_1^2 Theta)
    bool derived = false;
};

/// Completes theta (or lambda, delta2), mu and kappa.
///
/// With `synthesize_laser` set and only theta given, chooses
/// Delta_2 = sign(theta) * ratio * |Delta_1| and Lambda = sqrt(theta Delta_2 / 2).
SchemeParams derive_params(SchemeParams p, bool synthesize_laser = false);

/// Defaults of the single-mode scenarios, g = 1e8 s^-1.
inline constexpr double kDefaultG = 1e8;
SchemeParams fig3b_params(int n_atoms);
SchemeParams fig3a_params(int n_atoms);
/// Two-mode defaults: g_a = g_b = g, detunings 10 g, Theta = g, Omega = 100 g.
SchemeParams cross_params(Scheme variant);

/// A cavity mode coupled to the |level> <-> |2> transition.
struct CavityCoupling {
    int mode;
    int level; ///< 0 or 1
    double g;
    double detuning;

    /// g^2 / (2 detuning): the per-photon dispersive shift split between |+-> .
    double half_shift() const { return g * g / (2.0 * detuning); }
};

/// One entry per cavity mode of the scheme.
std::vector<CavityCoupling> cavity_couplings(const SchemeParams& p);

int mode_count(Scheme s);

/// Per-photon rotation coefficient of the canonical transformation that
/// removes (S_{+-} + S_{-+}) to first order: -g^2 / (2 Delta_1 Theta) = -mu / 2.
double canonical_rotation_coefficient(const SchemeParams& p);

} // namespace lightshift
