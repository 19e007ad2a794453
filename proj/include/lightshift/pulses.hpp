#pragma once

#include <optional>
#include <vector>

#include "lightshift/evolve.hpp"

namespace lightshift {

enum class VMode { Ideal, Physical };
std::string to_string(VMode m);
VMode parse_mode(const std::string& s);

/// A pi/2 pulse of (Omega/2)(e^{i phi} S_01 + h.c.). The inverse direction is
/// the same pulse with phase phi + pi.
struct PulseSpec {
    double omega = 0.0;
    double phase = 0.0;
    bool inverse = false;

    double duration() const;
    double effective_phase() const;
};

/// Omega >= kPulseGuardFactor * max(g sqrt(n_max), Theta).
inline constexpr double kPulseGuardFactor = 20.0;
void check_pulse_guard(const Space& space, const SchemeParams& p);

/// Exact collective rotation exp(-i (pi/4)(e^{i phi} S_01 + h.c.)).
ComplexMatrix ideal_pulse(const SpacePtr& space, double phase);
/// The displayed M map on every atom: |0> -> (|0> + i|1>)/sqrt2, |1> -> (|0> - i|1>)/sqrt2.
ComplexMatrix target_m_map(const SpacePtr& space);

/// Ideal: ideal_pulse. Physical: propagator of the tier Hamiltonian with the
/// pulse on (cavity coupling stays on) over the pulse duration, from `start`.
ComplexMatrix m_pulse(const SpacePtr& space, const SchemeParams& p, const PulseSpec& spec, VMode mode,
                      Tier tier = Tier::Eliminated, double start = 0.0);

/// exp(mu a^dag a (S_{+-} - S_{-+})) with the literal mu = g^2/(Delta_1 Theta), mode a.
ComplexMatrix build_U_ideal(const SpacePtr& space, const SchemeParams& p);
/// exp(-(D/Theta)(S_{+-} - S_{-+})): the rotation that removes D (S_{+-} + S_{-+})
/// to first order. Single mode: per-photon angle -mu/2.
ComplexMatrix build_U_canonical(const SpacePtr& space, const SchemeParams& p);

/// Duration of one physical U realization: 2 pulses plus 1/Theta.
double realization_duration(const SchemeParams& p);

/// [pulse phi][lasers off, 1/Theta][pulse phi + pi] at the tier, from `start`.
ComplexMatrix build_U_physical(const SpacePtr& space, const SchemeParams& p, Tier tier, double first_phase,
                               double start = 0.0);

struct SectorFit {
    std::vector<int> photons;
    double fidelity = 0.0; ///< |tr(T^dag U)| / d on the metastable block
    double phase = 0.0;    ///< arg tr(T^dag U)
};

struct RealizationFit {
    double fidelity = 0.0;     ///< minimum over sectors
    std::vector<double> beta;  ///< per-mode photon phase, U ~ e^{-i beta n} T
    std::vector<SectorFit> sectors;
};

/// Compare `u` with `target` sector by sector, modulo a phase per photon sector.
RealizationFit fit_realization(const Space& space, const ComplexMatrix& u, const ComplexMatrix& target);

struct CalibrationOptions {
    double grid_step = 3.14159265358979323846 / 180.0;
    double tolerance = 1e-4;
    double fidelity_floor = 0.95;
    int n_max = 2;
};

struct PulseCalibration {
    Tier tier = Tier::Eliminated;
    double phase_forward = 0.0; ///< first-pulse phase realizing U
    double phase_inverse = 0.0; ///< first-pulse phase realizing U^dag
    double fidelity_forward = 0.0;
    double fidelity_inverse = 0.0;
    std::vector<double> beta_forward; ///< rad per photon per atom, per mode
    std::vector<double> beta_inverse;
};

/// Grid search plus golden-section refinement of the first-pulse phase on an
/// N = 1 space, against build_U_canonical (forward) and its adjoint (inverse).
/// Throws GuardError when either fidelity stays below the floor.
PulseCalibration calibrate_pulse_phase(const SchemeParams& p, Tier tier, const CalibrationOptions& options = {});

struct VOptions {
    VMode mode = VMode::Physical;
    Tier tier = Tier::Eliminated;
    /// Ideal mode only: evolve under the diagonal part (Theta/2) S_3 + (D^2/Theta) S_3
    /// without the U conjugation, i.e. with the leakage term dropped.
    bool drop_leakage = false;
};

/// V(t) for many t at once.
///  ideal:    U_c^dag e^{-i H1int t} U_c
///  physical: [U realization][lasers on, t][U^dag realization] on one global clock.
class VSequence {
public:
    VSequence(SpacePtr space, const SchemeParams& p, const VOptions& options,
              const std::optional<PulseCalibration>& calibration = std::nullopt);

    ComplexMatrix at(double t) const;
    ComplexVector apply(double t, const ComplexVector& v) const;
    double total_duration(double t) const;
    const SpacePtr& space() const { return space_; }
    const VOptions& options() const { return options_; }
    /// Unitarity defects of the fixed outer factors.
    double outer_unitarity_defect() const;

private:
    SpacePtr space_;
    SchemeParams params_;
    VOptions options_;
    ComplexMatrix pre_, post_;
    std::optional<numerics::SpectralPropagator> mid_;
    RotatingFrame frame_;
    double realization_ = 0.0;
};

ComplexMatrix build_V(const SpacePtr& space, const SchemeParams& p, double t, const VOptions& options,
                      const std::optional<PulseCalibration>& calibration = std::nullopt);

} // namespace lightshift
