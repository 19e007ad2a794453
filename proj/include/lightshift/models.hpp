#pragma once

#include <optional>
#include <vector>

#include "lightshift/hilbert.hpp"
#include "lightshift/params.hpp"

namespace lightshift {

/// Full: three-level atoms, cavity and Raman couplings explicit.
/// Eliminated: excited level removed, dispersive shifts and Theta coupling.
enum class Tier { Full, Eliminated };

std::string to_string(Tier t);
Tier parse_tier(const std::string& s);

/// Which drives are on during a segment. The cavity coupling is always on.
struct SegmentFlags {
    bool raman_on = false;
    std::optional<double> pulse_phase; ///< pulse on iff set; phase in rad
};

/// Time-independent reduced models.
enum class EffectiveForm {
    SecondInteraction,  ///< D (S_{+-} + S_{-+}) + (Theta/2) S_3
    Rotated,            ///< canonical-frame expansion through third order
    RotatedAsPrinted,   ///< the same expansion with the published coefficients
    Kerr,               ///< (D^2 / Theta) S_3
    DispersiveTwoLevel, ///< (N g^2/Delta) a^dag a Z + (N g^4/Delta^3)(a^dag a)^2 Z, Z = S_00 - S_11
    ResonantDriven,     ///< (N g^2/Delta) a^dag a S_3 + (N g^4/(Delta^2 Omega))(a^dag a)^2 S_3
};

/// Interaction-picture Hamiltonian of the three-level scheme at time t:
///   sum_c g_c (e^{-i Delta_c t} a_c S_{2 l_c} + h.c.)
///   + sqrt(2) Lambda (e^{-i Delta_2 t} S_{2+} + h.c.)      [raman_on]
///   + (Omega/2) (e^{i phi} S_01 + e^{-i phi} S_10)          [pulse_on]
Operator build_full_hamiltonian(const SpacePtr& space, const SchemeParams& p, double t, const SegmentFlags& flags);

/// Diagonal frame generator G = sum_m (w2 - Delta_m) n_m + w2 S_22 that makes
/// the full Hamiltonian static. w2 = Delta_2 when a laser is defined, else the
/// first cavity detuning. Identity frame (all rates zero) for the eliminated tier.
struct RotatingFrame {
    std::vector<double> photon_rates;
    double excited_rate = 0.0;

    bool trivial() const;
    /// Diagonal of G in the space's basis.
    RealVector generator(const Space& space) const;
    /// Diagonal of W(t) = e^{iGt}.
    ComplexVector phases(const Space& space, double t) const;
};

RotatingFrame full_tier_frame(const SchemeParams& p);

struct StaticFrameHamiltonian {
    Operator hamiltonian; ///< H' = W H W^dag - G
    RotatingFrame frame;
};

/// Propagator over [t0, t1] equals W(t1)^dag e^{-i H' (t1 - t0)} W(t0).
StaticFrameHamiltonian build_static_frame_hamiltonian(const SpacePtr& space, const SchemeParams& p,
                                                      const SegmentFlags& flags);

/// Two-level Hamiltonian after eliminating |2>, identity dropped:
///   sum_c (g_c^2/Delta_c) n_c S_{l_c l_c} + (Theta/2)(S_10 + S_01) [raman_on] + pulse.
Operator build_eliminated_hamiltonian(const SpacePtr& space, const SchemeParams& p, const SegmentFlags& flags);

/// Static generator of a segment at either tier, with the frame it lives in.
StaticFrameHamiltonian segment_hamiltonian(const SpacePtr& space, const SchemeParams& p, Tier tier,
                                           const SegmentFlags& flags);

/// D = sum_c s_c g_c^2/(2 Delta_c) n_c, s_c = +1 (level 0) or -1 (level 1).
/// Photon-diagonal, identity on atoms.
Operator photonic_drive(const SpacePtr& space, const SchemeParams& p);

/// Per-mode photon rate of the identity part of the dispersive shifts,
/// N g_c^2 / (2 Delta_c).
std::vector<double> linear_photon_rates(const SchemeParams& p);

Operator build_effective(const SpacePtr& space, const SchemeParams& p, EffectiveForm form);

/// Two-mode Hamiltonian: effective (D^2/Theta) S_3 or the full three-level form at time t.
Operator build_cross_kerr(const SpacePtr& space, const SchemeParams& p, bool full, double t = 0.0,
                          const SegmentFlags& flags = {});

/// Coefficient of a^dag a b^dag b in the effective two-mode model with every
/// atom in |->: +2 N A_a A_b / Theta (polarization), -2 N A_a A_b / Theta (toroidal).
double cross_kerr_coefficient(const SchemeParams& p);

} // namespace lightshift
