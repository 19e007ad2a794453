#include "lightshift/models.hpp"

#include <cmath>

namespace lightshift {

namespace {

void require_modes(const Space& space, const SchemeParams& p)
{
    if (space.n_modes() != mode_count(p.scheme))
        throw ValidationError("space has " + std::to_string(space.n_modes()) + " mode(s); scheme "
                              + to_string(p.scheme) + " needs " + std::to_string(mode_count(p.scheme)));
}

void require_derived(const SchemeParams& p)
{
    if (!p.derived)
        throw ValidationError("parameters must be completed with derive_params first");
}

Level computational(int level)
{
    return level == 0 ? Level::Zero : Level::One;
}

Operator pulse_term(const SpacePtr& space, double omega, double phase)
{
    if (!(omega > 0.0))
        throw ValidationError("pulse requested with nonpositive omega");
    const Complex e = std::exp(kI * phase);
    const Operator s01 = collective(space, Level::Zero, Level::One);
    Operator h{0.5 * omega * (e * s01.matrix + std::conj(e) * s01.matrix.adjoint()), space, "pulse"};
    return h;
}

// Diagonal operator from a function of the basis index.
template <typename F>
Operator diagonal(const SpacePtr& space, F&& f, std::string label)
{
    ComplexMatrix m = ComplexMatrix::Zero(space->dim(), space->dim());
    for (std::size_t i = 0; i < space->dim(); ++i)
        m(i, i) = f(i);
    return {m, space, std::move(label)};
}

} // namespace

std::string to_string(Tier t)
{
    return t == Tier::Full ? "full" : "eliminated";
}

Tier parse_tier(const std::string& s)
{
    if (s == "full")
        return Tier::Full;
    if (s == "eliminated")
        return Tier::Eliminated;
    throw ValidationError("unknown tier '" + s + "' (expected full|eliminated)");
}

Operator build_full_hamiltonian(const SpacePtr& space, const SchemeParams& p, double t, const SegmentFlags& flags)
{
    require_derived(p);
    if (space->levels() != 3)
        throw ValidationError("full Hamiltonian needs three-level atoms");
    require_modes(*space, p);

    ComplexMatrix h = ComplexMatrix::Zero(space->dim(), space->dim());
    for (const auto& c : cavity_couplings(p)) {
        const ComplexMatrix term = annihilation(space, c.mode).matrix
            * collective(space, Level::Two, computational(c.level)).matrix;
        const ComplexMatrix phased = c.g * std::exp(-kI * c.detuning * t) * term;
        h += phased + phased.adjoint();
    }
    if (flags.raman_on) {
        if (!p.lambda || !p.delta2)
            throw ValidationError("raman segment needs lambda and delta2");
        const ComplexMatrix s2p = collective(space, Level::Two, Level::Plus).matrix;
        const ComplexMatrix phased = std::sqrt(2.0) * *p.lambda * std::exp(-kI * *p.delta2 * t) * s2p;
        h += phased + phased.adjoint();
    }
    if (flags.pulse_phase)
        h += pulse_term(space, p.omega, *flags.pulse_phase).matrix;
    return {h, space, "H_full"};
}

bool RotatingFrame::trivial() const
{
    if (excited_rate != 0.0)
        return false;
    for (double r : photon_rates)
        if (r != 0.0)
            return false;
    return true;
}

RealVector RotatingFrame::generator(const Space& space) const
{
    RealVector g = RealVector::Zero(space.dim());
    if (trivial())
        return g;
    for (std::size_t i = 0; i < space.dim(); ++i) {
        const auto photons = space.photons_of(i);
        double v = 0.0;
        for (std::size_t m = 0; m < photons.size() && m < photon_rates.size(); ++m)
            v += photon_rates[m] * photons[m];
        if (space.levels() == 3)
            v += excited_rate * space.level_count(space.atomic_of(i), 2);
        g(i) = v;
    }
    return g;
}

ComplexVector RotatingFrame::phases(const Space& space, double t) const
{
    const RealVector g = generator(space);
    ComplexVector out(g.size());
    for (Eigen::Index i = 0; i < g.size(); ++i)
        out(i) = std::exp(kI * g(i) * t);
    return out;
}

RotatingFrame full_tier_frame(const SchemeParams& p)
{
    const auto couplings = cavity_couplings(p);
    RotatingFrame f;
    f.excited_rate = p.delta2 ? *p.delta2 : couplings.front().detuning;
    for (const auto& c : couplings)
        f.photon_rates.push_back(f.excited_rate - c.detuning);
    return f;
}

StaticFrameHamiltonian build_static_frame_hamiltonian(const SpacePtr& space, const SchemeParams& p,
                                                      const SegmentFlags& flags)
{
    require_derived(p);
    if (space->levels() != 3)
        throw ValidationError("full Hamiltonian needs three-level atoms");
    require_modes(*space, p);
    if (flags.raman_on && (!p.lambda || !p.delta2))
        throw ValidationError("raman segment needs lambda and delta2");

    // In the frame every interaction-picture phase is 1, i.e. H(0), minus G.
    StaticFrameHamiltonian out{build_full_hamiltonian(space, p, 0.0, flags), full_tier_frame(p)};
    const RealVector g = out.frame.generator(*space);
    out.hamiltonian.matrix.diagonal() -= g.cast<Complex>();
    out.hamiltonian.label = "H_full_static";
    return out;
}

Operator build_eliminated_hamiltonian(const SpacePtr& space, const SchemeParams& p, const SegmentFlags& flags)
{
    require_derived(p);
    if (space->levels() != 2)
        throw ValidationError("eliminated Hamiltonian needs two-level (metastable) atoms; got a "
                              + std::to_string(space->levels()) + "-level space");
    require_modes(*space, p);

    ComplexMatrix h = ComplexMatrix::Zero(space->dim(), space->dim());
    for (const auto& c : cavity_couplings(p)) {
        const Level l = computational(c.level);
        h += (c.g * c.g / c.detuning) * number(space, c.mode).matrix * collective(space, l, l).matrix;
    }
    if (flags.raman_on) {
        const ComplexMatrix s10 = collective(space, Level::One, Level::Zero).matrix;
        h += (*p.theta / 2.0) * (s10 + s10.adjoint());
    }
    if (flags.pulse_phase)
        h += pulse_term(space, p.omega, *flags.pulse_phase).matrix;
    return {h, space, "H_eliminated"};
}

StaticFrameHamiltonian segment_hamiltonian(const SpacePtr& space, const SchemeParams& p, Tier tier,
                                           const SegmentFlags& flags)
{
    if (tier == Tier::Full)
        return build_static_frame_hamiltonian(space, p, flags);
    return {build_eliminated_hamiltonian(space, p, flags), RotatingFrame{}};
}

Operator photonic_drive(const SpacePtr& space, const SchemeParams& p)
{
    require_modes(*space, p);
    const auto couplings = cavity_couplings(p);
    return diagonal(
        space,
        [&](std::size_t i) {
            const auto photons = space->photons_of(i);
            double v = 0.0;
            for (const auto& c : couplings)
                v += (c.level == 0 ? 1.0 : -1.0) * c.half_shift() * photons[c.mode];
            return Complex(v);
        },
        "D");
}

std::vector<double> linear_photon_rates(const SchemeParams& p)
{
    std::vector<double> out;
    for (const auto& c : cavity_couplings(p))
        out.push_back(p.n_atoms * c.half_shift());
    return out;
}

Operator build_effective(const SpacePtr& space, const SchemeParams& p, EffectiveForm form)
{
    require_derived(p);
    require_modes(*space, p);
    const double theta = *p.theta;

    if (form == EffectiveForm::DispersiveTwoLevel || form == EffectiveForm::ResonantDriven) {
        if (p.scheme != Scheme::SelfKerr)
            throw ValidationError("dispersive warm-up models are single-mode");
        const double N = p.n_atoms;
        const double delta = p.delta1;
        const ComplexMatrix n = number(space, 0).matrix;
        const ComplexMatrix n2 = n * n;
        if (form == EffectiveForm::DispersiveTwoLevel) {
            if (space->levels() != 2)
                throw ValidationError("dispersive two-level model needs a two-level space");
            const ComplexMatrix z = collective(space, Level::Zero, Level::Zero).matrix
                - collective(space, Level::One, Level::One).matrix;
            const ComplexMatrix h = (N * p.g * p.g / delta) * n * z
                + (N * std::pow(p.g, 4) / std::pow(delta, 3)) * n2 * z;
            return {h, space, "H_dispersive"};
        }
        if (!(p.omega > 0.0))
            throw ValidationError("resonant-drive model needs omega");
        const ComplexMatrix s = s3(space).matrix;
        const ComplexMatrix h = (N * p.g * p.g / delta) * n * s
            + (N * std::pow(p.g, 4) / (delta * delta * p.omega)) * n2 * s;
        return {h, space, "H_resonant_driven"};
    }

    const ComplexMatrix d = photonic_drive(space, p).matrix;
    const ComplexMatrix s = s3(space).matrix;
    const ComplexMatrix spm = collective(space, Level::Plus, Level::Minus).matrix;
    const ComplexMatrix x = spm + spm.adjoint();

    switch (form) {
    case EffectiveForm::SecondInteraction:
        return {d * x + (theta / 2.0) * s, space, "H1_int"};
    case EffectiveForm::Rotated: {
        const ComplexMatrix d2 = d * d;
        const ComplexMatrix h = (theta / 2.0) * s + (1.0 / theta) * d2 * s
            - (4.0 / 3.0) / (theta * theta) * d2 * d * x;
        return {h, space, "H_rot"};
    }
    case EffectiveForm::RotatedAsPrinted: {
        const ComplexMatrix d2 = d * d;
        const ComplexMatrix h = (theta / 2.0) * s - (1.0 / theta) * d2 * s + 1.0 / (theta * theta) * d2 * d * x;
        return {h, space, "H_rot_printed"};
    }
    case EffectiveForm::Kerr:
        return {(1.0 / theta) * d * d * s, space, "H_kerr"};
    default: break;
    }
    throw ValidationError("unsupported effective form");
}

Operator build_cross_kerr(const SpacePtr& space, const SchemeParams& p, bool full, double t,
                          const SegmentFlags& flags)
{
    if (p.scheme == Scheme::SelfKerr)
        throw ValidationError("cross-Kerr builder needs a two-mode scheme");
    if (full)
        return build_full_hamiltonian(space, p, t, flags);
    auto h = build_effective(space, p, EffectiveForm::Kerr);
    h.label = "H_cross_eff";
    return h;
}

double cross_kerr_coefficient(const SchemeParams& p)
{
    if (p.scheme == Scheme::SelfKerr)
        throw ValidationError("cross-Kerr coefficient needs a two-mode scheme");
    const auto c = cavity_couplings(p);
    const double sa = c[0].level == 0 ? 1.0 : -1.0;
    const double sb = c[1].level == 0 ? 1.0 : -1.0;
    // -N (sa A n_a + sb B n_b)^2 / Theta, cross part.
    return -2.0 * p.n_atoms * sa * sb * c[0].half_shift() * c[1].half_shift() / *p.theta;
}

} // namespace lightshift
