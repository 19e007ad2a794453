#include "lightshift/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace lightshift {

using std::numbers::pi;

std::string to_string(VMode m)
{
    return m == VMode::Ideal ? "ideal" : "physical";
}

VMode parse_mode(const std::string& s)
{
    if (s == "ideal")
        return VMode::Ideal;
    if (s == "physical")
        return VMode::Physical;
    throw ValidationError("unknown mode '" + s + "' (expected ideal|physical)");
}

double PulseSpec::duration() const
{
    if (!(omega > 0.0))
        throw ValidationError("pulse omega must be positive");
    return pi / (2.0 * omega);
}

double PulseSpec::effective_phase() const
{
    return inverse ? phase + pi : phase;
}

void check_pulse_guard(const Space& space, const SchemeParams& p)
{
    double g_max = 0.0;
    for (const auto& c : cavity_couplings(p))
        g_max = std::max(g_max, std::abs(c.g));
    const double need = kPulseGuardFactor
                        * std::max(g_max * std::sqrt(static_cast<double>(std::max(space.n_max(), 1))),
                                   std::abs(p.theta.value_or(0.0)));
    if (p.omega < need) {
        std::ostringstream os;
        os << "pulse guard violated: omega = " << p.omega << " s^-1 but at least " << need
           << " s^-1 is required";
        throw GuardError(os.str());
    }
}

namespace {

Operator pulse_generator(const SpacePtr& space, double phase)
{
    const Complex e = std::exp(kI * phase);
    return e * collective(space, Level::Zero, Level::One) + std::conj(e) * collective(space, Level::One, Level::Zero);
}

Operator rotation_generator(const SpacePtr& space)
{
    return collective(space, Level::Plus, Level::Minus) - collective(space, Level::Minus, Level::Plus);
}

double require_theta(const SchemeParams& p)
{
    if (!p.derived || !p.theta || !(*p.theta > 0.0))
        throw ValidationError("U realization needs derived parameters with theta > 0");
    return *p.theta;
}

} // namespace

ComplexMatrix ideal_pulse(const SpacePtr& space, double phase)
{
    return numerics::expm_hermitian(pulse_generator(space, phase).matrix, pi / 4.0);
}

ComplexMatrix target_m_map(const SpacePtr& space)
{
    // R(pi) diag(1, -i) per atom.
    return ideal_pulse(space, pi) * numerics::expm_hermitian(collective(space, Level::One, Level::One).matrix, pi / 2.0);
}

ComplexMatrix m_pulse(const SpacePtr& space, const SchemeParams& p, const PulseSpec& spec, VMode mode, Tier tier,
                      double start)
{
    check_pulse_guard(*space, p);
    if (mode == VMode::Ideal)
        return ideal_pulse(space, spec.effective_phase());
    SegmentFlags flags;
    flags.pulse_phase = spec.effective_phase();
    return propagate_segment(space, p, ModelTerm{tier, flags}, start, spec.duration());
}

ComplexMatrix build_U_ideal(const SpacePtr& space, const SchemeParams& p)
{
    if (!p.derived)
        throw ValidationError("parameters must be completed with derive_params first");
    const Operator gen = Complex(p.mu) * (number(space, 0) * rotation_generator(space));
    return numerics::expm_antihermitian(gen.matrix);
}

ComplexMatrix build_U_canonical(const SpacePtr& space, const SchemeParams& p)
{
    const double theta = require_theta(p);
    const Operator gen = Complex(-1.0 / theta) * (photonic_drive(space, p) * rotation_generator(space));
    return numerics::expm_antihermitian(gen.matrix);
}

double realization_duration(const SchemeParams& p)
{
    return 2.0 * PulseSpec{p.omega}.duration() + 1.0 / require_theta(p);
}

namespace {

// Static-frame factors of the three U-realization segments.
struct RealizationParts {
    ComplexMatrix first, middle, last;
};

ComplexMatrix segment_static(const SpacePtr& space, const SchemeParams& p, Tier tier, const SegmentFlags& flags,
                             double duration)
{
    return propagate_static(segment_hamiltonian(space, p, tier, flags).hamiltonian, duration);
}

ComplexMatrix pulse_static(const SpacePtr& space, const SchemeParams& p, Tier tier, double phase)
{
    SegmentFlags f;
    f.pulse_phase = phase;
    return segment_static(space, p, tier, f, PulseSpec{p.omega}.duration());
}

/// Realization in the (possibly trivial) tier frame; the frame phases at the
/// two ends are applied by the caller.
ComplexMatrix realization_static(const SpacePtr& space, const SchemeParams& p, Tier tier, double phase,
                                 const ComplexMatrix& middle)
{
    return pulse_static(space, p, tier, phase + pi) * middle * pulse_static(space, p, tier, phase);
}

RotatingFrame tier_frame(const SchemeParams& p, Tier tier)
{
    return tier == Tier::Full ? full_tier_frame(p) : RotatingFrame{};
}

} // namespace

ComplexMatrix build_U_physical(const SpacePtr& space, const SchemeParams& p, Tier tier, double first_phase,
                               double start)
{
    check_pulse_guard(*space, p);
    const double theta = require_theta(p);
    Schedule s(space, p, start);
    SegmentFlags pulse_a, pulse_b;
    pulse_a.pulse_phase = first_phase;
    pulse_b.pulse_phase = first_phase + pi;
    const double tp = PulseSpec{p.omega}.duration();
    s.add(ModelTerm{tier, pulse_a}, tp, "M");
    s.add(ModelTerm{tier, {}}, 1.0 / theta, "cavity");
    s.add(ModelTerm{tier, pulse_b}, tp, "M_dag");
    return compose(s).propagator;
}

RealizationFit fit_realization(const Space& space, const ComplexMatrix& u, const ComplexMatrix& target)
{
    RealizationFit fit;
    const std::size_t ad = space.atomic_dim();
    std::vector<std::size_t> metastable;
    for (std::size_t a = 0; a < ad; ++a)
        if (space.levels() == 2 || space.level_count(a, 2) == 0)
            metastable.push_back(a);

    fit.fidelity = 1.0;
    std::vector<Complex> traces;
    for (std::size_t pi_ = 0; pi_ < space.photon_dim(); ++pi_) {
        Complex tr = 0.0;
        for (std::size_t r : metastable)
            for (std::size_t c : metastable)
                tr += std::conj(target(pi_ * ad + r, pi_ * ad + c)) * u(pi_ * ad + r, pi_ * ad + c);
        const double d = static_cast<double>(metastable.size());
        SectorFit s{space.photons_of(pi_ * ad), std::abs(tr) / d, std::arg(tr)};
        fit.fidelity = std::min(fit.fidelity, s.fidelity);
        fit.sectors.push_back(s);
        traces.push_back(tr);
    }

    // beta per mode from the sectors with only that mode occupied, phases
    // relative to vacuum and unwrapped along n.
    const int modes = space.n_modes();
    for (int m = 0; m < modes; ++m) {
        double num = 0.0, den = 0.0, prev = 0.0;
        for (int n = 1; n <= space.n_max(); ++n) {
            std::vector<int> ph(modes, 0);
            ph[m] = n;
            const std::size_t idx = space.photon_index(ph);
            double rel = std::arg(traces[idx] / traces[0]);
            rel = prev + std::remainder(rel - prev, 2.0 * pi);
            prev = rel;
            num += n * rel;
            den += static_cast<double>(n) * n;
        }
        fit.beta.push_back(den > 0.0 ? -num / den : 0.0);
    }
    return fit;
}

namespace {

struct PhaseSearch {
    double phase = 0.0;
    RealizationFit fit;
};

template <class F>
PhaseSearch search_phase(F&& evaluate, const CalibrationOptions& o)
{
    const int steps = static_cast<int>(std::lround(2.0 * pi / o.grid_step));
    double best_phase = 0.0, best = -1.0;
    for (int k = 0; k < steps; ++k) {
        const double ph = k * o.grid_step;
        const double f = evaluate(ph).fidelity;
        if (f > best + 1e-15) {
            best = f;
            best_phase = ph;
        }
    }
    // Golden-section refinement on the bracketing cell pair.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = best_phase - o.grid_step, b = best_phase + o.grid_step;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double fc = evaluate(c).fidelity, fd = evaluate(d).fidelity;
    while (b - a > o.tolerance) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = evaluate(c).fidelity;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = evaluate(d).fidelity;
        }
    }
    double refined = 0.5 * (a + b);
    PhaseSearch out{refined, evaluate(refined)};
    if (out.fit.fidelity < best) {
        out = {best_phase, evaluate(best_phase)};
    }
    out.phase = std::fmod(out.phase + 2.0 * pi, 2.0 * pi);
    return out;
}

} // namespace

PulseCalibration calibrate_pulse_phase(const SchemeParams& p_in, Tier tier, const CalibrationOptions& o)
{
    if (o.n_max < 2)
        throw ValidationError("pulse calibration needs n_max >= 2");
    if (!(o.grid_step > 0.0) || !(o.tolerance > 0.0))
        throw ValidationError("calibration grid step and tolerance must be positive");
    SchemeParams p = p_in;
    p.n_atoms = 1;
    p = derive_params(p, tier == Tier::Full);
    const double theta = require_theta(p);

    SpaceSpec spec;
    spec.n_max = o.n_max;
    spec.n_modes = mode_count(p.scheme);
    spec.n_atoms = 1;
    spec.levels = tier == Tier::Full ? 3 : 2;
    spec.representation = Representation::Product;
    const SpacePtr space = build_space(spec);
    check_pulse_guard(*space, p);

    const ComplexMatrix middle = segment_static(space, p, tier, {}, 1.0 / theta);
    const RotatingFrame frame = tier_frame(p, tier);
    const ComplexVector w_end = frame.phases(*space, realization_duration(p));
    const ComplexMatrix target = build_U_canonical(space, p);
    const ComplexMatrix target_inv = target.adjoint();

    auto realized = [&](double phase) -> ComplexMatrix {
        return w_end.conjugate().asDiagonal() * realization_static(space, p, tier, phase, middle);
    };
    const auto fwd = search_phase([&](double ph) { return fit_realization(*space, realized(ph), target); }, o);
    const auto inv = search_phase([&](double ph) { return fit_realization(*space, realized(ph), target_inv); }, o);

    PulseCalibration cal;
    cal.tier = tier;
    cal.phase_forward = fwd.phase;
    cal.phase_inverse = inv.phase;
    cal.fidelity_forward = fwd.fit.fidelity;
    cal.fidelity_inverse = inv.fit.fidelity;
    cal.beta_forward = fwd.fit.beta;
    cal.beta_inverse = inv.fit.beta;
    if (std::min(cal.fidelity_forward, cal.fidelity_inverse) < o.fidelity_floor) {
        std::ostringstream os;
        os << "pulse calibration failed: best fidelity forward " << cal.fidelity_forward << " at phase "
           << cal.phase_forward << ", inverse " << cal.fidelity_inverse << " at phase " << cal.phase_inverse
           << " (floor " << o.fidelity_floor << ")";
        throw GuardError(os.str());
    }
    return cal;
}

VSequence::VSequence(SpacePtr space, const SchemeParams& p, const VOptions& options,
                     const std::optional<PulseCalibration>& calibration)
    : space_(std::move(space)), params_(p), options_(options)
{
    if (!params_.derived)
        throw ValidationError("parameters must be completed with derive_params first");
    const double theta = require_theta(params_);
    const std::size_t dim = space_->dim();

    if (options_.mode == VMode::Ideal) {
        if (options_.drop_leakage) {
            pre_ = post_ = ComplexMatrix::Identity(dim, dim);
            const Operator h = Complex(theta / 2.0) * s3(space_) + build_effective(space_, params_, EffectiveForm::Kerr);
            mid_.emplace(h.matrix);
        } else {
            pre_ = build_U_canonical(space_, params_);
            post_ = pre_.adjoint();
            mid_.emplace(build_effective(space_, params_, EffectiveForm::SecondInteraction).matrix);
        }
        return;
    }

    const int want_levels = options_.tier == Tier::Full ? 3 : 2;
    if (space_->levels() != want_levels)
        throw ValidationError("physical V at tier " + to_string(options_.tier) + " needs a "
                              + std::to_string(want_levels) + "-level space");
    check_pulse_guard(*space_, params_);
    const PulseCalibration cal = calibration ? *calibration : calibrate_pulse_phase(params_, options_.tier);
    if (cal.tier != options_.tier)
        throw ValidationError("pulse calibration was made for a different tier");

    const ComplexMatrix middle = segment_static(space_, params_, options_.tier, {}, 1.0 / theta);
    pre_ = realization_static(space_, params_, options_.tier, cal.phase_forward, middle);
    post_ = realization_static(space_, params_, options_.tier, cal.phase_inverse, middle);
    SegmentFlags raman;
    raman.raman_on = true;
    mid_.emplace(segment_hamiltonian(space_, params_, options_.tier, raman).hamiltonian.matrix);
    frame_ = tier_frame(params_, options_.tier);
    realization_ = realization_duration(params_);
}

double VSequence::total_duration(double t) const
{
    return options_.mode == VMode::Ideal ? t : 2.0 * realization_ + t;
}

ComplexMatrix VSequence::at(double t) const
{
    ComplexMatrix v = post_ * mid_->at(t) * pre_;
    if (!frame_.trivial())
        v = frame_.phases(*space_, total_duration(t)).conjugate().asDiagonal() * v;
    return v;
}

ComplexVector VSequence::apply(double t, const ComplexVector& in) const
{
    ComplexVector v = post_ * mid_->apply(t, pre_ * in);
    if (!frame_.trivial())
        v = frame_.phases(*space_, total_duration(t)).conjugate().asDiagonal() * v;
    return v;
}

double VSequence::outer_unitarity_defect() const
{
    return std::max(numerics::unitarity_defect(pre_), numerics::unitarity_defect(post_));
}

ComplexMatrix build_V(const SpacePtr& space, const SchemeParams& p, double t, const VOptions& options,
                      const std::optional<PulseCalibration>& calibration)
{
    if (!(t >= 0.0))
        throw ValidationError("V(t) needs t >= 0");
    return VSequence(space, p, options, calibration).at(t);
}

} // namespace lightshift
