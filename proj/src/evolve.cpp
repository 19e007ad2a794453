#include "lightshift/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lightshift {

Schedule::Schedule(SpacePtr space, std::optional<SchemeParams> params, double clock_origin)
    : space_(std::move(space)), params_(std::move(params)), origin_(clock_origin), end_(clock_origin)
{
    if (!space_)
        throw ValidationError("schedule needs a space");
}

Schedule& Schedule::push(Segment s)
{
    if (!(s.duration >= 0.0) || !std::isfinite(s.duration))
        throw ValidationError("segment duration must be finite and >= 0");
    s.start = end_;
    end_ += s.duration;
    segments_.push_back(std::move(s));
    return *this;
}

Schedule& Schedule::add(Operator hamiltonian, double duration, std::string label)
{
    if (!hamiltonian.space || !hamiltonian.space->same_as(*space_))
        throw ValidationError("segment operator '" + hamiltonian.label + "' acts on a different space");
    if (label.empty())
        label = hamiltonian.label;
    return push({std::move(hamiltonian), duration, 0.0, std::move(label)});
}

Schedule& Schedule::add(ModelTerm term, double duration, std::string label)
{
    if (!params_)
        throw ValidationError("model segments need scheme parameters on the schedule");
    return push({term, duration, 0.0, std::move(label)});
}

ComplexMatrix propagate_static(const Operator& h, double t)
{
    return numerics::expm_hermitian(h.matrix, t);
}

double step_guard_rate(const Space& space, const SchemeParams& p, const SegmentFlags& flags)
{
    double rate = 0.0;
    const double sqrt_n = std::sqrt(static_cast<double>(std::max(space.n_max(), 1)));
    for (const auto& c : cavity_couplings(p))
        rate = std::max({rate, std::abs(c.detuning), sqrt_n * std::abs(c.g)});
    if (flags.raman_on && p.lambda && p.delta2)
        rate = std::max({rate, std::abs(*p.delta2), std::abs(*p.lambda)});
    if (flags.pulse_phase)
        rate = std::max(rate, std::abs(p.omega));
    return rate;
}

std::size_t required_steps(const Space& space, const SchemeParams& p, const SegmentFlags& flags, double t0,
                           double t1)
{
    const double span = std::abs(t1 - t0);
    if (span == 0.0)
        return 0;
    return static_cast<std::size_t>(std::ceil(span * step_guard_rate(space, p, flags) / kStepGuard));
}

ComplexMatrix propagate_timedep(const SpacePtr& space, const SchemeParams& p, const SegmentFlags& flags, double t0,
                                double t1, std::size_t steps)
{
    const std::size_t needed = required_steps(*space, p, flags, t0, t1);
    if (steps < needed) {
        std::ostringstream os;
        os << "midpoint step guard violated: " << steps << " steps over [" << t0 << ", " << t1
           << "] s; at least " << needed << " required";
        throw GuardError(os.str());
    }
    if (steps == 0)
        return ComplexMatrix::Identity(space->dim(), space->dim());
    return propagate_midpoint([&](double t) { return build_full_hamiltonian(space, p, t, flags).matrix; }, t0, t1,
                              steps);
}

ComplexMatrix propagate_midpoint(const std::function<ComplexMatrix(double)>& h, double t0, double t1,
                                 std::size_t steps)
{
    if (steps == 0)
        throw ValidationError("midpoint integrator needs at least one step");
    const double dt = (t1 - t0) / static_cast<double>(steps);
    ComplexMatrix u;
    for (std::size_t k = 0; k < steps; ++k) {
        const double mid = t0 + (static_cast<double>(k) + 0.5) * dt;
        const ComplexMatrix step = numerics::expm_hermitian(h(mid), dt);
        u = k == 0 ? step : ComplexMatrix(step * u);
    }
    return u;
}

ComplexMatrix propagate_segment(const SpacePtr& space, const std::optional<SchemeParams>& params,
                                const std::variant<Operator, ModelTerm>& generator, double start, double duration,
                                const ComposeOptions& options, std::size_t* steps_used)
{
    if (steps_used)
        *steps_used = 0;
    if (const auto* op = std::get_if<Operator>(&generator))
        return propagate_static(*op, duration);

    const auto& term = std::get<ModelTerm>(generator);
    if (!params)
        throw ValidationError("model segment without scheme parameters");
    if (term.tier == Tier::Eliminated)
        return propagate_static(build_eliminated_hamiltonian(space, *params, term.flags), duration);

    const double end = start + duration;
    if (options.route == FullTierRoute::Midpoint) {
        const auto needed = required_steps(*space, *params, term.flags, start, end);
        const auto steps = static_cast<std::size_t>(std::ceil(needed * std::max(options.step_refinement, 1.0)));
        if (steps_used)
            *steps_used = steps;
        return propagate_timedep(space, *params, term.flags, start, end, steps);
    }
    const auto sf = build_static_frame_hamiltonian(space, *params, term.flags);
    const ComplexVector w0 = sf.frame.phases(*space, start);
    const ComplexVector w1 = sf.frame.phases(*space, end);
    return w1.conjugate().asDiagonal() * propagate_static(sf.hamiltonian, duration) * w0.asDiagonal();
}

Composition compose(const Schedule& schedule, const ComposeOptions& options)
{
    const auto& space = schedule.space();
    Composition out;
    out.propagator = ComplexMatrix::Identity(space->dim(), space->dim());
    for (const auto& seg : schedule.segments()) {
        std::size_t steps = 0;
        const ComplexMatrix u
            = propagate_segment(space, schedule.params(), seg.generator, seg.start, seg.duration, options, &steps);
        out.segments.push_back({seg.label, seg.start, seg.duration, numerics::unitarity_defect(u), steps});
        out.propagator = u * out.propagator;
    }
    out.unitarity_defect = numerics::unitarity_defect(out.propagator);
    return out;
}

Composition compose_reversed(const Schedule& schedule, const ComposeOptions& options)
{
    const auto& space = schedule.space();
    Composition out;
    out.propagator = ComplexMatrix::Identity(space->dim(), space->dim());
    const auto& segs = schedule.segments();
    for (auto it = segs.rbegin(); it != segs.rend(); ++it) {
        std::size_t steps = 0;
        const ComplexMatrix u = propagate_segment(space, schedule.params(), it->generator, it->start + it->duration,
                                                  -it->duration, options, &steps);
        out.segments.push_back({it->label, it->start + it->duration, -it->duration, numerics::unitarity_defect(u),
                                steps});
        out.propagator = u * out.propagator;
    }
    out.unitarity_defect = numerics::unitarity_defect(out.propagator);
    return out;
}

double FrameSpec::phase(const std::vector<int>& photons, double t) const
{
    double ph = 0.0;
    for (std::size_t m = 0; m < photons.size(); ++m) {
        if (m < photon_rates.size())
            ph += photons[m] * photon_rates[m] * t;
        if (m < photon_offsets.size())
            ph += photons[m] * photon_offsets[m];
    }
    return ph;
}

Complex remove_linear_phase(Complex amplitude, const std::vector<int>& photons, const FrameSpec& frame, double t)
{
    return amplitude * std::exp(kI * frame.phase(photons, t));
}

namespace {
ComplexVector frame_diagonal(const Space& space, const FrameSpec& frame, double t)
{
    ComplexVector d(space.dim());
    for (std::size_t i = 0; i < space.dim(); ++i)
        d(i) = std::exp(kI * frame.phase(space.photons_of(i), t));
    return d;
}
} // namespace

ComplexVector remove_linear_phase(const ComplexVector& v, const Space& space, const FrameSpec& frame, double t)
{
    return frame_diagonal(space, frame, t).asDiagonal() * v;
}

ComplexMatrix remove_linear_phase(const ComplexMatrix& u, const Space& space, const FrameSpec& frame, double t)
{
    return frame_diagonal(space, frame, t).asDiagonal() * u;
}

} // namespace lightshift
