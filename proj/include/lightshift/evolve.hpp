#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lightshift/models.hpp"

namespace lightshift {

/// A segment generated by the scheme's own Hamiltonian at a tier.
struct ModelTerm {
    Tier tier = Tier::Eliminated;
    SegmentFlags flags;
};

struct Segment {
    std::variant<Operator, ModelTerm> generator;
    double duration = 0.0;
    double start = 0.0; ///< global clock, assigned by Schedule
    std::string label;
};

/// Contiguous segments on one space under a global clock.
class Schedule {
public:
    explicit Schedule(SpacePtr space, std::optional<SchemeParams> params = std::nullopt, double clock_origin = 0.0);

    Schedule& add(Operator hamiltonian, double duration, std::string label = {});
    Schedule& add(ModelTerm term, double duration, std::string label = {});

    const std::vector<Segment>& segments() const { return segments_; }
    const SpacePtr& space() const { return space_; }
    const std::optional<SchemeParams>& params() const { return params_; }
    double start_time() const { return origin_; }
    double end_time() const { return end_; }

private:
    Schedule& push(Segment s);

    SpacePtr space_;
    std::optional<SchemeParams> params_;
    double origin_ = 0.0;
    double end_ = 0.0;
    std::vector<Segment> segments_;
};

enum class FullTierRoute { ExactFrame, Midpoint };

/// max(rate) * dt must stay below this for the midpoint integrator.
inline constexpr double kStepGuard = 0.05;

struct ComposeOptions {
    FullTierRoute route = FullTierRoute::ExactFrame;
    /// Midpoint steps per unit time beyond the guard minimum (multiplier >= 1).
    double step_refinement = 1.0;
};

struct SegmentDiagnostics {
    std::string label;
    double start = 0.0;
    double duration = 0.0;
    double unitarity_defect = 0.0;
    std::size_t steps = 0; ///< 0 for exact (eigendecomposition) segments
};

struct Composition {
    ComplexMatrix propagator;
    std::vector<SegmentDiagnostics> segments;
    double unitarity_defect = 0.0;
};

/// e^{-iHt}.
ComplexMatrix propagate_static(const Operator& h, double t);

/// Largest rate entering the step guard of a full-tier segment.
double step_guard_rate(const Space& space, const SchemeParams& p, const SegmentFlags& flags);
std::size_t required_steps(const Space& space, const SchemeParams& p, const SegmentFlags& flags, double t0,
                           double t1);

/// Midpoint-exponential product prod_k exp(-i H(t_k + dt/2) dt) of the full
/// time-dependent Hamiltonian. Throws GuardError when `steps` is below
/// required_steps.
ComplexMatrix propagate_timedep(const SpacePtr& space, const SchemeParams& p, const SegmentFlags& flags, double t0,
                                double t1, std::size_t steps);

/// Midpoint-exponential product for an arbitrary Hermitian H(t); no guard.
ComplexMatrix propagate_midpoint(const std::function<ComplexMatrix(double)>& h, double t0, double t1,
                                 std::size_t steps);

/// Propagator of one segment generator from `start` over a signed duration.
/// Negative durations give the inverse of the forward segment ending at `start`.
ComplexMatrix propagate_segment(const SpacePtr& space, const std::optional<SchemeParams>& params,
                                const std::variant<Operator, ModelTerm>& generator, double start, double duration,
                                const ComposeOptions& options = {}, std::size_t* steps_used = nullptr);

/// Ordered product of segment propagators, later segments on the left.
Composition compose(const Schedule& schedule, const ComposeOptions& options = {});

/// Inverse of compose(schedule): segments in reverse order, each propagated
/// backwards from its end time with a negated duration.
Composition compose_reversed(const Schedule& schedule, const ComposeOptions& options = {});

/// Photon-linear phase bookkeeping of a second interaction picture.
/// Photon configuration (n_m) acquires the factor exp(+i sum_m n_m (rate_m t + offset_m)).
struct FrameSpec {
    std::vector<double> photon_rates;   ///< s^-1 per photon, per mode
    std::vector<double> photon_offsets; ///< rad per photon, per mode

    double phase(const std::vector<int>& photons, double t) const;
};

Complex remove_linear_phase(Complex amplitude, const std::vector<int>& photons, const FrameSpec& frame, double t);
ComplexVector remove_linear_phase(const ComplexVector& v, const Space& space, const FrameSpec& frame, double t);
ComplexMatrix remove_linear_phase(const ComplexMatrix& u, const Space& space, const FrameSpec& frame, double t);

} // namespace lightshift
