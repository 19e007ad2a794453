#include "lightshift/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <set>
#include <thread>

namespace lightshift {

using std::numbers::pi;

const std::vector<std::string>& override_names()
{
    static const std::vector<std::string> names{"n_atoms", "g",        "delta1",   "theta",
                                                "lambda",  "delta2",   "omega",    "g_a",
                                                "g_b",     "delta1_a", "delta1_b", "delta",
                                                "laser_detuning_ratio"};
    return names;
}

SchemeParams apply_overrides(SchemeParams p, const ParamOverrides& overrides)
{
    const bool laser = overrides.count("lambda") || overrides.count("delta2");
    if (laser && !overrides.count("theta"))
        p.theta.reset();
    if (overrides.count("theta") && !laser) {
        p.lambda.reset();
        p.delta2.reset();
    }
    for (const auto& [name, v] : overrides) {
        if (!std::isfinite(v))
            throw ValidationError("override '" + name + "' is not finite");
        if (name == "n_atoms") {
            if (v < 1 || v != std::floor(v))
                throw ValidationError("n_atoms must be a positive integer");
            p.n_atoms = static_cast<int>(v);
        } else if (name == "g") p.g = v;
        else if (name == "delta1") p.delta1 = v;
        else if (name == "theta") p.theta = v;
        else if (name == "lambda") p.lambda = v;
        else if (name == "delta2") p.delta2 = v;
        else if (name == "omega") p.omega = v;
        else if (name == "g_a") p.g_a = v;
        else if (name == "g_b") p.g_b = v;
        else if (name == "delta1_a") p.delta1_a = v;
        else if (name == "delta1_b") p.delta1_b = v;
        else if (name == "delta") p.delta = v;
        else if (name == "laser_detuning_ratio") p.laser_detuning_ratio = v;
        else
            throw ValidationError("unknown parameter '" + name + "'");
    }
    p.derived = false;
    return p;
}

namespace {

SchemeParams complete(const SchemeParams& p, const ScenarioOptions& o)
{
    return derive_params(p, o.tier == Tier::Full);
}

int scenario_levels(const ScenarioOptions& o)
{
    return o.tier == Tier::Full ? 3 : 2;
}

SpacePtr scenario_space(const SchemeParams& p, int n_max, const ScenarioOptions& o)
{
    SpaceSpec s;
    s.n_max = n_max;
    s.n_modes = mode_count(p.scheme);
    s.n_atoms = p.n_atoms;
    s.levels = scenario_levels(o);
    s.representation = default_representation(p.n_atoms);
    return build_space(s);
}

double reference_energy(const SchemeParams& p, const ScenarioOptions& o)
{
    if (o.mode == VMode::Physical && o.tier == Tier::Full)
        return 0.0;
    return -0.5 * p.n_atoms * *p.theta;
}

FrameSpec frame_offsets(const SchemeParams& p, const ScenarioOptions& o, const std::optional<PulseCalibration>& cal)
{
    FrameSpec f;
    const int modes = mode_count(p.scheme);
    f.photon_rates.assign(modes, 0.0);
    f.photon_offsets.assign(modes, 0.0);
    if (o.mode == VMode::Physical && cal)
        for (int m = 0; m < modes; ++m)
            f.photon_offsets[m] = p.n_atoms * (cal->beta_forward.at(m) + cal->beta_inverse.at(m));
    return f;
}

std::vector<double> time_grid(double span, std::size_t points)
{
    if (points < 2)
        throw ValidationError("time grid needs at least 2 points");
    std::vector<double> t(points);
    for (std::size_t k = 0; k < points; ++k)
        t[k] = span * static_cast<double>(k) / static_cast<double>(points - 1);
    return t;
}

struct AmplitudeSeries {
    std::vector<Complex> amp;
    std::vector<double> plus;
    double max_defect = 0.0;
};

AmplitudeSeries amplitudes(const VSequence& v, const ComplexVector& psi, const std::vector<double>& t,
                           bool full_matrix)
{
    AmplitudeSeries s;
    const ComplexMatrix plus_op = collective(v.space(), Level::Plus, Level::Plus).matrix;
    for (double tk : t) {
        ComplexVector out;
        if (full_matrix) {
            const ComplexMatrix m = v.at(tk);
            s.max_defect = std::max(s.max_defect, numerics::unitarity_defect(m));
            out = m * psi;
        } else {
            out = v.apply(tk, psi);
        }
        s.amp.push_back(psi.dot(out));
        s.plus.push_back(out.dot(plus_op * out).real());
    }
    return s;
}

ComplexVector minus_state(const Space& space, const std::vector<int>& photons)
{
    return uniform_state(space, photons, Level::Minus);
}

double golden_minimize(const std::function<double(double)>& f, double a, double b, double tol)
{
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

} // namespace

FrameCalibration calibrate_frame(const SchemeParams& p_in, const ScenarioOptions& o,
                                 const std::optional<PulseCalibration>& pulse_in)
{
    const SchemeParams p = complete(p_in, o);
    if (mode_count(p.scheme) != 1)
        throw ValidationError("frame calibration is defined for the single-mode scheme");
    std::optional<PulseCalibration> pulse = pulse_in;
    if (o.mode == VMode::Physical && !pulse)
        pulse = calibrate_pulse_phase(p, o.tier, o.calibration);

    const SpacePtr space = scenario_space(p, 2, o);
    const VSequence v(space, p, {o.mode, o.tier, false}, pulse);
    const std::vector<double> t = time_grid(2.0 * pi / p.kappa, o.grid_points);
    const auto series = amplitudes(v, minus_state(*space, {1}), t, false);
    const FrameSpec base = frame_offsets(p, o, pulse);
    const double e_ref = reference_energy(p, o);

    // The complex amplitude is compared with exp(i kappa t): matching only the real part
    // admits an alias at r - 2 kappa, where exp(-i kappa t) has the same cosine.
    auto removed = [&](double r, std::size_t k) {
        return series.amp[k] * std::exp(kI * (r * t[k] + base.photon_offsets[0] + e_ref * t[k]));
    };
    auto deviation = [&](double r) {
        double worst = 0.0;
        for (std::size_t k = 0; k < t.size(); ++k)
            worst = std::max(worst, std::abs(removed(r, k) - std::exp(kI * p.kappa * t[k])));
        return worst;
    };
    auto real_deviation = [&](double r) {
        double worst = 0.0;
        for (std::size_t k = 0; k < t.size(); ++k)
            worst = std::max(worst, std::abs(removed(r, k).real() - std::cos(p.kappa * t[k])));
        return worst;
    };

    FrameCalibration fc;
    fc.linear_rate = linear_photon_rates(p)[0];
    fc.nominal = o.mode == VMode::Physical ? fc.linear_rate : 0.0;
    const double half = o.frame_bracket * std::abs(fc.linear_rate);
    const std::size_t n = std::max<std::size_t>(o.frame_grid, 3);
    const double step = 2.0 * half / static_cast<double>(n - 1);
    std::size_t best_k = 0;
    double best = deviation(fc.nominal - half);
    for (std::size_t k = 1; k < n; ++k) {
        const double d = deviation(fc.nominal - half + step * static_cast<double>(k));
        if (d < best) {
            best = d;
            best_k = k;
        }
    }
    const double r0 = fc.nominal - half + step * static_cast<double>(best_k);
    fc.interior = best_k != 0 && best_k != n - 1;
    double r = golden_minimize(deviation, r0 - step, r0 + step, 1e-9 * std::abs(fc.linear_rate) + 1e-12);
    if (deviation(r) > best)
        r = r0;
    fc.r_lin = r;
    fc.max_deviation = real_deviation(r);
    const double offset = std::abs(r - (o.mode == VMode::Physical ? fc.linear_rate : 0.0));
    fc.within_tolerance = offset <= 0.1 * std::abs(fc.linear_rate);
    return fc;
}

BranchSeries run_branch(const SchemeParams& p_in, int photons, const ScenarioOptions& o,
                        const std::optional<PulseCalibration>& pulse_in,
                        const std::optional<FrameCalibration>& frame_in)
{
    if (photons < 0)
        throw ValidationError("photon number must be >= 0");
    const SchemeParams p = complete(p_in, o);
    std::optional<PulseCalibration> pulse = pulse_in;
    if (o.mode == VMode::Physical && !pulse)
        pulse = calibrate_pulse_phase(p, o.tier, o.calibration);
    const FrameCalibration frame = frame_in ? *frame_in : calibrate_frame(p, o, pulse);

    BranchSeries b;
    b.n_atoms = p.n_atoms;
    b.photons = photons;
    b.params = p;
    b.kappa = p.kappa;
    b.reference_energy = reference_energy(p, o);
    b.frame = frame_offsets(p, o, pulse);
    b.frame.photon_rates[0] = frame.r_lin;
    b.frame_calibration = frame;
    b.pulse_calibration = pulse;

    const SpacePtr space = scenario_space(p, std::max(photons, 1), o);
    const VSequence v(space, p, {o.mode, o.tier, false}, pulse);
    b.t = time_grid(2.0 * pi / p.kappa, o.grid_points);
    const auto series = amplitudes(v, minus_state(*space, {photons}), b.t, true);
    b.max_unitarity_defect = series.max_defect;

    double sq = 0.0;
    for (std::size_t k = 0; k < b.t.size(); ++k) {
        const double tk = b.t[k];
        const Complex a = remove_linear_phase(series.amp[k], {photons}, b.frame, tk)
                          * std::exp(kI * b.reference_energy * tk);
        const double ref = std::cos(p.kappa * photons * photons * tk);
        const double err = std::abs(a.real() - ref);
        b.X.push_back(std::abs(series.amp[k]));
        b.Y.push_back(a.real());
        b.reference.push_back(ref);
        b.plus_population.push_back(series.plus[k]);
        b.max_abs_error = std::max(b.max_abs_error, err);
        b.min_X = std::min(b.min_X, b.X.back());
        b.max_plus_population = std::max(b.max_plus_population, series.plus[k]);
        sq += err * err;
    }
    b.rms_error = std::sqrt(sq / static_cast<double>(b.t.size()));
    return b;
}

namespace {

struct PerN {
    SchemeParams params;
    std::optional<PulseCalibration> pulse;
    FrameCalibration frame;
};

PerN prepare(const SchemeParams& p_raw, const ScenarioOptions& o)
{
    PerN out;
    out.params = complete(p_raw, o);
    if (o.mode == VMode::Physical)
        out.pulse = calibrate_pulse_phase(out.params, o.tier, o.calibration);
    out.frame = calibrate_frame(out.params, o, out.pulse);
    return out;
}

template <class ParamsFor>
ScenarioResult run_single_mode(const std::string& name, const ParamOverrides& overrides, const ScenarioOptions& o,
                               const std::vector<Branch>& branches, ParamsFor params_for, bool with_oracle)
{
    ScenarioResult r;
    r.scenario = name;
    r.mode = o.mode;
    r.tier = o.tier;
    r.overrides = overrides;
    r.grid_points = o.grid_points;

    std::map<int, PerN> cache;
    for (const auto& br : branches) {
        auto it = cache.find(br.n_atoms);
        if (it == cache.end()) {
            it = cache.emplace(br.n_atoms, prepare(apply_overrides(params_for(br.n_atoms), overrides), o)).first;
            r.regimes.push_back(check(it->second.params));
        }
        const PerN& per = it->second;
        BranchSeries b = run_branch(per.params, br.photons, o, per.pulse, per.frame);
        if (with_oracle && o.mode == VMode::Physical) {
            const SpacePtr space = scenario_space(per.params, std::max(br.photons, 1), o);
            const VSequence ideal(space, per.params, {VMode::Ideal, o.tier, false});
            const auto s = amplitudes(ideal, minus_state(*space, {br.photons}), b.t, false);
            double dev = 0.0;
            for (std::size_t k = 0; k < b.t.size(); ++k) {
                b.X_ideal.push_back(std::abs(s.amp[k]));
                dev = std::max(dev, std::abs(b.X[k] - b.X_ideal.back()));
            }
            b.max_ideal_deviation = dev;
        }
        r.branches.push_back(std::move(b));
    }
    return r;
}

} // namespace

ScenarioResult run_fig3a(const ParamOverrides& overrides, const ScenarioOptions& o, std::vector<Branch> branches)
{
    if (branches.empty()) {
        if (auto it = overrides.find("n_atoms"); it != overrides.end())
            branches = {{static_cast<int>(it->second), 2}};
        else
            branches = {{1, 2}, {2, 2}};
    }
    return run_single_mode("fig3a", overrides, o, branches, fig3a_params, true);
}

ScenarioResult run_fig3b(const ParamOverrides& overrides, const ScenarioOptions& o, std::vector<Branch> branches)
{
    if (branches.empty()) {
        if (auto it = overrides.find("n_atoms"); it != overrides.end()) {
            const int n = static_cast<int>(it->second);
            branches = {{n, 1}, {n, 2}};
        } else {
            branches = {{1, 1}, {1, 2}, {2, 1}, {2, 2}};
        }
    }
    return run_single_mode("fig3b", overrides, o, branches, fig3b_params, false);
}

ScenarioResult run_cross_kerr(Scheme variant, const ParamOverrides& overrides, const ScenarioOptions& o)
{
    if (mode_count(variant) != 2)
        throw ValidationError("cross-Kerr scenario needs a two-mode variant");
    SchemeParams raw = cross_params(variant);
    raw = apply_overrides(raw, overrides);
    const SchemeParams p = complete(raw, o);

    CrossKerrResult c;
    c.variant = variant;
    c.n_atoms = p.n_atoms;
    c.params = p;
    c.nu_effective = cross_kerr_coefficient(p);
    if (o.mode == VMode::Physical)
        c.pulse_calibration = calibrate_pulse_phase(p, o.tier, o.calibration);

    double a_max = 0.0;
    for (const auto& cp : cavity_couplings(p))
        a_max = std::max(a_max, std::abs(cp.half_shift()));
    const double rate = p.n_atoms * a_max * a_max / std::abs(*p.theta);
    if (!(rate > 0.0))
        throw ValidationError("cross-Kerr scenario needs at least one coupled mode");
    c.window = 2.0 * pi / rate;
    c.t = time_grid(c.window, o.grid_points);

    const SpacePtr space = scenario_space(p, 1, o);
    const VSequence v(space, p, {o.mode, o.tier, false}, c.pulse_calibration);
    std::vector<std::vector<Complex>> amp(4);
    const int occ[4][2] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    for (int s = 0; s < 4; ++s) {
        const auto series = amplitudes(v, minus_state(*space, {occ[s][0], occ[s][1]}), c.t, s == 0);
        amp[s] = series.amp;
        if (s == 0)
            c.max_unitarity_defect = series.max_defect;
    }
    double prev = 0.0;
    for (std::size_t k = 0; k < c.t.size(); ++k) {
        double ph = std::arg(amp[3][k] * amp[0][k] / (amp[1][k] * amp[2][k]));
        ph = prev + std::remainder(ph - prev, 2.0 * pi);
        prev = ph;
        c.combination.push_back(ph);
    }
    // Least-squares line through the combination phase.
    const double n = static_cast<double>(c.t.size());
    double st = 0, sy = 0, stt = 0, sty = 0;
    for (std::size_t k = 0; k < c.t.size(); ++k) {
        st += c.t[k];
        sy += c.combination[k];
        stt += c.t[k] * c.t[k];
        sty += c.t[k] * c.combination[k];
    }
    const double slope = (n * sty - st * sy) / (n * stt - st * st);
    const double icpt = (sy - slope * st) / n;
    double res = 0.0;
    for (std::size_t k = 0; k < c.t.size(); ++k)
        res += std::pow(c.combination[k] - slope * c.t[k] - icpt, 2);
    c.fit_rms = std::sqrt(res / n);
    c.nu_hat = -slope;

    ScenarioResult r;
    r.scenario = "cross";
    r.mode = o.mode;
    r.tier = o.tier;
    r.overrides = overrides;
    r.grid_points = o.grid_points;
    r.regimes.push_back(check(p));
    r.cross = std::move(c);
    return r;
}

std::vector<SweepPoint> sweep(const std::string& parameter, const std::vector<double>& values,
                              const ScenarioFn& scenario, const ParamOverrides& base, int jobs)
{
    const auto& names = override_names();
    if (std::find(names.begin(), names.end(), parameter) == names.end())
        throw ValidationError("unknown sweep parameter '" + parameter + "'");
    for (double v : values)
        if (!std::isfinite(v))
            throw ValidationError("sweep values must be finite");

    std::vector<SweepPoint> out(values.size());
    auto run_point = [&](std::size_t i) {
        out[i].parameter = parameter;
        out[i].value = values[i];
        ParamOverrides ov = base;
        ov[parameter] = values[i];
        try {
            out[i].result = scenario(ov);
        } catch (const std::exception& e) {
            out[i].error = e.what();
        }
    };
    const std::size_t workers = std::min<std::size_t>(std::max(jobs, 1), values.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < values.size(); ++i)
            run_point(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < values.size(); i = next++)
                run_point(i);
        });
    for (auto& th : pool)
        th.join();
    return out;
}

namespace {

double fit_residual(const std::vector<double>& t, const std::vector<double>& y, double w)
{
    Eigen::MatrixXd a(t.size(), 3);
    Eigen::VectorXd b(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) {
        a(k, 0) = std::cos(w * t[k]);
        a(k, 1) = std::sin(w * t[k]);
        a(k, 2) = 1.0;
        b(k) = y[k];
    }
    const Eigen::VectorXd x = a.colPivHouseholderQr().solve(b);
    return (a * x - b).squaredNorm();
}

} // namespace

double dominant_frequency(const std::vector<double>& t, const std::vector<double>& y, double w_min, double w_max,
                          std::size_t grid)
{
    if (t.size() != y.size() || t.size() < 4)
        throw ValidationError("frequency fit needs matching series of at least 4 samples");
    if (!(w_min > 0.0) || !(w_max > w_min) || grid < 2)
        throw ValidationError("frequency fit needs 0 < w_min < w_max");
    const double step = (w_max - w_min) / static_cast<double>(grid - 1);
    double best_w = w_min, best = fit_residual(t, y, w_min);
    for (std::size_t k = 1; k < grid; ++k) {
        const double w = w_min + step * static_cast<double>(k);
        const double r = fit_residual(t, y, w);
        if (r < best) {
            best = r;
            best_w = w;
        }
    }
    const double lo = std::max(w_min, best_w - step), hi = std::min(w_max, best_w + step);
    const double w = golden_minimize([&](double x) { return fit_residual(t, y, x); }, lo, hi, 1e-9 * best_w);
    return fit_residual(t, y, w) <= best ? w : best_w;
}

double dominant_frequency(const std::vector<double>& t, const std::vector<double>& y)
{
    if (t.size() < 4)
        throw ValidationError("frequency fit needs at least 4 samples");
    const double span = t.back() - t.front();
    const double dt = span / static_cast<double>(t.size() - 1);
    return dominant_frequency(t, y, pi / span, pi / dt);
}

} // namespace lightshift
