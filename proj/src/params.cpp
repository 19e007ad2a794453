#include "lightshift/params.hpp"

#include <cmath>
#include <sstream>

#include "lightshift/error.hpp"

namespace lightshift {

namespace {

void require_finite_nonzero(double v, const char* name)
{
    if (!std::isfinite(v) || v == 0.0)
        throw ValidationError(std::string(name) + " must be finite and nonzero");
}

} // namespace

std::string to_string(Scheme s)
{
    switch (s) {
    case Scheme::SelfKerr: return "self_kerr";
    case Scheme::CrossPolarization: return "cross_polarization";
    case Scheme::CrossToroidal: return "cross_toroidal";
    }
    return "unknown";
}

Scheme parse_scheme(const std::string& s)
{
    if (s == "self_kerr")
        return Scheme::SelfKerr;
    if (s == "cross_polarization")
        return Scheme::CrossPolarization;
    if (s == "cross_toroidal")
        return Scheme::CrossToroidal;
    throw ValidationError("unknown scheme '" + s + "'");
}

int mode_count(Scheme s)
{
    return s == Scheme::SelfKerr ? 1 : 2;
}

SchemeParams derive_params(SchemeParams p, bool synthesize_laser)
{
    if (p.n_atoms < 1)
        throw ValidationError("n_atoms must be >= 1");
    require_finite_nonzero(p.g, "g");
    require_finite_nonzero(p.delta1, "delta1");
    if (p.lambda.has_value() != p.delta2.has_value())
        throw ValidationError("lambda and delta2 must be given together");
    if (p.delta2)
        require_finite_nonzero(*p.delta2, "delta2");
    if (p.lambda)
        require_finite_nonzero(*p.lambda, "lambda");

    if (p.lambda && p.theta) {
        const double implied = 2.0 * *p.lambda * *p.lambda / *p.delta2;
        if (std::abs(*p.theta - implied) > 1e-9 * std::abs(*p.theta)) {
            std::ostringstream os;
            os << "theta = " << *p.theta << " inconsistent with 2 lambda^2 / delta2 = " << implied;
            throw ValidationError(os.str());
        }
    } else if (p.lambda) {
        p.theta = 2.0 * *p.lambda * *p.lambda / *p.delta2;
    } else if (!p.theta) {
        throw ValidationError("either theta or (lambda, delta2) must be given");
    }
    require_finite_nonzero(*p.theta, "theta");

    if (!p.lambda && synthesize_laser) {
        if (!(p.laser_detuning_ratio > 1.0))
            throw ValidationError("laser_detuning_ratio must exceed 1");
        const double d2 = std::copysign(p.laser_detuning_ratio * std::abs(p.delta1), *p.theta);
        p.delta2 = d2;
        p.lambda = std::sqrt(*p.theta * d2 / 2.0);
    }

    switch (p.scheme) {
    case Scheme::SelfKerr: break;
    case Scheme::CrossPolarization:
        if (!p.g_a || !p.g_b || !p.delta1_a || !p.delta1_b)
            throw ValidationError("cross_polarization needs g_a, g_b, delta1_a, delta1_b");
        require_finite_nonzero(*p.delta1_a, "delta1_a");
        require_finite_nonzero(*p.delta1_b, "delta1_b");
        break;
    case Scheme::CrossToroidal:
        if (!p.g_a || !p.g_b || !p.delta)
            throw ValidationError("cross_toroidal needs g_a, g_b, delta");
        require_finite_nonzero(p.delta1 - *p.delta, "delta1 - delta");
        require_finite_nonzero(p.delta1 + *p.delta, "delta1 + delta");
        break;
    }

    const double th = *p.theta;
    p.mu = p.g * p.g / (p.delta1 * th);
    p.kappa = p.n_atoms * std::pow(p.g, 4) / (4.0 * p.delta1 * p.delta1 * th);
    p.derived = true;
    return p;
}

SchemeParams fig3b_params(int n_atoms)
{
    SchemeParams p;
    p.n_atoms = n_atoms;
    p.g = kDefaultG;
    p.delta1 = 10.0 * kDefaultG;
    p.theta = kDefaultG;
    p.omega = 100.0 * kDefaultG;
    return p;
}

SchemeParams fig3a_params(int n_atoms)
{
    SchemeParams p;
    p.n_atoms = n_atoms;
    p.g = kDefaultG;
    p.delta1 = 10.0 * std::sqrt(static_cast<double>(n_atoms)) * kDefaultG;
    p.theta = kDefaultG * std::cbrt(static_cast<double>(n_atoms)) / 5.0;
    p.omega = 100.0 * kDefaultG;
    return p;
}

SchemeParams cross_params(Scheme variant)
{
    SchemeParams p = fig3b_params(1);
    p.scheme = variant;
    p.g_a = kDefaultG;
    p.g_b = kDefaultG;
    if (variant == Scheme::CrossPolarization) {
        p.delta1_a = 10.0 * kDefaultG;
        p.delta1_b = 10.0 * kDefaultG;
    } else if (variant == Scheme::CrossToroidal) {
        p.delta = 0.0;
    }
    return p;
}

std::vector<CavityCoupling> cavity_couplings(const SchemeParams& p)
{
    switch (p.scheme) {
    case Scheme::SelfKerr: return {{0, 0, p.g, p.delta1}};
    case Scheme::CrossPolarization: return {{0, 0, *p.g_a, *p.delta1_a}, {1, 1, *p.g_b, *p.delta1_b}};
    case Scheme::CrossToroidal:
        return {{0, 0, *p.g_a, p.delta1 - *p.delta}, {1, 0, *p.g_b, p.delta1 + *p.delta}};
    }
    return {};
}

double canonical_rotation_coefficient(const SchemeParams& p)
{
    if (!p.theta)
        throw ValidationError("theta required for the canonical rotation");
    return -p.g * p.g / (2.0 * p.delta1 * *p.theta);
}

} // namespace lightshift
