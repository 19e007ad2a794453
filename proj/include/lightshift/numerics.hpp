#pragma once

#include <complex>

#include <Eigen/Dense>

#include "lightshift/error.hpp"

namespace lightshift {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

namespace numerics {

/// Relative entrywise tolerance for Hermiticity: max|H - H^dag| <= tol * max|H|.
inline constexpr double kHermitianTolerance = 1e-12;
/// Absolute tolerance on max|U^dag U - I| for every propagator we return.
inline constexpr double kUnitaryTolerance = 1e-10;

double max_abs(const ComplexMatrix& m);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// max entrywise |H - H^dag|.
double hermiticity_defect(const ComplexMatrix& h);
/// max entrywise |A + A^dag|.
double antihermiticity_defect(const ComplexMatrix& a);

/// Throws NumericsError (with the entrywise defect) unless `h` is square and
/// Hermitian within kHermitianTolerance relative to max|h|.
void require_hermitian(const ComplexMatrix& h, const char* what = "matrix");

/// max entrywise |U^dag U - I|.
double unitarity_defect(const ComplexMatrix& u);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product, `a` is the slow (outer) index.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// e^{-iHt} for Hermitian H, via eigendecomposition.
ComplexMatrix expm_hermitian(const ComplexMatrix& h, double t);

/// e^{A} for anti-Hermitian A, computed as e^{-i (iA) * 1}.
ComplexMatrix expm_antihermitian(const ComplexMatrix& a);

/// Eigendecomposition of a Hermitian generator, reusable for e^{-iHt} at many t.
class SpectralPropagator {
public:
    explicit SpectralPropagator(const ComplexMatrix& h);

    ComplexMatrix at(double t) const;
    ComplexVector apply(double t, const ComplexVector& v) const;

    const RealVector& eigenvalues() const { return eigenvalues_; }
    const ComplexMatrix& eigenvectors() const { return eigenvectors_; }
    Eigen::Index dim() const { return eigenvalues_.size(); }

private:
    RealVector eigenvalues_;
    ComplexMatrix eigenvectors_;
};

} // namespace numerics
} // namespace lightshift
