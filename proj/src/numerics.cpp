#include "lightshift/numerics.hpp"

#include <cmath>
#include <sstream>

namespace lightshift::numerics {

double max_abs(const ComplexMatrix& m)
{
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw NumericsError("max_abs_diff: shape mismatch");
    return max_abs(a - b);
}

double hermiticity_defect(const ComplexMatrix& h)
{
    return max_abs(h - h.adjoint());
}

double antihermiticity_defect(const ComplexMatrix& a)
{
    return max_abs(a + a.adjoint());
}

void require_hermitian(const ComplexMatrix& h, const char* what)
{
    if (h.rows() != h.cols() || h.rows() < 1) {
        std::ostringstream os;
        os << what << " must be square with dim >= 1 (got " << h.rows() << "x" << h.cols() << ")";
        throw NumericsError(os.str());
    }
    const double defect = hermiticity_defect(h);
    const double scale = max_abs(h);
    if (!std::isfinite(defect) || defect > kHermitianTolerance * scale) {
        std::ostringstream os;
        os << what << " is not Hermitian: max|H - H^dag| = " << defect
           << " exceeds " << kHermitianTolerance << " * max|H| = " << kHermitianTolerance * scale;
        throw NumericsError(os.str());
    }
}

double unitarity_defect(const ComplexMatrix& u)
{
    if (u.rows() != u.cols())
        throw NumericsError("unitarity_defect: matrix is not square");
    return max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols()));
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b)
{
    return a * b - b * a;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b)
{
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

SpectralPropagator::SpectralPropagator(const ComplexMatrix& h)
{
    require_hermitian(h, "generator");
    // Symmetrize so roundoff-level anti-Hermitian parts do not leak into the solver.
    const ComplexMatrix hs = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hs);
    if (solver.info() != Eigen::Success)
        throw NumericsError("Hermitian eigendecomposition failed");
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
}

ComplexMatrix SpectralPropagator::at(double t) const
{
    if (!std::isfinite(t))
        throw NumericsError("propagation time must be finite");
    ComplexVector phases(eigenvalues_.size());
    for (Eigen::Index k = 0; k < eigenvalues_.size(); ++k)
        phases(k) = std::exp(-kI * eigenvalues_(k) * t);
    return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

ComplexVector SpectralPropagator::apply(double t, const ComplexVector& v) const
{
    ComplexVector coeffs = eigenvectors_.adjoint() * v;
    for (Eigen::Index k = 0; k < eigenvalues_.size(); ++k)
        coeffs(k) *= std::exp(-kI * eigenvalues_(k) * t);
    return eigenvectors_ * coeffs;
}

ComplexMatrix expm_hermitian(const ComplexMatrix& h, double t)
{
    return SpectralPropagator(h).at(t);
}

ComplexMatrix expm_antihermitian(const ComplexMatrix& a)
{
    if (a.rows() != a.cols() || a.rows() < 1)
        throw NumericsError("expm_antihermitian: matrix must be square with dim >= 1");
    const double defect = antihermiticity_defect(a);
    if (!std::isfinite(defect) || defect > kHermitianTolerance * max_abs(a)) {
        std::ostringstream os;
        os << "generator is not anti-Hermitian: max|A + A^dag| = " << defect;
        throw NumericsError(os.str());
    }
    return expm_hermitian(kI * a, 1.0);
}

} // namespace lightshift::numerics
