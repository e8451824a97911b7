// ops.cpp — operator algebra primitives.

#include "tcg/ops.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "tcg/tolerances.hpp"

namespace tcg {

namespace {

void require_square(const ComplexMatrix& m, const char* who) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw std::invalid_argument(std::string(who) + ": matrix must be square, got " +
                                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* who) {
    require_square(a, who);
    require_square(b, who);
    if (a.rows() != b.rows()) {
        throw std::invalid_argument(std::string(who) + ": dimension mismatch (" +
                                    std::to_string(a.rows()) + " vs " + std::to_string(b.rows()) + ")");
    }
}

} // namespace

ComplexMatrix dyad(int dim, int i, int j) {
    if (dim < 1 || i < 0 || j < 0 || i >= dim || j >= dim) {
        throw std::invalid_argument("dyad: indices out of range");
    }
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    m(i, j) = 1.0;
    return m;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "commutator");
    return a * b - b * a;
}

ComplexMatrix dissipator_apply(const ComplexMatrix& a, const ComplexMatrix& b,
                               const ComplexMatrix& rho) {
    require_same_dim(a, b, "dissipator_apply");
    require_same_dim(a, rho, "dissipator_apply");
    const ComplexMatrix ba = b * a;
    return a * rho * b - 0.5 * (ba * rho + rho * ba);
}

Complex expectation(const ComplexMatrix& op, const ComplexMatrix& rho) {
    require_same_dim(op, rho, "expectation");
    return (op * rho).trace();
}

Complex expectation(const ComplexMatrix& op, const DensityMatrix& rho) {
    return expectation(op, rho.matrix());
}

double hermiticity_defect(const ComplexMatrix& m) {
    require_square(m, "hermiticity_defect");
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double trace_defect(const ComplexMatrix& rho) {
    require_square(rho, "trace_defect");
    return std::abs(rho.trace() - Complex(1.0, 0.0));
}

ComplexMatrix hermitize(const ComplexMatrix& m) {
    require_square(m, "hermitize");
    return 0.5 * (m + m.adjoint());
}

double min_eigenvalue(const ComplexMatrix& m) {
    require_square(m, "min_eigenvalue");
    if (hermiticity_defect(m) > tol::min_eig_input) {
        throw std::invalid_argument("min_eigenvalue: input is not Hermitian");
    }
    const ComplexMatrix h = hermitize(m);
    const auto n = h.rows();
    if (n == 1) return h(0, 0).real();
    if (n == 2) {
        // Closed form; this runs once per propagation step.
        const double a = h(0, 0).real();
        const double d = h(1, 1).real();
        const double off = std::abs(h(0, 1));
        const double mid = 0.5 * (a + d);
        const double rad = std::sqrt(0.25 * (a - d) * (a - d) + off * off);
        return mid - rad;
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
    require_square(m_, "DensityMatrix");
    if (!m_.allFinite()) {
        throw std::invalid_argument("DensityMatrix: entries must be finite");
    }
    if (hermiticity_defect(m_) > tol::hermiticity) {
        throw std::invalid_argument("DensityMatrix: not Hermitian");
    }
    if (trace_defect(m_) > tol::unit_trace) {
        throw std::invalid_argument("DensityMatrix: trace differs from one");
    }
    if (min_eigenvalue(m_) < -tol::positivity) {
        throw std::invalid_argument("DensityMatrix: not positive semidefinite");
    }
}

DensityMatrix DensityMatrix::from_ket(const ComplexVector& psi) {
    const double norm = psi.norm();
    if (!(norm > 0.0) || !psi.allFinite()) {
        throw std::invalid_argument("DensityMatrix::from_ket: state must be nonzero and finite");
    }
    const ComplexVector unit = psi / norm;
    return DensityMatrix(unit * unit.adjoint());
}

} // namespace tcg
