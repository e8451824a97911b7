// ops.hpp — dense complex operator algebra and superoperator primitives.

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace tcg {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// |i><j| on a dim-dimensional space.
ComplexMatrix dyad(int dim, int i, int j);

// AB - BA.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

// Generalized dissipator D_{A,B} rho = A rho B - (B A rho + rho B A)/2.
// Traceless for any inputs.
ComplexMatrix dissipator_apply(const ComplexMatrix& a, const ComplexMatrix& b,
                               const ComplexMatrix& rho);

// Tr(O rho).
Complex expectation(const ComplexMatrix& op, const ComplexMatrix& rho);

// max_ij |M_ij - conj(M_ji)|.
double hermiticity_defect(const ComplexMatrix& m);

// |Tr(rho) - 1|.
double trace_defect(const ComplexMatrix& rho);

// Smallest eigenvalue of (M + M^+)/2. Throws std::invalid_argument when the
// input is non-Hermitian beyond tol::min_eig_input.
double min_eigenvalue(const ComplexMatrix& m);

// (M + M^+)/2.
ComplexMatrix hermitize(const ComplexMatrix& m);

// Validated state: Hermitian, unit trace, positive semidefinite at
// construction (see tol::). Immutable after construction.
class DensityMatrix {
  public:
    explicit DensityMatrix(ComplexMatrix m);

    // Normalized projector |psi><psi| / <psi|psi>.
    static DensityMatrix from_ket(const ComplexVector& psi);

    const ComplexMatrix& matrix() const { return m_; }
    int dim() const { return static_cast<int>(m_.rows()); }

  private:
    ComplexMatrix m_;
};

Complex expectation(const ComplexMatrix& op, const DensityMatrix& rho);

} // namespace tcg
