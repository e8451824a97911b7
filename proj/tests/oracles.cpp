// oracles.cpp — hand-coded references, written directly from the displayed
// equations rather than from the assembly rules they check.

#include "oracles.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace tcg::oracle {

namespace {

ComplexMatrix comm(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a * b - b * a;
}

ComplexMatrix diss(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& rho) {
    return a * rho * b - 0.5 * (b * a * rho + rho * b * a);
}

} // namespace

ComplexMatrix twolevel_rhs(double omega, double delta, double gamma,
                           const ComplexMatrix& rho, bool include_jump) {
    const ComplexMatrix sm = dyad(2, 0, 1);
    const ComplexMatrix sp = dyad(2, 1, 0);
    const ComplexMatrix p3 = dyad(2, 1, 1);
    const ComplexMatrix x = comm(sm, sp);  // |1><1| - |3><3|
    const Complex i(0.0, 1.0);
    const double dt2 = delta * delta + 0.25 * gamma * gamma;  // |Delta + i gamma/2|^2
    const double shift = delta * omega * omega / (4.0 * dt2);
    const double rate = gamma * omega * omega / (4.0 * dt2);

    ComplexMatrix out = -i * delta * comm(p3, rho);
    out += gamma * diss(sm, sp, rho);
    out += -i * shift * comm(x, rho);
    out += -rate * (diss(sm, sp, rho) - diss(sp, sm, rho));
    if (include_jump) {
        out += -rate * comm(sp, sm * rho * x);
        out += rate * comm(sm, x * rho * sp);
    }
    return out;
}

ComplexMatrix raman_rhs(const RamanParams& p, const ComplexMatrix& rho, double t,
                        bool include_jump) {
    const Complex i(0.0, 1.0);
    const double g = p.gamma1 + p.gamma2;
    const Complex dt1(p.delta1, 0.5 * g);
    const Complex dt2(p.delta2, 0.5 * g);
    const ComplexMatrix s13 = dyad(3, 0, 2), s23 = dyad(3, 1, 2);
    const ComplexMatrix s31 = s13.adjoint(), s32 = s23.adjoint();
    const ComplexMatrix l1 = std::sqrt(p.gamma1) * s13;
    const ComplexMatrix l2 = std::sqrt(p.gamma2) * s23;
    const double d12 = p.delta1 - p.delta2;

    // Effective Hamiltonian: level shifts plus the Raman coupling.
    ComplexMatrix heff =
        (p.omega1 * p.omega1 * p.delta1 / (4.0 * p.delta1 * p.delta1 + g * g)) *
            (dyad(3, 0, 0) - dyad(3, 2, 2)) +
        (p.omega2 * p.omega2 * p.delta2 / (4.0 * p.delta2 * p.delta2 + g * g)) *
            (dyad(3, 1, 1) - dyad(3, 2, 2));
    const Complex cross = (p.delta1 + p.delta2) * p.omega1 * p.omega2 /
                          (8.0 * (Complex(p.delta1, -0.5 * g)) * (Complex(p.delta2, 0.5 * g))) *
                          std::exp(i * d12 * t);
    heff += cross * dyad(3, 0, 1) + std::conj(cross) * dyad(3, 1, 0);
    ComplexMatrix out = -i * comm(heff, rho);

    // Dephasing: two diagonal pieces plus the cross piece with its H.c.
    out += -(p.omega1 * p.omega1 / 4.0) * (g / std::norm(dt1)) *
           (diss(s13, s31, rho) - diss(s31, s13, rho));
    out += -(p.omega2 * p.omega2 / 4.0) * (g / std::norm(dt2)) *
           (diss(s23, s32, rho) - diss(s32, s23, rho));
    const Complex ccr =
        -i * (p.omega1 * p.omega2 / 4.0) * (std::conj(dt2) - dt1) / (dt1 * std::conj(dt2));
    const ComplexMatrix cross_deph =
        ccr * (std::exp(i * d12 * t) * diss(s13, s32, rho) -
               std::exp(-i * d12 * t) * diss(s31, s23, rho));
    out += cross_deph + cross_deph.adjoint();

    out += diss(l1, l1.adjoint(), rho) + diss(l2, l2.adjoint(), rho);

    if (include_jump) {
        const ComplexMatrix h_of_t = 0.5 * p.omega1 * std::exp(i * p.delta1 * t) * s13 +
                                     0.5 * p.omega2 * std::exp(i * p.delta2 * t) * s23;
        const ComplexMatrix h_delta =
            (p.omega1 / (2.0 * std::norm(dt1))) * std::exp(i * p.delta1 * t) * s13 +
            (p.omega2 / (2.0 * std::norm(dt2))) * std::exp(i * p.delta2 * t) * s23;
        for (int n = 0; n < 2; ++n) {
            const double gn = n == 0 ? p.gamma1 : p.gamma2;
            const ComplexMatrix ket_n3 = dyad(3, n, 2);
            const ComplexMatrix jump =
                gn * comm(ket_n3 * rho * comm(h_delta, dyad(3, 2, n)), h_of_t.adjoint());
            out += jump + jump.adjoint();
        }
    }
    return out;
}

ComplexMatrix closed_rhs(int dim, const ComplexMatrix& h0,
                         const std::vector<ClosedDrive>& drives, const ComplexMatrix& rho,
                         double t) {
    const Complex i(0.0, 1.0);
    struct Piece {
        ComplexMatrix h;
        double delta;
    };
    std::vector<Piece> hs;
    for (const auto& d : drives) {
        hs.push_back(Piece{0.5 * d.rabi * dyad(dim, d.lower, d.upper), d.delta});
    }

    ComplexMatrix heff = h0;
    for (const auto& m : hs) {
        for (const auto& n : hs) {
            const double wplus = 0.5 * (1.0 / m.delta + 1.0 / n.delta);
            heff += wplus * std::exp(i * (m.delta - n.delta) * t) *
                    (m.h * n.h.adjoint() - m.h.adjoint() * n.h);
        }
    }
    ComplexMatrix out = -i * comm(heff, rho);
    for (const auto& m : hs) {
        for (const auto& n : hs) {
            const double wminus = 0.5 * (1.0 / m.delta - 1.0 / n.delta);
            out += -i * 2.0 * wminus *
                   (std::exp(i * (m.delta - n.delta) * t) * diss(m.h, n.h.adjoint(), rho) -
                    std::exp(-i * (m.delta - n.delta) * t) * diss(m.h.adjoint(), n.h, rho));
        }
    }
    return out;
}

Eigen::MatrixXcd probe_liouvillian(
    const std::function<ComplexMatrix(const ComplexMatrix&)>& map, int dim) {
    Eigen::MatrixXcd superop(dim * dim, dim * dim);
    for (int b = 0; b < dim; ++b) {
        for (int a = 0; a < dim; ++a) {
            const ComplexMatrix out = map(dyad(dim, a, b));
            superop.col(b * dim + a) = Eigen::Map<const ComplexVector>(out.data(), dim * dim);
        }
    }
    return superop;
}

Eigen::MatrixXcd expm(const Eigen::MatrixXcd& m) { return m.exp(); }

ComplexMatrix random_hermitian(int dim, std::mt19937& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix a(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) a(r, c) = Complex(normal(rng), normal(rng));
    }
    return ComplexMatrix(a + a.adjoint());
}

ComplexMatrix random_density(int dim, std::mt19937& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix a(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) a(r, c) = Complex(normal(rng), normal(rng));
    }
    ComplexMatrix rho = a * a.adjoint();
    return ComplexMatrix(rho / rho.trace());
}

} // namespace tcg::oracle
