// model.cpp — derived operators and transforms of the driven-atom model.

#include "tcg/model.hpp"

#include <cmath>
#include <cstdio>
#include <cstdint>
#include <sstream>

#include "tcg/errors.hpp"
#include "tcg/tolerances.hpp"

namespace tcg {

Drive normalize_drive(const Drive& d) {
    if (d.lower == d.upper) {
        throw ConfigError("drive must connect two distinct levels");
    }
    if (d.lower < d.upper) return d;
    return Drive{d.upper, d.lower, std::conj(d.rabi), -d.detuning};
}

void validate_system(const DrivenLevelSystem& sys) {
    if (sys.dim < 1) throw ConfigError("system dim must be >= 1");
    if (sys.h0.rows() != sys.dim || sys.h0.cols() != sys.dim) {
        throw ConfigError("h0 must be dim x dim");
    }
    if (!sys.h0.allFinite()) throw ConfigError("h0 entries must be finite");
    if (hermiticity_defect(sys.h0) > tol::hermiticity) {
        throw ConfigError("h0 must be Hermitian");
    }
    if (sys.manifold.size() != static_cast<std::size_t>(sys.dim)) {
        throw ConfigError("manifold must carry one tag per level");
    }
    for (const auto& d : sys.drives) {
        if (d.lower < 0 || d.upper < 0 || d.lower >= sys.dim || d.upper >= sys.dim) {
            throw ConfigError("drive level index out of range");
        }
        if (d.lower >= d.upper) {
            throw ConfigError("drive not in canonical order; normalize_drive first");
        }
        if (!std::isfinite(d.detuning) || !std::isfinite(d.rabi.real()) ||
            !std::isfinite(d.rabi.imag())) {
            throw ConfigError("drive parameters must be finite");
        }
    }
    for (const auto& c : sys.decays) {
        if (c.target < 0 || c.source < 0 || c.target >= sys.dim || c.source >= sys.dim) {
            throw ConfigError("decay level index out of range");
        }
        if (c.target == c.source) throw ConfigError("decay must connect two distinct levels");
        if (!(c.rate >= 0.0) || !std::isfinite(c.rate)) {
            throw ConfigError("decay rate must be finite and >= 0");
        }
    }
}

std::vector<ComplexMatrix> build_lindblads(const DrivenLevelSystem& sys) {
    std::vector<ComplexMatrix> out;
    out.reserve(sys.decays.size());
    for (const auto& c : sys.decays) {
        if (c.rate > 0.0) {
            out.push_back(std::sqrt(c.rate) * dyad(sys.dim, c.target, c.source));
        }
    }
    return out;
}

ComplexMatrix build_K(const std::vector<ComplexMatrix>& lindblads, int dim) {
    ComplexMatrix k = ComplexMatrix::Zero(dim, dim);
    for (const auto& l : lindblads) {
        if (l.rows() != dim || l.cols() != dim) {
            throw ConfigError("build_K: Lindblad dimension mismatch");
        }
        k += 0.5 * (l.adjoint() * l);
    }
    return k;
}

double extract_eigenrate(const ComplexMatrix& K, const ComplexMatrix& X, double factor) {
    if (K.rows() != X.rows() || K.cols() != X.cols()) {
        throw ConfigError("extract_eigenrate: dimension mismatch");
    }
    const double xmax = X.cwiseAbs().maxCoeff();
    if (!(xmax > 0.0)) throw ConfigError("extract_eigenrate: X must be nonzero");

    // Least-squares fit of [K, X] = -c * factor * X in the Frobenius sense,
    // then an entrywise residual check.
    const ComplexMatrix c_mat = K * X - X * K;
    const Complex overlap = (X.conjugate().cwiseProduct(c_mat)).sum();
    const Complex c = -overlap / (factor * X.squaredNorm());

    const double residual = (c_mat + c * factor * X).cwiseAbs().maxCoeff();
    if (residual > tol::proportionality * xmax) {
        throw ProportionalityViolation(
            "[K, X] is not proportional to X (residual " + std::to_string(residual) + ")");
    }
    if (std::abs(c.imag()) > tol::proportionality) {
        throw ProportionalityViolation("fitted rate has imaginary part " +
                                       std::to_string(c.imag()));
    }
    return c.real();
}

std::vector<HarmonicTerm> build_harmonic_terms(const DrivenLevelSystem& sys) {
    validate_system(sys);
    const auto lindblads = build_lindblads(sys);
    const ComplexMatrix K = build_K(lindblads, sys.dim);
    const bool open = !lindblads.empty();

    std::vector<HarmonicTerm> out;
    out.reserve(sys.drives.size());
    for (const auto& d : sys.drives) {
        if (d.detuning == 0.0) {
            throw ConfigError("resonant drive present; fold_resonant_drives first");
        }
        HarmonicTerm term;
        term.h = 0.5 * d.rabi * dyad(sys.dim, d.lower, d.upper);
        term.delta = d.detuning;
        term.kappa = open ? extract_eigenrate(K, term.h, 1.0) : 0.0;
        if (term.kappa < -tol::frequency_snap) {
            throw ProportionalityViolation(
                "drive gains amplitude in the decaying frame (kappa = " +
                std::to_string(term.kappa) + ")");
        }
        if (term.kappa < 0.0) term.kappa = 0.0;
        term.omega_tilde = Complex(term.delta, term.kappa);
        out.push_back(std::move(term));
    }
    return out;
}

DrivenLevelSystem fold_resonant_drives(const DrivenLevelSystem& sys) {
    DrivenLevelSystem out = sys;
    out.drives.clear();
    for (const auto& d : sys.drives) {
        if (d.detuning == 0.0) {
            const ComplexMatrix h = 0.5 * d.rabi * dyad(sys.dim, d.lower, d.upper);
            out.h0 += h + h.adjoint();
        } else {
            out.drives.push_back(d);
        }
    }
    return out;
}

DrivenLevelSystem rotating_frame(const DrivenLevelSystem& sys,
                                 const std::vector<double>& phases) {
    if (phases.size() != static_cast<std::size_t>(sys.dim)) {
        throw ConfigError("rotating_frame: need one phase per level");
    }
    DrivenLevelSystem out = sys;
    for (int i = 0; i < sys.dim; ++i) {
        out.h0(i, i) += phases[static_cast<std::size_t>(i)];
    }
    for (auto& d : out.drives) {
        d.detuning -= phases[static_cast<std::size_t>(d.upper)] -
                      phases[static_cast<std::size_t>(d.lower)];
        if (std::abs(d.detuning) <= tol::frequency_snap) d.detuning = 0.0;
    }
    return out;
}

double characteristic_tau(const DrivenLevelSystem& sys) {
    if (sys.drives.empty()) return 1.0;
    const Drive& ref = sys.drives.front();
    const double omega2 = std::norm(ref.rabi);
    if (ref.detuning == 0.0 || omega2 == 0.0) return 1.0;
    const auto terms = build_harmonic_terms(sys);
    const double dt2 = std::norm(terms.front().omega_tilde);
    return 4.0 * dt2 / (ref.detuning * omega2);
}

std::string model_hash(const DrivenLevelSystem& sys) {
    std::ostringstream text;
    char buf[64];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g,", v);
        text << buf;
    };
    text << "dim=" << sys.dim << ";h0=";
    for (int r = 0; r < sys.dim; ++r) {
        for (int c = 0; c < sys.dim; ++c) {
            put(sys.h0(r, c).real());
            put(sys.h0(r, c).imag());
        }
    }
    text << ";drives=";
    for (const auto& d : sys.drives) {
        text << d.lower << ">" << d.upper << ":";
        put(d.rabi.real());
        put(d.rabi.imag());
        put(d.detuning);
    }
    text << ";decays=";
    for (const auto& c : sys.decays) {
        text << c.target << "<" << c.source << ":";
        put(c.rate);
    }
    text << ";manifold=";
    for (const auto m : sys.manifold) text << (m == Manifold::Lower ? 'l' : 'u');

    // FNV-1a 64.
    std::uint64_t h = 1469598103934665603ull;
    for (const char ch : text.str()) {
        h ^= static_cast<unsigned char>(ch);
        h *= 1099511628211ull;
    }
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

} // namespace tcg
