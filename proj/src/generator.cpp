// generator.cpp — assembly and evaluation of exact and coarse-grained
// master-equation generators.

#include "tcg/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include "tcg/errors.hpp"
#include "tcg/tolerances.hpp"

namespace tcg {

namespace {

const Complex kMinusI(0.0, -1.0);

double snap_frequency(double nu) {
    return std::abs(nu) <= tol::frequency_snap ? 0.0 : nu;
}

bool is_zero(const ComplexMatrix& m) {
    return m.size() == 0 || m.cwiseAbs().maxCoeff() == 0.0;
}

Eigen::MatrixXcd kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

} // namespace

ComplexMatrix GeneratorTerm::apply(const ComplexMatrix& rho) const {
    switch (kind) {
        case TermKind::Commutator:
            return a * rho - rho * a;
        case TermKind::Dissipator:
            return dissipator_apply(a, b, rho);
        case TermKind::JumpBracket: {
            const ComplexMatrix inner = a * rho * b;
            return inner * c - c * inner;
        }
    }
    throw std::logic_error("unreachable term kind");
}

std::string variant_name(GeneratorVariant v) {
    switch (v) {
        case GeneratorVariant::Exact: return "exact";
        case GeneratorVariant::TcgFull: return "tcg_full";
        case GeneratorVariant::TcgSimple: return "tcg_simple";
        case GeneratorVariant::TcgClosed: return "tcg_closed";
    }
    return "unknown";
}

Generator::Generator(int dim, std::vector<GeneratorTerm> terms, GeneratorVariant variant,
                     std::string model_hash)
    : dim_(dim), terms_(std::move(terms)), variant_(variant),
      model_hash_(std::move(model_hash)) {
    if (dim_ < 1) throw std::invalid_argument("Generator: dim must be >= 1");
    for (const auto& t : terms_) {
        if (t.a.rows() != dim_ || t.a.cols() != dim_) {
            throw std::invalid_argument("Generator: term operator dimension mismatch");
        }
    }
    compile();
}

void Generator::compile() {
    const Eigen::Index n = dim_;
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    std::map<double, Eigen::MatrixXcd> by_freq;

    auto add = [&](double freq, Complex coeff, const ComplexMatrix& left,
                   const ComplexMatrix& right) {
        if (coeff == Complex(0.0, 0.0) || is_zero(left) || is_zero(right)) return;
        auto it = by_freq.find(freq);
        if (it == by_freq.end()) {
            it = by_freq.emplace(freq, Eigen::MatrixXcd::Zero(n * n, n * n)).first;
        }
        // Column-stacked convention: vec(L rho R) = (R^T kron L) vec(rho).
        it->second.noalias() += coeff * kron(right.transpose(), left);
    };

    for (const auto& t : terms_) {
        switch (t.kind) {
            case TermKind::Commutator:
                add(t.frequency, t.coefficient, t.a, id);
                add(t.frequency, -t.coefficient, id, t.a);
                break;
            case TermKind::Dissipator: {
                const ComplexMatrix ba = t.b * t.a;
                add(t.frequency, t.coefficient, t.a, t.b);
                add(t.frequency, -0.5 * t.coefficient, ba, id);
                add(t.frequency, -0.5 * t.coefficient, id, ba);
                break;
            }
            case TermKind::JumpBracket: {
                add(t.frequency, t.coefficient, t.a, t.b * t.c);
                add(t.frequency, -t.coefficient, t.c * t.a, t.b);
                break;
            }
        }
    }

    compiled_.clear();
    compiled_.reserve(by_freq.size());
    for (auto& [freq, superop] : by_freq) {
        compiled_.push_back(FreqComponent{freq, std::move(superop)});
    }
}

void Generator::apply_vec(const ComplexVector& rho_vec, double t, ComplexVector& out) const {
    out.setZero(rho_vec.size());
    for (const auto& comp : compiled_) {
        if (comp.frequency == 0.0) {
            out.noalias() += comp.superop * rho_vec;
        } else {
            out.noalias() += std::exp(Complex(0.0, comp.frequency * t)) *
                             (comp.superop * rho_vec);
        }
    }
}

ComplexMatrix Generator::apply(const ComplexMatrix& rho, double t) const {
    if (rho.rows() != dim_ || rho.cols() != dim_) {
        throw std::invalid_argument("Generator::apply: state dimension mismatch");
    }
    const Eigen::Map<const ComplexVector> v(rho.data(), dim_ * dim_);
    ComplexVector out;
    apply_vec(v, t, out);
    return Eigen::Map<const ComplexMatrix>(out.data(), dim_, dim_);
}

ComplexMatrix Generator::apply_terms(const ComplexMatrix& rho, double t) const {
    ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
    for (const auto& term : terms_) {
        const Complex prefactor =
            term.coefficient * std::exp(Complex(0.0, term.frequency * t));
        out += prefactor * term.apply(rho);
    }
    return out;
}

double Generator::max_frequency() const {
    double out = 0.0;
    for (const auto& comp : compiled_) out = std::max(out, std::abs(comp.frequency));
    return out;
}

Eigen::MatrixXcd Generator::static_superoperator() const {
    if (!is_static()) {
        throw std::logic_error("static_superoperator: generator is time dependent");
    }
    if (compiled_.empty()) {
        return Eigen::MatrixXcd::Zero(dim_ * dim_, dim_ * dim_);
    }
    return compiled_.front().superop;
}

// ---------------------------------------------------------------------------
// Assembly
// ---------------------------------------------------------------------------

Generator assemble_exact(const DrivenLevelSystem& sys) {
    validate_system(sys);
    std::vector<GeneratorTerm> terms;

    ComplexMatrix h_static = sys.h0;
    for (const auto& d : sys.drives) {
        if (d.detuning == 0.0) {
            const ComplexMatrix h = 0.5 * d.rabi * dyad(sys.dim, d.lower, d.upper);
            h_static += h + h.adjoint();
        }
    }
    if (!is_zero(h_static)) {
        GeneratorTerm t;
        t.kind = TermKind::Commutator;
        t.role = TermRole::StaticHamiltonian;
        t.a = h_static;
        t.coefficient = kMinusI;
        terms.push_back(std::move(t));
    }

    for (std::size_t m = 0; m < sys.drives.size(); ++m) {
        const auto& d = sys.drives[m];
        if (d.detuning == 0.0) continue;
        const ComplexMatrix h = 0.5 * d.rabi * dyad(sys.dim, d.lower, d.upper);
        GeneratorTerm fwd;
        fwd.kind = TermKind::Commutator;
        fwd.role = TermRole::DriveField;
        fwd.a = h;
        fwd.coefficient = kMinusI;
        fwd.frequency = d.detuning;
        fwd.index = {static_cast<int>(m), 0, -1, -1};
        terms.push_back(std::move(fwd));
        GeneratorTerm bwd;
        bwd.kind = TermKind::Commutator;
        bwd.role = TermRole::DriveField;
        bwd.a = h.adjoint();
        bwd.coefficient = kMinusI;
        bwd.frequency = -d.detuning;
        bwd.index = {static_cast<int>(m), 1, -1, -1};
        terms.push_back(std::move(bwd));
    }

    const auto lindblads = build_lindblads(sys);
    for (std::size_t n = 0; n < lindblads.size(); ++n) {
        GeneratorTerm t;
        t.kind = TermKind::Dissipator;
        t.role = TermRole::Dissipation;
        t.a = lindblads[n];
        t.b = lindblads[n].adjoint();
        t.coefficient = 1.0;
        t.index = {static_cast<int>(n), -1, -1, -1};
        terms.push_back(std::move(t));
    }

    return Generator(sys.dim, std::move(terms), GeneratorVariant::Exact, model_hash(sys));
}

std::vector<GeneratorTerm> assemble_h_eff(const std::vector<HarmonicTerm>& hterms,
                                          const ComplexMatrix& h0) {
    std::vector<GeneratorTerm> out;
    if (!is_zero(h0)) {
        GeneratorTerm t;
        t.kind = TermKind::Commutator;
        t.role = TermRole::StaticHamiltonian;
        t.a = h0;
        t.coefficient = kMinusI;
        out.push_back(std::move(t));
    }
    const int count = static_cast<int>(hterms.size());
    for (int m = 0; m < count; ++m) {
        for (int n = 0; n < count; ++n) {
            const auto& tm = hterms[static_cast<std::size_t>(m)];
            const auto& tn = hterms[static_cast<std::size_t>(n)];
            const Complex c_fwd = 0.5 * (1.0 / tn.omega_tilde + 1.0 / std::conj(tm.omega_tilde));
            const Complex c_bwd = 0.5 * (1.0 / tm.omega_tilde + 1.0 / std::conj(tn.omega_tilde));
            const ComplexMatrix pair =
                c_fwd * (tm.h * tn.h.adjoint()) - c_bwd * (tn.h.adjoint() * tm.h);
            if (is_zero(pair)) continue;
            GeneratorTerm t;
            t.kind = TermKind::Commutator;
            t.role = TermRole::EffectivePair;
            t.a = pair;
            t.coefficient = kMinusI;
            t.frequency = snap_frequency(tm.delta - tn.delta);
            t.index = {m, n, -1, -1};
            out.push_back(std::move(t));
        }
    }
    return out;
}

std::vector<GeneratorTerm> assemble_dephasing(const std::vector<HarmonicTerm>& hterms) {
    std::vector<GeneratorTerm> out;
    const int count = static_cast<int>(hterms.size());
    for (int m = 0; m < count; ++m) {
        for (int n = 0; n < count; ++n) {
            const auto& tm = hterms[static_cast<std::size_t>(m)];
            const auto& tn = hterms[static_cast<std::size_t>(n)];
            const double freq = snap_frequency(tm.delta - tn.delta);
            const Complex c_fwd =
                kMinusI * (1.0 / tm.omega_tilde - 1.0 / std::conj(tn.omega_tilde));
            const Complex c_bwd =
                -kMinusI * (1.0 / tn.omega_tilde - 1.0 / std::conj(tm.omega_tilde));
            if (c_fwd != Complex(0.0, 0.0)) {
                GeneratorTerm t;
                t.kind = TermKind::Dissipator;
                t.role = TermRole::Dephasing;
                t.a = tm.h;
                t.b = tn.h.adjoint();
                t.coefficient = c_fwd;
                t.frequency = freq;
                t.index = {m, n, 0, -1};
                out.push_back(std::move(t));
            }
            if (c_bwd != Complex(0.0, 0.0)) {
                GeneratorTerm t;
                t.kind = TermKind::Dissipator;
                t.role = TermRole::Dephasing;
                t.a = tn.h.adjoint();
                t.b = tm.h;
                t.coefficient = c_bwd;
                t.frequency = freq;
                t.index = {m, n, 1, -1};
                out.push_back(std::move(t));
            }
        }
    }
    return out;
}

std::vector<GeneratorTerm> assemble_jump(const std::vector<HarmonicTerm>& hterms,
                                         const std::vector<LindbladWithRate>& lindblads) {
    std::vector<GeneratorTerm> out;
    const int drive_count = static_cast<int>(hterms.size());
    for (int n = 0; n < static_cast<int>(lindblads.size()); ++n) {
        const auto& lw = lindblads[static_cast<std::size_t>(n)];
        const ComplexMatrix l_dag = lw.op.adjoint();
        for (int m = 0; m < drive_count; ++m) {
            const auto& tm = hterms[static_cast<std::size_t>(m)];
            const ComplexMatrix bracket = commutator(tm.h, l_dag);
            if (is_zero(bracket)) continue;
            const Complex wt_conj = std::conj(tm.omega_tilde);
            const Complex coeff = 1.0 / (wt_conj * (wt_conj + Complex(0.0, lw.gamma_k)));
            for (int l = 0; l < drive_count; ++l) {
                const auto& tl = hterms[static_cast<std::size_t>(l)];
                GeneratorTerm fwd;
                fwd.kind = TermKind::JumpBracket;
                fwd.role = TermRole::Jump;
                fwd.a = lw.op;
                fwd.b = bracket;
                fwd.c = tl.h.adjoint();
                fwd.coefficient = coeff;
                fwd.frequency = snap_frequency(tm.delta - tl.delta);
                fwd.index = {n, m, l, 0};
                out.push_back(std::move(fwd));
                // Hermitian-conjugate partner: ([X rho Y, Z])^+ = -[Y^+ rho X^+, Z^+].
                GeneratorTerm bwd;
                bwd.kind = TermKind::JumpBracket;
                bwd.role = TermRole::Jump;
                bwd.a = bracket.adjoint();
                bwd.b = l_dag;
                bwd.c = tl.h;
                bwd.coefficient = -std::conj(coeff);
                bwd.frequency = snap_frequency(tl.delta - tm.delta);
                bwd.index = {n, m, l, 1};
                out.push_back(std::move(bwd));
            }
        }
    }
    return out;
}

Generator assemble_tcg(const DrivenLevelSystem& sys, bool include_jump) {
    validate_system(sys);
    const auto lindblad_ops = build_lindblads(sys);
    const ComplexMatrix K = build_K(lindblad_ops, sys.dim);

    // Decaying-frame admission: h0 must be invariant under e^{Kt} (a Hermitian
    // h0 can only satisfy the eigenrate relation with rate zero).
    if (!is_zero(K) && !is_zero(sys.h0)) {
        extract_eigenrate(K, sys.h0, 1.0);
    }

    const auto hterms = build_harmonic_terms(sys);

    std::vector<LindbladWithRate> lindblads;
    lindblads.reserve(lindblad_ops.size());
    for (const auto& op : lindblad_ops) {
        lindblads.push_back(LindbladWithRate{op, extract_eigenrate(K, op, 0.5)});
    }

    std::vector<GeneratorTerm> terms = assemble_h_eff(hterms, sys.h0);
    for (std::size_t n = 0; n < lindblads.size(); ++n) {
        GeneratorTerm t;
        t.kind = TermKind::Dissipator;
        t.role = TermRole::Dissipation;
        t.a = lindblads[n].op;
        t.b = lindblads[n].op.adjoint();
        t.coefficient = 1.0;
        t.index = {static_cast<int>(n), -1, -1, -1};
        terms.push_back(std::move(t));
    }
    for (auto& t : assemble_dephasing(hterms)) terms.push_back(std::move(t));
    if (include_jump) {
        for (auto& t : assemble_jump(hterms, lindblads)) terms.push_back(std::move(t));
    }

    const GeneratorVariant variant =
        lindblads.empty() ? GeneratorVariant::TcgClosed
                          : (include_jump ? GeneratorVariant::TcgFull
                                          : GeneratorVariant::TcgSimple);
    return Generator(sys.dim, std::move(terms), variant, model_hash(sys));
}

// ---------------------------------------------------------------------------
// Frame transform
// ---------------------------------------------------------------------------

namespace {

// Net frame phase of an operator: all nonzero entries (a, b) must share the
// same phases[a] - phases[b].
double operator_phase(const ComplexMatrix& op, const std::vector<double>& phases) {
    bool found = false;
    double phase = 0.0;
    for (Eigen::Index r = 0; r < op.rows(); ++r) {
        for (Eigen::Index c = 0; c < op.cols(); ++c) {
            if (op(r, c) == Complex(0.0, 0.0)) continue;
            const double p = phases[static_cast<std::size_t>(r)] -
                             phases[static_cast<std::size_t>(c)];
            if (!found) {
                phase = p;
                found = true;
            } else if (std::abs(p - phase) > tol::frequency_snap) {
                throw ConfigError(
                    "operator is not phase-homogeneous under the requested frame");
            }
        }
    }
    return phase;
}

} // namespace

Generator apply_frame(const Generator& gen, const std::vector<double>& phases) {
    if (phases.size() != static_cast<std::size_t>(gen.dim())) {
        throw ConfigError("apply_frame: need one phase per level");
    }

    std::vector<GeneratorTerm> shifted;
    shifted.reserve(gen.terms().size() + 1);
    for (const auto& term : gen.terms()) {
        GeneratorTerm t = term;
        double p = operator_phase(t.a, phases);
        if (t.kind != TermKind::Commutator) p += operator_phase(t.b, phases);
        if (t.kind == TermKind::JumpBracket) p += operator_phase(t.c, phases);
        t.frequency = snap_frequency(t.frequency + p);
        shifted.push_back(std::move(t));
    }

    bool any_phase = false;
    for (const double p : phases) any_phase = any_phase || p != 0.0;
    if (any_phase) {
        GeneratorTerm t;
        t.kind = TermKind::Commutator;
        t.role = TermRole::StaticHamiltonian;
        t.a = ComplexMatrix::Zero(gen.dim(), gen.dim());
        for (int i = 0; i < gen.dim(); ++i) t.a(i, i) = phases[static_cast<std::size_t>(i)];
        t.coefficient = kMinusI;
        shifted.push_back(std::move(t));
    }

    // Coalesce static Hamiltonian pieces (for the exact generator also the
    // drive fields that the frame rendered static) into a single -i[H0, .].
    const bool merge_drives = gen.variant() == GeneratorVariant::Exact;
    ComplexMatrix h_static = ComplexMatrix::Zero(gen.dim(), gen.dim());
    std::vector<GeneratorTerm> merged;
    merged.reserve(shifted.size());
    bool have_static = false;
    for (auto& t : shifted) {
        const bool mergeable =
            t.kind == TermKind::Commutator && t.frequency == 0.0 &&
            t.coefficient == kMinusI &&
            (t.role == TermRole::StaticHamiltonian ||
             (merge_drives && t.role == TermRole::DriveField));
        if (mergeable) {
            h_static += t.a;
            have_static = true;
        } else {
            merged.push_back(std::move(t));
        }
    }
    if (have_static && h_static.cwiseAbs().maxCoeff() != 0.0) {
        GeneratorTerm t;
        t.kind = TermKind::Commutator;
        t.role = TermRole::StaticHamiltonian;
        t.a = std::move(h_static);
        t.coefficient = kMinusI;
        merged.insert(merged.begin(), std::move(t));
    }

    return Generator(gen.dim(), std::move(merged), gen.variant(), gen.model_hash());
}

// ---------------------------------------------------------------------------
// Describe
// ---------------------------------------------------------------------------

namespace {

int kind_rank(TermKind k) {
    switch (k) {
        case TermKind::Commutator: return 0;
        case TermKind::Dissipator: return 1;
        case TermKind::JumpBracket: return 2;
    }
    return 3;
}

int role_rank(TermRole r) {
    switch (r) {
        case TermRole::StaticHamiltonian: return 0;
        case TermRole::DriveField: return 1;
        case TermRole::EffectivePair: return 2;
        case TermRole::Dissipation: return 3;
        case TermRole::Dephasing: return 4;
        case TermRole::Jump: return 5;
    }
    return 6;
}

const char* kind_name(TermKind k) {
    switch (k) {
        case TermKind::Commutator: return "commutator";
        case TermKind::Dissipator: return "dissipator";
        case TermKind::JumpBracket: return "jump";
    }
    return "?";
}

const char* role_name(TermRole r) {
    switch (r) {
        case TermRole::StaticHamiltonian: return "static";
        case TermRole::DriveField: return "drive";
        case TermRole::EffectivePair: return "heff_pair";
        case TermRole::Dissipation: return "dissipation";
        case TermRole::Dephasing: return "dephasing";
        case TermRole::Jump: return "jump";
    }
    return "?";
}

std::string format_complex(Complex v) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "%+.9e%+.9ei", v.real(), v.imag());
    return buf;
}

std::string format_amplitude(Complex v) {
    if (v == Complex(1.0, 0.0)) return "+";
    if (v == Complex(-1.0, 0.0)) return "-";
    char buf[96];
    std::snprintf(buf, sizeof buf, "+(%.6g%+.6gi)", v.real(), v.imag());
    return buf;
}

// Prints op / scale as a dyad sum with 1-based indices; returns the scale.
double dyad_expansion(const ComplexMatrix& op, std::string& out) {
    const double scale = op.size() == 0 ? 0.0 : op.cwiseAbs().maxCoeff();
    if (scale == 0.0) {
        out += "0";
        return 0.0;
    }
    bool first = true;
    for (Eigen::Index r = 0; r < op.rows(); ++r) {
        for (Eigen::Index c = 0; c < op.cols(); ++c) {
            const Complex v = op(r, c) / scale;
            if (v == Complex(0.0, 0.0)) continue;
            if (!first) out += " ";
            out += format_amplitude(v);
            out += "|" + std::to_string(r + 1) + "><" + std::to_string(c + 1) + "|";
            first = false;
        }
    }
    return scale;
}

} // namespace

std::string describe(const Generator& gen) {
    std::vector<const GeneratorTerm*> order;
    order.reserve(gen.terms().size());
    for (const auto& t : gen.terms()) order.push_back(&t);
    std::stable_sort(order.begin(), order.end(),
                     [](const GeneratorTerm* x, const GeneratorTerm* y) {
                         const auto key = [](const GeneratorTerm* t) {
                             return std::make_tuple(kind_rank(t->kind), role_rank(t->role),
                                                    t->index, t->frequency);
                         };
                         return key(x) < key(y);
                     });

    std::ostringstream out;
    out << "# generator variant=" << variant_name(gen.variant()) << " dim=" << gen.dim()
        << " model=" << gen.model_hash() << " terms=" << gen.terms().size() << "\n";
    char buf[64];
    for (const GeneratorTerm* t : order) {
        std::string ops;
        double scale = dyad_expansion(t->a, ops);
        if (t->kind != TermKind::Commutator) {
            ops += " | ";
            scale *= dyad_expansion(t->b, ops);
        }
        if (t->kind == TermKind::JumpBracket) {
            ops += " | ";
            scale *= dyad_expansion(t->c, ops);
        }
        out << kind_name(t->kind) << " " << role_name(t->role) << " idx=(";
        for (int k = 0; k < 4; ++k) {
            if (k) out << ",";
            if (t->index[static_cast<std::size_t>(k)] < 0) {
                out << "-";
            } else {
                out << t->index[static_cast<std::size_t>(k)];
            }
        }
        std::snprintf(buf, sizeof buf, "%+.9e", t->frequency);
        out << ") freq=" << buf;
        out << " coeff=" << format_complex(t->coefficient * scale);
        out << " ops= " << ops << "\n";
    }
    return out.str();
}

} // namespace tcg
