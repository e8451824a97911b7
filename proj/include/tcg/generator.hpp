// generator.hpp — exact Lindblad and time-coarse-grained generators as
// structured term lists with scalar prefactors c * e^{i nu t}.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "tcg/model.hpp"
#include "tcg/ops.hpp"

namespace tcg {

enum class TermKind { Commutator, Dissipator, JumpBracket };

// Origin of a term inside the assembled equation; fixes describe ordering and
// controls which terms a frame change may merge.
enum class TermRole {
    StaticHamiltonian,  // -i[H0, .]
    DriveField,         // -i[h_m e^{i nu t}, .] (exact generator only)
    EffectivePair,      // -i[pair term of H_eff, .]
    Dissipation,        // D_{L, L^+}
    Dephasing,          // coarse-graining-induced dissipators
    Jump,               // [L rho [h, L^+], h^+] brackets
};

// One term. The scalar prefactor is coefficient * e^{i frequency t}; the
// operator slots depend on kind:
//   Commutator   a            : rho -> a rho - rho a
//   Dissipator   a, b         : rho -> a rho b - (b a rho + rho b a)/2
//   JumpBracket  a, b, c      : rho -> [a rho b, c]
struct GeneratorTerm {
    TermKind kind = TermKind::Commutator;
    TermRole role = TermRole::StaticHamiltonian;
    ComplexMatrix a, b, c;
    Complex coefficient{};
    double frequency = 0.0;
    std::array<int, 4> index{-1, -1, -1, -1};

    ComplexMatrix apply(const ComplexMatrix& rho) const;  // without the prefactor
};

enum class GeneratorVariant { Exact, TcgFull, TcgSimple, TcgClosed };

std::string variant_name(GeneratorVariant v);

// Immutable linear map rho -> drho/dt. Terms are compiled once into one
// superoperator per distinct frequency, so evaluation is a handful of
// dim^2-sized mat-vec products.
class Generator {
  public:
    Generator(int dim, std::vector<GeneratorTerm> terms, GeneratorVariant variant,
              std::string model_hash);

    ComplexMatrix apply(const ComplexMatrix& rho, double t) const;
    void apply_vec(const ComplexVector& rho_vec, double t, ComplexVector& out) const;

    // Reference path, term by term; tests hold it against the compiled path.
    ComplexMatrix apply_terms(const ComplexMatrix& rho, double t) const;

    int dim() const { return dim_; }
    const std::vector<GeneratorTerm>& terms() const { return terms_; }
    GeneratorVariant variant() const { return variant_; }
    const std::string& model_hash() const { return model_hash_; }

    // Largest |frequency| among compiled components (0 for a static map).
    double max_frequency() const;
    bool is_static() const { return max_frequency() == 0.0; }

    // The dim^2 x dim^2 matrix of a static generator acting on column-stacked
    // rho. Throws when the generator is time dependent.
    Eigen::MatrixXcd static_superoperator() const;

  private:
    struct FreqComponent {
        double frequency;
        Eigen::MatrixXcd superop;
    };

    void compile();

    int dim_;
    std::vector<GeneratorTerm> terms_;
    GeneratorVariant variant_;
    std::string model_hash_;
    std::vector<FreqComponent> compiled_;
};

// Exact open master equation: -i[h0 + sum_m (h_m e^{i Delta_m t} + h.c.), .]
// plus sum_n D_{L_n, L_n^+}. Drives with zero detuning join the static part.
Generator assemble_exact(const DrivenLevelSystem& sys);

// h0 plus one pair term per ordered (m, n) at frequency Delta_m - Delta_n,
// carrying (1/2)(1/wt_n + 1/wt_m*) h_m h_n^+ - (1/2)(1/wt_m + 1/wt_n*) h_n^+ h_m.
// Pairs whose operator vanishes identically are dropped.
std::vector<GeneratorTerm> assemble_h_eff(const std::vector<HarmonicTerm>& terms,
                                          const ComplexMatrix& h0);

// Coarse-graining-induced dissipators: per ordered (m, n) at frequency
// Delta_m - Delta_n, -i(1/wt_m - 1/wt_n*) D_{h_m, h_n^+} and
// +i(1/wt_n - 1/wt_m*) D_{h_n^+, h_m}. Zero-coefficient terms are dropped.
std::vector<GeneratorTerm> assemble_dephasing(const std::vector<HarmonicTerm>& terms);

struct LindbladWithRate {
    ComplexMatrix op;
    double gamma_k = 0.0;  // [K, L] = -gamma_k L / 2
};

// Second-order mixed terms: per (n, m, l) the bracket
// [L_n rho [h_m, L_n^+], h_l^+] with coefficient 1/(wt_m* (wt_m* + i gamma_k))
// at frequency Delta_m - Delta_l, plus its Hermitian-conjugate partner.
std::vector<GeneratorTerm> assemble_jump(const std::vector<HarmonicTerm>& terms,
                                         const std::vector<LindbladWithRate>& lindblads);

// Full coarse-grained generator: -i[H_eff(t), .] + dissipation + dephasing
// (+ jump when include_jump). Validates the decaying-frame assumptions for
// h0, every drive and every Lindblad; throws ProportionalityViolation when
// the model breaks them.
Generator assemble_tcg(const DrivenLevelSystem& sys, bool include_jump);

// Moves a generator into the diagonal rotating frame with the given per-level
// phase frequencies: adds -i[diag(phases), .], shifts every term frequency by
// the net frame phase of its operators, and merges static Hamiltonian pieces.
Generator apply_frame(const Generator& gen, const std::vector<double>& phases);

// Stable line-oriented dump: one line per term with kind, dyad expansion,
// folded complex coefficient and frequency, deterministically ordered.
std::string describe(const Generator& gen);

} // namespace tcg
