// test_generator.cpp — generator assembly against hand-coded displays,
// structural invariants and the frame transform.

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "tcg/errors.hpp"
#include "tcg/generator.hpp"
#include "tcg/presets.hpp"

using namespace tcg;

namespace {

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// Reconstructs H(t) from the commutator terms of a generator.
ComplexMatrix hamiltonian_at(const Generator& gen, double t) {
    ComplexMatrix h = ComplexMatrix::Zero(gen.dim(), gen.dim());
    const Complex i(0.0, 1.0);
    for (const auto& term : gen.terms()) {
        if (term.kind != TermKind::Commutator) continue;
        h += i * term.coefficient * std::exp(Complex(0.0, term.frequency * t)) * term.a;
    }
    return h;
}

int count_terms(const Generator& gen, TermKind kind) {
    int n = 0;
    for (const auto& t : gen.terms()) n += t.kind == kind ? 1 : 0;
    return n;
}

int count_terms(const Generator& gen, TermRole role) {
    int n = 0;
    for (const auto& t : gen.terms()) n += t.role == role ? 1 : 0;
    return n;
}

} // namespace

TEST_CASE("assemble_exact: rotated two-level matches the textbook form") {
    const ScenarioPreset p = get_preset("twolevel");
    const Generator gen = apply_frame(assemble_exact(p.system), p.frame);

    REQUIRE(count_terms(gen, TermKind::Commutator) == 1);
    REQUIRE(count_terms(gen, TermKind::Dissipator) == 1);
    const ComplexMatrix h = hamiltonian_at(gen, 0.0);
    ComplexMatrix expected = 1.0 * dyad(2, 1, 1) + 0.05 * (dyad(2, 0, 1) + dyad(2, 1, 0));
    CHECK(max_abs(h - expected) <= 1e-15);
    CHECK(gen.is_static());
}

TEST_CASE("assemble_exact: trivial and pure-decay limits") {
    DrivenLevelSystem empty;
    empty.dim = 2;
    empty.h0 = ComplexMatrix::Zero(2, 2);
    empty.manifold = {Manifold::Lower, Manifold::Upper};
    const Generator zero = assemble_exact(empty);
    std::mt19937 rng(3);
    CHECK(max_abs(zero.apply(oracle::random_hermitian(2, rng), 0.7)) == 0.0);

    DrivenLevelSystem decay = empty;
    decay.decays = {DecayChannel{0, 1, 0.1}};
    const Generator gen = assemble_exact(decay);
    const ComplexMatrix drho = gen.apply(dyad(2, 1, 1), 0.0);
    CHECK(drho(1, 1).real() == doctest::Approx(-0.1).epsilon(1e-14));
    CHECK(drho(0, 0).real() == doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("two-level tcg_full equals the hand-coded display") {
    const ScenarioPreset p = get_preset("twolevel");
    const Generator gen = apply_frame(assemble_tcg(p.system, true), p.frame);
    CHECK(gen.variant() == GeneratorVariant::TcgFull);
    CHECK(gen.is_static());

    std::mt19937 rng(101);
    double dev = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        const ComplexMatrix rho = oracle::random_hermitian(2, rng);
        const ComplexMatrix lhs = gen.apply(rho, 0.0);
        const ComplexMatrix rhs = oracle::twolevel_rhs(0.1, 1.0, 0.1, rho, true);
        dev = std::max(dev, max_abs(lhs - rhs));
    }
    CHECK(dev <= 1e-12);
}

TEST_CASE("two-level jump terms equal the last two display lines") {
    const ScenarioPreset p = get_preset("twolevel");
    const Generator full = apply_frame(assemble_tcg(p.system, true), p.frame);
    const Generator simple = apply_frame(assemble_tcg(p.system, false), p.frame);
    std::mt19937 rng(7);
    for (int rep = 0; rep < 10; ++rep) {
        const ComplexMatrix rho = oracle::random_hermitian(2, rng);
        const ComplexMatrix lhs = full.apply(rho, 0.0) - simple.apply(rho, 0.0);
        const ComplexMatrix rhs = oracle::twolevel_rhs(0.1, 1.0, 0.1, rho, true) -
                                  oracle::twolevel_rhs(0.1, 1.0, 0.1, rho, false);
        CHECK(max_abs(lhs - rhs) <= 1e-12);
    }
}

TEST_CASE("three-level tcg_full equals the hand-coded Raman displays") {
    const ScenarioPreset p = get_preset("raman3");
    const Generator gen = assemble_tcg(p.system, true);  // interaction picture
    oracle::RamanParams params;

    std::mt19937 rng(909);
    double dev = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        const ComplexMatrix rho = oracle::random_hermitian(3, rng);
        for (const double t : {0.0, 0.37, 2.1}) {
            dev = std::max(dev,
                           max_abs(gen.apply(rho, t) - oracle::raman_rhs(params, rho, t, true)));
        }
    }
    CHECK(dev <= 1e-12);

    // Jump terms alone, against the display's jump block.
    const Generator simple = assemble_tcg(p.system, false);
    const ComplexMatrix rho = oracle::random_hermitian(3, rng);
    const ComplexMatrix lhs = gen.apply(rho, 0.9) - simple.apply(rho, 0.9);
    const ComplexMatrix rhs = oracle::raman_rhs(params, rho, 0.9, true) -
                              oracle::raman_rhs(params, rho, 0.9, false);
    CHECK(max_abs(lhs - rhs) <= 1e-12);
}

TEST_CASE("effective Hamiltonian coefficients") {
    // Two-level diagonal shift Delta |Omega|^2 / (4 |wt|^2).
    const auto terms2 = build_harmonic_terms(get_preset("twolevel").system);
    const auto heff2 = assemble_h_eff(terms2, ComplexMatrix::Zero(2, 2));
    REQUIRE(heff2.size() == 1);
    const double shift = 1.0 * 0.01 / (4.0 * std::norm(Complex(1.0, 0.05)));
    CHECK(std::abs(heff2[0].a(0, 0).real() - shift) <= 1e-15);
    CHECK(std::abs(heff2[0].a(1, 1).real() + shift) <= 1e-15);
    CHECK(heff2[0].frequency == 0.0);

    // Raman cross coupling (Delta1 + Delta2) O1 O2 / (8 (D1 - ig/2)(D2 + ig/2)).
    const auto terms3 = build_harmonic_terms(get_preset("raman3").system);
    const auto heff3 = assemble_h_eff(terms3, ComplexMatrix::Zero(3, 3));
    const Complex expected = (1.0 + 1.0) * 0.1 * 0.1 /
                             (8.0 * Complex(1.0, -0.1) * Complex(1.0, 0.1));
    bool found = false;
    for (const auto& t : heff3) {
        if (t.index[0] == 0 && t.index[1] == 1) {
            CHECK(std::abs(t.a(0, 1) - expected) <= 1e-15);
            found = true;
        }
    }
    CHECK(found);

    // Empty drive list: H_eff reduces to h0.
    ComplexMatrix h0 = ComplexMatrix::Zero(2, 2);
    h0(0, 0) = 0.3;
    const auto bare = assemble_h_eff({}, h0);
    REQUIRE(bare.size() == 1);
    CHECK(max_abs(bare[0].a - h0) == 0.0);
}

TEST_CASE("dephasing coefficients") {
    const auto terms2 = build_harmonic_terms(get_preset("twolevel").system);
    const auto deph2 = assemble_dephasing(terms2);
    REQUIRE(deph2.size() == 2);
    const double rate = 0.1 / std::norm(Complex(1.0, 0.05));  // 2 kappa / |wt|^2
    CHECK(std::abs(deph2[0].coefficient - Complex(-rate, 0.0)) <= 1e-15);
    CHECK(std::abs(deph2[1].coefficient - Complex(rate, 0.0)) <= 1e-15);

    // Raman cross pair: purely real coefficients when Delta1 == Delta2, with
    // the damping sign on the forward piece and its opposite on the reverse.
    const auto terms3 = build_harmonic_terms(get_preset("raman3").system);
    for (const auto& t : assemble_dephasing(terms3)) {
        if (t.index[0] != t.index[1]) {
            CHECK(std::abs(t.coefficient.imag()) <= 1e-15);
            if (t.index[2] == 0) {
                CHECK(t.coefficient.real() < 0.0);
            } else {
                CHECK(t.coefficient.real() > 0.0);
            }
        }
    }

    // Closed system, single drive: the diagonal coefficient vanishes exactly.
    HarmonicTerm closed;
    closed.h = 0.05 * dyad(2, 0, 1);
    closed.delta = 1.0;
    closed.kappa = 0.0;
    closed.omega_tilde = Complex(1.0, 0.0);
    CHECK(assemble_dephasing({closed}).empty());
}

TEST_CASE("assemble_jump limits") {
    CHECK(assemble_jump(build_harmonic_terms(get_preset("twolevel").system), {}).empty());
}

TEST_CASE("closed limit: zero decay collapses to the closed-system equation") {
    DrivenLevelSystem sys = get_preset("raman3").system;
    sys.decays.clear();
    sys.drives[1].rabi = Complex(0.08, 0.0);
    sys.drives[1].detuning = 0.7;

    const Generator with_jump = assemble_tcg(sys, true);
    const Generator without_jump = assemble_tcg(sys, false);
    CHECK(with_jump.variant() == GeneratorVariant::TcgClosed);
    CHECK(without_jump.variant() == GeneratorVariant::TcgClosed);

    // Identical term lists, bit for bit.
    REQUIRE(with_jump.terms().size() == without_jump.terms().size());
    for (std::size_t k = 0; k < with_jump.terms().size(); ++k) {
        const auto& a = with_jump.terms()[k];
        const auto& b = without_jump.terms()[k];
        CHECK(a.coefficient == b.coefficient);
        CHECK(a.frequency == b.frequency);
        CHECK(max_abs(a.a - b.a) == 0.0);
    }

    // And the same code path fed manually built kappa = 0 terms is bitwise
    // identical in action.
    const auto manual = [&] {
        std::vector<HarmonicTerm> ht;
        for (const auto& d : sys.drives) {
            HarmonicTerm t;
            t.h = 0.5 * d.rabi * dyad(sys.dim, d.lower, d.upper);
            t.delta = d.detuning;
            t.kappa = 0.0;
            t.omega_tilde = Complex(d.detuning, 0.0);
            ht.push_back(t);
        }
        auto terms = assemble_h_eff(ht, sys.h0);
        for (auto& t : assemble_dephasing(ht)) terms.push_back(std::move(t));
        return Generator(sys.dim, std::move(terms), GeneratorVariant::TcgClosed,
                         model_hash(sys));
    }();
    std::mt19937 rng(55);
    for (int rep = 0; rep < 10; ++rep) {
        const ComplexMatrix rho = oracle::random_hermitian(3, rng);
        const ComplexMatrix a = with_jump.apply(rho, 1.3);
        const ComplexMatrix b = manual.apply(rho, 1.3);
        CHECK(max_abs(a - b) == 0.0);
    }

    // Independent closed-system oracle.
    std::vector<oracle::ClosedDrive> drives;
    for (const auto& d : sys.drives) {
        drives.push_back(oracle::ClosedDrive{d.lower, d.upper, d.rabi, d.detuning});
    }
    for (int rep = 0; rep < 10; ++rep) {
        const ComplexMatrix rho = oracle::random_hermitian(3, rng);
        for (const double t : {0.0, 0.4}) {
            CHECK(max_abs(with_jump.apply(rho, t) -
                          oracle::closed_rhs(3, sys.h0, drives, rho, t)) <= 1e-13);
        }
    }
}

TEST_CASE("trace and hermiticity preservation across variants") {
    std::mt19937 rng(77);
    for (const char* name : {"twolevel", "raman3", "fourlevel"}) {
        const ScenarioPreset p = get_preset(name);
        const Generator gens[] = {assemble_exact(p.system), assemble_tcg(p.system, true),
                                  assemble_tcg(p.system, false)};
        for (const auto& gen : gens) {
            for (int rep = 0; rep < 10; ++rep) {
                const ComplexMatrix rho = oracle::random_hermitian(p.system.dim, rng);
                for (const double t : {0.0, 0.9, 17.3}) {
                    const ComplexMatrix drho = gen.apply(rho, t);
                    CHECK(std::abs(drho.trace()) <= 1e-12 * (1.0 + max_abs(drho)));
                    CHECK(hermiticity_defect(drho) <= 1e-12 * (1.0 + max_abs(drho)));
                }
            }
        }
    }
}

TEST_CASE("H_eff is Hermitian at random times") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> time_dist(0.0, 200.0);
    for (const char* name : {"twolevel", "raman3", "fourlevel"}) {
        const ScenarioPreset p = get_preset(name);
        const Generator gen = assemble_tcg(p.system, true);
        for (int rep = 0; rep < 100; ++rep) {
            CHECK(hermiticity_defect(hamiltonian_at(gen, time_dist(rng))) <= 1e-12);
        }
    }
}

TEST_CASE("filter rule: only difference frequencies survive") {
    for (const char* name : {"twolevel", "fourlevel"}) {
        const ScenarioPreset p = get_preset(name);
        const Generator gen = assemble_tcg(p.system, true);

        std::vector<double> detunings;
        for (const auto& d : p.system.drives) detunings.push_back(d.detuning);
        std::set<double> bad;  // bare and sum frequencies
        for (const double a : detunings) {
            for (const double b : detunings) bad.insert(a + b);
        }

        for (const auto& term : gen.terms()) {
            bool is_difference = false;
            for (const double a : detunings) {
                for (const double b : detunings) {
                    if (std::abs(term.frequency - (a - b)) <= 1e-12) is_difference = true;
                }
            }
            if (term.frequency == 0.0) is_difference = true;  // static pieces
            CHECK(is_difference);
            for (const double s : bad) {
                CHECK(std::abs(std::abs(term.frequency) - std::abs(s)) > 1e-12);
            }
        }
    }
}

TEST_CASE("exchange symmetry: drive order does not change the action") {
    DrivenLevelSystem sys = get_preset("raman3").system;
    sys.drives[1].rabi = Complex(0.07, 0.02);
    sys.drives[1].detuning = 0.8;
    DrivenLevelSystem swapped = sys;
    std::swap(swapped.drives[0], swapped.drives[1]);

    const Generator a = assemble_tcg(sys, true);
    const Generator b = assemble_tcg(swapped, true);
    std::mt19937 rng(13);
    for (int rep = 0; rep < 20; ++rep) {
        const ComplexMatrix rho = oracle::random_hermitian(3, rng);
        for (const double t : {0.0, 0.8}) {
            CHECK(max_abs(a.apply(rho, t) - b.apply(rho, t)) <= 1e-12);
        }
    }
}

TEST_CASE("compiled path agrees with the term-by-term path") {
    std::mt19937 rng(19);
    for (const char* name : {"raman3", "fourlevel"}) {
        const ScenarioPreset p = get_preset(name);
        for (const bool jump : {true, false}) {
            const Generator gen = assemble_tcg(p.system, jump);
            for (int rep = 0; rep < 5; ++rep) {
                const ComplexMatrix rho = oracle::random_hermitian(p.system.dim, rng);
                for (const double t : {0.0, 2.3}) {
                    const ComplexMatrix fast = gen.apply(rho, t);
                    const ComplexMatrix slow = gen.apply_terms(rho, t);
                    CHECK(max_abs(fast - slow) <= 1e-13 * (1.0 + max_abs(slow)));
                }
            }
        }
    }
}

TEST_CASE("apply_frame matches the system-level rotating frame") {
    const ScenarioPreset p = get_preset("fourlevel");
    const Generator via_system = assemble_exact(rotating_frame(p.system, p.frame));
    const Generator via_generator = apply_frame(assemble_exact(p.system), p.frame);
    std::mt19937 rng(3);
    for (int rep = 0; rep < 10; ++rep) {
        const ComplexMatrix rho = oracle::random_hermitian(4, rng);
        for (const double t : {0.0, 5.0}) {
            CHECK(max_abs(via_system.apply(rho, t) - via_generator.apply(rho, t)) <= 1e-12);
        }
    }
}

TEST_CASE("the four-level preset frame renders both generators static") {
    const ScenarioPreset p = get_preset("fourlevel");
    CHECK(apply_frame(assemble_exact(p.system), p.frame).is_static());
    CHECK(apply_frame(assemble_tcg(p.system, true), p.frame).is_static());
}

TEST_CASE("tcg rejects a decaying-frame-incompatible static Hamiltonian") {
    // A resonant drive into a decaying level lands in h0; e^{Kt} then fails
    // to commute with it.
    DrivenLevelSystem sys;
    sys.dim = 3;
    sys.h0 = ComplexMatrix::Zero(3, 3);
    sys.manifold = {Manifold::Lower, Manifold::Upper, Manifold::Upper};
    sys.drives = {Drive{0, 1, Complex(0.2, 0.0), 0.0}, Drive{0, 2, Complex(0.1, 0.0), 1.0}};
    sys.decays = {DecayChannel{0, 1, 0.1}, DecayChannel{0, 2, 0.3}};
    const DrivenLevelSystem folded = fold_resonant_drives(sys);
    CHECK_THROWS_AS(assemble_tcg(folded, true), ProportionalityViolation);
    CHECK_NOTHROW(assemble_exact(folded));
}

TEST_CASE("describe output") {
    const Generator empty(2, {}, GeneratorVariant::Exact, "feedfeedfeedfeed");
    const std::string none = describe(empty);
    CHECK(none.find("terms=0") != std::string::npos);
    CHECK(std::count(none.begin(), none.end(), '\n') == 1);  // header only

    const ScenarioPreset raman = get_preset("raman3");
    const std::string exact_text =
        describe(apply_frame(assemble_exact(raman.system), raman.frame));
    CHECK(std::count(exact_text.begin(), exact_text.end(), '\n') == 4);  // header + 3 terms
    std::istringstream lines(exact_text);
    std::string line;
    std::getline(lines, line);  // header
    std::getline(lines, line);
    CHECK(line.rfind("commutator", 0) == 0);
    std::getline(lines, line);
    CHECK(line.rfind("dissipator", 0) == 0);
    std::getline(lines, line);
    CHECK(line.rfind("dissipator", 0) == 0);

    // Two-level coarse-grained coefficients appear with the display values.
    const ScenarioPreset two = get_preset("twolevel");
    const std::string text = describe(apply_frame(assemble_tcg(two.system, true), two.frame));
    std::vector<Complex> coefficients;
    std::istringstream text_in(text);
    while (std::getline(text_in, line)) {
        const auto pos = line.find("coeff=");
        if (pos == std::string::npos) continue;
        double re = 0.0, im = 0.0;
        REQUIRE(std::sscanf(line.c_str() + pos + 6, "%lf%lfi", &re, &im) == 2);
        coefficients.emplace_back(re, im);
    }
    const double shift = 0.01 / (4.0 * std::norm(Complex(1.0, 0.05)));
    const double rate = 0.1 * 0.01 / (4.0 * std::norm(Complex(1.0, 0.05)));
    auto contains = [&](Complex expected) {
        for (const Complex c : coefficients) {
            if (std::abs(c - expected) <= 1e-6 * std::abs(expected)) return true;
        }
        return false;
    };
    CHECK(contains(Complex(0.0, -shift)));   // level-shift pair term
    CHECK(contains(Complex(-rate, 0.0)));    // dephasing, forward piece
    CHECK(contains(Complex(rate, 0.0)));     // dephasing, reverse piece
}

TEST_CASE("four-level effective pair terms: all nonvanishing ordered pairs") {
    // Of the 16 ordered drive pairs, the 4 with disjoint level support vanish
    // identically and are dropped at assembly.
    const ScenarioPreset p = get_preset("fourlevel");
    const Generator gen = assemble_tcg(p.system, true);
    CHECK(count_terms(gen, TermRole::EffectivePair) == 12);
}
