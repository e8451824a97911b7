// csv.cpp — CSV writers.

#include "tcg/csv.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace tcg {

namespace {

void put(std::ostream& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    out << buf;
}

} // namespace

void write_trajectory_csv(std::ostream& out, const Trajectory& traj,
                          const std::vector<ObservableSpec>& specs, double tau) {
    out << "t,t_over_tau";
    for (const auto& spec : specs) out << "," << column_name(spec);
    out << ",trace_defect,herm_defect,min_eig\n";

    std::vector<std::vector<double>> series;
    series.reserve(specs.size());
    for (const auto& spec : specs) series.push_back(observable_series(traj, spec));

    for (long k = 0; k < traj.grid.size(); ++k) {
        const double t = traj.grid.time(k);
        put(out, t);
        out << ",";
        put(out, t / tau);
        for (const auto& s : series) {
            out << ",";
            put(out, s[static_cast<std::size_t>(k)]);
        }
        const auto& d = traj.diagnostics[static_cast<std::size_t>(k)];
        out << ",";
        put(out, d.trace_defect);
        out << ",";
        put(out, d.hermiticity_defect);
        out << ",";
        put(out, d.min_eigenvalue);
        out << "\n";
    }
}

void write_compare_csv(std::ostream& out, const Trajectory& exact, const Trajectory& tcg,
                       const std::vector<ObservableSpec>& specs) {
    if (exact.states.size() != tcg.states.size()) {
        throw std::invalid_argument("write_compare_csv: grid mismatch");
    }
    out << "t";
    for (const auto& spec : specs) {
        const std::string col = column_name(spec);
        out << "," << col << "_exact," << col << "_tcg," << col << "_absdiff";
    }
    out << "\n";

    std::vector<std::vector<double>> se, st;
    for (const auto& spec : specs) {
        se.push_back(observable_series(exact, spec));
        st.push_back(observable_series(tcg, spec));
    }
    for (long k = 0; k < exact.grid.size(); ++k) {
        put(out, exact.grid.time(k));
        for (std::size_t c = 0; c < specs.size(); ++c) {
            const double a = se[c][static_cast<std::size_t>(k)];
            const double b = st[c][static_cast<std::size_t>(k)];
            out << ",";
            put(out, a);
            out << ",";
            put(out, b);
            out << ",";
            put(out, std::abs(a - b));
        }
        out << "\n";
    }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepCell>& cells) {
    out << "omega_ratio,gamma_ratio,max_pop_dev,max_coh_dev,error\n";
    for (const auto& cell : cells) {
        put(out, cell.omega_ratio);
        out << ",";
        put(out, cell.gamma_ratio);
        out << ",";
        put(out, cell.max_pop_dev);
        out << ",";
        put(out, cell.max_coh_dev);
        out << "," << cell.error << "\n";
    }
}

} // namespace tcg
