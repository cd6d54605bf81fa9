#include "wpdo/io.hpp"

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace wpdo {

namespace {

std::vector<double> split_row(const std::string& line) {
    std::vector<double> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            out.push_back(std::stod(cell));
        } catch (const std::exception&) {
            throw_config("csv: bad numeric cell '" + cell + "'");
        }
    }
    return out;
}

}  // namespace

void write_csv(std::ostream& os, const GridFunction& f) {
    os << std::setprecision(17);
    for (int j = 0; j < f.size(); ++j)
        os << f.x(j) << ',' << f[j].real() << ',' << f[j].imag() << '\n';
}

void write_csv(std::ostream& os, const CoeffVector& c) {
    os << std::setprecision(17);
    for (long k = -c.N; k <= c.N; ++k)
        os << k << ',' << c.at(k).real() << ',' << c.at(k).imag() << '\n';
}

void write_csv(std::ostream& os, const DenseOperator& op) {
    os << std::setprecision(17);
    for (long k = -op.N; k <= op.N; ++k)
        for (long l = -op.N; l <= op.N; ++l)
            os << k << ',' << l << ',' << op.entry(k, l).real() << ',' << op.entry(k, l).imag()
               << '\n';
}

void write_csv(std::ostream& os, const ResidualProfile& p) {
    os << std::setprecision(17);
    os << "k,residual_left,residual_right\n";
    for (std::size_t i = 0; i < p.k.size(); ++i)
        os << p.k[i] << ',' << p.left[i] << ',' << p.right[i] << '\n';
}

GridFunction read_grid_csv(std::istream& is) {
    std::vector<cplx> samples;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const std::vector<double> row = split_row(line);
        if (row.size() != 3) throw_config("grid csv: expected rows (x, re, im)");
        samples.emplace_back(row[1], row[2]);
    }
    if (samples.empty()) throw_config("grid csv: no rows");
    GridFunction f(static_cast<int>(samples.size()));
    f.samples = std::move(samples);
    return f;
}

CoeffVector read_coeff_csv(std::istream& is) {
    std::vector<std::pair<long, cplx>> rows;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const std::vector<double> row = split_row(line);
        if (row.size() != 3) throw_config("coeff csv: expected rows (k, re, im)");
        rows.emplace_back(std::lround(row[0]), cplx(row[1], row[2]));
    }
    if (rows.empty()) throw_config("coeff csv: no rows");
    long N = 0;
    for (const auto& [k, v] : rows) N = std::max(N, std::abs(k));
    CoeffVector c(N);
    for (const auto& [k, v] : rows) c.at(k) = v;
    return c;
}

json to_json(const GrowthReport& r) {
    return {{"tight_C0", r.tight_C0},
            {"tight_C1", r.tight_C1},
            {"passed", r.passed},
            {"offending_k", r.offending_k},
            {"window", r.window}};
}

json to_json(const DifferenceReport& r) {
    json entries = json::array();
    for (const auto& e : r.entries)
        entries.push_back({{"alpha", e.alpha},
                           {"gamma", e.gamma},
                           {"constant", e.constant},
                           {"argmax_k", e.argmax_k}});
    return {{"window", r.window}, {"entries", entries}};
}

json to_json(const SeminormTable& t) {
    json entries = json::array();
    for (const auto& e : t.entries)
        entries.push_back(
            {{"alpha", e.alpha}, {"beta", e.beta}, {"value", e.value}, {"argmax_k", e.argmax_k}});
    return {{"window", t.window}, {"entries", entries}};
}

json to_json(const MembershipReport& r) {
    json tables = json::array();
    for (const auto& t : r.tables) tables.push_back(to_json(t));
    return {{"consistent", r.consistent},
            {"tables", tables},
            {"offending_alpha", r.offending_alpha},
            {"offending_beta", r.offending_beta},
            {"offending_k", r.offending_k},
            {"offending_gamma", r.offending_gamma},
            {"detail", r.detail}};
}

json to_json(const EllipticityReport& r) {
    return {{"is_elliptic", r.is_elliptic},
            {"C", r.C},
            {"R", r.R},
            {"window", r.window},
            {"stability", r.stability}};
}

json to_json(const GohbergReport& r) {
    return {{"d_estimate", r.d_estimate},
            {"tail_start", r.tail_start},
            {"window", r.window},
            {"d_at_K0", r.d_at_K0},
            {"d_at_2K0", r.d_at_2K0},
            {"d_at_4K0", r.d_at_4K0}};
}

json to_json(const CompactnessReport& r) {
    const char* verdict = r.verdict == CompactnessVerdict::Compact      ? "compact"
                          : r.verdict == CompactnessVerdict::NotCompact ? "not_compact"
                                                                        : "inconclusive";
    return {{"verdict", verdict},
            {"gohberg", to_json(r.gohberg)},
            {"N_list", r.N_list},
            {"eps_list", r.eps_list},
            {"counts_above", r.counts_above},
            {"counts_near_d", r.counts_near_d},
            {"commutator_counts", r.commutator_counts}};
}

json to_json(const EssentialSpectrumReport& r) {
    return {{"applicable", r.applicable},
            {"essential_spectrum", r.applicable ? json::array({0.0}) : json()},
            {"evidence", to_json(r.evidence)}};
}

json to_json(const GardingReport& r) {
    return {{"holds", r.holds}, {"C0", r.C0},           {"C1", r.C1},
            {"N_list", r.N_list}, {"c0_pure", r.c0_pure}, {"min_eig", r.min_eig}};
}

json to_json(const SharpGardingReport& r) {
    return {{"C", r.C}, {"N_list", r.N_list}, {"trajectory", r.trajectory}};
}

json to_json(const LatticeGardingReport& r) {
    return {{"torus", to_json(r.torus)},
            {"worst_violation", r.worst_violation},
            {"samples", r.samples}};
}

json to_json(const SolveResult& r) {
    return {{"residual", r.residual},
            {"iterations", r.iterations},
            {"preconditioned", r.preconditioned},
            {"converged", r.converged},
            {"condition_estimate", r.condition_estimate},
            {"warning", r.warning},
            {"N", r.u_hat.N}};
}

}  // namespace wpdo
