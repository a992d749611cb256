#include "qcomp/relations.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace qcomp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string label(std::size_t k) { return std::to_string(k + 1); }

RelationRecord equality(std::string name, double lhs, double rhs, double tol) {
    RelationRecord r{std::move(name), RelationKind::Equality, lhs, rhs, lhs - rhs, tol, Verdict::Pass, {}};
    r.verdict = std::abs(r.residual) <= tol ? Verdict::Pass : Verdict::Fail;
    return r;
}

RelationRecord at_most(std::string name, double lhs, double rhs, double tol) {
    RelationRecord r{std::move(name), RelationKind::LessEqual, lhs, rhs, lhs - rhs, tol, Verdict::Pass, {}};
    r.verdict = r.residual <= tol ? Verdict::Pass : Verdict::Fail;
    return r;
}

RelationRecord skipped(std::string name, RelationKind kind, std::string note) {
    return {std::move(name), kind, kNaN, kNaN, kNaN, kNaN, Verdict::Skipped, std::move(note)};
}

double sq(double x) { return x * x; }

void single_particle_bounds(ComplementarityReport& rep, const Tolerances& tol) {
    for (const auto& s : rep.single) {
        const std::string k = label(s.qubit);
        rep.relations.push_back(
            at_most("P" + k + "^2+V" + k + "^2<=1", sq(s.predictability) + sq(s.visibility), 1.0, tol.inequality));
    }
}

}  // namespace

Tolerances Tolerances::uniform(double tol) {
    if (!(tol > 0.0) || !std::isfinite(tol)) throw std::invalid_argument("tolerance must be positive");
    return {tol, tol, tol, tol};
}

bool ComplementarityReport::all_passed() const {
    return std::none_of(relations.begin(), relations.end(), [](const auto& r) { return r.verdict == Verdict::Fail; });
}

std::map<std::string, double> ComplementarityReport::residuals() const {
    std::map<std::string, double> out;
    for (const auto& r : relations) {
        if (r.verdict != Verdict::Skipped) out[r.name] = r.residual;
    }
    return out;
}

ComplementarityReport verify_relations(const PureState& state, const Tolerances& tol) {
    ComplementarityReport rep;
    const std::size_t n = state.n_qubits();
    rep.n_qubits = n;
    rep.pure = true;
    for (std::size_t k = 0; k < n; ++k) rep.single.push_back(single_particle_character(state, k));

    if (n == 1) {
        const auto& s = rep.single[0];
        rep.relations.push_back(equality("P1^2+V1^2=1", sq(s.predictability) + sq(s.visibility), 1.0, tol.two_qubit));
        return rep;
    }

    for (std::size_t k = 0; k < n; ++k) rep.tangles.push_back(tangle_profile(state, k));

    if (n == 2) {
        const double c = concurrence(state);
        rep.concurrence = c;
        rep.v12_symmetric = two_particle_visibility(state, TransducerConfig::symmetric());
        rep.v12_max = maximize_v12(state);
        const double v12s = *rep.v12_symmetric;
        const double v12m = rep.v12_max->value;
        for (std::size_t k = 0; k < 2; ++k) {
            rep.distinguishability.push_back(distinguishability(state, k));
            const auto& s = rep.single[k];
            const double d = rep.distinguishability[k].D;
            const double v = s.visibility;
            const double p = s.predictability;
            const std::string q = label(k);
            rep.relations.push_back(equality("C^2+V" + q + "^2+P" + q + "^2=1", sq(c) + sq(v) + sq(p), 1.0, tol.two_qubit));
            rep.relations.push_back(equality("D" + q + "^2+V" + q + "^2=1", sq(d) + sq(v), 1.0, tol.two_qubit));
            rep.relations.push_back(equality("D" + q + "^2=P" + q + "^2+C^2", sq(d), sq(p) + sq(c), tol.two_qubit));
            rep.relations.push_back(at_most("P" + q + "<=D" + q, p, d, tol.inequality));
            const double vk_sym = fringe_visibility(state, TransducerConfig::symmetric(), k);
            rep.relations.push_back(at_most("V" + q + "^2+V12sym^2<=1", sq(vk_sym) + sq(v12s), 1.0, tol.inequality));
            rep.relations.push_back(
                at_most("V12sym^2+V" + q + "^2+P" + q + "^2<=1", sq(v12s) + sq(vk_sym) + sq(p), 1.0, tol.inequality));
            rep.relations.push_back(equality("V12max^2+S" + q + "^2=1", sq(v12m) + sq(s.character), 1.0, tol.optimizer));
        }
        rep.relations.push_back(equality("V12max=C", v12m, c, tol.optimizer));
    }

    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const std::string q = label(k);
        const double ck = rep.tangles[k].bipartite_concurrence;
        const double s = rep.single[k].character;
        total += sq(ck) + sq(s);
        rep.relations.push_back(equality("C" + q + "(rest)^2+S" + q + "^2=1", sq(ck) + sq(s), 1.0, tol.two_qubit));
    }
    rep.relations.push_back(
        equality("sum_k[C_k(rest)^2+S_k^2]=n", total, static_cast<double>(n), tol.two_qubit * static_cast<double>(n)));

    if (n == 3) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (std::size_t k = 0; k < 3; ++k) {
            const std::string q = label(k);
            const auto& t = rep.tangles[k];
            const double tau3 = t.three_tangle.value_or(0.0);
            lo = std::min(lo, tau3);
            hi = std::max(hi, tau3);
            rep.relations.push_back(equality("tau3+tau2(" + q + ")+S" + q + "^2=1",
                                             tau3 + t.pairwise_tangle + sq(rep.single[k].character), 1.0,
                                             tol.three_qubit));
            rep.relations.push_back(at_most("tau2(" + q + ")<=C" + q + "(rest)^2", t.pairwise_tangle,
                                            sq(t.bipartite_concurrence), tol.inequality));
        }
        rep.relations.push_back(equality("tau3 pivot independence", hi, lo, tol.three_qubit));
    } else {
        rep.relations.push_back(skipped("tau3+tau2(k)+S_k^2=1", RelationKind::Equality, "three-qubit states only"));
    }
    single_particle_bounds(rep, tol);
    return rep;
}

ComplementarityReport verify_relations(const DensityMatrix& rho, const Tolerances& tol) {
    ComplementarityReport rep;
    const std::size_t n = rho.n_qubits();
    rep.n_qubits = n;
    rep.pure = false;
    for (std::size_t k = 0; k < n; ++k) rep.single.push_back(single_particle_character(rho, k));
    const std::string mixed = "equality holds for pure states only";
    if (n == 2) {
        const double c = concurrence(rho);
        rep.concurrence = c;
        for (std::size_t k = 0; k < 2; ++k) {
            const auto& s = rep.single[k];
            const std::string q = label(k);
            rep.relations.push_back(at_most("C^2+V" + q + "^2+P" + q + "^2<=1",
                                            sq(c) + sq(s.visibility) + sq(s.predictability), 1.0, tol.inequality));
            rep.relations.push_back(skipped("C^2+V" + q + "^2+P" + q + "^2=1", RelationKind::Equality, mixed));
            rep.relations.push_back(skipped("D" + q + "^2+V" + q + "^2=1", RelationKind::Equality,
                                            "distinguishability is defined for pure states"));
            rep.relations.push_back(skipped("V12max^2+S" + q + "^2=1", RelationKind::Equality,
                                            "no mixed-state two-particle visibility"));
        }
    }
    rep.relations.push_back(skipped("C_k(rest)^2+S_k^2=1", RelationKind::Equality, mixed));
    single_particle_bounds(rep, tol);
    return rep;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "FAIL";
        case Verdict::Skipped: return "skipped";
    }
    return "skipped";
}

void write_report_table(std::ostream& out, const ComplementarityReport& report) {
    std::ostringstream buf;
    buf << std::setprecision(10);
    buf << "# " << report.n_qubits << "-qubit " << (report.pure ? "pure" : "mixed") << " state\n";
    buf << std::left << std::setw(7) << "qubit" << std::setw(16) << "V" << std::setw(16) << "P" << std::setw(16) << "S";
    if (!report.distinguishability.empty()) buf << std::setw(16) << "D";
    if (!report.tangles.empty()) buf << std::setw(16) << "C_k(rest)" << std::setw(16) << "tau2";
    buf << '\n';
    for (std::size_t k = 0; k < report.single.size(); ++k) {
        const auto& s = report.single[k];
        buf << std::setw(7) << (k + 1) << std::setw(16) << s.visibility << std::setw(16) << s.predictability
            << std::setw(16) << s.character;
        if (!report.distinguishability.empty()) buf << std::setw(16) << report.distinguishability[k].D;
        if (!report.tangles.empty()) {
            buf << std::setw(16) << report.tangles[k].bipartite_concurrence << std::setw(16)
                << report.tangles[k].pairwise_tangle;
        }
        buf << '\n';
    }
    if (report.concurrence) buf << "C = " << *report.concurrence << '\n';
    if (!report.tangles.empty() && report.tangles[0].three_tangle) buf << "tau3 = " << *report.tangles[0].three_tangle << '\n';
    if (report.v12_symmetric) buf << "V12 (symmetric) = " << *report.v12_symmetric << '\n';
    if (report.v12_max) buf << "V12 (maximized) = " << report.v12_max->value << '\n';
    buf << '\n';

    std::size_t width = 8;
    for (const auto& r : report.relations) width = std::max(width, r.name.size() + 2);
    buf << std::setw(static_cast<int>(width)) << "relation" << std::setw(20) << "lhs" << std::setw(20) << "rhs"
        << std::setw(20) << "residual" << std::setw(12) << "tolerance" << "verdict\n";
    for (const auto& r : report.relations) {
        buf << std::setw(static_cast<int>(width)) << r.name;
        if (r.verdict == Verdict::Skipped) {
            buf << std::setw(20) << "-" << std::setw(20) << "-" << std::setw(20) << "-" << std::setw(12) << "-"
                << "skipped (" << r.note << ")\n";
            continue;
        }
        std::ostringstream res;
        res << std::scientific << std::setprecision(3) << r.residual;
        std::ostringstream t;
        t << std::scientific << std::setprecision(0) << r.tolerance;
        buf << std::setw(20) << r.lhs << std::setw(20) << r.rhs << std::setw(20) << res.str() << std::setw(12)
            << t.str() << verdict_name(r.verdict) << '\n';
    }
    out << buf.str();
}

void write_report_jsonl(std::ostream& out, const ComplementarityReport& report) {
    auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
    for (const auto& r : report.relations) {
        nlohmann::ordered_json rec;
        rec["name"] = r.name;
        rec["kind"] = r.kind == RelationKind::Equality ? "eq" : "le";
        rec["lhs"] = num(r.lhs);
        rec["rhs"] = num(r.rhs);
        rec["residual"] = num(r.residual);
        rec["tolerance"] = num(r.tolerance);
        rec["verdict"] = verdict_name(r.verdict);
        if (!r.note.empty()) rec["note"] = r.note;
        out << rec.dump() << '\n';
    }
}

}  // namespace qcomp
