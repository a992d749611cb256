#pragma once

// Evaluation of every complementarity relation that applies to a state.

#include "qcomp/interferometer.hpp"
#include "qcomp/measures.hpp"
#include "qcomp/state.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qcomp {

enum class RelationKind { Equality, LessEqual };
enum class Verdict { Pass, Fail, Skipped };

struct RelationRecord {
    std::string name;  // 1-based qubit labels, e.g. "C^2+V1^2+P1^2=1"
    RelationKind kind = RelationKind::Equality;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;  // lhs - rhs
    double tolerance = 0.0;
    Verdict verdict = Verdict::Skipped;
    std::string note;  // reason for a skip
};

struct Tolerances {
    double two_qubit = 1e-10;    // two-qubit identities
    double three_qubit = 1e-9;   // identities involving pairwise concurrences
    double inequality = 1e-9;    // slack allowed on inequalities
    double optimizer = 1e-6;     // identities involving the maximized V12

    /// Every class set to the same value (CLI --tol).
    static Tolerances uniform(double tol);
};

struct ComplementarityReport {
    std::size_t n_qubits = 0;
    bool pure = true;
    std::vector<SingleParticleProfile> single;
    std::vector<DistinguishabilityResult> distinguishability;  // pure two-qubit states
    std::vector<TangleProfile> tangles;                        // pure states, n >= 2
    std::optional<double> concurrence;                         // two-qubit states
    std::optional<double> v12_symmetric;                       // pure two-qubit states
    std::optional<V12Maximum> v12_max;                         // pure two-qubit states
    std::vector<RelationRecord> relations;

    bool all_passed() const;
    std::map<std::string, double> residuals() const;
};

ComplementarityReport verify_relations(const PureState& state, const Tolerances& tol = {});
ComplementarityReport verify_relations(const DensityMatrix& rho, const Tolerances& tol = {});

std::string verdict_name(Verdict v);

/// Quantities per qubit, then one relation per row:
/// relation | lhs | rhs | residual | tolerance | verdict.
void write_report_table(std::ostream& out, const ComplementarityReport& report);

/// One JSON object per relation with keys name, kind, lhs, rhs, residual,
/// tolerance, verdict (and note when skipped). Non-finite values are null.
void write_report_jsonl(std::ostream& out, const ComplementarityReport& report);

}  // namespace qcomp
