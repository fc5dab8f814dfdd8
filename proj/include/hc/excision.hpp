/**
 * Excision analysis of an extension 0 -> B -> A -> D -> 0.
 *
 * Three layers are reported separately:
 *   1. snake sequences of 0 -> X(A,D) -> X(A) -> X(D) -> 0 for the
 *      simplicial, bar and cyclic theories and their duals; exact always;
 *   2. candidate excision sequences in which H(X(A,D)) is replaced by H(X(B))
 *      through the comparison map X(B) -> X(A,D);
 *   3. hypothesis checks (one-sided unit in B, bar homology of B) and the
 *      assertions they license.
 *
 * A candidate sequence needs a connecting map H_n(D) -> H_{n-1}(B).  With
 * c the comparison map on H_{n-1} and ζ the snake connecting map, it is r ζ
 * for the deterministic left inverse r of c when c is injective
 * ("retraction"); otherwise c X = ζ is solved column by column and
 * unsolvable columns are set to zero ("factorization", or
 * "partial-factorization" when some column was zeroed).
 *
 * Cohomology sequences come from the dual short exact sequence
 * 0 -> X(D)* -> X(A)* -> X(A,D)* -> 0.  Their representatives are rebased to
 * the bases dual to the homology representatives, so every dual induced map
 * is the transpose of its homology counterpart and the candidate connecting
 * map is built by the mirrored rule, δ = factor(c*ᵀ, ζ*ᵀ)ᵀ.
 */
#ifndef HC_EXCISION_HPP
#define HC_EXCISION_HPP

#include <array>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "complexes.hpp"
#include "errors.hpp"
#include "hochschild.hpp"
#include "linalg.hpp"

namespace hc {

// ------------------------------------------------------------------------
// Report types
// ------------------------------------------------------------------------

struct HypothesisStatus
{
    UnitSide unit_side = UnitSide::None;
    std::optional<SparseVector> unit_element;
    std::vector<Index> bar_homology_B;   // HR_n(B), n = 0 .. N
    bool met = false;
    std::string surrogate;

    bool operator==(const HypothesisStatus&) const = default;
};

struct SequenceRecord
{
    std::string name;
    std::string layer;        // "snake" or "candidate"
    std::string theory;       // hochschild | bar | cyclic
    std::string variance;     // homology | cohomology
    std::string convention;   // zig-zag | retraction | factorization | partial-factorization
    std::vector<SequenceNode> nodes;
    bool exact = true;        // all nodes of degree <= N-1 exact
    bool interior_exact = true;   // degrees 1 .. N-1
    bool bottom_exact = true;     // degree 0

    bool operator==(const SequenceRecord&) const = default;
};

struct ComparisonRecord
{
    std::string theory;
    std::vector<bool> quasi_isomorphism;   // per degree 0 .. N
    std::vector<bool> injective;           // comparison chain map degreewise injective, 0 .. N
    bool injectivity_asserted = false;

    bool all_quasi_isomorphic() const
    {
        for (bool b : quasi_isomorphism)
            if (!b)
                return false;
        return true;
    }

    bool operator==(const ComparisonRecord&) const = default;
};

struct BarInvariance
{
    std::vector<Index> A;          // HR_n(A)
    std::vector<Index> D;          // HR_n(D)
    std::vector<Index> A_dual;     // HR^n(A)
    std::vector<Index> D_dual;     // HR^n(D)
    bool in_hypothesis = false;
    bool equal = false;
    bool vanishing_asserted = false;   // A has a one-sided unit
    bool vanishing = false;

    bool operator==(const BarInvariance&) const = default;
};

struct EquivalenceRecord
{
    std::string theory;
    bool homology_exact = false;
    bool cohomology_exact = false;
    Index nodes_compared = 0;
    Index nodes_agreeing = 0;
    bool betti_duality = false;
    bool pairing_nondegenerate = false;
    bool transpose_consistent = false;

    bool agree() const { return nodes_compared == nodes_agreeing && homology_exact == cohomology_exact; }

    bool operator==(const EquivalenceRecord&) const = default;
};

struct ExtensionSummary
{
    Index dim_B = 0;
    Index dim_A = 0;
    Index dim_D = 0;
    std::vector<std::string> basis_B;
    std::vector<std::string> basis_A;
    std::vector<std::string> basis_D;

    bool operator==(const ExtensionSummary&) const = default;
};

enum class ScenarioStatus
{
    Passed,
    Failed,
    SurrogateNotMet,
};

inline std::string to_string(ScenarioStatus s)
{
    switch (s)
    {
        case ScenarioStatus::Passed: return "passed";
        case ScenarioStatus::Failed: return "failed";
        case ScenarioStatus::SurrogateNotMet: return "surrogate-not-met";
    }
    return "failed";
}

struct ScenarioResult
{
    std::string name;
    ScenarioStatus status = ScenarioStatus::SurrogateNotMet;
    std::string surrogate;
    std::vector<Index> trace_sequence_dims;   // dims along the trace sequence
    bool trace_sequence_exact = false;
    bool cyclic_sequences_exact = false;
    bool dims_equal = false;
    std::vector<std::string> details;

    bool operator==(const ScenarioResult&) const = default;
};

struct ExcisionReport
{
    ExtensionSummary extension;
    Index max_degree = 3;
    HypothesisStatus hypothesis;
    std::vector<SequenceRecord> sequences;
    std::vector<ComparisonRecord> comparison;
    BarInvariance bar_invariance;
    std::vector<EquivalenceRecord> equivalence;
    std::vector<ScenarioResult> scenarios;
    std::vector<std::string> failed_assertions;
    std::vector<std::string> notes;
    std::string verdict;

    const SequenceRecord& sequence(const std::string& layer, const std::string& theory,
                                   const std::string& variance) const
    {
        for (const auto& s : sequences)
            if (s.layer == layer && s.theory == theory && s.variance == variance)
                return s;
        throw InvalidArgument("no sequence " + layer + "/" + theory + "/" + variance);
    }

    const ComparisonRecord& comparison_for(const std::string& theory) const
    {
        for (const auto& c : comparison)
            if (c.theory == theory)
                return c;
        throw InvalidArgument("no comparison for " + theory);
    }

    bool passed() const { return failed_assertions.empty(); }

    bool operator==(const ExcisionReport&) const = default;
};

// ------------------------------------------------------------------------
// Helpers
// ------------------------------------------------------------------------

enum class FactorConvention
{
    Retraction = 0,
    Factorization = 1,
    PartialFactorization = 2,
};

inline std::string to_string(FactorConvention c)
{
    switch (c)
    {
        case FactorConvention::Retraction: return "retraction";
        case FactorConvention::Factorization: return "factorization";
        case FactorConvention::PartialFactorization: return "partial-factorization";
    }
    return "factorization";
}

/**
 * The map X with c X "=" z under the rule described at the top of this file.
 * @param convention Updated to the weakest convention used so far.
 */
inline Matrix factor_through(const Matrix& c, const Matrix& z, FactorConvention& convention)
{
    if (auto r = left_inverse(c))
        return *r * z;
    Elimination e(c);
    std::vector<SparseVector> cols;
    FactorConvention used = FactorConvention::Factorization;
    for (const auto& col : z.columns())
    {
        auto x = e.solve(col);
        if (!x)
        {
            used = FactorConvention::PartialFactorization;
            cols.emplace_back();
        }
        else
            cols.push_back(std::move(*x));
    }
    if (static_cast<int>(used) > static_cast<int>(convention))
        convention = used;
    return Matrix(c.cols(), z.cols(), std::move(cols));
}

/// Exactness flags of a record over the reporting window of max degree n_report.
inline void summarize_exactness(SequenceRecord& r, Index n_report)
{
    r.exact = r.interior_exact = r.bottom_exact = true;
    for (const auto& node : r.nodes)
    {
        if (node.degree < 0 || static_cast<Index>(node.degree) >= n_report)
            continue;
        const bool ok = node.defect == 0 && node.composition_zero;
        if (node.degree == 0)
            r.bottom_exact = r.bottom_exact && ok;
        else
            r.interior_exact = r.interior_exact && ok;
    }
    r.exact = r.interior_exact && r.bottom_exact;
}

inline std::string theory_label(Theory t)
{
    switch (t)
    {
        case Theory::Hochschild: return "simplicial";
        case Theory::Bar: return "bar";
        case Theory::Cyclic: return "cyclic";
    }
    return "simplicial";
}

inline std::string complex_label(Theory t)
{
    switch (t)
    {
        case Theory::Hochschild: return "C";
        case Theory::Bar: return "CR";
        case Theory::Cyclic: return "CC";
    }
    return "C";
}

inline const char* surrogate_text()
{
    return "bounded approximate identity modeled by an exact one-sided unit in B";
}

// ------------------------------------------------------------------------
// Per-theory analysis
// ------------------------------------------------------------------------

struct TheoryAnalysis
{
    SequenceRecord snake_homology;
    SequenceRecord snake_cohomology;
    SequenceRecord candidate_homology;
    SequenceRecord candidate_cohomology;
    ComparisonRecord comparison;
    EquivalenceRecord equivalence;
    std::vector<Index> hA, hD, hA_dual, hD_dual;   // dims 0 .. N
    std::vector<std::string> failures;
};

namespace detail {

/**
 * Rebase the cohomology representatives of every group in `dual` (chain
 * degree m = top - n) to the basis dual to the homology representatives in
 * `primal` (degree n), for n in [lo, hi].  Returns false when a pairing
 * matrix is singular or the dimensions differ.
 */
inline bool align_dual_bases(const HomologyTable& primal, HomologyTable& dual, Index top, Index lo, Index hi)
{
    for (Index n = lo; n <= hi; ++n)
    {
        const HomologyGroup& h = primal.at(n);
        HomologyGroup& c = dual.at(top - n);
        if (h.dim() != c.dim())
            return false;
        if (h.dim() == 0)
            continue;
        auto z = h.representatives();
        auto phi = c.representatives();
        std::vector<std::vector<Rational>> g(phi.size(), std::vector<Rational>(z.size()));
        for (Index r = 0; r < phi.size(); ++r)
            for (Index k = 0; k < z.size(); ++k)
                g[r][k] = dot(phi[r], z[k]);
        auto ginv = inverse(Matrix::from_rows(phi.size(), z.size(), g));
        if (!ginv)
            return false;
        c.rebase(ginv->transpose());
    }
    return true;
}

}   // namespace detail

/**
 * Snake, candidate and dual sequences of one theory, with the comparison
 * verdicts and the homology/cohomology equivalence check.
 */
inline TheoryAnalysis analyze_theory(const KernelSubcomplex& ks, Index n_report)
{
    TheoryAnalysis out;
    const Index N = n_report;
    const Index top = ks.A->top();
    const std::string theory = to_string(ks.theory);
    const std::string label = theory_label(ks.theory);
    const std::string X = complex_label(ks.theory);

    // homology side: degrees 0 .. N+1
    SesHomology hom(ks.ses, 0, N + 1);
    HomologyTable hB = homology(*ks.B, 0, N + 1);
    std::vector<Matrix> cmap;
    for (Index n = 0; n <= N + 1; ++n)
        cmap.push_back(induced_map(ks.comparison, n, hB, hom.K()));

    // cohomology side: chain degrees m = top-N-1 .. top
    ShortExactSequence dses = dualize(ks.ses);   // D' -> A' -> Ker'
    SesHomology dhom(dses, top - N - 1, top);
    auto dualB = share(dualize(*ks.B));
    HomologyTable dB = homology(*dualB, top - N - 1, top);
    ChainMap dcomp = dualize(ks.comparison, dualB, dses.L);   // Ker' -> B'

    bool aligned = detail::align_dual_bases(hB, dB, top, 0, N + 1);
    aligned = detail::align_dual_bases(hom.K(), dhom.L(), top, 0, N + 1) && aligned;
    aligned = detail::align_dual_bases(hom.P(), dhom.P(), top, 0, N + 1) && aligned;
    aligned = detail::align_dual_bases(hom.L(), dhom.K(), top, 0, N + 1) && aligned;
    out.equivalence.theory = theory;
    out.equivalence.pairing_nondegenerate = aligned;
    out.equivalence.betti_duality = true;
    for (Index n = 0; n <= N + 1; ++n)
        if (hB.at(n).dim() != dB.at(top - n).dim() || hom.K().at(n).dim() != dhom.L().at(top - n).dim() ||
            hom.P().at(n).dim() != dhom.P().at(top - n).dim() || hom.L().at(n).dim() != dhom.K().at(top - n).dim())
            out.equivalence.betti_duality = false;
    if (!out.equivalence.betti_duality)
        out.failures.push_back(label + ": Betti numbers of a complex and its dual differ");
    if (!aligned)
        out.failures.push_back(label + ": homology/cohomology pairing degenerate");

    std::vector<Matrix> dcmap(top + 1);
    for (Index m = top - N - 1; m <= top; ++m)
        dcmap[m] = induced_map(dcomp, m, dhom.L(), dB);
    out.equivalence.transpose_consistent = aligned;
    if (aligned)
        for (Index n = 0; n <= N + 1; ++n)
            if (!(dcmap[top - n].transpose() == cmap[n]))
                out.equivalence.transpose_consistent = false;
    if (aligned && !out.equivalence.transpose_consistent)
        out.failures.push_back(label + ": dual comparison map is not the transpose of the comparison map");

    // layer 1: snake sequences
    TermNames names{X + "(A,D)", X + "(A)", X + "(D)"};
    LongSequence snake = long_exact_sequence(hom, 0, N, names);
    TermNames dnames{X + "(D)", X + "(A)", X + "(A,D)", true, top};
    LongSequence dsnake = long_exact_sequence(dhom, top - N, top, dnames);
    dsnake.incoming = Matrix(dhom.K().at(top).dim(), 0);   // nothing below H^0
    dsnake.compute_defects();

    auto record = [&](LongSequence& s, const std::string& layer, const std::string& variance,
                      const std::string& convention) {
        SequenceRecord r;
        r.name = (layer == "snake" ? "snake " : "excision ") + label + " " + variance;
        r.layer = layer;
        r.theory = theory;
        r.variance = variance;
        r.convention = convention;
        r.nodes = s.nodes;
        summarize_exactness(r, N);
        return r;
    };
    out.snake_homology = record(snake, "snake", "homology", "zig-zag");
    out.snake_cohomology = record(dsnake, "snake", "cohomology", "zig-zag");

    // layer 2: candidate homology sequence, H(Ker) replaced by H(B)
    FactorConvention conv = FactorConvention::Retraction;
    LongSequence cand;
    for (Index n = N + 1; n-- > 0;)
    {
        cand.nodes.push_back({static_cast<int>(n), "H_" + std::to_string(n) + "(B)", hB.at(n).dim(), 0, true});
        cand.nodes.push_back({static_cast<int>(n), "H_" + std::to_string(n) + "(A)", hom.P().at(n).dim(), 0, true});
        cand.nodes.push_back({static_cast<int>(n), "H_" + std::to_string(n) + "(D)", hom.L().at(n).dim(), 0, true});
        cand.maps.push_back(hom.inclusion(n) * cmap[n]);
        cand.maps.push_back(hom.projection(n));
        if (n > 0)
            cand.maps.push_back(factor_through(cmap[n - 1], hom.connecting(n), conv));
    }
    cand.incoming = factor_through(cmap[N], hom.connecting(N + 1), conv);
    cand.outgoing = Matrix(0, hom.L().at(0).dim());
    cand.compute_defects();
    out.candidate_homology = record(cand, "candidate", "homology", to_string(conv));

    // candidate cohomology sequence, H(Ker') replaced by H(B') via the dual comparison
    FactorConvention dconv = FactorConvention::Retraction;
    LongSequence dcand;
    for (Index m = top + 1; m-- > top - N;)
    {
        const Index n = top - m;
        dcand.nodes.push_back({static_cast<int>(n), "H^" + std::to_string(n) + "(D)", dhom.K().at(m).dim(), 0, true});
        dcand.nodes.push_back({static_cast<int>(n), "H^" + std::to_string(n) + "(A)", dhom.P().at(m).dim(), 0, true});
        dcand.nodes.push_back({static_cast<int>(n), "H^" + std::to_string(n) + "(B)", dB.at(m).dim(), 0, true});
        dcand.maps.push_back(dhom.inclusion(m));
        dcand.maps.push_back(dcmap[m] * dhom.projection(m));
        if (m > top - N)
            dcand.maps.push_back(factor_through(dcmap[m].transpose(), dhom.connecting(m).transpose(), dconv).transpose());
    }
    dcand.incoming = Matrix(dhom.K().at(top).dim(), 0);
    dcand.outgoing =
        factor_through(dcmap[top - N].transpose(), dhom.connecting(top - N).transpose(), dconv).transpose();
    dcand.compute_defects();
    out.candidate_cohomology = record(dcand, "candidate", "cohomology", to_string(dconv));

    // nodewise equivalence over degrees 0 .. N-1
    for (const auto& hn : out.candidate_homology.nodes)
    {
        if (static_cast<Index>(hn.degree) >= N)
            continue;
        std::string group = hn.group;
        group[1] = '^';
        for (const auto& cn : out.candidate_cohomology.nodes)
            if (cn.group == group)
            {
                ++out.equivalence.nodes_compared;
                if ((cn.defect == 0) == (hn.defect == 0) && cn.defect == hn.defect)
                    ++out.equivalence.nodes_agreeing;
            }
    }
    out.equivalence.homology_exact = out.candidate_homology.exact;
    out.equivalence.cohomology_exact = out.candidate_cohomology.exact;
    if (!out.equivalence.agree())
        out.failures.push_back(label + ": homology and cohomology candidate sequences disagree");

    if (!out.snake_homology.exact || !out.snake_cohomology.exact)
        out.failures.push_back(label + ": snake sequence not exact");

    // comparison verdicts
    out.comparison.theory = theory;
    for (Index n = 0; n <= N; ++n)
    {
        out.comparison.quasi_isomorphism.push_back(is_isomorphism(cmap[n]));
        out.comparison.injective.push_back(rank(ks.comparison.at(n)) == ks.B->dim(n));
    }

    for (Index n = 0; n <= N; ++n)
    {
        out.hA.push_back(hom.P().at(n).dim());
        out.hD.push_back(hom.L().at(n).dim());
        out.hA_dual.push_back(dhom.P().at(top - n).dim());
        out.hD_dual.push_back(dhom.K().at(top - n).dim());
    }
    return out;
}

// ------------------------------------------------------------------------
// Report
// ------------------------------------------------------------------------

struct ExcisionOptions
{
    double tensor_cap = default_tensor_cap;
    bool force = false;   // ignore the cap
    unsigned jobs = 1;    // > 1 analyzes the three theories concurrently
};

namespace detail {

/// Layers 1-3 without scenario checks and verdict.
inline ExcisionReport excision_core(const Extension& e, Index n_report, const ExcisionOptions& options)
{
    auto valid = validate_extension(e);
    if (!valid.ok())
        throw InvalidArgument("invalid extension: " + to_string(valid.failure) + ": " + valid.detail);
    if (!options.force)
        check_degree_cap(e.A->dim(), n_report, options.tensor_cap);

    ExcisionReport r;
    r.max_degree = n_report;
    r.extension = {e.B->dim(), e.A->dim(), e.D->dim(), e.B->basis_names(), e.A->basis_names(), e.D->basis_names()};

    UnitWitness unit = find_unit(*e.B);
    r.hypothesis.unit_side = unit.side;
    r.hypothesis.unit_element = unit.element;
    r.hypothesis.met = unit.exists();
    r.hypothesis.surrogate = surrogate_text();

    const Index top = internal_top(n_report);
    TensorKernels tk = tensor_kernels(e, top);
    const std::array<Theory, 3> theories{Theory::Hochschild, Theory::Bar, Theory::Cyclic};
    auto run = [&](Theory t) {
        KernelSubcomplex ks = t == Theory::Cyclic ? cyclic_kernel_subcomplex(e, n_report, &tk)
                                                  : kernel_subcomplex(e, n_report, t, &tk);
        return std::pair{analyze_theory(ks, n_report), betti_numbers(*ks.B, n_report)};
    };
    std::vector<std::pair<TheoryAnalysis, std::vector<Index>>> results;
    if (options.jobs > 1)
    {
        std::vector<std::future<std::pair<TheoryAnalysis, std::vector<Index>>>> pending;
        for (Theory t : theories)
            pending.push_back(std::async(std::launch::async, run, t));
        for (auto& f : pending)
            results.push_back(f.get());
    }
    else
        for (Theory t : theories)
            results.push_back(run(t));
    std::vector<TheoryAnalysis> analyses;
    for (auto& [a, betti] : results)
        analyses.push_back(std::move(a));
    r.hypothesis.bar_homology_B = results[1].second;

    for (auto& a : analyses)
        r.sequences.push_back(a.snake_homology);
    for (auto& a : analyses)
        r.sequences.push_back(a.snake_cohomology);
    for (auto& a : analyses)
        r.sequences.push_back(a.candidate_homology);
    for (auto& a : analyses)
        r.sequences.push_back(a.candidate_cohomology);
    for (auto& a : analyses)
    {
        a.comparison.injectivity_asserted = r.hypothesis.met;
        r.comparison.push_back(a.comparison);
        r.equivalence.push_back(a.equivalence);
        for (auto& f : a.failures)
            r.failed_assertions.push_back(f);
    }

    const TheoryAnalysis& bar = analyses[1];
    r.bar_invariance.A = bar.hA;
    r.bar_invariance.D = bar.hD;
    r.bar_invariance.A_dual = bar.hA_dual;
    r.bar_invariance.D_dual = bar.hD_dual;
    r.bar_invariance.in_hypothesis = r.hypothesis.met;
    r.bar_invariance.equal = bar.hA == bar.hD && bar.hA_dual == bar.hD_dual;
    r.bar_invariance.vanishing_asserted = find_unit(*e.A).exists();
    r.bar_invariance.vanishing = true;
    for (Index n = 0; n <= n_report; ++n)
        if (bar.hA[n] != 0 || bar.hD[n] != 0 || bar.hA_dual[n] != 0 || bar.hD_dual[n] != 0)
            r.bar_invariance.vanishing = false;

    if (r.hypothesis.met)
    {
        for (const auto& a : analyses)
        {
            const std::string label = theory_label(*parse_theory(a.comparison.theory));
            if (!a.candidate_homology.exact || !a.candidate_cohomology.exact)
                r.failed_assertions.push_back(label + ": candidate excision sequence not exact although B has a unit");
            if (!a.comparison.all_quasi_isomorphic())
                r.failed_assertions.push_back(label + ": comparison map not a quasi-isomorphism although B has a unit");
            for (bool inj : a.comparison.injective)
                if (!inj)
                {
                    r.failed_assertions.push_back(label + ": comparison map not injective although B has a unit");
                    break;
                }
        }
        if (!r.bar_invariance.equal)
            r.failed_assertions.push_back("bar homology of A and D differ although B has a unit");
    }
    if (r.bar_invariance.vanishing_asserted && !r.bar_invariance.vanishing)
        r.failed_assertions.push_back("bar homology does not vanish although A has a unit");
    for (const auto& a : analyses)
        if (a.comparison.theory != "cyclic")
            for (bool inj : a.comparison.injective)
                if (!inj)
                {
                    r.failed_assertions.push_back(theory_label(*parse_theory(a.comparison.theory)) +
                                                  ": tensor powers of i not injective");
                    break;
                }

    r.notes.push_back(std::string("hypothesis surrogate: ") + surrogate_text());
    r.notes.push_back("degrees above " + std::to_string(n_report) + " are computed internally up to " +
                      std::to_string(top) + "; pass/fail uses degrees 0 .. " +
                      std::to_string(n_report == 0 ? 0 : n_report - 1));
    r.notes.push_back("candidate connecting maps: retraction = left inverse of the comparison map; "
                      "factorization = column-wise solve; partial-factorization = unsolvable columns set to zero");

    return r;
}

}   // namespace detail

// ------------------------------------------------------------------------
// Verdicts derived from a report
// ------------------------------------------------------------------------

enum class EquivalenceVerdict
{
    EquivalentExact,
    EquivalentInexact,
    NotEquivalent,
};

inline std::string to_string(EquivalenceVerdict v)
{
    switch (v)
    {
        case EquivalenceVerdict::EquivalentExact: return "equivalent-and-exact";
        case EquivalenceVerdict::EquivalentInexact: return "equivalent-and-inexact";
        case EquivalenceVerdict::NotEquivalent: return "not-equivalent";
    }
    return "not-equivalent";
}

/// Homology-side exactness ⇔ cohomology-side exactness, for the simplicial and cyclic theories.
inline EquivalenceVerdict check_hlgy_cohlgy_equivalence(const ExcisionReport& r)
{
    bool exact = true;
    for (const auto& e : r.equivalence)
    {
        if (!e.agree() || !e.betti_duality || !e.pairing_nondegenerate)
            return EquivalenceVerdict::NotEquivalent;
        if (e.theory != "bar")
            exact = exact && e.homology_exact;
    }
    return exact ? EquivalenceVerdict::EquivalentExact : EquivalenceVerdict::EquivalentInexact;
}


struct BarInvarianceVerdict
{
    bool in_hypothesis = false;
    bool equal = false;
    bool vanishing_asserted = false;
    bool vanishing = false;
    bool passed = false;   // meaningful only in hypothesis
};

inline BarInvarianceVerdict check_bar_invariance(const ExcisionReport& r)
{
    const auto& b = r.bar_invariance;
    BarInvarianceVerdict v{b.in_hypothesis, b.equal, b.vanishing_asserted, b.vanishing, false};
    v.passed = (!b.in_hypothesis || b.equal) && (!b.vanishing_asserted || b.vanishing);
    return v;
}


// ------------------------------------------------------------------------
// Scenario checks with finite-dimensional surrogates
// ------------------------------------------------------------------------

namespace detail {

inline const SequenceNode& node(const SequenceRecord& s, const std::string& group)
{
    for (const auto& n : s.nodes)
        if (n.group == group)
            return n;
    throw InvalidArgument("sequence has no node " + group);
}

inline bool node_exact(const SequenceRecord& s, const std::string& group)
{
    const auto& n = node(s, group);
    return n.defect == 0 && n.composition_zero;
}

inline std::string up(Index n, const char* x)
{
    return "H^" + std::to_string(n) + "(" + x + ")";
}

/// Unital with H_n = 0 for 1 <= n <= N.
inline bool amenable_surrogate(const Algebra& a, Index n_report)
{
    if (find_one_sided_unit(a, UnitSide::TwoSided).side != UnitSide::TwoSided)
        return false;
    auto h = homology_dims(a, Theory::Hochschild, n_report);
    for (Index n = 1; n <= n_report; ++n)
        if (h[n] != 0)
            return false;
    return true;
}

}   // namespace detail

/**
 * Amenability surrogate for B: two-sided unit and H_n(B) = 0 for
 * 1 <= n <= N.  Checks dim H^n(A) = dim H^n(D) for 2 <= n <= N, exactness of
 * 0 -> D^tr -> A^tr -> B^tr -> H^1(D) -> H^1(A) -> 0 and of the cyclic
 * sequences 0 -> HC^{2k}(D) -> HC^{2k}(A) -> B^tr -> HC^{2k+1}(D) -> HC^{2k+1}(A) -> 0
 * for 2k+1 <= N.
 *
 * With `d_amenable` the roles are swapped (same surrogate for D, one-sided
 * unit in B): H^n(A) = H^n(B) for 1 <= n <= N, 0 -> D^tr -> A^tr -> B^tr -> 0
 * and 0 -> HC^{2k+1}(A) -> HC^{2k+1}(B) -> D^tr -> HC^{2k+2}(A) -> HC^{2k+2}(B) -> 0.
 */
inline ScenarioResult amenable_scenario_check(const Extension& e, const ExcisionReport& r, bool d_amenable = false)
{
    ScenarioResult res;
    res.name = d_amenable ? "amenable-D" : "amenable-B";
    const Index N = r.max_degree;
    if (!d_amenable)
    {
        res.surrogate = "B amenable: two-sided unit and H_n(B) = 0 for 1 <= n <= " + std::to_string(N);
        if (!detail::amenable_surrogate(*e.B, N))
            return res;
    }
    else
    {
        res.surrogate = "D amenable: two-sided unit and H_n(D) = 0 for 1 <= n <= " + std::to_string(N) +
                        "; B has a one-sided unit";
        if (!detail::amenable_surrogate(*e.D, N) || !find_unit(*e.B).exists())
            return res;
    }

    const auto& hs = r.sequence("candidate", "hochschild", "cohomology");
    const auto& cs = r.sequence("candidate", "cyclic", "cohomology");
    using detail::node;
    using detail::node_exact;
    using detail::up;
    const Index trB = trace_space(*e.B).dim(), trA = trace_space(*e.A).dim(), trD = trace_space(*e.D).dim();

    bool traces_match = node(hs, up(0, "D")).dim == trD && node(hs, up(0, "A")).dim == trA &&
                        node(hs, up(0, "B")).dim == trB;
    if (!traces_match)
        res.details.push_back("trace space dimensions differ from H^0");

    res.dims_equal = true;
    res.cyclic_sequences_exact = true;
    if (!d_amenable)
    {
        for (Index n = 2; n <= N; ++n)
            if (node(hs, up(n, "A")).dim != node(hs, up(n, "D")).dim)
                res.dims_equal = false;
        res.trace_sequence_dims = {trD, trA, trB};
        bool exact = traces_match;
        for (const char* x : {"D", "A", "B"})
            exact = exact && node_exact(hs, up(0, x));
        if (N >= 1)
        {
            res.trace_sequence_dims.push_back(node(hs, up(1, "D")).dim);
            res.trace_sequence_dims.push_back(node(hs, up(1, "A")).dim);
            exact = exact && node_exact(hs, up(1, "D")) && node_exact(hs, up(1, "A")) &&
                    node(hs, up(1, "B")).dim == 0;
        }
        res.trace_sequence_exact = exact;
        for (Index k = 0; 2 * k + 1 <= N; ++k)
        {
            const Index ev = 2 * k, od = 2 * k + 1;
            bool ok = node(cs, up(ev, "B")).dim == trB && node(cs, up(od, "B")).dim == 0;
            for (const char* x : {"D", "A", "B"})
                ok = ok && node_exact(cs, up(ev, x));
            ok = ok && node_exact(cs, up(od, "D")) && node_exact(cs, up(od, "A"));
            res.cyclic_sequences_exact = res.cyclic_sequences_exact && ok;
        }
    }
    else
    {
        for (Index n = 1; n <= N; ++n)
            if (node(hs, up(n, "A")).dim != node(hs, up(n, "B")).dim)
                res.dims_equal = false;
        res.trace_sequence_dims = {trD, trA, trB};
        bool exact = traces_match;
        for (const char* x : {"D", "A", "B"})
            exact = exact && node_exact(hs, up(0, x));
        if (N >= 1)
            exact = exact && node(hs, up(1, "D")).dim == 0;
        res.trace_sequence_exact = exact;
        for (Index k = 0; 2 * k + 2 <= N; ++k)
        {
            const Index od = 2 * k + 1, ev = 2 * k + 2;
            bool ok = node(cs, up(od, "D")).dim == 0 && node(cs, up(ev, "D")).dim == trD;
            ok = ok && node_exact(cs, up(od, "A")) && node_exact(cs, up(od, "B")) && node_exact(cs, up(ev, "D")) &&
                 node_exact(cs, up(ev, "A")) && node_exact(cs, up(ev, "B"));
            if (ev + 1 <= N)
                ok = ok && node(cs, up(ev + 1, "D")).dim == 0;
            res.cyclic_sequences_exact = res.cyclic_sequences_exact && ok;
        }
    }
    res.status = res.dims_equal && res.trace_sequence_exact && res.cyclic_sequences_exact ? ScenarioStatus::Passed
                                                                                         : ScenarioStatus::Failed;
    return res;
}


/**
 * Tracelessness surrogate for B: two-sided unit, no nonzero trace and
 * H_n(B) = 0 for n <= N.  Among nonzero finite-dimensional algebras over Q
 * the unit itself gives a nonzero class in H_0, so only B = 0 qualifies.
 * Checks dim H^n(A) = dim H^n(D) and dim HC^n(A) = dim HC^n(D) for 0 <= n <= N.
 */
inline ScenarioResult traceless_scenario_check(const Extension& e, const ExcisionReport& r)
{
    ScenarioResult res;
    res.name = "traceless-B";
    const Index N = r.max_degree;
    res.surrogate = "B traceless: two-sided unit, trivial trace space and H_n(B) = 0 for 0 <= n <= " +
                    std::to_string(N);
    if (find_one_sided_unit(*e.B, UnitSide::TwoSided).side != UnitSide::TwoSided || trace_space(*e.B).dim() != 0)
        return res;
    const auto& hs = r.sequence("candidate", "hochschild", "homology");
    for (Index n = 0; n <= N; ++n)
        if (detail::node(hs, "H_" + std::to_string(n) + "(B)").dim != 0)
            return res;
    const auto& hc = r.sequence("candidate", "hochschild", "cohomology");
    const auto& cc = r.sequence("candidate", "cyclic", "cohomology");
    res.dims_equal = true;
    for (Index n = 0; n <= N; ++n)
        for (const auto* s : {&hc, &cc})
            if (detail::node(*s, detail::up(n, "A")).dim != detail::node(*s, detail::up(n, "D")).dim)
                res.dims_equal = false;
    res.trace_sequence_exact = res.cyclic_sequences_exact = res.dims_equal;
    res.status = res.dims_equal ? ScenarioStatus::Passed : ScenarioStatus::Failed;
    return res;
}

// ------------------------------------------------------------------------
// Entry points
// ------------------------------------------------------------------------

/**
 * Full three-layer analysis plus the amenable and traceless scenario
 * checks.  Throws InvalidArgument for an invalid extension and
 * DegreeCapExceeded when dim A is too large for n_report (unless forced).
 */
inline ExcisionReport excision_report(const Extension& e, Index n_report, const ExcisionOptions& options = {})
{
    ExcisionReport r = detail::excision_core(e, n_report, options);
    r.scenarios.push_back(amenable_scenario_check(e, r, false));
    r.scenarios.push_back(amenable_scenario_check(e, r, true));
    r.scenarios.push_back(traceless_scenario_check(e, r));
    for (const auto& s : r.scenarios)
        if (s.status == ScenarioStatus::Failed)
            r.failed_assertions.push_back(s.name + ": scenario check failed although its surrogate holds");

    bool candidates_exact = true;
    for (const auto& s : r.sequences)
        if (s.layer == "candidate")
            candidates_exact = candidates_exact && s.exact;
    if (!r.passed())
        r.verdict = "assertion-failed";
    else if (r.hypothesis.met)
        r.verdict = "excision-holds";
    else
        r.verdict = candidates_exact ? "out-of-hypothesis: excision-holds" : "out-of-hypothesis: excision-fails";
    return r;
}

inline EquivalenceVerdict check_hlgy_cohlgy_equivalence(const Extension& e, Index n_report)
{
    return check_hlgy_cohlgy_equivalence(excision_report(e, n_report));
}

inline BarInvarianceVerdict check_bar_invariance(const Extension& e, Index n_report)
{
    return check_bar_invariance(excision_report(e, n_report));
}

inline ScenarioResult amenable_scenario_check(const Extension& e, Index n_report, bool d_amenable = false)
{
    return amenable_scenario_check(e, detail::excision_core(e, n_report, {}), d_amenable);
}

inline ScenarioResult traceless_scenario_check(const Extension& e, Index n_report)
{
    return traceless_scenario_check(e, detail::excision_core(e, n_report, {}));
}

}   // namespace hc

#endif
