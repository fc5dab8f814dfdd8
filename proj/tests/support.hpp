/**
 * Shared helpers for the unit tests and the acceptance binary.
 */
#ifndef HC_TESTS_SUPPORT_HPP
#define HC_TESTS_SUPPORT_HPP

#include <random>
#include <string>
#include <vector>

#include "hc/complexes.hpp"
#include "hc/io.hpp"

namespace hc::testing {

/**
 * Acyclic complex: a direct sum of elementary complexes Q --id--> Q sitting
 * in degrees n and n-1, with mult[n] copies for n = 1 .. top.
 */
inline ChainComplex acyclic_complex(const std::vector<Index>& mult)
{
    const Index top = mult.size();
    std::vector<Index> dims(top + 1, 0);
    for (Index n = 1; n <= top; ++n)
    {
        dims[n] += mult[n - 1];
        dims[n - 1] += mult[n - 1];
    }
    // K_n lists the bottom ends of the E(n+1) copies, then the top ends of the E(n) copies.
    std::vector<Matrix> diffs;
    for (Index n = 0; n < top; ++n)
    {
        std::vector<SparseVector> cols(dims[n + 1]);
        const Index offset = n + 1 < top ? mult[n + 1] : 0;
        for (Index c = 0; c < mult[n]; ++c)
            cols[offset + c] = unit_vector(c);
        diffs.emplace_back(dims[n], dims[n + 1], std::move(cols));
    }
    return ChainComplex(dims, std::move(diffs));
}

/** Outcome of the four-degree window implications for one chain map. */
struct WindowResult
{
    std::size_t premises_I = 0;    // cohomology iso on [n-1, n+2]
    std::size_t premises_II = 0;   // homology iso on [n-1, n+2]
    std::size_t counterexamples = 0;
    bool full_equivalence = true;  // quasi-iso verdicts agree degreewise
    std::vector<bool> qi_homology;
    std::vector<bool> qi_cohomology;
};

/**
 * Homology verdicts of ψ, and cohomology verdicts from the transposed map
 * between the re-indexed duals (H^k = H'_{top-k}), computed independently.
 * (I): cohomology isomorphisms on [n-1, n+2] force H_n(ψ) iso.
 * (II): homology isomorphisms on [n-1, n+2] force H^n(ψ) iso.
 */
inline WindowResult window_properties(const ChainMap& psi)
{
    WindowResult r;
    const Index top = psi.source->top();
    r.qi_homology = check_quasi_isomorphism(psi);
    auto ds = share(dualize(*psi.source));
    auto dt = share(dualize(*psi.target));
    ChainMap dual = dualize(psi, ds, dt);
    std::vector<bool> qd = check_quasi_isomorphism(dual);
    r.qi_cohomology.resize(top + 1);
    for (Index k = 0; k <= top; ++k)
        r.qi_cohomology[k] = qd[top - k];
    for (Index n = 1; n + 2 <= top; ++n)
    {
        bool coh = true, hom = true;
        for (Index k = n - 1; k <= n + 2; ++k)
        {
            coh = coh && r.qi_cohomology[k];
            hom = hom && r.qi_homology[k];
        }
        if (coh)
        {
            ++r.premises_I;
            if (!r.qi_homology[n])
                ++r.counterexamples;
        }
        if (hom)
        {
            ++r.premises_II;
            if (!r.qi_cohomology[n])
                ++r.counterexamples;
        }
    }
    r.full_equivalence = r.qi_homology == r.qi_cohomology;
    return r;
}

/**
 * Seeded random injective chain map.  Even seeds take the inclusion of a
 * random short exact sequence; odd seeds include K into K ⊕ L with L
 * acyclic, conjugated by a random unipotent change of basis, so every
 * degree is a quasi-isomorphism.
 */
inline ChainMap random_injective_chain_map(std::uint64_t seed, const RandomBudget& budget = {})
{
    if (seed % 2 == 0)
        return random_ses_generator(seed, budget).inj;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Index> d(0, budget.max_dim / 2);
    std::vector<Index> dk(budget.degrees), mult(budget.degrees - 1);
    for (auto& x : dk)
        x = d(rng);
    for (auto& x : mult)
        x = d(rng) / 2;
    ChainComplex k = random_complex(rng, dk);
    ChainComplex l = acyclic_complex(mult);
    ShortExactSequence s = direct_sum_sequence(k, l);
    std::vector<Matrix> g, ginv;
    for (Index n = 0; n <= s.P->top(); ++n)
    {
        g.push_back(detail::random_unipotent(rng, s.P->dim(n)));
        ginv.push_back(*inverse(g.back()));
    }
    std::vector<Matrix> diffs;
    for (Index n = 0; n < s.P->top(); ++n)
        diffs.push_back(g[n] * s.P->d(n) * ginv[n + 1]);
    auto p = share(ChainComplex(s.P->dims(), std::move(diffs)));
    ChainMap psi{s.K, p, {}};
    for (Index n = 0; n <= p->top(); ++n)
        psi.components.push_back(g[n] * s.inj.at(n));
    return psi;
}

/** Samples directory, with a fallback relative to the working directory. */
inline std::string samples_dir()
{
#ifdef HC_SAMPLES_DIR
    return HC_SAMPLES_DIR;
#else
    return "samples";
#endif
}

inline Extension load_extension(const std::string& name)
{
    return extension_from_json(load_json_file(samples_dir() + "/extensions/" + name + ".json"));
}

inline Algebra load_algebra(const std::string& name)
{
    return algebra_from_json(load_json_file(samples_dir() + "/algebras/" + name + ".json"));
}

/** The extension corpus whose B has a one-sided unit. */
inline std::vector<std::string> unital_corpus()
{
    return {"e1_field_in_field2",
            "matrix2_in_matrix2_field",
            "ut2_left_unit",
            "ut2_right_unit",
            "b_equals_a_matrix2",
            "b_zero_upper_triangular",
            "field_in_field_plus_dual_numbers",
            "dual_numbers_in_dual_numbers_plus_field",
            "ut2_in_ut2_plus_field"};
}

/** Extensions outside the hypothesis. */
inline std::vector<std::string> non_unital_corpus()
{
    return {"e2_upper_triangular", "square_ideal_truncated_3", "nilpotent_ideal_dual_numbers"};
}

}   // namespace hc::testing

#endif
