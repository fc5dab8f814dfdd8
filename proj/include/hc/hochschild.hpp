/**
 * Concrete complexes of an algebra A: the simplicial (Hochschild) complex
 * C_n(A) = A^{⊗(n+1)}, the bar complex on the same spaces, the cyclic
 * quotient complex CC_n(A) = C_n(A) / Im(1 - t_n), the trace space, and the
 * kernel subcomplexes Ker j^{⊗•} attached to an extension.
 *
 * Basis tensors e_{i0} ⊗ .. ⊗ e_{in} are flattened row-major with the
 * leftmost factor most significant, matching kron().  Sign conventions are
 * listed in docs/sign_conventions.md.
 */
#ifndef HC_HOCHSCHILD_HPP
#define HC_HOCHSCHILD_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "complexes.hpp"
#include "errors.hpp"
#include "linalg.hpp"

namespace hc {

enum class Theory
{
    Hochschild,
    Cyclic,
    Bar,
};

inline std::string to_string(Theory t)
{
    switch (t)
    {
        case Theory::Hochschild: return "hochschild";
        case Theory::Cyclic: return "cyclic";
        case Theory::Bar: return "bar";
    }
    return "hochschild";
}

inline std::optional<Theory> parse_theory(const std::string& s)
{
    if (s == "hochschild")
        return Theory::Hochschild;
    if (s == "cyclic")
        return Theory::Cyclic;
    if (s == "bar")
        return Theory::Bar;
    return std::nullopt;
}

/// Complexes are built two degrees past the reported range so truncation cannot reach it.
inline Index internal_top(Index n_report) { return n_report + 2; }

inline constexpr double default_tensor_cap = 1e6;

/// Number of basis tensors in the top space, (dim A)^{N_internal + 1}.
inline double top_tensor_count(Index dim, Index n_report)
{
    return std::pow(static_cast<double>(dim), static_cast<double>(internal_top(n_report) + 1));
}

/// Throws DegreeCapExceeded when the top space would exceed `cap` basis tensors.
inline void check_degree_cap(Index dim, Index n_report, double cap = default_tensor_cap)
{
    const double count = top_tensor_count(dim, n_report);
    if (count > cap)
        throw DegreeCapExceeded("dim " + std::to_string(dim) + " at max degree " + std::to_string(n_report) +
                                " needs " + std::to_string(static_cast<long long>(count)) +
                                " basis tensors (cap " + std::to_string(static_cast<long long>(cap)) + ")");
}

/**
 * Bijection between basis tensors of A^{⊗factors} and flat indices.
 */
class TensorIndex
{
    public:
        TensorIndex(Index dim, Index factors) : dim_(dim), factors_(factors)
        {
            size_ = 1;
            for (Index k = 0; k < factors; ++k)
                size_ *= dim;
        }

        Index dim() const { return dim_; }
        Index factors() const { return factors_; }
        Index size() const { return size_; }

        Index encode(const std::vector<Index>& digits) const
        {
            if (digits.size() != factors_)
                throw InvalidArgument("wrong number of tensor factors");
            Index flat = 0;
            for (Index x : digits)
            {
                if (x >= dim_)
                    throw InvalidArgument("tensor factor index out of range");
                flat = flat * dim_ + x;
            }
            return flat;
        }

        std::vector<Index> decode(Index flat) const
        {
            std::vector<Index> digits(factors_);
            for (Index k = factors_; k-- > 0;)
            {
                digits[k] = flat % dim_;
                flat /= dim_;
            }
            return digits;
        }

    private:
        Index dim_;
        Index factors_;
        Index size_;
};

inline Index power(Index base, Index exp)
{
    Index r = 1;
    while (exp-- > 0)
        r *= base;
    return r;
}

/**
 * d_n : C_{n+1}(A) -> C_n(A), assembled column by column:
 *   Σ_{k=0..n} (-1)^k a0 ⊗ .. ⊗ a_k a_{k+1} ⊗ .. ⊗ a_{n+1}
 *   + (-1)^{n+1} a_{n+1} a_0 ⊗ a_1 ⊗ .. ⊗ a_n        (only when wrap is set)
 * Without the wrap-around term this is the bar differential.
 */
inline Matrix tensor_differential(const Algebra& a, Index n, bool wrap)
{
    const Index d = a.dim();
    const TensorIndex src(d, n + 2);
    const Index rows = power(d, n + 1);
    std::vector<SparseVector> cols(src.size());
    std::vector<Index> pw(n + 2, 1);   // pw[k] = d^k
    for (Index k = 1; k < n + 2; ++k)
        pw[k] = pw[k - 1] * d;

    std::vector<std::pair<Index, Rational>> terms;
    for (Index flat = 0; flat < src.size(); ++flat)
    {
        const std::vector<Index> x = src.decode(flat);
        terms.clear();
        for (Index k = 0; k <= n; ++k)
        {
            // positions 0..k-1 stay, k and k+1 merge, k+2..n+1 shift left by one
            Index prefix = 0;
            for (Index p = 0; p < k; ++p)
                prefix = prefix * d + x[p];
            Index suffix = 0;
            for (Index p = k + 2; p <= n + 1; ++p)
                suffix = suffix * d + x[p];
            const Index tail = n - k;   // factors after the merged one
            const bool negative = k % 2 == 1;
            for (const auto& [m, c] : a.product(x[k], x[k + 1]))
            {
                Index idx = (prefix * d + m) * pw[tail] + suffix;
                terms.emplace_back(idx, negative ? Rational(-c) : c);
            }
        }
        if (wrap)
        {
            Index middle = 0;
            for (Index p = 1; p <= n; ++p)
                middle = middle * d + x[p];
            const bool negative = (n + 1) % 2 == 1;
            for (const auto& [m, c] : a.product(x[n + 1], x[0]))
                terms.emplace_back(m * pw[n] + middle, negative ? Rational(-c) : c);
        }
        cols[flat] = combine_terms(terms);
    }
    return Matrix(rows, src.size(), std::move(cols));
}

namespace detail {

inline ChainComplex tensor_complex(const Algebra& a, Index top, bool wrap)
{
    std::vector<Index> dims;
    std::vector<Matrix> diffs;
    for (Index n = 0; n <= top; ++n)
        dims.push_back(power(a.dim(), n + 1));
    for (Index n = 0; n < top; ++n)
        diffs.push_back(tensor_differential(a, n, wrap));
    return ChainComplex(std::move(dims), std::move(diffs));
}

}   // namespace detail

/// Simplicial (Hochschild) complex C_0 .. C_{N+2}.
inline ChainComplex hochschild_complex(const Algebra& a, Index n_report)
{
    return detail::tensor_complex(a, internal_top(n_report), true);
}

/// Bar complex CR_0 .. CR_{N+2}.
inline ChainComplex bar_complex(const Algebra& a, Index n_report)
{
    return detail::tensor_complex(a, internal_top(n_report), false);
}

/// t_n(a0 ⊗ .. ⊗ an) = (-1)^n an ⊗ a0 ⊗ .. ⊗ a_{n-1}; t_0 = id.
inline Matrix cyclic_operator(const Algebra& a, Index n)
{
    const Index d = a.dim();
    const Index size = power(d, n + 1);
    const Index high = power(d, n);
    const Rational sign = n % 2 == 0 ? Rational(1) : Rational(-1);
    std::vector<SparseVector> cols(size);
    for (Index flat = 0; flat < size; ++flat)
    {
        // a_n is the least significant digit; it moves to the front
        const Index last = flat % d;
        const Index rest = flat / d;
        cols[flat] = {{last * high + rest, sign}};
    }
    return Matrix(size, size, std::move(cols));
}

struct CyclicQuotientData
{
    Index degree = 0;
    Matrix t;
    Matrix one_minus_t;
    Quotient quotient;     // C_n / Im(1 - t_n)
    Matrix projection;     // C_n -> CC_n
    Matrix section;        // CC_n -> C_n, basis vectors at non-pivot indices
    Index cc_dim = 0;
};

struct CyclicComplex
{
    ChainComplex complex;
    std::vector<CyclicQuotientData> data;
};

inline CyclicQuotientData cyclic_quotient(const Algebra& a, Index n)
{
    CyclicQuotientData q;
    q.degree = n;
    q.t = cyclic_operator(a, n);
    q.one_minus_t = Matrix::identity(q.t.rows()) - q.t;
    q.quotient = Quotient(image_basis(q.one_minus_t));
    q.projection = q.quotient.projection_matrix();
    q.cc_dim = q.quotient.dim();
    std::vector<SparseVector> cols;
    for (Index k = 0; k < q.cc_dim; ++k)
        cols.push_back(unit_vector(q.quotient.representative(k)));
    q.section = Matrix(q.t.rows(), q.cc_dim, std::move(cols));
    return q;
}

/**
 * Quotient complex of a Hochschild complex.  The induced differential is
 * π_n d_n σ_{n+1}; before using it, d_n (1 - t_{n+1}) is checked to land in
 * Im(1 - t_n), else InducedMapNotWellDefined.
 */
inline CyclicComplex cyclic_complex_from(const Algebra& a, const ChainComplex& c)
{
    CyclicComplex cc;
    for (Index n = 0; n <= c.top(); ++n)
        cc.data.push_back(cyclic_quotient(a, n));
    std::vector<Index> dims;
    std::vector<Matrix> diffs;
    for (Index n = 0; n <= c.top(); ++n)
        dims.push_back(cc.data[n].cc_dim);
    for (Index n = 0; n < c.top(); ++n)
    {
        const auto& lower = cc.data[n];
        const auto& upper = cc.data[n + 1];
        if (!(lower.projection * (c.d(n) * upper.one_minus_t)).is_zero())
            throw InducedMapNotWellDefined("d_" + std::to_string(n) + " does not preserve Im(1 - t)");
        diffs.push_back(lower.projection * (c.d(n) * upper.section));
    }
    cc.complex = ChainComplex(std::move(dims), std::move(diffs));
    return cc;
}

inline CyclicComplex cyclic_complex(const Algebra& a, Index n_report)
{
    return cyclic_complex_from(a, hochschild_complex(a, n_report));
}

/// Complex of the chosen theory, built to degree N + 2.
inline ChainComplex build_complex(const Algebra& a, Theory theory, Index n_report)
{
    switch (theory)
    {
        case Theory::Hochschild: return hochschild_complex(a, n_report);
        case Theory::Bar: return bar_complex(a, n_report);
        case Theory::Cyclic: return cyclic_complex(a, n_report).complex;
    }
    throw InvalidArgument("unknown theory");
}

/**
 * Homology (or, with dual, cohomology) dimensions for degrees 0 .. N.
 * Cohomology is computed on the re-indexed dual complex.
 */
inline std::vector<Index> homology_dims(const Algebra& a, Theory theory, Index n_report, bool dual = false)
{
    ChainComplex k = build_complex(a, theory, n_report);
    if (!dual)
        return betti_numbers(k, n_report);
    ChainComplex kd = dualize(k);
    const Index top = kd.top();
    std::vector<Index> all = betti_numbers(kd, top);
    std::vector<Index> out;
    for (Index n = 0; n <= n_report; ++n)
        out.push_back(all[top - n]);
    return out;
}

/**
 * Trace functionals f with f(ab) = f(ba), as a subspace of A^* in the dual
 * basis: the kernel of the transposed commutator map A ⊗ A -> A.
 */
inline Subspace trace_space(const Algebra& a)
{
    return kernel_basis(tensor_differential(a, 0, true).transpose());
}

// ------------------------------------------------------------------------
// Kernel subcomplexes of an extension
// ------------------------------------------------------------------------

/**
 * Subcomplex spanned degreewise by `spaces` (subspaces of the chain spaces
 * of c), in the coordinates of their echelon bases.  `inclusions` receives
 * the basis matrices.  Throws ClosureViolation when d leaves a subspace.
 */
inline ChainComplex restrict_complex(const ChainComplex& c, const std::vector<Subspace>& spaces,
                                     std::vector<Matrix>* inclusions = nullptr)
{
    std::vector<Index> dims;
    std::vector<Matrix> diffs;
    for (Index n = 0; n <= c.top(); ++n)
    {
        dims.push_back(spaces[n].dim());
        if (inclusions)
            inclusions->push_back(spaces[n].basis_matrix());
    }
    for (Index n = 0; n < c.top(); ++n)
    {
        std::vector<SparseVector> cols;
        for (const auto& v : spaces[n + 1].basis())
        {
            auto coords = spaces[n].sparse_coordinates(c.d(n).apply(v));
            if (!coords)
                throw ClosureViolation("d_" + std::to_string(n) + " leaves the subcomplex");
            cols.push_back(std::move(*coords));
        }
        diffs.emplace_back(dims[n], dims[n + 1], std::move(cols));
    }
    return ChainComplex(std::move(dims), std::move(diffs));
}

/// Columns of m written in the coordinates of `space`; throws ClosureViolation when a column is outside.
inline Matrix corestrict(const Matrix& m, const Subspace& space)
{
    std::vector<SparseVector> cols;
    for (const auto& col : m.columns())
    {
        auto coords = space.sparse_coordinates(col);
        if (!coords)
            throw ClosureViolation("map does not land in the subcomplex");
        cols.push_back(std::move(*coords));
    }
    return Matrix(space.dim(), m.cols(), std::move(cols));
}

/// Tensor powers of i and j and the kernels Ker j^{⊗(n+1)} for n = 0 .. top.
struct TensorKernels
{
    std::vector<Matrix> i_powers;
    std::vector<Matrix> j_powers;
    std::vector<Subspace> kernels;
};

inline TensorKernels tensor_kernels(const Extension& e, Index top)
{
    TensorKernels t;
    for (Index n = 0; n <= top; ++n)
    {
        t.i_powers.push_back(kron_power(e.i, n + 1));
        t.j_powers.push_back(kron_power(e.j, n + 1));
        t.kernels.push_back(kernel_basis(t.j_powers.back()));
    }
    return t;
}

/**
 * Everything attached to one theory of an extension: the complexes of B, A
 * and D, the kernel subcomplex of j_*, the comparison chain map from the
 * complex of B into it, and the short exact sequence
 * 0 -> Ker -> X(A) -> X(D) -> 0.
 */
struct KernelSubcomplex
{
    Theory theory = Theory::Hochschild;
    ComplexPtr B;
    ComplexPtr A;
    ComplexPtr D;
    ComplexPtr kernel;
    ChainMap comparison;        // X(B) -> Ker
    ShortExactSequence ses;     // Ker -> X(A) -> X(D)
};

namespace detail {

inline KernelSubcomplex assemble_kernel_subcomplex(Theory theory, ComplexPtr xb, ComplexPtr xa, ComplexPtr xd,
                                                   const std::vector<Subspace>& kernels,
                                                   const std::vector<Matrix>& i_maps,
                                                   const std::vector<Matrix>& j_maps)
{
    std::vector<Matrix> incl;
    auto ker = share(restrict_complex(*xa, kernels, &incl));
    ChainMap comparison{xb, ker, {}};
    ChainMap inj{ker, xa, std::move(incl)};
    ChainMap surj{xa, xd, j_maps};
    for (Index n = 0; n <= xa->top(); ++n)
        comparison.components.push_back(corestrict(i_maps[n], kernels[n]));
    if (auto bad = check_chain_map(comparison))
        throw ClosureViolation("comparison map is not a chain map at degree " + std::to_string(*bad));
    KernelSubcomplex k{theory, xb, xa, xd, ker, std::move(comparison), {}};
    k.ses = ShortExactSequence{ker, xa, xd, std::move(inj), std::move(surj)};
    return k;
}

}   // namespace detail

/**
 * Kernel subcomplex for the simplicial or bar theory.  The kernels depend
 * only on j, so a precomputed TensorKernels can be shared between theories.
 */
inline KernelSubcomplex kernel_subcomplex(const Extension& e, Index n_report, Theory theory = Theory::Hochschild,
                                          const TensorKernels* cache = nullptr)
{
    if (theory == Theory::Cyclic)
        throw InvalidArgument("use cyclic_kernel_subcomplex for the cyclic theory");
    const Index top = internal_top(n_report);
    TensorKernels local;
    if (!cache)
    {
        local = tensor_kernels(e, top);
        cache = &local;
    }
    const bool wrap = theory == Theory::Hochschild;
    auto xb = share(detail::tensor_complex(*e.B, top, wrap));
    auto xa = share(detail::tensor_complex(*e.A, top, wrap));
    auto xd = share(detail::tensor_complex(*e.D, top, wrap));
    return detail::assemble_kernel_subcomplex(theory, xb, xa, xd, cache->kernels, cache->i_powers, cache->j_powers);
}

/**
 * Cyclic version: Ker of the induced map CC(A) -> CC(D), which is checked to
 * coincide with the projection of Ker j^{⊗(n+1)}; the comparison map comes
 * from the induced map CC(B) -> CC(A).
 */
inline KernelSubcomplex cyclic_kernel_subcomplex(const Extension& e, Index n_report,
                                                 const TensorKernels* cache = nullptr)
{
    const Index top = internal_top(n_report);
    TensorKernels local;
    if (!cache)
    {
        local = tensor_kernels(e, top);
        cache = &local;
    }
    CyclicComplex cb = cyclic_complex_from(*e.B, detail::tensor_complex(*e.B, top, true));
    CyclicComplex ca = cyclic_complex_from(*e.A, detail::tensor_complex(*e.A, top, true));
    CyclicComplex cd = cyclic_complex_from(*e.D, detail::tensor_complex(*e.D, top, true));
    std::vector<Subspace> kernels;
    std::vector<Matrix> i_maps, j_maps;
    for (Index n = 0; n <= top; ++n)
    {
        Matrix jt = cd.data[n].projection * (cache->j_powers[n] * ca.data[n].section);
        Matrix it = ca.data[n].projection * (cache->i_powers[n] * cb.data[n].section);
        Subspace ker = kernel_basis(jt);
        Subspace projected(ca.data[n].cc_dim);
        for (const auto& v : cache->kernels[n].basis())
            projected.insert(ca.data[n].projection.apply(v));
        if (!(projected == ker))
            throw ClosureViolation("kernel of the induced cyclic map differs from the projected tensor kernel at degree " +
                                   std::to_string(n));
        kernels.push_back(std::move(ker));
        i_maps.push_back(std::move(it));
        j_maps.push_back(std::move(jt));
    }
    return detail::assemble_kernel_subcomplex(Theory::Cyclic, share(std::move(cb.complex)), share(std::move(ca.complex)),
                                              share(std::move(cd.complex)), kernels, i_maps, j_maps);
}

struct KernelSpanResult
{
    bool ok = true;
    Index kernel_dim = 0;
    Index span_dim = 0;
    Index expected_dim = 0;                    // a^n - (a - b)^n
    std::optional<SparseVector> counterexample;
};

/**
 * Compare Ker j^{⊗n} with Σ_i A^{⊗(i-1)} ⊗ i(B) ⊗ A^{⊗(n-i)} (n >= 1 factors):
 * containment both ways plus the inclusion-exclusion dimension count.
 */
inline KernelSpanResult verify_kernel_span(const Extension& e, Index n)
{
    if (n == 0)
        throw InvalidArgument("kernel span needs at least one tensor factor");
    const Index a = e.A->dim(), b = e.B->dim();
    Subspace ker = kernel_basis(kron_power(e.j, static_cast<unsigned>(n)));
    Subspace span(power(a, n));
    const Matrix id = Matrix::identity(a);
    for (Index k = 0; k < n; ++k)
    {
        Matrix m = kron(kron(kron_power(id, static_cast<unsigned>(k)), e.i), kron_power(id, static_cast<unsigned>(n - k - 1)));
        for (const auto& c : m.columns())
            span.insert(c);
    }
    KernelSpanResult r;
    r.kernel_dim = ker.dim();
    r.span_dim = span.dim();
    r.expected_dim = power(a, n) - power(a - b, n);
    for (const auto& v : span.basis())
        if (!ker.contains(v))
        {
            r.counterexample = v;
            break;
        }
    if (!r.counterexample)
        for (const auto& v : ker.basis())
            if (!span.contains(v))
            {
                r.counterexample = v;
                break;
            }
    r.ok = !r.counterexample && r.kernel_dim == r.span_dim && r.span_dim == r.expected_dim;
    return r;
}

}   // namespace hc

#endif
