/**
 * Finite chain complexes over Q: homology with deterministic bases, duals,
 * chain maps and their induced maps, short exact sequences of complexes,
 * the snake-lemma connecting morphism and long exact sequences with
 * per-node exactness defects.
 *
 * Conventions.  A complex stores spaces K_0 .. K_top and differentials
 * d_n : K_{n+1} -> K_n for n = 0 .. top-1.  Z_0 is all of K_0 and B_top = 0,
 * so a complex that is really a truncation of an infinite one has trustworthy
 * homology only below `top`.  Cochain complexes are stored re-indexed as
 * chain complexes: the dual of K has K'_m = (K_{top-m})^* and
 * d'_{m-1} = (d_{top-m})^T, so one homology routine serves both and
 * H^n(K^*) is H_{top-n}(K').
 */
#ifndef HC_COMPLEXES_HPP
#define HC_COMPLEXES_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"

namespace hc {

class ChainComplex
{
    public:
        ChainComplex() : dims_{0} {}

        /**
         * @param dims          dims[n] = dim K_n for n = 0 .. top.
         * @param differentials differentials[n] : K_{n+1} -> K_n, one fewer than dims.
         */
        ChainComplex(std::vector<Index> dims, std::vector<Matrix> differentials)
            : dims_(std::move(dims)), diffs_(std::move(differentials))
        {
            if (dims_.empty())
                throw InvalidArgument("a chain complex needs at least one degree");
            if (diffs_.size() + 1 != dims_.size())
                throw InvalidArgument("need exactly one differential per adjacent pair of degrees");
            for (Index n = 0; n < diffs_.size(); ++n)
                if (diffs_[n].rows() != dims_[n] || diffs_[n].cols() != dims_[n + 1])
                    throw InvalidArgument("differential d_" + std::to_string(n) + " has the wrong shape");
        }

        Index top() const { return dims_.size() - 1; }
        Index dim(Index n) const { return n < dims_.size() ? dims_[n] : 0; }
        const std::vector<Index>& dims() const { return dims_; }
        const Matrix& d(Index n) const { return diffs_.at(n); }
        const std::vector<Matrix>& differentials() const { return diffs_; }

        bool operator==(const ChainComplex&) const = default;

    private:
        std::vector<Index> dims_;
        std::vector<Matrix> diffs_;
};

using ComplexPtr = std::shared_ptr<const ChainComplex>;

inline ComplexPtr share(ChainComplex k)
{
    return std::make_shared<const ChainComplex>(std::move(k));
}

/// Zero complex with the given space dimensions.
inline ChainComplex zero_differential_complex(const std::vector<Index>& dims)
{
    std::vector<Matrix> diffs;
    for (Index n = 0; n + 1 < dims.size(); ++n)
        diffs.emplace_back(dims[n], dims[n + 1]);
    return ChainComplex(dims, std::move(diffs));
}

struct ComplexViolation
{
    Index degree;   // d_degree ∘ d_{degree+1} ≠ 0
    Index row;
    Index col;
    Rational value;
};

/// First degree n with d_n ∘ d_{n+1} ≠ 0, with a nonzero entry as witness.
inline std::optional<ComplexViolation> check_complex(const ChainComplex& k)
{
    for (Index n = 0; n + 1 < k.top(); ++n)
    {
        Matrix c = k.d(n) * k.d(n + 1);
        for (Index j = 0; j < c.cols(); ++j)
            if (!c.column(j).empty())
                return ComplexViolation{n, c.column(j).front().first, j, c.column(j).front().second};
    }
    return std::nullopt;
}

inline ChainComplex dualize(const ChainComplex& k)
{
    const Index top = k.top();
    std::vector<Index> dims(top + 1);
    for (Index m = 0; m <= top; ++m)
        dims[m] = k.dim(top - m);
    std::vector<Matrix> diffs;
    for (Index m = 0; m < top; ++m)
        diffs.push_back(k.d(top - m - 1).transpose());
    return ChainComplex(std::move(dims), std::move(diffs));
}

// ------------------------------------------------------------------------
// Homology
// ------------------------------------------------------------------------

/**
 * One homology group H_n = Z_n / B_n with representative cycles.  The
 * representatives are reduced against the boundaries, so the boundary basis
 * followed by the representatives is an echelon basis of Z_n and a cycle's
 * class is read off from its reduction coefficients.
 */
class HomologyGroup
{
    public:
        HomologyGroup() = default;

        HomologyGroup(Index degree, Subspace cycles, Subspace boundaries)
            : degree_(degree), cycles_(std::move(cycles)), boundaries_(std::move(boundaries)),
              combined_(boundaries_)
        {
            const Index h = cycles_.dim() - boundaries_.dim();
            for (const auto& z : cycles_.basis())
            {
                if (reps_.size() == h)
                    break;
                if (combined_.insert(z))
                    reps_.push_back(combined_.basis().back());
            }
            if (reps_.size() != h)
                throw Error("boundaries are not contained in cycles at degree " + std::to_string(degree));
        }

        Index degree() const { return degree_; }
        Index dim() const { return reps_.size(); }
        const Subspace& cycles() const { return cycles_; }
        const Subspace& boundaries() const { return boundaries_; }

        /// Representative cycles in the current basis of the group.
        std::vector<SparseVector> representatives() const
        {
            if (!change_)
                return reps_;
            std::vector<SparseVector> out;
            for (Index c = 0; c < change_->cols(); ++c)
            {
                SparseVector v;
                for (const auto& [r, a] : change_->column(c))
                    axpy(v, a, reps_[r]);
                out.push_back(std::move(v));
            }
            return out;
        }

        /// Coordinates of the class of cycle z; throws WellDefinednessViolation if z is not a cycle.
        SparseVector classify(const SparseVector& z) const
        {
            SparseVector c;
            if (!combined_.reduce_sparse(z, c).empty())
                throw WellDefinednessViolation("vector is not a cycle at degree " + std::to_string(degree_));
            SparseVector coords;
            for (const auto& [k, v] : c)
                if (k >= boundaries_.dim())
                    coords.emplace_back(k - boundaries_.dim(), v);
            if (change_inverse_)
                return change_inverse_->apply(coords);
            return coords;
        }

        bool is_boundary(const SparseVector& z) const { return boundaries_.contains(z); }

        /**
         * Replace the representative basis by reps * change (change is
         * invertible, dim x dim).  Class coordinates transform accordingly.
         */
        void rebase(const Matrix& change)
        {
            auto inv = inverse(change);
            if (!inv || change.rows() != dim())
                throw InvalidArgument("rebase needs an invertible dim x dim matrix");
            if (change_)
            {
                change_ = *change_ * change;
                change_inverse_ = *inv * *change_inverse_;
            }
            else
            {
                change_ = change;
                change_inverse_ = *inv;
            }
        }

    private:
        Index degree_ = 0;
        Subspace cycles_;
        Subspace boundaries_;
        Subspace combined_;
        std::vector<SparseVector> reps_;
        std::optional<Matrix> change_;
        std::optional<Matrix> change_inverse_;
};

/// Homology groups for degrees first .. first + groups.size() - 1.
struct HomologyTable
{
    Index first = 0;
    std::vector<HomologyGroup> groups;

    bool has(Index n) const { return n >= first && n - first < groups.size(); }
    const HomologyGroup& at(Index n) const
    {
        if (!has(n))
            throw InvalidArgument("homology degree " + std::to_string(n) + " not computed");
        return groups[n - first];
    }
    HomologyGroup& at(Index n)
    {
        if (!has(n))
            throw InvalidArgument("homology degree " + std::to_string(n) + " not computed");
        return groups[n - first];
    }
    Index last() const { return first + groups.size() - 1; }

    std::vector<Index> dims() const
    {
        std::vector<Index> out;
        for (const auto& g : groups)
            out.push_back(g.dim());
        return out;
    }
};

/**
 * Homology in degrees [lo, min(hi, top)].  Only the differentials adjacent
 * to those degrees are eliminated.
 */
inline HomologyTable homology(const ChainComplex& k, Index lo, Index hi)
{
    HomologyTable t;
    t.first = lo;
    hi = std::min(hi, k.top());
    for (Index n = lo; n <= hi; ++n)
    {
        Subspace cycles = n == 0 ? Subspace::whole(k.dim(0)) : Elimination(k.d(n - 1)).kernel();
        Subspace boundaries = n < k.top() ? Elimination(k.d(n), false).image() : Subspace(k.dim(n));
        t.groups.emplace_back(n, std::move(cycles), std::move(boundaries));
    }
    return t;
}

inline HomologyTable homology(const ChainComplex& k)
{
    return homology(k, 0, k.top());
}

/// Homology dimensions only, degrees 0 .. hi.
inline std::vector<Index> betti_numbers(const ChainComplex& k, Index hi)
{
    hi = std::min(hi, k.top());
    std::vector<Index> ranks(k.top());
    for (Index n = 0; n < k.top() && n <= hi; ++n)
        ranks[n] = rank(k.d(n));
    std::vector<Index> out;
    for (Index n = 0; n <= hi; ++n)
    {
        Index z = k.dim(n) - (n == 0 ? 0 : ranks[n - 1]);
        Index b = n < k.top() ? ranks[n] : 0;
        out.push_back(z - b);
    }
    return out;
}

// ------------------------------------------------------------------------
// Chain maps
// ------------------------------------------------------------------------

struct ChainMap
{
    ComplexPtr source;
    ComplexPtr target;
    std::vector<Matrix> components;   // components[n] : source_n -> target_n

    const Matrix& at(Index n) const { return components.at(n); }
};

/// First degree where the square fails to commute (or a shape is wrong).
inline std::optional<Index> check_chain_map(const ChainMap& f)
{
    const auto& s = *f.source;
    const auto& t = *f.target;
    if (s.top() != t.top() || f.components.size() != s.top() + 1)
        return Index(0);
    for (Index n = 0; n <= s.top(); ++n)
        if (f.at(n).rows() != t.dim(n) || f.at(n).cols() != s.dim(n))
            return n;
    for (Index n = 0; n < s.top(); ++n)
        if (!(t.d(n) * f.at(n + 1) == f.at(n) * s.d(n)))
            return n;
    return std::nullopt;
}

inline ChainMap identity_map(const ComplexPtr& k)
{
    ChainMap f{k, k, {}};
    for (Index n = 0; n <= k->top(); ++n)
        f.components.push_back(Matrix::identity(k->dim(n)));
    return f;
}

inline ChainMap zero_map(const ComplexPtr& s, const ComplexPtr& t)
{
    ChainMap f{s, t, {}};
    for (Index n = 0; n <= s->top(); ++n)
        f.components.emplace_back(t->dim(n), s->dim(n));
    return f;
}

/// second ∘ first
inline ChainMap compose(const ChainMap& first, const ChainMap& second)
{
    ChainMap f{first.source, second.target, {}};
    for (Index n = 0; n < first.components.size(); ++n)
        f.components.push_back(second.at(n) * first.at(n));
    return f;
}

/// Transposed map between the re-indexed duals: target' -> source'.
inline ChainMap dualize(const ChainMap& f, const ComplexPtr& dual_source, const ComplexPtr& dual_target)
{
    const Index top = f.source->top();
    ChainMap g{dual_target, dual_source, {}};
    for (Index m = 0; m <= top; ++m)
        g.components.push_back(f.at(top - m).transpose());
    return g;
}

/**
 * Matrix of H_n(f) in the bases of the two tables.  Verifies that f sends
 * every boundary basis vector to a boundary and every representative to a
 * cycle; throws WellDefinednessViolation otherwise.
 */
inline Matrix induced_map(const ChainMap& f, Index n, const HomologyTable& hs, const HomologyTable& ht)
{
    const HomologyGroup& src = hs.at(n);
    const HomologyGroup& tgt = ht.at(n);
    const Matrix& fn = f.at(n);
    for (const auto& b : src.boundaries().basis())
        if (!tgt.is_boundary(fn.apply(b)))
            throw WellDefinednessViolation("chain map sends a boundary outside the boundaries at degree " +
                                           std::to_string(n));
    std::vector<SparseVector> cols;
    for (const auto& z : src.representatives())
        cols.push_back(tgt.classify(fn.apply(z)));
    return Matrix(tgt.dim(), src.dim(), std::move(cols));
}

inline Matrix induced_map_on_homology(const ChainMap& f, Index n)
{
    return induced_map(f, n, homology(*f.source, n, n), homology(*f.target, n, n));
}

inline bool is_isomorphism(const Matrix& m)
{
    return m.is_square() && rank(m) == m.cols();
}

/// Per-degree verdict for degrees lo .. hi: H_n(f) invertible.
inline std::vector<bool> check_quasi_isomorphism(const ChainMap& f, Index lo, Index hi)
{
    HomologyTable hs = homology(*f.source, lo, hi);
    HomologyTable ht = homology(*f.target, lo, hi);
    std::vector<bool> out;
    for (Index n = lo; n <= std::min(hi, f.source->top()); ++n)
        out.push_back(is_isomorphism(induced_map(f, n, hs, ht)));
    return out;
}

inline std::vector<bool> check_quasi_isomorphism(const ChainMap& f)
{
    return check_quasi_isomorphism(f, 0, f.source->top());
}

// ------------------------------------------------------------------------
// Short exact sequences and the connecting morphism
// ------------------------------------------------------------------------

struct ShortExactSequence
{
    ComplexPtr K;
    ComplexPtr P;
    ComplexPtr L;
    ChainMap inj;    // K -> P
    ChainMap surj;   // P -> L
};

/// Description of the first violated invariant, or nullopt.
inline std::optional<std::string> validate_ses(const ShortExactSequence& s)
{
    if (s.inj.source != s.K || s.inj.target != s.P || s.surj.source != s.P || s.surj.target != s.L)
        return "maps do not connect K -> P -> L";
    if (auto v = check_chain_map(s.inj))
        return "inclusion is not a chain map at degree " + std::to_string(*v);
    if (auto v = check_chain_map(s.surj))
        return "projection is not a chain map at degree " + std::to_string(*v);
    for (Index n = 0; n <= s.P->top(); ++n)
    {
        if (s.K->dim(n) + s.L->dim(n) != s.P->dim(n))
            return "dimensions do not add up at degree " + std::to_string(n);
        if (rank(s.inj.at(n)) != s.K->dim(n))
            return "inclusion not injective at degree " + std::to_string(n);
        if (rank(s.surj.at(n)) != s.L->dim(n))
            return "projection not surjective at degree " + std::to_string(n);
        if (!(s.surj.at(n) * s.inj.at(n)).is_zero())
            return "projection ∘ inclusion ≠ 0 at degree " + std::to_string(n);
    }
    return std::nullopt;
}

/**
 * Homology of the three terms of a short exact sequence plus cached
 * eliminations for lifting.  Computes degrees [lo, hi] (clipped to top).
 */
class SesHomology
{
    public:
        SesHomology(ShortExactSequence ses, Index lo, Index hi) : ses_(std::move(ses))
        {
            if (auto err = validate_ses(ses_))
                throw InvalidArgument("not a short exact sequence: " + *err);
            hi = std::min(hi, ses_.P->top());
            k_ = homology(*ses_.K, lo, hi);
            p_ = homology(*ses_.P, lo, hi);
            l_ = homology(*ses_.L, lo, hi);
        }

        const ShortExactSequence& ses() const { return ses_; }
        const HomologyTable& K() const { return k_; }
        const HomologyTable& P() const { return p_; }
        const HomologyTable& L() const { return l_; }
        HomologyTable& K() { return k_; }
        HomologyTable& P() { return p_; }
        HomologyTable& L() { return l_; }

        Matrix inclusion(Index n) const { return induced_map(ses_.inj, n, k_, p_); }
        Matrix projection(Index n) const { return induced_map(ses_.surj, n, p_, l_); }

        /**
         * ζ_n : H_n(L) -> H_{n-1}(K) by the zig-zag: lift a representative
         * through the projection, apply the differential of P, pull back
         * through the inclusion, classify.  Every column is recomputed from a
         * second lift (free variables 1 instead of 0); differing classes
         * throw Error, a failed lift throws LiftFailure.
         */
        Matrix connecting(Index n) const
        {
            if (n == 0)
                throw InvalidArgument("connecting morphism needs n >= 1");
            const HomologyGroup& hl = l_.at(n);
            const HomologyGroup& hk = k_.at(n - 1);
            const Elimination& lift = elimination(surj_elims_, ses_.surj, n);
            const Elimination& pull = elimination(inj_elims_, ses_.inj, n - 1);
            const Matrix& dp = ses_.P->d(n - 1);
            auto zigzag = [&](const SparseVector& l, bool free_ones) {
                auto p = lift.solve(l, free_ones);
                if (!p)
                    throw LiftFailure("cycle of L_" + std::to_string(n) + " has no preimage in P");
                auto k = pull.solve(dp.apply(*p));
                if (!k)
                    throw LiftFailure("d(lift) is not in the image of K_" + std::to_string(n - 1));
                return hk.classify(*k);
            };
            std::vector<SparseVector> cols;
            for (const auto& l : hl.representatives())
            {
                SparseVector c = zigzag(l, false);
                if (zigzag(l, true) != c)
                    throw Error("connecting morphism depends on the choice of lift at degree " + std::to_string(n));
                cols.push_back(std::move(c));
            }
            return Matrix(hk.dim(), hl.dim(), std::move(cols));
        }

    private:
        static const Elimination& elimination(std::map<Index, Elimination>& cache, const ChainMap& f, Index n)
        {
            auto it = cache.find(n);
            if (it == cache.end())
                it = cache.emplace(n, Elimination(f.at(n))).first;
            return it->second;
        }

        ShortExactSequence ses_;
        HomologyTable k_, p_, l_;
        mutable std::map<Index, Elimination> surj_elims_;
        mutable std::map<Index, Elimination> inj_elims_;
};

inline Matrix connecting_homomorphism(const ShortExactSequence& ses, Index n)
{
    SesHomology h(ses, n - 1, n);
    return h.connecting(n);
}

// ------------------------------------------------------------------------
// Long sequences
// ------------------------------------------------------------------------

struct SequenceNode
{
    int degree = 0;
    std::string group;
    Index dim = 0;
    Index defect = 0;
    bool composition_zero = true;

    bool operator==(const SequenceNode&) const = default;
};

/**
 * A finite window of a long sequence.  maps[k] goes from nodes[k] to
 * nodes[k+1]; `incoming` enters nodes.front() and `outgoing` leaves
 * nodes.back().
 */
struct LongSequence
{
    std::vector<SequenceNode> nodes;
    std::vector<Matrix> maps;
    Matrix incoming;
    Matrix outgoing;

    const Matrix& map_into(Index k) const { return k == 0 ? incoming : maps[k - 1]; }
    const Matrix& map_out_of(Index k) const { return k + 1 == nodes.size() ? outgoing : maps[k]; }

    /// Recompute defect and composition flags of every node.
    void compute_defects()
    {
        for (Index k = 0; k < nodes.size(); ++k)
        {
            const Matrix& f = map_into(k);
            const Matrix& g = map_out_of(k);
            nodes[k].composition_zero = (g * f).is_zero();
            nodes[k].defect = exactness_mismatch(f, g);
        }
    }
};

/**
 * Labels for the three terms of a short exact sequence, used to name nodes
 * "H_<n>(<label>)".
 */
struct TermNames
{
    std::string K = "K";
    std::string P = "P";
    std::string L = "L";
    bool cohomological = false;   // label chain degree m as H^{top-m}
    Index top = 0;

    int degree(Index m) const { return static_cast<int>(cohomological ? top - m : m); }
    std::string label(Index m, const std::string& x) const
    {
        return (cohomological ? "H^" : "H_") + std::to_string(degree(m)) + "(" + x + ")";
    }
};

/**
 * The long sequence ... -> H_n(K) -> H_n(P) -> H_n(L) -> H_{n-1}(K) -> ...
 * for n from hi down to lo.  The incoming map to H_hi(K) is ζ_{hi+1} when
 * degree hi+1 exists (zero-dimensional source otherwise); the outgoing map of
 * H_lo(L) is ζ_lo when lo >= 1, and the map to 0 when lo = 0.  The
 * SesHomology must cover degrees lo-1 .. hi+1 where those exist.
 */
inline LongSequence long_exact_sequence(const SesHomology& h, Index lo, Index hi, const TermNames& names = {})
{
    const auto& ses = h.ses();
    const Index top = ses.P->top();
    LongSequence seq;
    for (Index n = hi + 1; n-- > lo;)
    {
        seq.nodes.push_back({names.degree(n), names.label(n, names.K), h.K().at(n).dim(), 0, true});
        seq.nodes.push_back({names.degree(n), names.label(n, names.P), h.P().at(n).dim(), 0, true});
        seq.nodes.push_back({names.degree(n), names.label(n, names.L), h.L().at(n).dim(), 0, true});
        seq.maps.push_back(h.inclusion(n));
        seq.maps.push_back(h.projection(n));
        if (n > lo)
            seq.maps.push_back(h.connecting(n));
    }
    seq.incoming = hi + 1 <= top ? h.connecting(hi + 1) : Matrix(h.K().at(hi).dim(), 0);
    seq.outgoing = lo >= 1 ? h.connecting(lo) : Matrix(0, h.L().at(lo).dim());
    seq.compute_defects();
    return seq;
}

inline LongSequence long_exact_sequence(const ShortExactSequence& ses, Index lo, Index hi, const TermNames& names = {})
{
    const Index top = ses.P->top();
    hi = std::min(hi, top);
    SesHomology h(ses, lo == 0 ? 0 : lo - 1, std::min(hi + 1, top));
    return long_exact_sequence(h, lo, hi, names);
}

inline LongSequence long_exact_sequence(const ShortExactSequence& ses)
{
    return long_exact_sequence(ses, 0, ses.P->top());
}

/// Split sequence of a direct sum: 0 -> K -> K ⊕ L -> L -> 0 with block-diagonal differential.
ShortExactSequence direct_sum_sequence(const ChainComplex& k, const ChainComplex& l);

// ------------------------------------------------------------------------
// Random short exact sequences
// ------------------------------------------------------------------------

struct RandomBudget
{
    Index degrees = 5;    // spaces 0 .. degrees-1
    Index max_dim = 6;    // bound on dim P_n
};

namespace detail {

inline Rational random_entry(std::mt19937_64& rng, double zero_probability)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    if (u(rng) < zero_probability)
        return Rational(0);
    std::uniform_int_distribution<int> v(-2, 2);
    int x = 0;
    while (x == 0)
        x = v(rng);
    return Rational(x);
}

inline Matrix random_matrix(std::mt19937_64& rng, Index rows, Index cols, double zero_probability)
{
    std::vector<std::vector<Rational>> data(rows, std::vector<Rational>(cols));
    for (auto& r : data)
        for (auto& x : r)
            x = random_entry(rng, zero_probability);
    return Matrix::from_rows(rows, cols, data);
}

/// Unipotent upper-triangular change of basis.
inline Matrix random_unipotent(std::mt19937_64& rng, Index n)
{
    std::vector<std::vector<Rational>> data(n, std::vector<Rational>(n));
    for (Index i = 0; i < n; ++i)
    {
        data[i][i] = 1;
        for (Index j = i + 1; j < n; ++j)
            data[i][j] = random_entry(rng, 0.6);
    }
    return Matrix::from_rows(n, n, data);
}

inline Matrix block(const Matrix& tl, const Matrix& tr, const Matrix& bl, const Matrix& br)
{
    const Index top_rows = tl.rows(), left_cols = tl.cols();
    const Index rows = tl.rows() + bl.rows(), cols = tl.cols() + tr.cols();
    std::vector<SparseVector> out(cols);
    for (Index j = 0; j < left_cols; ++j)
    {
        out[j] = tl.column(j);
        for (const auto& [i, v] : bl.column(j))
            out[j].emplace_back(i + top_rows, v);
    }
    for (Index j = 0; j < tr.cols(); ++j)
    {
        out[left_cols + j] = tr.column(j);
        for (const auto& [i, v] : br.column(j))
            out[left_cols + j].emplace_back(i + top_rows, v);
    }
    return Matrix(rows, cols, std::move(out));
}

}   // namespace detail

/**
 * Random complex with d_n = Z_n * R_n, where the columns of Z_n span
 * Ker d_{n-1} and R_n is a random small-integer matrix whose density varies
 * per degree, so ranks (and homology) vary.
 */
inline ChainComplex random_complex(std::mt19937_64& rng, const std::vector<Index>& dims)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Matrix> diffs;
    for (Index n = 0; n + 1 < dims.size(); ++n)
    {
        Matrix z = n == 0 ? Matrix::identity(dims[0]) : kernel_basis(diffs[n - 1]).basis_matrix();
        double zero_probability = u(rng) < 0.2 ? 1.0 : 0.2 + 0.6 * u(rng);
        diffs.push_back(z * detail::random_matrix(rng, z.cols(), dims[n + 1], zero_probability));
    }
    return ChainComplex(dims, std::move(diffs));
}

/**
 * Deterministic in the seed.  K and L are random complexes; P = K ⊕ L with
 * differential [[d_K, τ], [0, d_L]] where τ = d_K h - h d_L + σ, h is a random
 * degree-0 map and σ maps L-cycles modulo boundaries into K-cycles, so that
 * d_P² = 0 and the connecting morphism is generally nonzero.  Finally P is
 * conjugated by a random unipotent change of basis per degree.
 */
inline ShortExactSequence random_ses_generator(std::uint64_t seed, const RandomBudget& budget = {})
{
    std::mt19937_64 rng(seed);
    const Index degrees = std::max<Index>(budget.degrees, 1);
    std::vector<Index> dk(degrees), dl(degrees);
    for (Index n = 0; n < degrees; ++n)
    {
        std::uniform_int_distribution<Index> dp(0, budget.max_dim);
        Index p = dp(rng);
        std::uniform_int_distribution<Index> split(0, p);
        dk[n] = split(rng);
        dl[n] = p - dk[n];
    }
    ChainComplex k = random_complex(rng, dk);
    ChainComplex l = random_complex(rng, dl);

    std::vector<Matrix> h;
    for (Index n = 0; n < degrees; ++n)
        h.push_back(detail::random_matrix(rng, dk[n], dl[n], 0.6));

    std::vector<Matrix> dp_mats;
    for (Index n = 0; n + 1 < degrees; ++n)
    {
        // τ_n : L_{n+1} -> K_n
        Matrix tau = k.d(n) * h[n + 1];
        if (n >= 1)
            tau = tau - h[n] * l.d(n);
        Matrix zk = n == 0 ? Matrix::identity(dk[0]) : kernel_basis(k.d(n - 1)).basis_matrix();
        Matrix coker = n + 1 < l.top() ? cokernel(l.d(n + 1)).projection : Matrix::identity(dl[n + 1]);
        Matrix sigma = zk * detail::random_matrix(rng, zk.cols(), coker.rows(), 0.5) * coker;
        tau = tau + sigma;
        dp_mats.push_back(detail::block(k.d(n), tau, Matrix(dl[n], dk[n + 1]), l.d(n)));
    }

    std::vector<Matrix> g, ginv;
    for (Index n = 0; n < degrees; ++n)
    {
        g.push_back(detail::random_unipotent(rng, dk[n] + dl[n]));
        ginv.push_back(*inverse(g.back()));
    }
    std::vector<Index> dims(degrees);
    for (Index n = 0; n < degrees; ++n)
        dims[n] = dk[n] + dl[n];
    std::vector<Matrix> diffs;
    for (Index n = 0; n + 1 < degrees; ++n)
        diffs.push_back(g[n] * dp_mats[n] * ginv[n + 1]);

    auto K = share(std::move(k));
    auto L = share(std::move(l));
    auto P = share(ChainComplex(dims, std::move(diffs)));
    ChainMap inj{K, P, {}}, surj{P, L, {}};
    for (Index n = 0; n < degrees; ++n)
    {
        Matrix i = detail::block(Matrix::identity(dk[n]), Matrix(dk[n], 0), Matrix(dl[n], dk[n]), Matrix(dl[n], 0));
        Matrix s = detail::block(Matrix(0, dk[n]), Matrix(0, dl[n]), Matrix(dl[n], dk[n]), Matrix::identity(dl[n]));
        inj.components.push_back(g[n] * i);
        surj.components.push_back(s * ginv[n]);
    }
    return ShortExactSequence{K, P, L, std::move(inj), std::move(surj)};
}

inline ShortExactSequence direct_sum_sequence(const ChainComplex& k, const ChainComplex& l)
{
    if (k.top() != l.top())
        throw InvalidArgument("direct sum needs complexes of equal length");
    std::vector<Index> dims;
    std::vector<Matrix> diffs;
    for (Index n = 0; n <= k.top(); ++n)
        dims.push_back(k.dim(n) + l.dim(n));
    for (Index n = 0; n < k.top(); ++n)
        diffs.push_back(detail::block(k.d(n), Matrix(k.dim(n), l.dim(n + 1)), Matrix(l.dim(n), k.dim(n + 1)), l.d(n)));
    auto K = share(k);
    auto L = share(l);
    auto P = share(ChainComplex(dims, std::move(diffs)));
    ChainMap inj{K, P, {}}, surj{P, L, {}};
    for (Index n = 0; n <= k.top(); ++n)
    {
        inj.components.push_back(detail::block(Matrix::identity(k.dim(n)), Matrix(k.dim(n), 0),
                                               Matrix(l.dim(n), k.dim(n)), Matrix(l.dim(n), 0)));
        surj.components.push_back(detail::block(Matrix(0, k.dim(n)), Matrix(0, l.dim(n)),
                                                Matrix(l.dim(n), k.dim(n)), Matrix::identity(l.dim(n))));
    }
    return ShortExactSequence{K, P, L, std::move(inj), std::move(surj)};
}

/**
 * Dual short exact sequence 0 -> L' -> P' -> K' -> 0 of the re-indexed
 * duals, built from the transposed maps.
 */
inline ShortExactSequence dualize(const ShortExactSequence& s)
{
    auto K = share(dualize(*s.K));
    auto P = share(dualize(*s.P));
    auto L = share(dualize(*s.L));
    ChainMap inj = dualize(s.surj, P, L);   // L' -> P'
    ChainMap surj = dualize(s.inj, K, P);   // P' -> K'
    return ShortExactSequence{L, P, K, std::move(inj), std::move(surj)};
}

}   // namespace hc

#endif
