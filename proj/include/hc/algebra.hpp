/**
 * Finite-dimensional associative algebras over Q given by structure
 * constants, algebra homomorphisms and extensions 0 -> B -> A -> D -> 0.
 */
#ifndef HC_ALGEBRA_HPP
#define HC_ALGEBRA_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"

namespace hc {

/**
 * Algebra with basis e_0 .. e_{d-1} and e_i e_j = Σ_k c[i][j][k] e_k.  The
 * products are stored sparse, one vector per ordered pair (i, j).  The zero
 * algebra (d = 0) is allowed.
 */
class Algebra
{
    public:
        Algebra() = default;

        Algebra(std::vector<std::string> basis_names, std::vector<SparseVector> products)
            : names_(std::move(basis_names)), products_(std::move(products))
        {
            const Index d = names_.size();
            if (products_.size() != d * d)
                throw InvalidArgument("structure constants need dim^2 product vectors");
            for (const auto& p : products_)
                if (!p.empty() && p.back().first >= d)
                    throw InvalidArgument("structure constant index out of range");
        }

        /// All products zero.
        explicit Algebra(std::vector<std::string> basis_names)
            : Algebra(basis_names, std::vector<SparseVector>(basis_names.size() * basis_names.size()))
        {
        }

        Index dim() const { return names_.size(); }
        const std::vector<std::string>& basis_names() const { return names_; }

        /// e_i e_j
        const SparseVector& product(Index i, Index j) const { return products_[i * dim() + j]; }

        Rational constant(Index i, Index j, Index k) const
        {
            for (const auto& [idx, v] : product(i, j))
                if (idx == k)
                    return v;
            return Rational(0);
        }

        void set_product(Index i, Index j, SparseVector v) { products_.at(i * dim() + j) = std::move(v); }

        SparseVector multiply(const SparseVector& x, const SparseVector& y) const
        {
            SparseVector out;
            for (const auto& [i, a] : x)
                for (const auto& [j, b] : y)
                    axpy(out, a * b, product(i, j));
            return out;
        }

        /// Matrix of y ↦ e_i y.
        Matrix left_multiplication(Index i) const
        {
            std::vector<SparseVector> cols;
            for (Index j = 0; j < dim(); ++j)
                cols.push_back(product(i, j));
            return Matrix(dim(), dim(), std::move(cols));
        }

        /// Matrix of y ↦ y e_i.
        Matrix right_multiplication(Index i) const
        {
            std::vector<SparseVector> cols;
            for (Index j = 0; j < dim(); ++j)
                cols.push_back(product(j, i));
            return Matrix(dim(), dim(), std::move(cols));
        }

        bool is_commutative() const
        {
            for (Index i = 0; i < dim(); ++i)
                for (Index j = i + 1; j < dim(); ++j)
                    if (product(i, j) != product(j, i))
                        return false;
            return true;
        }

        bool operator==(const Algebra&) const = default;

    private:
        std::vector<std::string> names_;
        std::vector<SparseVector> products_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

struct AssociativityViolation
{
    Index i, j, k;
    SparseVector lhs;   // (e_i e_j) e_k
    SparseVector rhs;   // e_i (e_j e_k)
};

/// Every triple (i, j, k) with (e_i e_j) e_k ≠ e_i (e_j e_k); empty means associative.
inline std::vector<AssociativityViolation> validate_algebra(const Algebra& a)
{
    std::vector<AssociativityViolation> out;
    const Index d = a.dim();
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j)
            for (Index k = 0; k < d; ++k)
            {
                SparseVector lhs = a.multiply(a.product(i, j), unit_vector(k));
                SparseVector rhs = a.multiply(unit_vector(i), a.product(j, k));
                if (lhs != rhs)
                    out.push_back({i, j, k, std::move(lhs), std::move(rhs)});
            }
    return out;
}

// ------------------------------------------------------------------------
// Presets
// ------------------------------------------------------------------------

namespace presets {

inline void require_positive(long long n, const char* what)
{
    if (n <= 0)
        throw InvalidArgument(std::string(what) + " must be positive");
}

inline std::string matrix_unit_name(Index p, Index q, Index k)
{
    if (k < 10)
        return "e" + std::to_string(p + 1) + std::to_string(q + 1);
    return "e" + std::to_string(p + 1) + "_" + std::to_string(q + 1);
}

/// Full k x k matrices, basis e_pq at index p*k + q.
inline Algebra matrix(long long k)
{
    require_positive(k, "matrix size");
    const Index n = static_cast<Index>(k);
    std::vector<std::string> names;
    for (Index p = 0; p < n; ++p)
        for (Index q = 0; q < n; ++q)
            names.push_back(matrix_unit_name(p, q, n));
    Algebra a(names);
    for (Index p = 0; p < n; ++p)
        for (Index q = 0; q < n; ++q)
            for (Index s = 0; s < n; ++s)
                a.set_product(p * n + q, q * n + s, {{p * n + s, Rational(1)}});
    return a;
}

/// Q[x]/(x^m), basis 1, x, .., x^{m-1}.
inline Algebra truncated_poly(long long m)
{
    require_positive(m, "truncation degree");
    const Index n = static_cast<Index>(m);
    std::vector<std::string> names;
    for (Index p = 0; p < n; ++p)
        names.push_back(p == 0 ? "1" : p == 1 ? "x" : "x^" + std::to_string(p));
    Algebra a(names);
    for (Index p = 0; p < n; ++p)
        for (Index q = 0; p + q < n; ++q)
            a.set_product(p, q, {{p + q, Rational(1)}});
    return a;
}

inline Algebra zero_mult(long long d)
{
    require_positive(d, "dimension");
    std::vector<std::string> names;
    for (long long p = 1; p <= d; ++p)
        names.push_back("z" + std::to_string(p));
    return Algebra(names);
}

/// Upper-triangular k x k matrices, basis e_pq (p <= q) in row-major order.
inline Algebra upper_triangular(long long k)
{
    require_positive(k, "matrix size");
    const Index n = static_cast<Index>(k);
    std::vector<std::string> names;
    std::vector<std::vector<Index>> index(n, std::vector<Index>(n));
    for (Index p = 0; p < n; ++p)
        for (Index q = p; q < n; ++q)
        {
            index[p][q] = names.size();
            names.push_back(matrix_unit_name(p, q, n));
        }
    Algebra a(names);
    for (Index p = 0; p < n; ++p)
        for (Index q = p; q < n; ++q)
            for (Index s = q; s < n; ++s)
                a.set_product(index[p][q], index[q][s], {{index[p][s], Rational(1)}});
    return a;
}

inline Algebra field()
{
    return truncated_poly(1);
}

/// a × b with componentwise product; basis of a first, names prefixed "1:" and "2:".
inline Algebra direct_sum(const Algebra& a, const Algebra& b)
{
    const Index da = a.dim(), db = b.dim();
    std::vector<std::string> names;
    for (const auto& n : a.basis_names())
        names.push_back("1:" + n);
    for (const auto& n : b.basis_names())
        names.push_back("2:" + n);
    Algebra s(names);
    for (Index i = 0; i < da; ++i)
        for (Index j = 0; j < da; ++j)
            s.set_product(i, j, a.product(i, j));
    for (Index i = 0; i < db; ++i)
        for (Index j = 0; j < db; ++j)
        {
            SparseVector v;
            for (const auto& [k, c] : b.product(i, j))
                v.emplace_back(k + da, c);
            s.set_product(i + da, j + da, std::move(v));
        }
    return s;
}

}   // namespace presets

// ------------------------------------------------------------------------
// Homomorphisms and extensions
// ------------------------------------------------------------------------

struct AlgebraHom
{
    AlgebraPtr source;
    AlgebraPtr target;
    Matrix matrix;   // target.dim x source.dim
};

/// First basis pair (x, y) with f(xy) ≠ f(x) f(y).
inline std::optional<std::pair<Index, Index>> check_multiplicative(const AlgebraHom& f)
{
    const Algebra& s = *f.source;
    const Algebra& t = *f.target;
    for (Index x = 0; x < s.dim(); ++x)
        for (Index y = 0; y < s.dim(); ++y)
            if (f.matrix.apply(s.product(x, y)) != t.multiply(f.matrix.column(x), f.matrix.column(y)))
                return std::pair{x, y};
    return std::nullopt;
}

struct Extension
{
    AlgebraPtr B;
    AlgebraPtr A;
    AlgebraPtr D;
    Matrix i;   // B -> A
    Matrix j;   // A -> D

    AlgebraHom i_hom() const { return {B, A, i}; }
    AlgebraHom j_hom() const { return {A, D, j}; }
};

enum class ExtensionFailure
{
    None,
    DimensionMismatch,
    ShapeMismatch,
    NotAssociative,
    NotMultiplicative,
    NotInjective,
    NotSurjective,
    ImageNotKernel,
    NotIdeal,
};

inline std::string to_string(ExtensionFailure f)
{
    switch (f)
    {
        case ExtensionFailure::None: return "ok";
        case ExtensionFailure::DimensionMismatch: return "dimension mismatch";
        case ExtensionFailure::ShapeMismatch: return "map shape mismatch";
        case ExtensionFailure::NotAssociative: return "algebra not associative";
        case ExtensionFailure::NotMultiplicative: return "map not multiplicative";
        case ExtensionFailure::NotInjective: return "i not injective";
        case ExtensionFailure::NotSurjective: return "j not surjective";
        case ExtensionFailure::ImageNotKernel: return "Im i differs from Ker j";
        case ExtensionFailure::NotIdeal: return "i(B) not a two-sided ideal";
    }
    return "unknown";
}

struct ExtensionReport
{
    ExtensionFailure failure = ExtensionFailure::None;
    std::string detail;

    bool ok() const { return failure == ExtensionFailure::None; }
};

/// True iff the span of `basis` is closed under left and right multiplication by A.
inline bool is_two_sided_ideal(const Algebra& a, const Subspace& w)
{
    for (const auto& v : w.basis())
        for (Index x = 0; x < a.dim(); ++x)
            if (!w.contains(a.multiply(unit_vector(x), v)) || !w.contains(a.multiply(v, unit_vector(x))))
                return false;
    return true;
}

inline ExtensionReport validate_extension(const Extension& e)
{
    using F = ExtensionFailure;
    const Index b = e.B->dim(), a = e.A->dim(), d = e.D->dim();
    if (a != b + d)
        return {F::DimensionMismatch, "dim A = " + std::to_string(a) + " but dim B + dim D = " + std::to_string(b + d)};
    if (e.i.rows() != a || e.i.cols() != b)
        return {F::ShapeMismatch, "i must be dim A x dim B"};
    if (e.j.rows() != d || e.j.cols() != a)
        return {F::ShapeMismatch, "j must be dim D x dim A"};
    for (const auto& [name, alg] : {std::pair{"B", e.B}, {"A", e.A}, {"D", e.D}})
    {
        auto v = validate_algebra(*alg);
        if (!v.empty())
            return {F::NotAssociative, std::string(name) + ": (e" + std::to_string(v[0].i) + " e" +
                                           std::to_string(v[0].j) + ") e" + std::to_string(v[0].k) +
                                           " differs from e" + std::to_string(v[0].i) + " (e" +
                                           std::to_string(v[0].j) + " e" + std::to_string(v[0].k) + ")"};
    }
    for (const auto& [name, hom] : {std::pair{"i", e.i_hom()}, {"j", e.j_hom()}})
        if (auto p = check_multiplicative(hom))
            return {F::NotMultiplicative, std::string(name) + " fails on basis pair (" + std::to_string(p->first) +
                                              ", " + std::to_string(p->second) + ")"};
    if (rank(e.i) != b)
        return {F::NotInjective, "rank i < dim B"};
    if (rank(e.j) != d)
        return {F::NotSurjective, "rank j < dim D"};
    Subspace image = image_basis(e.i);
    if (!(image == kernel_basis(e.j)))
        return {F::ImageNotKernel, "Im i and Ker j differ"};
    if (!is_two_sided_ideal(*e.A, image))
        return {F::NotIdeal, "i(B) is not closed under multiplication by A"};
    return {};
}

// ------------------------------------------------------------------------
// Units and splittings
// ------------------------------------------------------------------------

enum class UnitSide
{
    None,
    Left,
    Right,
    TwoSided,
};

inline std::string to_string(UnitSide s)
{
    switch (s)
    {
        case UnitSide::None: return "none";
        case UnitSide::Left: return "left";
        case UnitSide::Right: return "right";
        case UnitSide::TwoSided: return "two-sided";
    }
    return "none";
}

struct UnitWitness
{
    UnitSide side = UnitSide::None;
    std::optional<SparseVector> element;

    bool exists() const { return side != UnitSide::None; }
};

namespace detail {

/**
 * Linear system for e with e b = b (left) and/or b e = b (right) for every
 * basis element b.  Rows are indexed by (equation block, b, k).
 */
inline std::pair<Matrix, SparseVector> unit_system(const Algebra& a, bool left, bool right)
{
    const Index d = a.dim();
    const Index blocks = (left ? 1 : 0) + (right ? 1 : 0);
    std::vector<SparseVector> cols(d);
    SparseVector rhs;
    Index offset = 0;
    auto add_block = [&](bool is_left) {
        for (Index i = 0; i < d; ++i)
            for (Index b = 0; b < d; ++b)
                for (const auto& [k, c] : is_left ? a.product(i, b) : a.product(b, i))
                    cols[i].emplace_back(offset + b * d + k, c);
        for (Index b = 0; b < d; ++b)
            rhs.emplace_back(offset + b * d + b, Rational(1));
        offset += d * d;
    };
    if (left)
        add_block(true);
    if (right)
        add_block(false);
    for (auto& c : cols)
        c = combine_terms(std::move(c));
    return {Matrix(blocks * d * d, d, std::move(cols)), combine_terms(std::move(rhs))};
}

}   // namespace detail

/**
 * Solve the unit equations for the requested side.  For `TwoSided` both
 * systems are stacked.  Returns side None when the system is inconsistent.
 */
inline UnitWitness find_one_sided_unit(const Algebra& a, UnitSide side)
{
    if (side == UnitSide::None)
        throw InvalidArgument("unit side must be left, right or two-sided");
    const bool left = side != UnitSide::Right;
    const bool right = side != UnitSide::Left;
    auto [m, rhs] = detail::unit_system(a, left, right);
    if (auto e = solve(m, rhs))
        return {side, std::move(*e)};
    return {};
}

/// Strongest available unit: two-sided, else left, else right, else none.
inline UnitWitness find_unit(const Algebra& a)
{
    for (UnitSide s : {UnitSide::TwoSided, UnitSide::Left, UnitSide::Right})
        if (auto w = find_one_sided_unit(a, s); w.exists())
            return w;
    return {};
}

/// α : D -> A with j α = id_D, solved column by column.
inline Matrix find_splitting(const Extension& e)
{
    Elimination ej(e.j);
    std::vector<SparseVector> cols;
    for (Index k = 0; k < e.D->dim(); ++k)
    {
        auto c = ej.solve(unit_vector(k));
        if (!c)
            throw InvalidArgument("j is not surjective");
        cols.push_back(std::move(*c));
    }
    return Matrix(e.A->dim(), e.D->dim(), std::move(cols));
}

/**
 * Extension of A by the two-sided ideal spanned by `generators`.  B carries
 * the echelon basis of the ideal; D has as basis the classes of the basis
 * vectors of A at non-pivot indices.
 */
inline Extension quotient_extension(const Algebra& a, const std::vector<SparseVector>& generators)
{
    Subspace w = Subspace::span(a.dim(), generators);
    if (!is_two_sided_ideal(a, w))
        throw InvalidArgument("generators do not span a two-sided ideal");

    const Index b = w.dim();
    std::vector<std::string> bnames;
    for (Index k = 1; k <= b; ++k)
        bnames.push_back("b" + std::to_string(k));
    Algebra balg(bnames);
    for (Index x = 0; x < b; ++x)
        for (Index y = 0; y < b; ++y)
        {
            auto c = w.coordinates(a.multiply(w.basis()[x], w.basis()[y]));
            balg.set_product(x, y, from_dense(*c));
        }

    Quotient q(w);
    std::vector<std::string> dnames;
    for (Index k = 0; k < q.dim(); ++k)
        dnames.push_back("[" + a.basis_names()[q.representative(k)] + "]");
    Algebra dalg(dnames);
    for (Index x = 0; x < q.dim(); ++x)
        for (Index y = 0; y < q.dim(); ++y)
            dalg.set_product(x, y, q.project(a.product(q.representative(x), q.representative(y))));

    return Extension{std::make_shared<const Algebra>(std::move(balg)), std::make_shared<const Algebra>(a),
                     std::make_shared<const Algebra>(std::move(dalg)), w.basis_matrix(), q.projection_matrix()};
}

}   // namespace hc

#endif
