/**
 * Exact linear algebra over the rationals: sparse vectors and matrices,
 * column-reduction elimination, subspaces, quotients and Kronecker products.
 *
 * Every homology computation in the library bottoms out in this header.
 * Arithmetic is exact (GMP rationals via Boost.Multiprecision); there are no
 * tolerances anywhere.
 *
 * Elimination strategy: columns are reduced left to right against earlier
 * reduced columns, keyed by the largest row index carrying a nonzero entry
 * (the column's "low").  A column that vanishes is linearly dependent on the
 * earlier pivot columns.  The set of pivot columns is therefore the
 * lexicographically first column basis, the same set the reduced row echelon
 * form selects, and the kernel vectors produced (free variable = 1, other
 * free variables = 0) coincide with the RREF kernel basis.  Results do not
 * depend on the order in which row operations happen, so fixtures are
 * reproducible bit for bit.
 *
 * Kronecker index convention: for factors M (m1 x n1) and N (m2 x n2),
 * entry (i1, j1) of M and (i2, j2) of N land at (i1 * m2 + i2, j1 * n2 + j2).
 * The leftmost factor is the most significant digit.  Tensor-power chain
 * spaces use the same order (see hochschild.hpp).
 */
#ifndef HC_LINALG_HPP
#define HC_LINALG_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "errors.hpp"

namespace hc {

using Rational = boost::multiprecision::mpq_rational;
using Index = std::size_t;

/// Sorted by index, no stored zeros.
using SparseVector = std::vector<std::pair<Index, Rational>>;

/**
 * Parse "p/q", "p" or "-p/q".  Throws ParseError on anything else or on a
 * zero denominator.
 */
inline Rational parse_rational(const std::string& text)
{
    auto is_integer = [](const std::string& s) {
        std::size_t k = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (k == s.size())
            return false;
        return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(k), s.end(),
                           [](char c) { return c >= '0' && c <= '9'; });
    };
    auto slash = text.find('/');
    std::string num = text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!is_integer(num) || !is_integer(den) || den[0] == '-' || den[0] == '+')
        throw ParseError("malformed rational \"" + text + "\"");
    if (num[0] == '+')
        num.erase(0, 1);
    boost::multiprecision::mpz_int n(num), d(den);
    if (d == 0)
        throw ParseError("zero denominator in \"" + text + "\"");
    return Rational(n, d);
}

inline std::string to_string(const Rational& r)
{
    return r.str();
}

// ------------------------------------------------------------------------
// Sparse vector helpers
// ------------------------------------------------------------------------

/// Sort by index, merge duplicates, drop zeros.
inline SparseVector combine_terms(std::vector<std::pair<Index, Rational>> terms)
{
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVector out;
    out.reserve(terms.size());
    for (auto& t : terms)
    {
        if (!out.empty() && out.back().first == t.first)
            out.back().second += t.second;
        else
        {
            if (!out.empty() && out.back().second == 0)
                out.pop_back();
            out.push_back(std::move(t));
        }
    }
    if (!out.empty() && out.back().second == 0)
        out.pop_back();
    return out;
}

/// y += a * x
inline void axpy(SparseVector& y, const Rational& a, const SparseVector& x)
{
    if (a == 0 || x.empty())
        return;
    SparseVector out;
    out.reserve(y.size() + x.size());
    std::size_t p = 0, q = 0;
    while (p < y.size() || q < x.size())
    {
        if (q == x.size() || (p < y.size() && y[p].first < x[q].first))
            out.push_back(std::move(y[p++]));
        else if (p == y.size() || x[q].first < y[p].first)
        {
            out.emplace_back(x[q].first, a * x[q].second);
            ++q;
        }
        else
        {
            Rational v = y[p].second + a * x[q].second;
            if (v != 0)
                out.emplace_back(y[p].first, std::move(v));
            ++p;
            ++q;
        }
    }
    y.swap(out);
}

inline SparseVector scaled(const SparseVector& x, const Rational& a)
{
    if (a == 0)
        return {};
    SparseVector out(x);
    for (auto& e : out)
        e.second *= a;
    return out;
}

inline Rational dot(const SparseVector& x, const SparseVector& y)
{
    Rational s = 0;
    std::size_t p = 0, q = 0;
    while (p < x.size() && q < y.size())
    {
        if (x[p].first < y[q].first)
            ++p;
        else if (y[q].first < x[p].first)
            ++q;
        else
            s += x[p++].second * y[q++].second;
    }
    return s;
}

inline SparseVector unit_vector(Index i)
{
    return SparseVector{{i, Rational(1)}};
}

inline SparseVector from_dense(const std::vector<Rational>& v)
{
    SparseVector out;
    for (Index i = 0; i < v.size(); ++i)
        if (v[i] != 0)
            out.emplace_back(i, v[i]);
    return out;
}

inline std::vector<Rational> to_dense(const SparseVector& v, Index n)
{
    std::vector<Rational> out(n);
    for (const auto& [i, x] : v)
        out.at(i) = x;
    return out;
}

// ------------------------------------------------------------------------
// Matrix
// ------------------------------------------------------------------------

/**
 * Sparse matrix stored column by column.  Columns are SparseVectors, so the
 * no-stored-zero and sorted-index invariants of SparseVector apply.
 */
class Matrix
{
    public:
        Matrix() = default;

        Matrix(Index rows, Index cols) : rows_(rows), cols_(cols), columns_(cols) {}

        Matrix(Index rows, Index cols, std::vector<SparseVector> columns)
            : rows_(rows), cols_(cols), columns_(std::move(columns))
        {
            if (columns_.size() != cols_)
                throw InvalidArgument("column count does not match matrix shape");
            for (const auto& c : columns_)
            {
                for (std::size_t k = 0; k < c.size(); ++k)
                {
                    if (c[k].first >= rows_)
                        throw InvalidArgument("row index out of bounds");
                    if (c[k].second == 0)
                        throw InvalidArgument("stored zero entry");
                    if (k > 0 && c[k - 1].first >= c[k].first)
                        throw InvalidArgument("column entries not strictly increasing");
                }
            }
        }

        static Matrix identity(Index n)
        {
            std::vector<SparseVector> cols(n);
            for (Index j = 0; j < n; ++j)
                cols[j] = unit_vector(j);
            return Matrix(n, n, std::move(cols));
        }

        /// Dense row-major input; rows must all have length `cols`.
        static Matrix from_rows(Index rows, Index cols, const std::vector<std::vector<Rational>>& data)
        {
            if (data.size() != rows)
                throw InvalidArgument("row count does not match matrix shape");
            std::vector<SparseVector> columns(cols);
            for (Index i = 0; i < rows; ++i)
            {
                if (data[i].size() != cols)
                    throw InvalidArgument("ragged row in dense matrix");
                for (Index j = 0; j < cols; ++j)
                    if (data[i][j] != 0)
                        columns[j].emplace_back(i, data[i][j]);
            }
            return Matrix(rows, cols, std::move(columns));
        }

        static Matrix from_columns(Index rows, std::vector<SparseVector> columns)
        {
            Index cols = columns.size();
            return Matrix(rows, cols, std::move(columns));
        }

        Index rows() const { return rows_; }
        Index cols() const { return cols_; }
        const SparseVector& column(Index j) const { return columns_.at(j); }
        const std::vector<SparseVector>& columns() const { return columns_; }

        Rational at(Index i, Index j) const
        {
            const auto& c = columns_.at(j);
            auto it = std::lower_bound(c.begin(), c.end(), i,
                                       [](const auto& e, Index r) { return e.first < r; });
            if (it != c.end() && it->first == i)
                return it->second;
            return Rational(0);
        }

        std::size_t nnz() const
        {
            std::size_t n = 0;
            for (const auto& c : columns_)
                n += c.size();
            return n;
        }

        bool is_zero() const
        {
            return std::all_of(columns_.begin(), columns_.end(),
                               [](const SparseVector& c) { return c.empty(); });
        }

        bool is_square() const { return rows_ == cols_; }

        SparseVector apply(const SparseVector& x) const
        {
            std::vector<std::pair<Index, Rational>> terms;
            for (const auto& [j, a] : x)
            {
                if (j >= cols_)
                    throw InvalidArgument("vector index exceeds matrix columns");
                for (const auto& [i, m] : columns_[j])
                    terms.emplace_back(i, a * m);
            }
            return combine_terms(std::move(terms));
        }

        Matrix transpose() const
        {
            std::vector<SparseVector> out(rows_);
            for (Index j = 0; j < cols_; ++j)
                for (const auto& [i, v] : columns_[j])
                    out[i].emplace_back(j, v);
            return Matrix(cols_, rows_, std::move(out));
        }

        /// Columns restricted to the given (sorted or not) column indices, in that order.
        Matrix select_columns(const std::vector<Index>& which) const
        {
            std::vector<SparseVector> out;
            out.reserve(which.size());
            for (Index j : which)
                out.push_back(columns_.at(j));
            return Matrix(rows_, which.size(), std::move(out));
        }

        std::vector<std::vector<Rational>> to_dense() const
        {
            std::vector<std::vector<Rational>> out(rows_, std::vector<Rational>(cols_));
            for (Index j = 0; j < cols_; ++j)
                for (const auto& [i, v] : columns_[j])
                    out[i][j] = v;
            return out;
        }

        friend Matrix operator*(const Matrix& a, const Matrix& b)
        {
            if (a.cols_ != b.rows_)
                throw InvalidArgument("matrix product shape mismatch");
            std::vector<SparseVector> out(b.cols_);
            for (Index j = 0; j < b.cols_; ++j)
                out[j] = a.apply(b.columns_[j]);
            return Matrix(a.rows_, b.cols_, std::move(out));
        }

        friend Matrix operator+(const Matrix& a, const Matrix& b)
        {
            if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
                throw InvalidArgument("matrix sum shape mismatch");
            Matrix out = a;
            for (Index j = 0; j < a.cols_; ++j)
                axpy(out.columns_[j], Rational(1), b.columns_[j]);
            return out;
        }

        friend Matrix operator-(const Matrix& a, const Matrix& b)
        {
            if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
                throw InvalidArgument("matrix difference shape mismatch");
            Matrix out = a;
            for (Index j = 0; j < a.cols_; ++j)
                axpy(out.columns_[j], Rational(-1), b.columns_[j]);
            return out;
        }

        friend Matrix operator*(const Rational& s, const Matrix& a)
        {
            Matrix out(a.rows_, a.cols_);
            for (Index j = 0; j < a.cols_; ++j)
                out.columns_[j] = scaled(a.columns_[j], s);
            return out;
        }

        bool operator==(const Matrix&) const = default;

    private:
        Index rows_ = 0;
        Index cols_ = 0;
        std::vector<SparseVector> columns_;
};

/// Kronecker product, leftmost factor most significant (see file comment).
inline Matrix kron(const Matrix& m, const Matrix& n)
{
    const Index rows = m.rows() * n.rows();
    const Index cols = m.cols() * n.cols();
    std::vector<SparseVector> out(cols);
    for (Index j1 = 0; j1 < m.cols(); ++j1)
    {
        for (Index j2 = 0; j2 < n.cols(); ++j2)
        {
            SparseVector& c = out[j1 * n.cols() + j2];
            c.reserve(m.column(j1).size() * n.column(j2).size());
            for (const auto& [i1, a] : m.column(j1))
                for (const auto& [i2, b] : n.column(j2))
                    c.emplace_back(i1 * n.rows() + i2, a * b);
        }
    }
    return Matrix(rows, cols, std::move(out));
}

/// M ⊗ ... ⊗ M with `factors` copies; zero factors gives the 1 x 1 identity.
inline Matrix kron_power(const Matrix& m, unsigned factors)
{
    Matrix out = Matrix::identity(1);
    for (unsigned k = 0; k < factors; ++k)
        out = kron(out, m);
    return out;
}

// ------------------------------------------------------------------------
// Subspace
// ------------------------------------------------------------------------

/**
 * Subspace of Q^ambient with a basis in column echelon form: every basis
 * vector has a distinct low (largest index with a nonzero entry).  The basis
 * depends only on the generators and their order.
 */
class Subspace
{
    public:
        Subspace() = default;

        explicit Subspace(Index ambient) : ambient_(ambient) {}

        static Subspace whole(Index ambient)
        {
            Subspace s(ambient);
            s.basis_.reserve(ambient);
            for (Index i = 0; i < ambient; ++i)
            {
                s.slot_.emplace(i, s.basis_.size());
                s.basis_.push_back(unit_vector(i));
            }
            return s;
        }

        static Subspace span(Index ambient, const std::vector<SparseVector>& generators)
        {
            Subspace s(ambient);
            for (const auto& g : generators)
                s.insert(g);
            return s;
        }

        /**
         * Adopt vectors that already have pairwise distinct lows.  Throws if
         * they do not.
         */
        static Subspace from_echelon(Index ambient, std::vector<SparseVector> vectors)
        {
            Subspace s(ambient);
            for (auto& v : vectors)
            {
                if (v.empty() || v.back().first >= ambient)
                    throw InvalidArgument("echelon vector empty or out of range");
                if (!s.slot_.emplace(v.back().first, s.basis_.size()).second)
                    throw InvalidArgument("echelon vectors share a low index");
                s.basis_.push_back(std::move(v));
            }
            return s;
        }

        Index ambient_dim() const { return ambient_; }
        Index dim() const { return basis_.size(); }
        const std::vector<SparseVector>& basis() const { return basis_; }

        Matrix basis_matrix() const { return Matrix(ambient_, basis_.size(), basis_); }

        /// Pivot (low) index of each basis vector, in basis order.
        std::vector<Index> pivots() const
        {
            std::vector<Index> out;
            out.reserve(basis_.size());
            for (const auto& b : basis_)
                out.push_back(b.back().first);
            return out;
        }

        /**
         * Remainder of v after eliminating every entry that sits on a pivot
         * index.  The remainder is zero iff v lies in the subspace, and it is
         * independent of the echelon basis chosen for the same subspace.
         *
         * @param coefficients If non-null, receives v = Σ c_k basis_k + remainder.
         */
        SparseVector reduce(const SparseVector& v, std::vector<Rational>* coefficients = nullptr) const
        {
            if (coefficients)
                coefficients->assign(basis_.size(), Rational(0));
            return reduce_impl(v, [&](std::size_t slot, const Rational& f) {
                if (coefficients)
                    (*coefficients)[slot] += f;
            });
        }

        /// Sparse variant: v = Σ coefficients[k] basis_k + remainder.
        SparseVector reduce_sparse(const SparseVector& v, SparseVector& coefficients) const
        {
            std::vector<std::pair<Index, Rational>> terms;
            SparseVector rest = reduce_impl(v, [&](std::size_t slot, const Rational& f) { terms.emplace_back(slot, f); });
            coefficients = combine_terms(std::move(terms));
            return rest;
        }

        bool contains(const SparseVector& v) const { return reduce(v).empty(); }

        bool contains(const Subspace& other) const
        {
            return std::all_of(other.basis_.begin(), other.basis_.end(),
                               [this](const SparseVector& b) { return contains(b); });
        }

        /// Coordinates in basis(), or nullopt when v is outside the subspace.
        std::optional<std::vector<Rational>> coordinates(const SparseVector& v) const
        {
            std::vector<Rational> c;
            if (!reduce(v, &c).empty())
                return std::nullopt;
            return c;
        }

        /// Sparse coordinates in basis(), or nullopt when v is outside the subspace.
        std::optional<SparseVector> sparse_coordinates(const SparseVector& v) const
        {
            SparseVector c;
            if (!reduce_sparse(v, c).empty())
                return std::nullopt;
            return c;
        }

        /// Reduce v and append the remainder to the basis when nonzero.
        bool insert(const SparseVector& v)
        {
            SparseVector r = reduce(v);
            if (r.empty())
                return false;
            if (r.back().first >= ambient_)
                throw InvalidArgument("vector outside ambient space");
            slot_.emplace(r.back().first, basis_.size());
            basis_.push_back(std::move(r));
            return true;
        }

        Subspace sum(const Subspace& other) const
        {
            Subspace s = *this;
            for (const auto& b : other.basis_)
                s.insert(b);
            return s;
        }

        Index intersection_dim(const Subspace& other) const
        {
            return dim() + other.dim() - sum(other).dim();
        }

        bool operator==(const Subspace& other) const
        {
            return ambient_ == other.ambient_ && dim() == other.dim() && contains(other);
        }

    private:
        template <class Record>
        SparseVector reduce_impl(const SparseVector& v, Record&& record) const
        {
            SparseVector cur = v;
            std::size_t pos = cur.size();
            while (pos > 0)
            {
                const Index r = cur[pos - 1].first;
                auto it = slot_.find(r);
                if (it == slot_.end())
                {
                    --pos;
                    continue;
                }
                const SparseVector& w = basis_[it->second];
                Rational f = cur[pos - 1].second / w.back().second;
                axpy(cur, -f, w);
                record(it->second, f);
                pos = static_cast<std::size_t>(
                    std::lower_bound(cur.begin(), cur.end(), r,
                                     [](const auto& e, Index x) { return e.first < x; }) -
                    cur.begin());
            }
            return cur;
        }

    private:
        Index ambient_ = 0;
        std::vector<SparseVector> basis_;
        std::unordered_map<Index, std::size_t> slot_;
};

// ------------------------------------------------------------------------
// Elimination
// ------------------------------------------------------------------------

/**
 * Column reduction of a matrix, retaining for every pivot column the reduced
 * column and the combination of original columns producing it.
 */
class Elimination
{
    public:
        /**
         * @param track_combinations When false, only rank, pivots and the
         *        image are available; kernel() and solve() throw.  Saves the
         *        bookkeeping when only a column space is needed.
         */
        explicit Elimination(const Matrix& m, bool track_combinations = true)
            : rows_(m.rows()), cols_(m.cols()), tracked_(track_combinations)
        {
            for (Index j = 0; j < cols_; ++j)
            {
                SparseVector c = m.column(j);
                SparseVector v;
                if (tracked_)
                    v = unit_vector(j);
                while (!c.empty())
                {
                    auto it = slot_.find(c.back().first);
                    if (it == slot_.end())
                        break;
                    const std::size_t s = it->second;
                    Rational f = c.back().second / reduced_[s].back().second;
                    axpy(c, -f, reduced_[s]);
                    if (tracked_)
                        axpy(v, -f, combos_[s]);
                }
                if (c.empty())
                {
                    free_cols_.push_back(j);
                    if (tracked_)
                        kernel_.push_back(std::move(v));
                }
                else
                {
                    slot_.emplace(c.back().first, reduced_.size());
                    pivot_cols_.push_back(j);
                    reduced_.push_back(std::move(c));
                    if (tracked_)
                        combos_.push_back(std::move(v));
                }
            }
        }

        Index rows() const { return rows_; }
        Index cols() const { return cols_; }
        Index rank() const { return pivot_cols_.size(); }
        Index nullity() const { return free_cols_.size(); }
        const std::vector<Index>& pivot_columns() const { return pivot_cols_; }
        const std::vector<Index>& free_columns() const { return free_cols_; }

        /// Kernel basis: one vector per free column j, equal to 1 at j and 0 at other free columns.
        Subspace kernel() const
        {
            require_tracking();
            return Subspace::from_echelon(cols_, kernel_);
        }

        const std::vector<SparseVector>& kernel_vectors() const
        {
            require_tracking();
            return kernel_;
        }

        /// Echelon basis of the column space (the reduced pivot columns).
        Subspace image() const { return Subspace::from_echelon(rows_, reduced_); }

        /**
         * Some x with M x = b, or nullopt when b is outside the image.  With
         * free_ones = false every free variable is 0; with free_ones = true
         * every free variable is 1 (the second deterministic solution).
         */
        std::optional<SparseVector> solve(const SparseVector& b, bool free_ones = false) const
        {
            require_tracking();
            SparseVector cur = b;
            SparseVector x;
            std::size_t pos = cur.size();
            while (pos > 0)
            {
                const Index r = cur[pos - 1].first;
                auto it = slot_.find(r);
                if (it == slot_.end())
                    return std::nullopt;   // lowest remaining entry cannot be cleared
                const std::size_t s = it->second;
                Rational f = cur[pos - 1].second / reduced_[s].back().second;
                axpy(cur, -f, reduced_[s]);
                axpy(x, f, combos_[s]);
                pos = cur.size();
            }
            if (free_ones)
                for (const auto& k : kernel_)
                    axpy(x, Rational(1), k);
            return x;
        }

    private:
        void require_tracking() const
        {
            if (!tracked_)
                throw Error("elimination was built without combination tracking");
        }

        Index rows_;
        Index cols_;
        bool tracked_;
        std::vector<Index> pivot_cols_;
        std::vector<Index> free_cols_;
        std::vector<SparseVector> reduced_;
        std::vector<SparseVector> combos_;
        std::vector<SparseVector> kernel_;
        std::unordered_map<Index, std::size_t> slot_;
};

// ------------------------------------------------------------------------
// Quotients
// ------------------------------------------------------------------------

/**
 * Quotient Q^n / W with coordinates indexed by the non-pivot indices of W's
 * echelon basis.  The section sends quotient coordinate k to the unit vector
 * at the k-th non-pivot index.
 */
class Quotient
{
    public:
        Quotient() = default;

        explicit Quotient(Subspace w) : kernel_(std::move(w))
        {
            std::vector<bool> is_pivot(kernel_.ambient_dim(), false);
            for (Index p : kernel_.pivots())
                is_pivot[p] = true;
            for (Index i = 0; i < kernel_.ambient_dim(); ++i)
            {
                if (!is_pivot[i])
                {
                    position_.emplace(i, section_.size());
                    section_.push_back(i);
                }
            }
        }

        Index ambient_dim() const { return kernel_.ambient_dim(); }
        Index dim() const { return section_.size(); }
        const Subspace& relations() const { return kernel_; }

        /// Ambient index representing quotient coordinate k.
        Index representative(Index k) const { return section_.at(k); }
        const std::vector<Index>& representatives() const { return section_; }

        SparseVector project(const SparseVector& v) const
        {
            SparseVector r = kernel_.reduce(v);
            for (auto& e : r)
                e.first = position_.at(e.first);
            return r;
        }

        Matrix projection_matrix() const
        {
            std::vector<SparseVector> cols(ambient_dim());
            for (Index i = 0; i < ambient_dim(); ++i)
                cols[i] = project(unit_vector(i));
            return Matrix(dim(), ambient_dim(), std::move(cols));
        }

    private:
        Subspace kernel_;
        std::vector<Index> section_;
        std::unordered_map<Index, Index> position_;
};

struct Cokernel
{
    Matrix projection;
    Index dim = 0;
};

// ------------------------------------------------------------------------
// Free-function surface
// ------------------------------------------------------------------------

inline Index rank(const Matrix& m) { return Elimination(m, false).rank(); }

inline Subspace kernel_basis(const Matrix& m) { return Elimination(m).kernel(); }

inline Subspace image_basis(const Matrix& m) { return Elimination(m, false).image(); }

/// Deterministic solution of M x = b (free variables 0), or nullopt.
inline std::optional<SparseVector> solve(const Matrix& m, const SparseVector& b)
{
    if (!b.empty() && b.back().first >= m.rows())
        throw InvalidArgument("right-hand side longer than matrix rows");
    return Elimination(m).solve(b);
}

inline Cokernel cokernel(const Matrix& m)
{
    Quotient q(Elimination(m, false).image());
    return Cokernel{q.projection_matrix(), q.dim()};
}

/**
 * dim Ker g − rank f at the middle space of U --f--> V --g--> W.
 * Throws CompositionNotZero when g ∘ f ≠ 0.
 */
inline Index exactness_defect(const Matrix& f, const Matrix& g)
{
    if (f.rows() != g.cols())
        throw InvalidArgument("exactness_defect: f and g do not compose");
    if (!(g * f).is_zero())
        throw CompositionNotZero("g ∘ f is not zero; the pair is not a complex");
    return (g.cols() - rank(g)) - rank(f);
}

/**
 * dim Ker g + rank f − 2 dim(Im f ∩ Ker g).  Agrees with exactness_defect
 * whenever g ∘ f = 0 and is defined for any composable pair; zero iff
 * Im f = Ker g.
 */
inline Index exactness_mismatch(const Matrix& f, const Matrix& g)
{
    if (f.rows() != g.cols())
        throw InvalidArgument("exactness_mismatch: f and g do not compose");
    Elimination ef(f, false), eg(g);
    Subspace im = ef.image();
    Subspace ker = eg.kernel();
    return ker.dim() + im.dim() - 2 * im.intersection_dim(ker);
}

/**
 * Left inverse r (r M = I) of an injective matrix, or nullopt.  Built from
 * the pivot rows of the transpose: r is zero outside a deterministically
 * chosen set of rank(M) rows.
 */
inline std::optional<Matrix> left_inverse(const Matrix& m)
{
    Matrix mt = m.transpose();
    Elimination e(mt, false);   // columns of mt = rows of m
    if (e.rank() != m.cols())
        return std::nullopt;
    // Square submatrix of M on the pivot rows is invertible.
    const auto& rows = e.pivot_columns();
    Matrix sub_t = mt.select_columns(rows);           // (cols x k) = (M restricted to rows)^T
    Matrix sub = sub_t.transpose();                   // k x cols, square
    Elimination es(sub);
    std::vector<SparseVector> inv_cols(sub.rows());
    for (Index k = 0; k < sub.rows(); ++k)
        inv_cols[k] = *es.solve(unit_vector(k));
    Matrix inv(sub.cols(), sub.rows(), std::move(inv_cols));   // sub^{-1}
    // r = sub^{-1} ∘ (row selection)
    std::vector<SparseVector> r_cols(m.rows());
    for (Index k = 0; k < rows.size(); ++k)
        r_cols[rows[k]] = inv.column(k);
    return Matrix(m.cols(), m.rows(), std::move(r_cols));
}

/// Inverse of a square matrix, or nullopt when singular.
inline std::optional<Matrix> inverse(const Matrix& m)
{
    if (!m.is_square())
        return std::nullopt;
    Elimination e(m);
    if (e.rank() != m.cols())
        return std::nullopt;
    std::vector<SparseVector> cols(m.rows());
    for (Index k = 0; k < m.rows(); ++k)
        cols[k] = *e.solve(unit_vector(k));
    return Matrix(m.cols(), m.rows(), std::move(cols));
}

}   // namespace hc

#endif
