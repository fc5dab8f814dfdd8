#include <catch_amalgamated.hpp>

#include "hc/errors.hpp"
#include "hc/hochschild.hpp"
#include "support.hpp"

using namespace hc;

namespace {

/** Multiplication A ⊗ A -> A as a dim x dim^2 matrix. */
Matrix multiplication_matrix(const Algebra& a)
{
    std::vector<SparseVector> cols;
    for (Index i = 0; i < a.dim(); ++i)
        for (Index j = 0; j < a.dim(); ++j)
            cols.push_back(a.product(i, j));
    return Matrix(a.dim(), a.dim() * a.dim(), std::move(cols));
}

/** Permutation moving the last of `factors` tensor factors to the front. */
Matrix rotate_last_to_front(Index dim, Index factors)
{
    TensorIndex t(dim, factors);
    std::vector<SparseVector> cols(t.size());
    for (Index flat = 0; flat < t.size(); ++flat)
    {
        auto digits = t.decode(flat);
        std::rotate(digits.rbegin(), digits.rbegin() + 1, digits.rend());
        cols[flat] = unit_vector(t.encode(digits));
    }
    return Matrix(t.size(), t.size(), std::move(cols));
}

/**
 * Oracle: d_n = Σ_k (-1)^k id^{⊗k} ⊗ μ ⊗ id^{⊗(n-k)}, plus
 * (-1)^{n+1} (μ ⊗ id^{⊗n}) ∘ rotation when wrapping.
 */
Matrix kron_differential(const Algebra& a, Index n, bool wrap)
{
    const Matrix mu = multiplication_matrix(a);
    const Matrix id = Matrix::identity(a.dim());
    Matrix d(power(a.dim(), n + 1), power(a.dim(), n + 2));
    for (Index k = 0; k <= n; ++k)
    {
        Matrix term = kron(kron(kron_power(id, k), mu), kron_power(id, n - k));
        d = k % 2 == 0 ? d + term : d - term;
    }
    if (wrap)
    {
        Matrix term = kron(mu, kron_power(id, n)) * rotate_last_to_front(a.dim(), n + 2);
        d = (n + 1) % 2 == 0 ? d + term : d - term;
    }
    return d;
}

std::vector<Algebra> sample_algebras()
{
    return {presets::field(),           presets::matrix(2),          presets::truncated_poly(2),
            presets::upper_triangular(2), presets::zero_mult(2),
            presets::direct_sum(presets::field(), presets::truncated_poly(2))};
}

}   // namespace

TEST_CASE("tensor differentials match the Kronecker oracle", "[hochschild][oracle]")
{
    for (const Algebra& a : sample_algebras())
        for (Index n = 0; n < 3; ++n)
            for (bool wrap : {true, false})
                REQUIRE(tensor_differential(a, n, wrap) == kron_differential(a, n, wrap));
}

TEST_CASE("Hochschild, bar and cyclic complexes square to zero", "[hochschild][property]")
{
    for (const Algebra& a : sample_algebras())
        for (Theory t : {Theory::Hochschild, Theory::Bar, Theory::Cyclic})
        {
            ChainComplex c = build_complex(a, t, 2);
            CHECK(c.top() == internal_top(2));
            CHECK_FALSE(check_complex(c));
        }
}

TEST_CASE("the cyclic operator has order n+1 and intertwines the differentials", "[hochschild]")
{
    for (const Algebra& a : sample_algebras())
        for (Index n = 0; n < 4 && power(a.dim(), n + 2) <= 4096; ++n)
        {
            Matrix t = cyclic_operator(a, n);
            Matrix p = Matrix::identity(t.rows());
            for (Index k = 0; k <= n; ++k)
                p = t * p;
            REQUIRE(p == Matrix::identity(t.rows()));
            // b (1 - t) = (1 - t) b'
            Matrix t1 = cyclic_operator(a, n + 1);
            Matrix b = tensor_differential(a, n, true);
            Matrix bp = tensor_differential(a, n, false);
            REQUIRE(b * (Matrix::identity(t1.rows()) - t1) == (Matrix::identity(t.rows()) - t) * bp);
        }
    CHECK(cyclic_operator(presets::matrix(2), 0) == Matrix::identity(4));
}

TEST_CASE("cyclic quotient data is consistent", "[hochschild]")
{
    Algebra a = presets::upper_triangular(2);
    for (Index n = 0; n < 4; ++n)
    {
        CyclicQuotientData q = cyclic_quotient(a, n);
        CHECK((q.projection * q.one_minus_t).is_zero());
        CHECK(q.projection * q.section == Matrix::identity(q.cc_dim));
        CHECK(q.cc_dim == q.t.rows() - rank(q.one_minus_t));
    }
    // 1 - t_n on the 1-dimensional spaces of the field is 0 for even n and 2 for odd n
    for (Index n = 0; n < 5; ++n)
        CHECK(cyclic_quotient(presets::field(), n).cc_dim == (n % 2 == 0 ? 1 : 0));
}

TEST_CASE("homology of the field", "[hochschild]")
{
    Algebra f = presets::field();
    CHECK(homology_dims(f, Theory::Cyclic, 4) == std::vector<Index>{1, 0, 1, 0, 1});
    CHECK(homology_dims(f, Theory::Hochschild, 4) == std::vector<Index>{1, 0, 0, 0, 0});
    CHECK(homology_dims(f, Theory::Bar, 3) == std::vector<Index>{0, 0, 0, 0});
    CHECK(homology_dims(f, Theory::Cyclic, 4, true) == std::vector<Index>{1, 0, 1, 0, 1});
    // hand evaluation: d_n on the 1-dim spaces is 0 for even n and 1 for odd n
    for (Index n = 0; n < 4; ++n)
        CHECK(tensor_differential(f, n, true).at(0, 0) == (n % 2 == 0 ? 0 : 1));
}

TEST_CASE("bar homology detects units", "[hochschild]")
{
    CHECK(homology_dims(presets::zero_mult(1), Theory::Bar, 3) == std::vector<Index>{1, 1, 1, 1});
    for (Index n = 0; n < 3; ++n)
        CHECK(bar_complex(presets::zero_mult(1), 3).d(n).is_zero());
    for (const Algebra& a : {presets::matrix(2), presets::truncated_poly(3), presets::upper_triangular(2)})
        CHECK(homology_dims(a, Theory::Bar, 3) == std::vector<Index>{0, 0, 0, 0});
    // a one-sided unit suffices
    Extension left = quotient_extension(presets::upper_triangular(2), {unit_vector(0), unit_vector(1)});
    CHECK(homology_dims(*left.B, Theory::Bar, 3) == std::vector<Index>{0, 0, 0, 0});
}

TEST_CASE("closed forms for matrices and dual numbers", "[hochschild]")
{
    // Morita invariance: HH(M2) = HH(Q), HC(M2) = HC(Q)
    CHECK(homology_dims(presets::matrix(2), Theory::Hochschild, 3) == std::vector<Index>{1, 0, 0, 0});
    CHECK(homology_dims(presets::matrix(2), Theory::Cyclic, 3) == std::vector<Index>{1, 0, 1, 0});
    CHECK(homology_dims(presets::matrix(2), Theory::Hochschild, 3, true) == std::vector<Index>{1, 0, 0, 0});
    // Q[x]/x^2: the 2-periodic resolution gives A <-0- A <-2x- A <-0- ..., so HH = 2,1,1,1;
    // reduced cyclic homology is 1-dimensional in even degrees, so HC = 2,0,2,0
    CHECK(homology_dims(presets::truncated_poly(2), Theory::Hochschild, 3) == std::vector<Index>{2, 1, 1, 1});
    CHECK(homology_dims(presets::truncated_poly(2), Theory::Cyclic, 3) == std::vector<Index>{2, 0, 2, 0});
    // UT2 is hereditary with two simple modules: HH_0 = 2, higher vanish
    CHECK(homology_dims(presets::upper_triangular(2), Theory::Hochschild, 3) == std::vector<Index>{2, 0, 0, 0});
}

TEST_CASE("cohomology dims equal homology dims", "[hochschild][property]")
{
    for (const Algebra& a : sample_algebras())
        for (Theory t : {Theory::Hochschild, Theory::Bar, Theory::Cyclic})
            CHECK(homology_dims(a, t, 2, true) == homology_dims(a, t, 2));
}

TEST_CASE("trace functionals", "[hochschild]")
{
    Subspace m = trace_space(presets::matrix(2));
    REQUIRE(m.dim() == 1);
    CHECK(m.basis()[0] == from_dense({1, 0, 0, 1}));
    CHECK(trace_space(presets::truncated_poly(3)).dim() == 3);
    // [UT2, UT2] = span{e12}
    CHECK(trace_space(presets::upper_triangular(2)).dim() == 2);
    CHECK(trace_space(Algebra(std::vector<std::string>{})).dim() == 0);
    // dim A^tr = dim HH^0 = dim HH_0
    for (const Algebra& a : sample_algebras())
        CHECK(trace_space(a).dim() == homology_dims(a, Theory::Hochschild, 0)[0]);
}

TEST_CASE("degree cap", "[hochschild]")
{
    CHECK_NOTHROW(check_degree_cap(4, 6));
    CHECK_THROWS_AS(check_degree_cap(4, 9), DegreeCapExceeded);
    CHECK_THROWS_AS(check_degree_cap(2, 20), DegreeCapExceeded);
    CHECK(top_tensor_count(3, 3) == 3.0 * 3 * 3 * 3 * 3 * 3);
}

TEST_CASE("tensor kernels and the kernel-span formula", "[hochschild]")
{
    for (const auto& name : hc::testing::unital_corpus())
    {
        Extension e = hc::testing::load_extension(name);
        for (Index n = 1; n <= 3; ++n)
        {
            auto r = verify_kernel_span(e, n);
            CHECK(r.ok);
            CHECK(r.kernel_dim == r.expected_dim);
            CHECK(r.span_dim == r.expected_dim);
            CHECK(r.expected_dim == power(e.A->dim(), n) - power(e.A->dim() - e.B->dim(), n));
        }
    }
    CHECK_THROWS_AS(verify_kernel_span(hc::testing::load_extension("e1_field_in_field2"), 0), InvalidArgument);
}

TEST_CASE("kernel subcomplexes form valid short exact sequences", "[hochschild]")
{
    for (const auto& name : {"e1_field_in_field2", "e2_upper_triangular", "ut2_left_unit"})
    {
        Extension e = hc::testing::load_extension(name);
        for (Theory t : {Theory::Hochschild, Theory::Bar})
        {
            KernelSubcomplex k = kernel_subcomplex(e, 2, t);
            CHECK_FALSE(validate_ses(k.ses));
            CHECK_FALSE(check_chain_map(k.comparison));
            // the ladder X(B) -> Ker -> X(A) equals the tensor powers of i
            for (Index n = 0; n <= k.A->top(); ++n)
                CHECK(k.ses.inj.at(n) * k.comparison.at(n) == kron_power(e.i, n + 1));
        }
        KernelSubcomplex c = cyclic_kernel_subcomplex(e, 2);
        CHECK_FALSE(validate_ses(c.ses));
        CHECK_FALSE(check_chain_map(c.comparison));
    }
    CHECK_THROWS_AS(kernel_subcomplex(hc::testing::load_extension("e1_field_in_field2"), 2, Theory::Cyclic),
                    InvalidArgument);
}

TEST_CASE("restriction to a non-subcomplex is rejected", "[hochschild]")
{
    ChainComplex c = hochschild_complex(presets::field(), 1);
    std::vector<Subspace> spaces;
    for (Index n = 0; n <= c.top(); ++n)
        spaces.push_back(Subspace::whole(c.dim(n)));
    spaces[1] = Subspace(1);
    CHECK_THROWS_AS(restrict_complex(c, spaces), ClosureViolation);
}
