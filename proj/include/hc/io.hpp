/**
 * JSON formats: algebra files (inline structure constants or preset
 * descriptors), extension files, and excision reports.  Rationals are always
 * strings "p/q" (or "p" when integral).
 */
#ifndef HC_IO_HPP
#define HC_IO_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "algebra.hpp"
#include "errors.hpp"
#include "excision.hpp"
#include "linalg.hpp"

namespace hc {

using Json = nlohmann::ordered_json;

// ------------------------------------------------------------------------
// Raw documents
// ------------------------------------------------------------------------

/// Parse JSON text; syntax errors become ParseError with line and column.
inline Json parse_json_text(const std::string& text, const std::string& origin = "<input>")
{
    try
    {
        return Json::parse(text);
    }
    catch (const nlohmann::json::parse_error& e)
    {
        std::size_t line = 1, column = 1;
        const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t k = 0; k < stop; ++k)
        {
            if (text[k] == '\n')
            {
                ++line;
                column = 1;
            }
            else
                ++column;
        }
        throw ParseError(origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + e.what());
    }
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Json load_json_file(const std::string& path)
{
    return parse_json_text(read_file(path), path);
}

namespace detail {

[[noreturn]] inline void schema_error(const std::string& where, const std::string& what)
{
    throw ParseError(where + ": " + what);
}

inline const Json& member(const Json& j, const char* key, const std::string& where)
{
    if (!j.is_object() || !j.contains(key))
        schema_error(where, std::string("missing field \"") + key + "\"");
    return j.at(key);
}

inline long long integer(const Json& j, const std::string& where)
{
    if (!j.is_number_integer())
        schema_error(where, "expected an integer");
    return j.get<long long>();
}

inline Index index_value(const Json& j, const std::string& where)
{
    long long v = integer(j, where);
    if (v < 0)
        schema_error(where, "expected a non-negative integer");
    return static_cast<Index>(v);
}

inline Rational rational(const Json& j, const std::string& where)
{
    if (j.is_number_integer())
        return Rational(j.get<long long>());
    if (!j.is_string())
        schema_error(where, "expected a rational string \"p/q\"");
    try
    {
        return parse_rational(j.get<std::string>());
    }
    catch (const Error& e)
    {
        schema_error(where, e.what());
    }
}

inline std::vector<Rational> rational_array(const Json& j, const std::string& where)
{
    if (!j.is_array())
        schema_error(where, "expected an array of rationals");
    std::vector<Rational> out;
    for (std::size_t k = 0; k < j.size(); ++k)
        out.push_back(rational(j[k], where + "[" + std::to_string(k) + "]"));
    return out;
}

inline Json rational_json(const Rational& r)
{
    return to_string(r);
}

inline Json dense_json(const SparseVector& v, Index n)
{
    Json out = Json::array();
    for (const auto& x : to_dense(v, n))
        out.push_back(rational_json(x));
    return out;
}

}   // namespace detail

// ------------------------------------------------------------------------
// Algebras
// ------------------------------------------------------------------------

/**
 * Algebra from an inline object {"dim", "basis", "mult"} or a preset
 * descriptor {"preset": name, ...}.  Structural problems throw ParseError
 * naming the offending field; associativity is not checked here.
 */
inline Algebra algebra_from_json(const Json& j, const std::string& where = "algebra")
{
    using namespace detail;
    if (!j.is_object())
        schema_error(where, "expected an object");
    if (j.contains("preset"))
    {
        const Json& p = j.at("preset");
        if (!p.is_string())
            schema_error(where + ".preset", "expected a string");
        const std::string name = p.get<std::string>();
        auto size = [&](const char* key) { return integer(member(j, key, where), where + "." + key); };
        try
        {
            if (name == "matrix")
                return presets::matrix(size("k"));
            if (name == "truncated_poly")
                return presets::truncated_poly(size("m"));
            if (name == "zero_mult")
                return presets::zero_mult(size("d"));
            if (name == "upper_triangular")
                return presets::upper_triangular(size("k"));
            if (name == "field")
                return presets::field();
            if (name == "direct_sum")
                return presets::direct_sum(algebra_from_json(member(j, "a", where), where + ".a"),
                                           algebra_from_json(member(j, "b", where), where + ".b"));
        }
        catch (const InvalidArgument& e)
        {
            schema_error(where, e.what());
        }
        schema_error(where + ".preset", "unknown preset \"" + name + "\"");
    }

    const Index d = index_value(member(j, "dim", where), where + ".dim");
    std::vector<std::string> names;
    if (j.contains("basis"))
    {
        const Json& b = j.at("basis");
        if (!b.is_array() || b.size() != d)
            schema_error(where + ".basis", "expected " + std::to_string(d) + " basis names");
        for (const auto& x : b)
        {
            if (!x.is_string())
                schema_error(where + ".basis", "basis names must be strings");
            names.push_back(x.get<std::string>());
        }
    }
    else
        for (Index k = 1; k <= d; ++k)
            names.push_back("e" + std::to_string(k));

    Algebra a(names);
    std::vector<bool> seen(d * d, false);
    const Json& mult = member(j, "mult", where);
    if (!mult.is_array())
        schema_error(where + ".mult", "expected an array of [i, j, {k: \"p/q\"}] triples");
    for (std::size_t t = 0; t < mult.size(); ++t)
    {
        const std::string at = where + ".mult[" + std::to_string(t) + "]";
        const Json& e = mult[t];
        if (!e.is_array() || e.size() != 3 || !e[2].is_object())
            schema_error(at, "expected [i, j, {k: \"p/q\"}]");
        const Index x = index_value(e[0], at + "[0]"), y = index_value(e[1], at + "[1]");
        if (x >= d || y >= d)
            schema_error(at, "basis index out of range");
        if (seen[x * d + y])
            schema_error(at, "duplicate product entry");
        seen[x * d + y] = true;
        std::vector<std::pair<Index, Rational>> terms;
        for (const auto& [key, value] : e[2].items())
        {
            Index k = 0;
            try
            {
                std::size_t used = 0;
                k = std::stoul(key, &used);
                if (used != key.size())
                    throw std::invalid_argument(key);
            }
            catch (const std::exception&)
            {
                schema_error(at, "output index \"" + key + "\" is not an integer");
            }
            if (k >= d)
                schema_error(at, "output index out of range");
            terms.emplace_back(k, rational(value, at + "." + key));
        }
        a.set_product(x, y, combine_terms(std::move(terms)));
    }
    return a;
}

/// Inline form; only nonzero products are listed.
inline Json algebra_to_json(const Algebra& a)
{
    Json j;
    j["dim"] = a.dim();
    j["basis"] = a.basis_names();
    Json mult = Json::array();
    for (Index x = 0; x < a.dim(); ++x)
        for (Index y = 0; y < a.dim(); ++y)
        {
            const auto& p = a.product(x, y);
            if (p.empty())
                continue;
            Json terms = Json::object();
            for (const auto& [k, c] : p)
                terms[std::to_string(k)] = detail::rational_json(c);
            mult.push_back(Json::array({x, y, terms}));
        }
    j["mult"] = mult;
    return j;
}

// ------------------------------------------------------------------------
// Matrices and extensions
// ------------------------------------------------------------------------

/**
 * rows x cols matrix from either nested rows [[..], ..] or a flat row-major
 * array of rows*cols entries.
 */
inline Matrix matrix_from_json(const Json& j, Index rows, Index cols, const std::string& where)
{
    using namespace detail;
    if (!j.is_array())
        schema_error(where, "expected a row-major array");
    std::vector<std::vector<Rational>> data(rows, std::vector<Rational>(cols));
    const bool nested = !j.empty() && j[0].is_array();
    if (nested)
    {
        if (j.size() != rows)
            schema_error(where, "expected " + std::to_string(rows) + " rows");
        for (Index r = 0; r < rows; ++r)
        {
            auto row = rational_array(j[r], where + "[" + std::to_string(r) + "]");
            if (row.size() != cols)
                schema_error(where + "[" + std::to_string(r) + "]", "expected " + std::to_string(cols) + " entries");
            data[r] = std::move(row);
        }
    }
    else
    {
        auto flat = rational_array(j, where);
        if (flat.size() != rows * cols)
            schema_error(where, "expected " + std::to_string(rows) + " x " + std::to_string(cols) + " entries");
        for (Index r = 0; r < rows; ++r)
            for (Index c = 0; c < cols; ++c)
                data[r][c] = flat[r * cols + c];
    }
    return Matrix::from_rows(rows, cols, data);
}

inline Json matrix_to_json(const Matrix& m)
{
    Json rows = Json::array();
    for (const auto& r : m.to_dense())
    {
        Json row = Json::array();
        for (const auto& x : r)
            row.push_back(detail::rational_json(x));
        rows.push_back(row);
    }
    return rows;
}

inline bool is_extension_document(const Json& j)
{
    return j.is_object() && (j.contains("B") || j.contains("ideal"));
}

/**
 * Extension from {"B", "A", "D", "i", "j"} or {"A", "ideal": [vectors]}.
 * The extension is not validated here.
 */
inline Extension extension_from_json(const Json& j, const std::string& where = "extension")
{
    using namespace detail;
    if (!j.is_object())
        schema_error(where, "expected an object");
    Algebra a = algebra_from_json(member(j, "A", where), where + ".A");
    if (j.contains("ideal"))
    {
        const Json& ideal = j.at("ideal");
        if (!ideal.is_array())
            schema_error(where + ".ideal", "expected an array of vectors");
        std::vector<SparseVector> gens;
        for (std::size_t k = 0; k < ideal.size(); ++k)
        {
            auto v = rational_array(ideal[k], where + ".ideal[" + std::to_string(k) + "]");
            if (v.size() != a.dim())
                schema_error(where + ".ideal[" + std::to_string(k) + "]", "vector length differs from dim A");
            gens.push_back(from_dense(v));
        }
        try
        {
            return quotient_extension(a, gens);
        }
        catch (const InvalidArgument& e)
        {
            schema_error(where + ".ideal", e.what());
        }
    }
    auto b = std::make_shared<const Algebra>(algebra_from_json(member(j, "B", where), where + ".B"));
    auto d = std::make_shared<const Algebra>(algebra_from_json(member(j, "D", where), where + ".D"));
    auto ap = std::make_shared<const Algebra>(std::move(a));
    Matrix i = matrix_from_json(member(j, "i", where), ap->dim(), b->dim(), where + ".i");
    Matrix jm = matrix_from_json(member(j, "j", where), d->dim(), ap->dim(), where + ".j");
    return Extension{b, ap, d, std::move(i), std::move(jm)};
}

inline Json extension_to_json(const Extension& e)
{
    Json j;
    j["B"] = algebra_to_json(*e.B);
    j["A"] = algebra_to_json(*e.A);
    j["D"] = algebra_to_json(*e.D);
    j["i"] = matrix_to_json(e.i);
    j["j"] = matrix_to_json(e.j);
    return j;
}

// ------------------------------------------------------------------------
// Reports
// ------------------------------------------------------------------------

namespace detail {

template <class T>
std::vector<T> list(const Json& j, const char* key)
{
    return j.at(key).get<std::vector<T>>();
}

inline UnitSide parse_unit_side(const std::string& s)
{
    for (UnitSide u : {UnitSide::None, UnitSide::Left, UnitSide::Right, UnitSide::TwoSided})
        if (to_string(u) == s)
            return u;
    schema_error("hypothesis.unit_side", "unknown side \"" + s + "\"");
}

inline ScenarioStatus parse_scenario_status(const std::string& s)
{
    for (ScenarioStatus x : {ScenarioStatus::Passed, ScenarioStatus::Failed, ScenarioStatus::SurrogateNotMet})
        if (to_string(x) == s)
            return x;
    schema_error("scenarios.status", "unknown status \"" + s + "\"");
}

}   // namespace detail

inline Json report_to_json(const ExcisionReport& r)
{
    Json j;
    j["extension"] = {{"dim_B", r.extension.dim_B},     {"dim_A", r.extension.dim_A},
                      {"dim_D", r.extension.dim_D},     {"basis_B", r.extension.basis_B},
                      {"basis_A", r.extension.basis_A}, {"basis_D", r.extension.basis_D}};
    j["max_degree"] = r.max_degree;

    Json h;
    h["unit_side"] = to_string(r.hypothesis.unit_side);
    h["unit_element"] = r.hypothesis.unit_element ? detail::dense_json(*r.hypothesis.unit_element, r.extension.dim_B)
                                                  : Json(nullptr);
    h["bar_homology_B"] = r.hypothesis.bar_homology_B;
    h["met"] = r.hypothesis.met;
    h["surrogate"] = r.hypothesis.surrogate;
    j["hypothesis"] = h;

    Json seqs = Json::array();
    for (const auto& s : r.sequences)
    {
        Json nodes = Json::array();
        for (const auto& n : s.nodes)
            nodes.push_back({{"degree", n.degree},
                             {"group", n.group},
                             {"dim", n.dim},
                             {"defect", n.defect},
                             {"composition_zero", n.composition_zero}});
        seqs.push_back({{"name", s.name},
                        {"layer", s.layer},
                        {"theory", s.theory},
                        {"variance", s.variance},
                        {"convention", s.convention},
                        {"nodes", nodes},
                        {"exact", s.exact},
                        {"interior_exact", s.interior_exact},
                        {"bottom_exact", s.bottom_exact}});
    }
    j["sequences"] = seqs;

    Json maps = Json::array();
    for (const auto& c : r.comparison)
        maps.push_back({{"theory", c.theory},
                        {"quasi_isomorphism", c.quasi_isomorphism},
                        {"injective", c.injective},
                        {"injectivity_asserted", c.injectivity_asserted}});
    Json eq = Json::array();
    for (const auto& e : r.equivalence)
        eq.push_back({{"theory", e.theory},
                      {"homology_exact", e.homology_exact},
                      {"cohomology_exact", e.cohomology_exact},
                      {"nodes_compared", e.nodes_compared},
                      {"nodes_agreeing", e.nodes_agreeing},
                      {"betti_duality", e.betti_duality},
                      {"pairing_nondegenerate", e.pairing_nondegenerate},
                      {"transpose_consistent", e.transpose_consistent}});
    const auto& b = r.bar_invariance;
    j["comparison"] = {{"maps", maps},
                       {"bar_invariance",
                        {{"A", b.A},
                         {"D", b.D},
                         {"A_dual", b.A_dual},
                         {"D_dual", b.D_dual},
                         {"in_hypothesis", b.in_hypothesis},
                         {"equal", b.equal},
                         {"vanishing_asserted", b.vanishing_asserted},
                         {"vanishing", b.vanishing}}},
                       {"equivalence", eq}};

    Json sc = Json::array();
    for (const auto& s : r.scenarios)
        sc.push_back({{"name", s.name},
                      {"status", to_string(s.status)},
                      {"surrogate", s.surrogate},
                      {"trace_sequence_dims", s.trace_sequence_dims},
                      {"trace_sequence_exact", s.trace_sequence_exact},
                      {"cyclic_sequences_exact", s.cyclic_sequences_exact},
                      {"dims_equal", s.dims_equal},
                      {"details", s.details}});
    j["scenarios"] = sc;
    j["failed_assertions"] = r.failed_assertions;
    j["notes"] = r.notes;
    j["verdict"] = r.verdict;
    return j;
}

inline ExcisionReport report_from_json(const Json& j)
{
    using detail::list;
    ExcisionReport r;
    try
    {
        const Json& x = j.at("extension");
        r.extension = {x.at("dim_B").get<Index>(),  x.at("dim_A").get<Index>(),  x.at("dim_D").get<Index>(),
                       list<std::string>(x, "basis_B"), list<std::string>(x, "basis_A"), list<std::string>(x, "basis_D")};
        r.max_degree = j.at("max_degree").get<Index>();

        const Json& h = j.at("hypothesis");
        r.hypothesis.unit_side = detail::parse_unit_side(h.at("unit_side").get<std::string>());
        if (!h.at("unit_element").is_null())
            r.hypothesis.unit_element = from_dense(detail::rational_array(h.at("unit_element"), "unit_element"));
        r.hypothesis.bar_homology_B = list<Index>(h, "bar_homology_B");
        r.hypothesis.met = h.at("met").get<bool>();
        r.hypothesis.surrogate = h.at("surrogate").get<std::string>();

        for (const auto& s : j.at("sequences"))
        {
            SequenceRecord rec;
            rec.name = s.at("name").get<std::string>();
            rec.layer = s.at("layer").get<std::string>();
            rec.theory = s.at("theory").get<std::string>();
            rec.variance = s.at("variance").get<std::string>();
            rec.convention = s.at("convention").get<std::string>();
            for (const auto& n : s.at("nodes"))
                rec.nodes.push_back({n.at("degree").get<int>(), n.at("group").get<std::string>(),
                                     n.at("dim").get<Index>(), n.at("defect").get<Index>(),
                                     n.at("composition_zero").get<bool>()});
            rec.exact = s.at("exact").get<bool>();
            rec.interior_exact = s.at("interior_exact").get<bool>();
            rec.bottom_exact = s.at("bottom_exact").get<bool>();
            r.sequences.push_back(std::move(rec));
        }

        const Json& c = j.at("comparison");
        for (const auto& m : c.at("maps"))
            r.comparison.push_back({m.at("theory").get<std::string>(), list<bool>(m, "quasi_isomorphism"),
                                    list<bool>(m, "injective"), m.at("injectivity_asserted").get<bool>()});
        const Json& b = c.at("bar_invariance");
        r.bar_invariance = {list<Index>(b, "A"),
                            list<Index>(b, "D"),
                            list<Index>(b, "A_dual"),
                            list<Index>(b, "D_dual"),
                            b.at("in_hypothesis").get<bool>(),
                            b.at("equal").get<bool>(),
                            b.at("vanishing_asserted").get<bool>(),
                            b.at("vanishing").get<bool>()};
        for (const auto& e : c.at("equivalence"))
            r.equivalence.push_back({e.at("theory").get<std::string>(), e.at("homology_exact").get<bool>(),
                                     e.at("cohomology_exact").get<bool>(), e.at("nodes_compared").get<Index>(),
                                     e.at("nodes_agreeing").get<Index>(), e.at("betti_duality").get<bool>(),
                                     e.at("pairing_nondegenerate").get<bool>(),
                                     e.at("transpose_consistent").get<bool>()});

        for (const auto& s : j.at("scenarios"))
        {
            ScenarioResult res;
            res.name = s.at("name").get<std::string>();
            res.status = detail::parse_scenario_status(s.at("status").get<std::string>());
            res.surrogate = s.at("surrogate").get<std::string>();
            res.trace_sequence_dims = list<Index>(s, "trace_sequence_dims");
            res.trace_sequence_exact = s.at("trace_sequence_exact").get<bool>();
            res.cyclic_sequences_exact = s.at("cyclic_sequences_exact").get<bool>();
            res.dims_equal = s.at("dims_equal").get<bool>();
            res.details = list<std::string>(s, "details");
            r.scenarios.push_back(std::move(res));
        }
        r.failed_assertions = list<std::string>(j, "failed_assertions");
        r.notes = list<std::string>(j, "notes");
        r.verdict = j.at("verdict").get<std::string>();
    }
    catch (const nlohmann::json::exception& e)
    {
        throw ParseError(std::string("report: ") + e.what());
    }
    return r;
}

}   // namespace hc

#endif
