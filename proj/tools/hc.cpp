// Command-line front end: validate algebra and extension files, compute
// homology tables and trace spaces, and render excision reports.
//
// Exit codes: 0 ok, 1 violation or failed assertion, 2 parse/usage error,
// 3 degree cap exceeded.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hc/algebra.hpp"
#include "hc/excision.hpp"
#include "hc/hochschild.hpp"
#include "hc/io.hpp"

namespace {

enum ExitCode
{
    kOk = 0,
    kViolation = 1,
    kParse = 2,
    kCap = 3,
};

struct RunConfig
{
    std::string path;
    hc::Index max_degree = 3;
    std::string theory = "hochschild";
    bool dual = false;
    std::string format = "text";
    bool force = false;
    unsigned jobs = 1;
};

std::string join(const std::vector<hc::Index>& v)
{
    std::ostringstream out;
    for (std::size_t k = 0; k < v.size(); ++k)
        out << (k ? ", " : "") << v[k];
    return out.str();
}

/// Linear combination of basis names, e.g. "e11 + e22" or "2*x - 1/2*1".
std::string format_vector(const hc::SparseVector& v, const std::vector<std::string>& names,
                          const std::string& suffix = "")
{
    if (v.empty())
        return "0";
    std::string out;
    for (const auto& [k, c] : v)
    {
        hc::Rational a = c;
        if (out.empty())
        {
            if (a < 0)
            {
                out += "-";
                a = -a;
            }
        }
        else
        {
            out += a < 0 ? " - " : " + ";
            if (a < 0)
                a = -a;
        }
        if (a != 1)
            out += hc::to_string(a) + "*";
        out += names.at(k) + suffix;
    }
    return out;
}

hc::Algebra load_algebra(const hc::Json& doc)
{
    if (hc::is_extension_document(doc))
        throw hc::ParseError("expected an algebra file, found an extension");
    return hc::algebra_from_json(doc);
}

// ------------------------------------------------------------------------

int cmd_validate(const RunConfig& cfg)
{
    hc::Json doc = hc::load_json_file(cfg.path);
    if (!hc::is_extension_document(doc))
    {
        hc::Algebra a = hc::algebra_from_json(doc);
        auto violations = hc::validate_algebra(a);
        if (cfg.format == "json")
        {
            hc::Json out = {{"kind", "algebra"}, {"ok", violations.empty()}, {"violations", hc::Json::array()}};
            for (const auto& v : violations)
                out["violations"].push_back({{"i", v.i},
                                             {"j", v.j},
                                             {"k", v.k},
                                             {"lhs", hc::detail::dense_json(v.lhs, a.dim())},
                                             {"rhs", hc::detail::dense_json(v.rhs, a.dim())}});
            std::cout << out.dump(2) << "\n";
        }
        else if (violations.empty())
            std::cout << "ok: associative algebra of dimension " << a.dim() << "\n";
        else
        {
            const auto& n = a.basis_names();
            std::cout << "not associative: " << violations.size() << " violated triple(s)\n";
            for (const auto& v : violations)
                std::cout << "  (" << n[v.i] << " " << n[v.j] << ") " << n[v.k] << " = " << format_vector(v.lhs, n)
                          << "  but  " << n[v.i] << " (" << n[v.j] << " " << n[v.k]
                          << ") = " << format_vector(v.rhs, n) << "\n";
        }
        return violations.empty() ? kOk : kViolation;
    }

    hc::Extension e = hc::extension_from_json(doc);
    auto report = hc::validate_extension(e);
    if (cfg.format == "json")
        std::cout << hc::Json{{"kind", "extension"},
                              {"ok", report.ok()},
                              {"failure", hc::to_string(report.failure)},
                              {"detail", report.detail}}
                         .dump(2)
                  << "\n";
    else if (report.ok())
        std::cout << "ok: extension with dim B = " << e.B->dim() << ", dim A = " << e.A->dim()
                  << ", dim D = " << e.D->dim() << "\n";
    else
        std::cout << "invalid extension: " << hc::to_string(report.failure) << ": " << report.detail << "\n";
    return report.ok() ? kOk : kViolation;
}

int cmd_homology(const RunConfig& cfg)
{
    hc::Algebra a = load_algebra(hc::load_json_file(cfg.path));
    auto theory = hc::parse_theory(cfg.theory);
    if (!theory)
        throw hc::ParseError("unknown theory \"" + cfg.theory + "\"");
    if (!cfg.force)
        hc::check_degree_cap(a.dim(), cfg.max_degree);
    auto dims = hc::homology_dims(a, *theory, cfg.max_degree, cfg.dual);
    if (cfg.format == "json")
    {
        std::cout << hc::Json{{"theory", cfg.theory}, {"dual", cfg.dual}, {"dims", dims}}.dump() << "\n";
        return kOk;
    }
    const std::string symbol = *theory == hc::Theory::Hochschild ? "H" : *theory == hc::Theory::Cyclic ? "HC" : "HR";
    std::cout << cfg.theory << (cfg.dual ? " cohomology" : " homology") << " of a " << a.dim()
              << "-dimensional algebra\n";
    for (std::size_t n = 0; n < dims.size(); ++n)
        std::cout << "  " << symbol << (cfg.dual ? "^" : "_") << n << " = " << dims[n] << "\n";
    return kOk;
}

int cmd_trace(const RunConfig& cfg)
{
    hc::Algebra a = load_algebra(hc::load_json_file(cfg.path));
    hc::Subspace tr = hc::trace_space(a);
    if (cfg.format == "json")
    {
        hc::Json basis = hc::Json::array();
        for (const auto& f : tr.basis())
            basis.push_back(hc::detail::dense_json(f, a.dim()));
        std::cout << hc::Json{{"dim", tr.dim()}, {"basis", basis}}.dump() << "\n";
        return kOk;
    }
    std::cout << "dim A^tr = " << tr.dim() << "\n";
    for (std::size_t k = 0; k < tr.basis().size(); ++k)
        std::cout << "  f" << k + 1 << " = " << format_vector(tr.basis()[k], a.basis_names(), "*") << "\n";
    return kOk;
}

void render_sequence(std::ostream& out, const hc::SequenceRecord& s)
{
    out << "  " << s.name << "  [" << s.convention << "]  " << (s.exact ? "exact" : "NOT exact") << "\n    ";
    std::size_t width = 4;
    for (std::size_t k = 0; k < s.nodes.size(); ++k)
    {
        const auto& n = s.nodes[k];
        std::ostringstream cell;
        cell << n.group << "=" << n.dim;
        if (n.defect != 0)
            cell << " [defect " << n.defect << "]";
        if (!n.composition_zero)
            cell << " [g∘f≠0]";
        std::string text = cell.str() + (k + 1 < s.nodes.size() ? " ->" : "");
        if (width > 4 && width + 1 + text.size() > 100)
        {
            out << "\n    ";
            width = 4;
        }
        else if (width > 4)
        {
            out << " ";
            ++width;
        }
        out << text;
        width += text.size();
    }
    out << "\n";
}

void render_report(std::ostream& out, const hc::ExcisionReport& r)
{
    const auto& x = r.extension;
    out << "extension: dim B = " << x.dim_B << ", dim A = " << x.dim_A << ", dim D = " << x.dim_D
        << ", max degree " << r.max_degree << "\n\n";

    out << "hypothesis (" << r.hypothesis.surrogate << ")\n";
    out << "  unit in B: " << hc::to_string(r.hypothesis.unit_side);
    if (r.hypothesis.unit_element)
        out << "  (" << format_vector(*r.hypothesis.unit_element, x.basis_B) << ")";
    out << "\n  HR_n(B), n = 0.." << r.max_degree << ": " << join(r.hypothesis.bar_homology_B) << "\n";
    out << "  status: " << (r.hypothesis.met ? "met" : "unmet") << "\n\n";

    out << "sequences\n";
    for (const auto& s : r.sequences)
        render_sequence(out, s);

    out << "\ncomparison maps X(B) -> X(A,D)\n";
    for (const auto& c : r.comparison)
    {
        out << "  " << c.theory << ": quasi-isomorphism in degrees";
        for (std::size_t n = 0; n < c.quasi_isomorphism.size(); ++n)
            out << " " << n << (c.quasi_isomorphism[n] ? ":yes" : ":no");
        bool inj = true;
        for (bool b : c.injective)
            inj = inj && b;
        out << "; degreewise injective: " << (inj ? "yes" : "no") << "\n";
    }

    const auto& b = r.bar_invariance;
    out << "\nbar invariance" << (b.in_hypothesis ? "" : " (informational, hypothesis unmet)") << "\n";
    out << "  HR_n(A): " << join(b.A) << "   HR_n(D): " << join(b.D) << "\n";
    out << "  HR^n(A): " << join(b.A_dual) << "   HR^n(D): " << join(b.D_dual) << "\n";
    out << "  equal: " << (b.equal ? "yes" : "no") << "\n";

    out << "\nhomology/cohomology equivalence\n";
    for (const auto& e : r.equivalence)
        out << "  " << e.theory << ": homology " << (e.homology_exact ? "exact" : "inexact") << ", cohomology "
            << (e.cohomology_exact ? "exact" : "inexact") << ", nodes agreeing " << e.nodes_agreeing << "/"
            << e.nodes_compared << ", Betti duality " << (e.betti_duality ? "ok" : "FAILED") << "\n";

    out << "\nscenarios\n";
    for (const auto& s : r.scenarios)
    {
        out << "  " << s.name << ": " << hc::to_string(s.status) << "  (" << s.surrogate << ")\n";
        if (s.status != hc::ScenarioStatus::SurrogateNotMet && !s.trace_sequence_dims.empty())
            out << "    trace sequence dims: " << join(s.trace_sequence_dims) << "\n";
    }

    if (!r.failed_assertions.empty())
    {
        out << "\nfailed assertions\n";
        for (const auto& f : r.failed_assertions)
            out << "  " << f << "\n";
    }
    out << "\nnotes\n";
    for (const auto& n : r.notes)
        out << "  " << n << "\n";
    out << "\nverdict: " << r.verdict << "\n";
}

int cmd_excision(const RunConfig& cfg)
{
    hc::Json doc = hc::load_json_file(cfg.path);
    if (!hc::is_extension_document(doc))
        throw hc::ParseError("expected an extension file");
    hc::Extension e = hc::extension_from_json(doc);
    auto valid = hc::validate_extension(e);
    if (!valid.ok())
    {
        std::cout << "invalid extension: " << hc::to_string(valid.failure) << ": " << valid.detail << "\n";
        return kViolation;
    }
    hc::ExcisionOptions options;
    options.force = cfg.force;
    options.jobs = cfg.jobs;
    hc::ExcisionReport r = hc::excision_report(e, cfg.max_degree, options);
    if (cfg.format == "json")
        std::cout << hc::report_to_json(r).dump(2) << "\n";
    else
        render_report(std::cout, r);
    if (!r.passed())
        return kViolation;
    if (!r.hypothesis.met)
        std::cerr << "warning: B has no one-sided unit; excision is not guaranteed (" << r.verdict << ")\n";
    return kOk;
}

}   // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Hochschild, cyclic and bar homology of finite-dimensional algebras; excision checks"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    };
    auto add_degree = [&](CLI::App* sub) {
        sub->add_option("--max-degree", cfg.max_degree, "Highest reported degree N")->check(CLI::Range(0, 64));
        sub->add_flag("--force", cfg.force, "Ignore the basis-tensor cap");
    };

    auto* validate = app.add_subcommand("validate", "Check an algebra or extension file");
    validate->add_option("file", cfg.path, "JSON file")->required();
    add_format(validate);

    auto* homology = app.add_subcommand("homology", "Homology dimensions of an algebra");
    homology->add_option("file", cfg.path, "Algebra JSON file")->required();
    homology->add_option("--theory", cfg.theory, "Theory")->check(CLI::IsMember({"hochschild", "cyclic", "bar"}));
    homology->add_flag("--dual", cfg.dual, "Cohomology instead of homology");
    add_degree(homology);
    add_format(homology);

    auto* trace = app.add_subcommand("trace", "Trace functionals f(ab) = f(ba)");
    trace->add_option("file", cfg.path, "Algebra JSON file")->required();
    add_format(trace);

    auto* excision = app.add_subcommand("excision", "Excision report for an extension");
    excision->add_option("file", cfg.path, "Extension JSON file")->required();
    add_degree(excision);
    add_format(excision);
    excision->add_option("--jobs", cfg.jobs, "Analyze the three theories concurrently when > 1")
        ->check(CLI::PositiveNumber);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return kParse;
    }

    try
    {
        if (*validate)
            return cmd_validate(cfg);
        if (*homology)
            return cmd_homology(cfg);
        if (*trace)
            return cmd_trace(cfg);
        if (*excision)
            return cmd_excision(cfg);
    }
    catch (const hc::ParseError& e)
    {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    }
    catch (const hc::DegreeCapExceeded& e)
    {
        std::cerr << "degree cap exceeded: " << e.what() << " (use --force to override)\n";
        return kCap;
    }
    catch (const hc::Error& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kViolation;
    }
    return kOk;
}
