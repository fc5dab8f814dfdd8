// Minimal library tour: homology of presets and an excision report.

#include <iostream>

#include "hc/excision.hpp"
#include "hc/hochschild.hpp"

int main()
{
    using namespace hc;

    Algebra field = presets::field();
    std::cout << "HC_n(Q), n = 0..4:";
    for (Index d : homology_dims(field, Theory::Cyclic, 4))
        std::cout << " " << d;
    std::cout << "\n";

    Algebra m2 = presets::matrix(2);
    std::cout << "HH_n(M_2(Q)), n = 0..3:";
    for (Index d : homology_dims(m2, Theory::Hochschild, 3))
        std::cout << " " << d;
    std::cout << "\n";

    // B = M_2(Q) as an ideal of M_2(Q) x Q.
    Algebra a = presets::direct_sum(m2, field);
    Extension e = quotient_extension(a, {unit_vector(0), unit_vector(1), unit_vector(2), unit_vector(3)});
    ExcisionReport r = excision_report(e, 3);
    std::cout << "verdict: " << r.verdict << "\n";
    return r.passed() && r.verdict == "excision-holds" ? 0 : 1;
}
