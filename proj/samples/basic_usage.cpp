// Difference cohomology of Z/3 with sigma(a) = 2a acting trivially on F_3,
// computed along both routes.

#include <iostream>

#include "diffcoh/diffcoh.hpp"

int main()
{
    using namespace diffcoh;
    const Field f = builtin_field(3, 1);
    const FiniteDiffGroup g = cyclic_group(3, 2);
    const DiffModule m = trivial_module(f, g);

    const auto ses = assemble_ses(m, 9);
    const auto cone = cone_cohomology(m, 9);
    for (std::size_t j = 0; j < ses.size(); ++j)
        std::cout << "H^" << j << "_sigma: " << ses[j].dim << " (cone " << cone[j].dim << ")\n";

    const auto st = stable_cohomology(m, 1);
    std::cout << "H^1_st: " << st.dim_fp << ", stabilizes at level " << st.stabilization_index << "\n";
}
