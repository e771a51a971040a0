// Walks through the invariants of the twisted cubic A = [[1,1,1,1],[0,1,2,3]].

#include "gkz/ekranks.hpp"
#include "gkz/lattice_ideal.hpp"

#include <iostream>

int main() {
    using namespace gkz;
    const IntMatrix a{{1, 1, 1, 1}, {0, 1, 2, 3}};
    Semigroup s(a);

    std::cout << "saturated: " << std::boolalpha << is_saturated(s) << "\n";
    std::cout << "toric ideal:\n";
    for (const auto& b : markov_basis(a).binomials) std::cout << "  " << b << "\n";

    // Top local cohomology sits at the negatives of interior degrees.
    for (const auto& row : lc_scan(s, Window::symmetric(2, 2))) {
        std::cout << "H at " << to_string(row.degree) << ":";
        for (auto r : row.ranks) std::cout << " " << r;
        std::cout << "\n";
    }

    auto four = four_term_report(s, RatVector{0, 0});
    std::cout << "Tor_4(M) = " << four.tor_middle.at(4) << ", Tor_3(M) = " << four.tor_middle.at(3) << "\n";

    auto gm = gm_report(s, Window::symmetric(2, 6));
    std::cout << "volume " << gm.volume << ", Ext^1(O,V) = " << gm.extension.ext_o_v.at(1)
              << (gm.extension.split ? " (split)" : " (non-split)") << "\n";
}
