// Octonion arithmetic: the multiplication table, a non-associative triple,
// and the seven-fold left multiplication identity.

#include <iostream>

#include "fkm/cayley.hpp"

int main() {
    using O = fkm::Octonion<int>;

    std::cout << "e_i e_j for i, j = 1..7\n";
    for (std::size_t i = 1; i < 8; ++i) {
        for (std::size_t j = 1; j < 8; ++j) {
            std::cout << (O::basis(i) * O::basis(j)) << (j < 7 ? "\t" : "\n");
        }
    }

    const O e1 = O::basis(1), e2 = O::basis(2), e4 = O::basis(4);
    std::cout << "\n(e1 e2) e4 = " << (e1 * e2) * e4 << "\n";
    std::cout << "e1 (e2 e4) = " << e1 * (e2 * e4) << "\n";
    std::cout << "associator = " << fkm::associator(e1, e2, e4) << "\n";

    const O z = O::basis(0) + O::basis(3) * 2 - O::basis(6);
    std::cout << "\nz = " << z << "\n";
    std::cout << "e7(e6(e5(e4(e3(e2(e1 z)))))) = " << fkm::seven_fold_left_mult(z) << "\n";
}
