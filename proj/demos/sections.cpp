// Which FKM focal bundles over the definite and indefinite Clifford systems
// admit a cross-section, for a few small k.

#include <iostream>

#include "fkm/verify.hpp"

int main() {
    for (int m : {4, 8}) {
        std::cout << "m = " << m << "\n";
        for (int k = 2; k <= 6; ++k) {
            for (int p = 0; p < k; ++p) {
                const auto c = fkm::classify(m, k, p);
                std::cout << "  k=" << k << " p=" << p << "  trace " << *c.trace << "  class "
                          << c.homotopy->value << " mod " << c.homotopy->modulus << "  section "
                          << (*c.cross_section ? "yes" : "no") << "\n";
            }
        }
    }

    fkm::RunConfig cfg;
    cfg.m = 8;
    cfg.k = 3;
    cfg.p = 0;
    cfg.samples = 2000;
    const auto r = fkm::run_verify(cfg);
    std::cout << "\nverify m=8 k=3 p=0: " << (r.ok() ? "all checks pass" : "FAILED") << "\n";
    for (const auto& chk : r.checks) {
        std::cout << "  " << chk.id << "  residual " << chk.residual << "\n";
    }
}
