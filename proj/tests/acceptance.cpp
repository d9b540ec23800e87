// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fkm/report.hpp"
#include "oracle_tables.hpp"

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            detail << "first failure: " << what << "; ";
        }
        pass = pass && ok;
    }
};

struct Criterion {
    int id;
    const char* title;
    double budget_seconds;  // 0 means no runtime bound
    std::function<void(Outcome&)> body;
};

template <std::size_t D>
double distance(const fkm::CayleyVector<double, D>& a, const fkm::CayleyVector<double, D>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += (a[i] - b[i]).norm2();
    }
    return std::sqrt(s);
}

std::string tag(int m, int k, int p) {
    return "m=" + std::to_string(m) + " k=" + std::to_string(k) + " p=" + std::to_string(p);
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

void exact_clifford(Outcome& o) {
    int systems = 0;
    for (int m : {1, 2, 3, 4, 8}) {
        for (int k = 1; k <= 8; ++k) {
            for (int p = 0; p < k; ++p) {
                const auto r = fkm::verify_clifford(fkm::build_clifford_system(m, k, p));
                o.require(r.exact(), tag(m, k, p));
                ++systems;
            }
        }
    }
    o.detail << systems << " systems certified in integer arithmetic";
}

void trace_formulas(Outcome& o) {
    for (int m : {4, 8}) {
        for (int k = 1; k <= 8; ++k) {
            for (int p = 0; p < k; ++p) {
                const auto sys = fkm::build_clifford_system(m, k, p);
                const std::int64_t want = (m == 4 ? -8 : -16) * (2 * p - k + 2);
                o.require(fkm::product_trace(sys) == want, "trace " + tag(m, k, p));
            }
            const auto def = fkm::build_clifford_system(8, k, k - 1);
            if (m == 8) {
                o.require(fkm::full_product(def) == -fkm::SignedPermutation::identity(2 * def.l()),
                          "P_0...P_8 = -Id at k=" + std::to_string(k));
            }
        }
    }
    o.detail << "72 traces exact, definite m=8 products equal -Id";
}

template <std::size_t D>
void charmap_case(Outcome& o, int m, int k, int p, double& worst_orth, double& worst_det, double& worst_cons) {
    const fkm::TwistIndex t(k, p);
    fkm::Rng rng = fkm::check_rng(20261016, "charmap " + tag(m, k, p));
    for (int n = 0; n < 10000; ++n) {
        const auto z = fkm::sample_equator<D>(rng, k);
        const Eigen::MatrixXd a = fkm::char_map_matrix<D>(z, t);
        const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(a.rows(), a.cols());
        worst_orth = std::max(worst_orth, (a.transpose() * a - id).cwiseAbs().maxCoeff());
        worst_det = std::max(worst_det, std::abs(a.determinant() - 1.0));
        const auto x = fkm::sample_unit<D>(rng, k - 1);
        worst_cons = std::max(
            worst_cons, distance<D>(fkm::psi1<D>(z, fkm::char_map_apply<D>(z, x, t), t), fkm::psi2<D>(z, x, t)));
    }
    for (int n = 0; n < 100; ++n) {
        fkm::CayleyVector<double, D> z(static_cast<std::size_t>(k));
        const auto u = fkm::sample_sphere(rng, D - 1);
        for (std::size_t i = 1; i < D; ++i) {
            z.back()[i] = u[i - 1];
        }
        const Eigen::MatrixXd a = fkm::char_map_matrix<D>(z, t);
        o.require((a - Eigen::MatrixXd::Identity(a.rows(), a.cols())).cwiseAbs().maxCoeff() == 0.0,
                  "basepoint " + tag(m, k, p));
    }
}

void charmap_certification(Outcome& o) {
    double orth = 0, det = 0, cons = 0, slowest = 0;
    for (int m : {2, 4, 8}) {
        for (int k = 2; k <= 4; ++k) {
            const auto t0 = std::chrono::steady_clock::now();
            const int p_lo = (m == 2) ? k - 1 : 0;
            for (int p = p_lo; p < k; ++p) {
                fkm::dispatch_dim(fkm::delta(m), [&](auto d) {
                    charmap_case<decltype(d)::value>(o, m, k, p, orth, det, cons);
                    return 0;
                });
            }
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            slowest = std::max(slowest, secs);
            o.require(secs < 120.0, "runtime (m, k) = (" + std::to_string(m) + ", " + std::to_string(k) + ")");
        }
    }
    o.require(orth <= 1e-10, "orthogonality " + sci(orth));
    o.require(det <= 1e-8, "determinant " + sci(det));
    o.require(cons <= 1e-9, "consistency " + sci(cons));
    o.detail << "orthogonality " << sci(orth) << ", |det - 1| " << sci(det) << ", consistency " << sci(cons)
             << ", slowest (m, k) " << sci(slowest) << " s";
}

template <std::size_t D>
void embedding_case(Outcome& o, int m, int k, int p, double& worst, std::size_t& disagreements) {
    const fkm::TwistIndex t(k, p);
    const auto sys = fkm::build_clifford_system(m, k, p);
    fkm::Rng rng = fkm::check_rng(20261016, "embedding " + tag(m, k, p));
    for (int n = 0; n < 10000; ++n) {
        const auto z = fkm::sample_off_poles<D>(rng, k);
        const auto x = fkm::sample_unit<D>(rng, k - 1);
        for (const auto& y : {fkm::psi1<D>(z, x, t), fkm::psi2<D>(z, x, t)}) {
            worst = std::max({worst, std::abs(fkm::norm2(y) - 1.0), fkm::twisted_inner(y, z, t).norm()});
        }
        auto point = fkm::m_plus_point<D>(z, x, t);
        disagreements += fkm::m_plus_membership(sys, point, 1e-10).agree() ? 0 : 1;
        point[static_cast<std::size_t>(n) % point.size()] += 1e-4;
        disagreements += fkm::m_plus_membership(sys, point, 1e-10).agree() ? 0 : 1;
    }
    (void)o;
}

void embedding_postconditions(Outcome& o) {
    double worst = 0;
    std::size_t disagreements = 0;
    for (int m : {4, 8}) {
        for (int k = 2; k <= 4; ++k) {
            for (int p = 0; p < k; ++p) {
                fkm::dispatch_dim(m, [&](auto d) {
                    embedding_case<decltype(d)::value>(o, m, k, p, worst, disagreements);
                    return 0;
                });
            }
        }
    }
    o.require(worst <= 1e-11, "postcondition residual " + sci(worst));
    o.require(disagreements == 0, std::to_string(disagreements) + " membership disagreements");
    o.detail << "max residual " << sci(worst) << ", membership disagreements " << disagreements;
}

void cartan_munzner(Outcome& o) {
    double on_m_plus = 0, grad = 0, fd = 0;
    for (int m : {1, 2, 3, 4, 8}) {
        for (int k = 2; k <= 4; ++k) {
            for (int p = 0; p < k; ++p) {
                const auto sys = fkm::build_clifford_system(m, k, p);
                fkm::Rng rng = fkm::check_rng(20261016, "cartan-munzner " + tag(m, k, p));
                for (int n = 0; n < 10000; ++n) {
                    const auto x = fkm::gaussian_vector(rng, 2 * sys.l());
                    const double r2 = fkm::detail::dot(x, x);
                    grad = std::max(grad, fkm::verify_cartan_munzner(sys, x).gradient / (r2 * r2 * r2));
                }
                for (int n = 0; n < 200; ++n) {
                    const auto x = fkm::sample_sphere(rng, 2 * sys.l());
                    const auto g = fkm::fkm_gradient(sys, x);
                    fd = std::max(fd, fkm::gradient_fd_residual(sys, x) / fkm::norm(g));
                }
                if (m == 3) {
                    for (int n = 0; n < 1000; ++n) {
                        const auto a = fkm::random_sp(rng, static_cast<std::size_t>(k));
                        const auto v = fkm::phi_cohomogeneity(
                            a, fkm::sample_cohomogeneity_slice(rng, static_cast<std::size_t>(k)));
                        auto pt = fkm::flatten<4>(v.x);
                        const auto y = fkm::flatten<4>(v.y);
                        pt.insert(pt.end(), y.begin(), y.end());
                        on_m_plus = std::max(on_m_plus, std::abs(fkm::fkm_value(sys, pt) - 1.0));
                    }
                    continue;
                }
                const int pp = (m == 4 || m == 8) ? p : k - 1;
                fkm::dispatch_dim(fkm::delta(m), [&](auto d) {
                    constexpr std::size_t D = decltype(d)::value;
                    for (int n = 0; n < 1000; ++n) {
                        const auto z = fkm::sample_off_poles<D>(rng, k);
                        const auto pt =
                            fkm::m_plus_point<D>(z, fkm::sample_unit<D>(rng, k - 1), fkm::TwistIndex(k, pp));
                        on_m_plus = std::max(on_m_plus, std::abs(fkm::fkm_value(sys, pt) - 1.0));
                    }
                    return 0;
                });
            }
        }
    }
    double lap = 0;
    fkm::Rng rng(7);
    for (const auto& e : oracle::laplacian_constants) {
        const auto sys = fkm::build_clifford_system(e.m, e.k, e.p);
        lap = std::max(lap, std::abs(fkm::cartan_munzner_constant(sys) - static_cast<double>(e.c)));
        for (int n = 0; n < 100; ++n) {
            const auto x = fkm::sample_sphere(rng, 2 * sys.l());
            lap = std::max(lap, std::abs(fkm::fkm_laplacian(sys, x) - static_cast<double>(e.c)));
        }
    }
    o.require(on_m_plus <= 1e-11, "F on M_+ " + sci(on_m_plus));
    o.require(grad <= 1e-9, "gradient identity " + sci(grad));
    o.require(fd <= 1e-6, "finite differences " + sci(fd));
    o.require(lap <= 1e-8, "Laplacian constant " + sci(lap));
    o.detail << "|F - 1| " << sci(on_m_plus) << ", gradient " << sci(grad) << ", FD " << sci(fd) << ", Laplacian "
             << sci(lap);
}

void classification_table(Outcome& o) {
    o.require(fkm::homotopy_class(4, 2, 0).value == 0 && fkm::cross_section_exists(4, 2, 0), "(4,2,0)");
    o.require(fkm::homotopy_class(8, 2, 0).value == 0 && fkm::cross_section_exists(8, 2, 0), "(8,2,0)");
    for (int k = 3; k <= 480; ++k) {
        o.require(fkm::cross_section_exists(4, k, k - 1) == (k % 24 == 0), "definite m=4 k=" + std::to_string(k));
        o.require(fkm::cross_section_exists(8, k, k - 1) == (k % 240 == 0), "definite m=8 k=" + std::to_string(k));
    }
    o.require(fkm::cross_section_exists(8, 240, 239), "(8,240,239)");
    for (int k = 3; k <= 64; ++k) {
        o.require(fkm::homotopy_class(1, k, k - 1).value == 1 + (k % 2 == 1 ? 1 : -1), "m=1 degree");
        o.require(fkm::homotopy_class(2, k, k - 1).value == k % 2, "m=2 parity");
        o.require(fkm::cross_section_exists(2, k, k - 1) == (k % 2 == 0), "m=2 section");
    }
    o.require(fkm::sp_homotopy_order(2) == 12, "sp order k=2");
    o.require(fkm::sp_homotopy_order(3) == 120, "sp order k=3");
    o.require(fkm::sp_homotopy_order(4) == 10080, "sp order k=4");
    o.detail << "all listed cases reproduced exactly";
}

void j_rewriting(Outcome& o) {
    int n = 0;
    for (int m : {4, 8}) {
        const std::int64_t mod = m == 4 ? 24 : 240;
        for (int k = 3; k <= 64; ++k) {
            for (int p = 0; p < k; ++p) {
                o.require(fkm::j_reduce(fkm::characteristic_chain(m, k, p), mod).value ==
                              fkm::homotopy_class(m, k, p).value,
                          tag(m, k, p));
                ++n;
            }
        }
    }
    for (int k = 3; k <= 64; ++k) {
        for (int j = 0; j < k; ++j) {
            const auto h = fkm::j_reduce(fkm::harmonic_chain(k, j), 240);
            o.require(h.value == fkm::reduce_mod(2 * j - k + 1, 240) && h.value == fkm::harmonic_class(k, j).value,
                      "harmonic k=" + std::to_string(k) + " j=" + std::to_string(j));
            ++n;
        }
    }
    o.detail << n << " expressions agree";
}

void witnesses(Outcome& o) {
    double worst = 1e300;
    int runs = 0;
    double slowest = 0;
    for (const auto& info : fkm::witness_pairs) {
        const auto t0 = std::chrono::steady_clock::now();
        for (int m : {4, 8}) {
            for (int k = 2; k <= 4; ++k) {
                for (int p = 0; p < k; ++p) {
                    if (!fkm::witness_applicable(info.pair, m, k, p)) {
                        continue;
                    }
                    const auto r = fkm::witness_min_norm(info.pair, m, k, p, 100000, 20261016);
                    o.require(r.min() > 1e-6, std::string(info.id) + " " + tag(m, k, p) + " min " + sci(r.min()));
                    worst = std::min(worst, r.min());
                    ++runs;
                }
            }
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        slowest = std::max(slowest, secs);
        o.require(secs < 60.0, std::string(info.id) + " runtime");
    }
    o.detail << runs << " (pair, k, p) runs, smallest |f + g| " << sci(worst) << ", slowest pair " << sci(slowest)
             << " s (sampling evidence, not proof)";
}

void octonions(Outcome& o) {
    for (std::size_t i = 0; i < 8; ++i) {
        const auto e = fkm::Octonion<int>::basis(i);
        o.require(fkm::seven_fold_left_mult(e) == -e, "seven-fold on e" + std::to_string(i));
    }
    double worst = 0;
    fkm::Rng rng = fkm::check_rng(20261016, "octonion-identities");
    for (int n = 0; n < 10000; ++n) {
        std::array<fkm::Octonion<double>, 3> t;
        for (auto& x : t) {
            x = fkm::unflatten<8>(fkm::sample_sphere(rng, 8))[0];
        }
        for (auto id : {fkm::Identity::re_commute, fkm::Identity::re_associate, fkm::Identity::norm_cancel,
                        fkm::Identity::adjoint_shift}) {
            worst = std::max(worst, fkm::check_identity(id, t[0], t[1], t[2]));
        }
    }
    o.require(worst <= 1e-13, "identities " + sci(worst));
    using O = fkm::Octonion<int>;
    const auto assoc = fkm::associator(O::basis(1), O::basis(2), O::basis(4));
    o.require(!assoc.is_zero(), "non-associativity witness");
    o.detail << "identity residual " << sci(worst) << ", (e1 e2) e4 - e1 (e2 e4) = " << assoc;
}

void cohomogeneity(Outcome& o) {
    double member = 0, equiv = 0, inv = 0, range = 0;
    fkm::Rng rng = fkm::check_rng(20261016, "cohomogeneity");
    for (int k = 2; k <= 4; ++k) {
        const auto sys = fkm::build_clifford_system(3, k, k - 1);
        const std::size_t kk = static_cast<std::size_t>(k);
        for (int n = 0; n < 1000; ++n) {
            const auto a = fkm::random_sp(rng, kk);
            const auto g = fkm::random_sp(rng, kk);
            const auto z = fkm::sample_cohomogeneity_slice(rng, kk);
            const auto v = fkm::phi_cohomogeneity(a, z);
            auto pt = fkm::flatten<4>(v.x);
            const auto y = fkm::flatten<4>(v.y);
            pt.insert(pt.end(), y.begin(), y.end());
            const auto r = fkm::m_plus_membership(sys, pt, 1e-10);
            member = std::max({member, r.twisted_residual, r.quadratic_residual, fkm::m_plus_residual(v)});
            equiv = std::max(equiv, fkm::equivariance_residual(a, g, z));
            const double f = fkm::isoparametric_f(v);
            inv = std::max({inv, std::abs(fkm::isoparametric_f(fkm::act(g, v)) - f), std::abs(f - z[0].re())});
            range = std::max(range, std::abs(f) - 1.0);
        }
    }
    o.require(member <= 1e-10, "membership " + sci(member));
    o.require(equiv <= 1e-10, "equivariance " + sci(equiv));
    o.require(inv <= 1e-10, "invariance " + sci(inv));
    o.require(range <= 1e-12, "f range");
    for (int m : {4, 8}) {
        for (int k = 1; k <= 32; ++k) {
            for (int p = 0; p < k; ++p) {
                if (fkm::extend_clifford(m, k, p).op) {
                    o.require(fkm::extension_implies_section(m, k, p), "extension " + tag(m, k, p));
                }
            }
        }
    }
    o.detail << "membership " << sci(member) << ", equivariance " << sci(equiv) << ", invariance " << sci(inv);
}

void determinism(Outcome& o) {
    const int n_jobs = static_cast<int>(std::max(2u, std::thread::hardware_concurrency()));
    for (int jobs : {1, n_jobs}) {
        fkm::RunConfig cfg;
        cfg.m = 8;
        cfg.k = 3;
        cfg.p = 1;
        cfg.samples = 2000;
        cfg.seed = 99;
        cfg.jobs = jobs;
        const auto a = fkm::to_json(fkm::run_verify(cfg)).dump(2);
        const auto b = fkm::to_json(fkm::run_verify(cfg)).dump(2);
        o.require(a == b, "verify report at jobs=" + std::to_string(jobs));
        cfg.k = 2;
        const auto c = fkm::to_json(fkm::run_witness(cfg, "g2-tau")).dump(2);
        const auto d = fkm::to_json(fkm::run_witness(cfg, "g2-tau")).dump(2);
        o.require(c == d, "witness report at jobs=" + std::to_string(jobs));
    }
    o.detail << "identical bytes at jobs=1 and jobs=" << n_jobs;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "exact Clifford certification", 30, exact_clifford},
        {2, "trace formulas", 0, trace_formulas},
        {3, "characteristic-map certification", 0, charmap_certification},
        {4, "embedding postconditions", 0, embedding_postconditions},
        {5, "FKM and Cartan-Munzner identities", 0, cartan_munzner},
        {6, "classification table reproduction", 0, classification_table},
        {7, "J-rewriting equivalence", 0, j_rewriting},
        {8, "non-vanishing witnesses", 0, witnesses},
        {9, "octonion suite", 0, octonions},
        {10, "Sp(k) cohomogeneity suite", 0, cohomogeneity},
        {11, "determinism", 0, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.body(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget_seconds > 0) {
            o.require(secs < c.budget_seconds, "runtime " + sci(secs) + " s");
        }
        failed += o.pass ? 0 : 1;
        std::printf("%s criterion %2d: %s (%.1f s) %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, secs,
                    o.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
