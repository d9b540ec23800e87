#ifndef FKM_VERIFY_HPP
#define FKM_VERIFY_HPP

// Batch verification runs: each check draws its samples up front from a
// seed derived from (run seed, check id), reduces residuals with max or min,
// and compares against a named tolerance.

#include <boost/rational.hpp>

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "fkm/bundle.hpp"
#include "fkm/clifford.hpp"
#include "fkm/cohomogeneity.hpp"
#include "fkm/homotopy.hpp"
#include "fkm/parallel.hpp"
#include "fkm/witness.hpp"

namespace fkm {

/// Default tolerance of every named check. A "max" check passes when its
/// largest residual is <= tolerance, a "min" check when its smallest value
/// is > tolerance.
inline const std::map<std::string, double>& default_tolerances() {
    static const std::map<std::string, double> t{
        {"clifford-exact", 0.0},
        {"trace-formula", 0.0},
        {"definiteness", 0.0},
        {"extension", 0.0},
        {"octonion-seven-fold", 0.0},
        {"octonion-identities", 1e-13},
        {"psi1-postconditions", 1e-11},
        {"psi2-postconditions", 1e-11},
        {"psi1-inverse", 1e-10},
        {"stereographic-frames", 1e-10},
        {"stereographic-consistency", 1e-10},
        {"charmap-orthogonality", 1e-10},
        {"charmap-determinant", 1e-8},
        {"charmap-consistency", 1e-9},
        {"charmap-basepoint", 1e-12},
        {"projected-closed-form", 1e-10},
        {"m-plus-membership", 1e-10},
        {"membership-agreement", 0.0},
        {"fkm-on-m-plus", 1e-11},
        {"cartan-munzner-gradient", 1e-9},
        {"cartan-munzner-laplacian", 1e-8},
        {"gradient-fd", 1e-6},
        {"phi-membership", 1e-10},
        {"phi-equivariance", 1e-10},
        {"f-formula", 1e-10},
        {"f-invariance", 1e-10},
        {"f-range", 1e-12},
        {"witness-min", 1e-6},
        {"table-consistency", 0.0},
    };
    return t;
}

struct RunConfig {
    int m = 4;
    int k = 3;
    int p = 2;
    std::size_t samples = 10000;
    std::uint64_t seed = 1;
    int jobs = 1;
    bool timings = false;        ///< record wall time per check (breaks byte-identical output)
    bool inject_fault = false;   ///< flip one sign of P_1 before certifying
    std::map<std::string, double> tolerances;  ///< overrides of default_tolerances()

    double tolerance(const std::string& id) const {
        if (auto it = tolerances.find(id); it != tolerances.end()) {
            return it->second;
        }
        return default_tolerances().at(id);
    }
};

struct CheckResult {
    std::string id;
    double residual = 0;
    double tolerance = 0;
    Reduce bound = Reduce::max;
    bool pass = false;
    std::size_t n = 0;
    std::optional<double> seconds;
};

inline bool check_passes(Reduce bound, double residual, double tol) {
    return bound == Reduce::max ? residual <= tol : residual > tol;
}

/// Deterministic per-check generator.
inline Rng check_rng(std::uint64_t seed, const std::string& id) {
    std::vector<std::uint32_t> words{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    for (char c : id) {
        words.push_back(static_cast<unsigned char>(c));
    }
    std::seed_seq seq(words.begin(), words.end());
    return Rng(seq);
}

class CheckRunner {
public:
    explicit CheckRunner(const RunConfig& cfg) : cfg_(cfg) {}

    /// Runs `body`, which returns (residual, n), and records the result.
    void run(const std::string& id, Reduce bound, const std::function<std::pair<double, std::size_t>()>& body) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto [residual, n] = body();
        const auto t1 = std::chrono::steady_clock::now();
        CheckResult r;
        r.id = id;
        r.residual = residual;
        r.tolerance = cfg_.tolerance(id);
        r.bound = bound;
        r.pass = check_passes(bound, residual, r.tolerance);
        r.n = n;
        if (cfg_.timings) {
            r.seconds = std::chrono::duration<double>(t1 - t0).count();
        }
        results_.push_back(std::move(r));
    }

    /// Draws `n` samples with `gen` (sequentially, from the check's own
    /// generator) and reduces `eval` over them in parallel.
    template <typename Sample, typename Gen, typename Eval>
    void sampled(const std::string& id, std::size_t n, Gen gen, Eval eval, Reduce bound = Reduce::max) {
        run(id, bound, [&] {
            Rng rng = check_rng(cfg_.seed, id);
            std::vector<Sample> samples;
            samples.reserve(n);
            for (std::size_t i = 0; i < n; ++i) {
                samples.push_back(gen(rng));
            }
            const double r = parallel_reduce(n, cfg_.jobs, bound, [&](std::size_t i) { return eval(samples[i]); });
            return std::pair<double, std::size_t>{r, n};
        });
    }

    const RunConfig& config() const { return cfg_; }
    std::vector<CheckResult> take() { return std::move(results_); }

private:
    const RunConfig& cfg_;
    std::vector<CheckResult> results_;
};

// ---------------------------------------------------------------------------
// Classification summary.

struct ExtensionSummary {
    bool exists = false;
    std::string reason;
};

struct Classification {
    int m = 0, k = 0, p = 0;
    std::size_t l = 0;
    int m1 = 0, m2 = 0;
    Definiteness definiteness = Definiteness::not_applicable;
    std::optional<std::int64_t> trace;
    std::optional<std::int64_t> trace_closed_form;
    std::optional<HomotopyClass> homotopy;
    std::optional<bool> cross_section;
    std::optional<ExtensionSummary> extension;
    std::optional<std::string> sp_order;  ///< m = 3 only
    bool orientation_reversing = false;
};

inline Classification classify(int m, int k, int p) {
    const CliffordSystem sys = build_clifford_system(m, k, p);
    Classification c;
    c.m = m;
    c.k = k;
    c.p = (m == 4 || m == 8) ? p : k - 1;
    c.l = sys.l();
    c.m1 = sys.m1();
    c.m2 = sys.m2();
    c.definiteness = classify_definiteness(sys);
    if (m == 4 || m == 8) {
        c.trace = static_cast<std::int64_t>(full_product(sys).trace());
        c.trace_closed_form = product_trace_closed_form(m, k, p);
        const auto ext = extend_clifford(m, k, p);
        c.extension = ExtensionSummary{ext.op.has_value(), ext.reason};
    }
    if (m == 3) {
        c.sp_order = sp_homotopy_order(k).str();
    } else if (k >= 2) {
        c.homotopy = homotopy_class(m, k, c.p);
        c.cross_section = cross_section_exists(m, k, c.p);
    }
    c.orientation_reversing = m == 1;
    return c;
}

// ---------------------------------------------------------------------------

namespace detail {

template <std::size_t D>
double cvec_distance(const CayleyVector<double, D>& a, const CayleyVector<double, D>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += (a[i] - b[i]).norm2();
    }
    return std::sqrt(s);
}

template <std::size_t D>
struct BasePair {
    CayleyVector<double, D> z;
    CayleyVector<double, D> x;
};

inline void clifford_checks(CheckRunner& run, const CliffordSystem& sys) {
    const int m = sys.m();
    run.run("clifford-exact", Reduce::max, [&] {
        const auto r = sys.l() <= max_dense_l ? verify_clifford(sys) : verify_clifford_structured(sys);
        const std::size_t ops = sys.operators().size();
        return std::pair<double, std::size_t>{static_cast<double>(r.max()), ops * (ops + 1) / 2};
    });
    if (m == 4 || m == 8) {
        run.run("trace-formula", Reduce::max, [&] {
            const double d = static_cast<double>(product_trace(sys) - product_trace_closed_form(m, sys.k(), sys.p()));
            return std::pair<double, std::size_t>{std::abs(d), 1};
        });
        run.run("definiteness", Reduce::max, [&] {
            const bool definite = classify_definiteness(sys) == Definiteness::definite_minus;
            const bool expected = sys.p() == sys.k() - 1;
            return std::pair<double, std::size_t>{definite == expected ? 0.0 : 1.0, 1};
        });
        const auto ext = extend_clifford(m, sys.k(), sys.p());
        if (ext.op) {
            run.run("extension", Reduce::max, [&] {
                const auto r = verify_clifford(extended_system(sys, *ext.op));
                return std::pair<double, std::size_t>{static_cast<double>(r.max()), 1};
            });
        }
    }
}

inline void octonion_checks(CheckRunner& run, std::size_t n) {
    using Q = boost::rational<std::int64_t>;
    run.sampled<Octonion<Q>>(
        "octonion-seven-fold", std::min<std::size_t>(n, 512),
        [](Rng& rng) {
            std::uniform_int_distribution<int> u(-9, 9);
            Octonion<Q> z;
            for (std::size_t i = 0; i < 8; ++i) {
                z[i] = Q(u(rng), 1 + std::abs(u(rng)));
            }
            return z;
        },
        [](const Octonion<Q>& z) { return boost::rational_cast<double>((seven_fold_left_mult(z) + z).norm2()); });
    run.sampled<std::array<Octonion<double>, 3>>(
        "octonion-identities", n,
        [](Rng& rng) {
            std::array<Octonion<double>, 3> t;
            for (auto& o : t) {
                o = unflatten<8>(sample_sphere(rng, 8))[0];
            }
            return t;
        },
        [](const std::array<Octonion<double>, 3>& t) {
            double r = 0;
            for (Identity id : all_identities) {
                if (id != Identity::associative) {
                    r = std::max(r, check_identity(id, t[0], t[1], t[2]));
                }
            }
            return r;
        });
}

template <std::size_t D>
void bundle_checks(CheckRunner& run, const CliffordSystem& sys, std::size_t n) {
    const int k = sys.k();
    const int m = sys.m();
    const TwistIndex t(k, (m == 4 || m == 8) ? sys.p() : k - 1);
    auto gen_pair = [k](Rng& rng) {
        return BasePair<D>{sample_off_poles<D>(rng, k), sample_unit<D>(rng, k - 1)};
    };
    auto gen_equator = [k](Rng& rng) {
        return BasePair<D>{sample_equator<D>(rng, k), sample_unit<D>(rng, k - 1)};
    };

    run.sampled<BasePair<D>>("psi1-postconditions", n, gen_pair, [&](const BasePair<D>& s) {
        const auto y = psi1<D>(s.z, s.x, t);
        return std::max(std::abs(std::sqrt(norm2(y)) - 1.0), twisted_inner(y, s.z, t).norm());
    });
    run.sampled<BasePair<D>>("psi2-postconditions", n, gen_pair, [&](const BasePair<D>& s) {
        const auto y = psi2<D>(s.z, s.x, t);
        return std::max(std::abs(std::sqrt(norm2(y)) - 1.0), twisted_inner(y, s.z, t).norm());
    });
    run.sampled<BasePair<D>>("psi1-inverse", n, gen_pair, [&](const BasePair<D>& s) {
        return cvec_distance<D>(psi1_inverse<D>(s.z, psi1<D>(s.z, s.x, t), t), s.x);
    });

    const double expected_det = m == 1 ? -1.0 : 1.0;
    run.sampled<CayleyVector<double, D>>(
        "charmap-orthogonality", n, [k](Rng& rng) { return sample_equator<D>(rng, k); },
        [&](const CayleyVector<double, D>& z) {
            const Eigen::MatrixXd a = char_map_matrix<D>(z, t);
            return (a.transpose() * a - Eigen::MatrixXd::Identity(a.rows(), a.cols())).cwiseAbs().maxCoeff();
        });
    run.sampled<CayleyVector<double, D>>(
        "charmap-determinant", n, [k](Rng& rng) { return sample_equator<D>(rng, k); },
        [&](const CayleyVector<double, D>& z) { return std::abs(char_map_matrix<D>(z, t).determinant() - expected_det); });
    run.sampled<BasePair<D>>("charmap-consistency", n, gen_equator, [&](const BasePair<D>& s) {
        return cvec_distance<D>(psi1<D>(s.z, char_map_apply<D>(s.z, s.x, t), t), psi2<D>(s.z, s.x, t));
    });
    if constexpr (D > 1) {
        run.sampled<CayleyVector<double, D>>(
            "charmap-basepoint", n,
            [k](Rng& rng) {
                CayleyVector<double, D> z(static_cast<std::size_t>(k));
                auto v = sample_sphere(rng, D - 1);
                for (std::size_t i = 1; i < D; ++i) {
                    z.back()[i] = v[i - 1];
                }
                return z;
            },
            [&](const CayleyVector<double, D>& z) {
                const Eigen::MatrixXd a = char_map_matrix<D>(z, t);
                return (a - Eigen::MatrixXd::Identity(a.rows(), a.cols())).cwiseAbs().maxCoeff();
            });
    }
    run.sampled<CayleyVector<double, D>>(
        "projected-closed-form", n, [k](Rng& rng) { return sample_equator<D>(rng, k); },
        [&](const CayleyVector<double, D>& z) {
            return cvec_distance<D>(projected_map<D>(z, t), projected_map_closed_form<D>(z, t));
        });

    const double mtol = run.config().tolerance("m-plus-membership");
    run.sampled<BasePair<D>>("m-plus-membership", n, gen_pair, [&](const BasePair<D>& s) {
        const auto x = m_plus_point<D>(s.z, s.x, t);
        const auto r = m_plus_membership(sys, x, mtol);
        return std::max(r.twisted_residual, r.quadratic_residual);
    });
    run.sampled<std::vector<double>>(
        "membership-agreement", n,
        [&](Rng& rng) {
            const auto s = gen_pair(rng);
            auto x = m_plus_point<D>(s.z, s.x, t);
            if (std::uniform_int_distribution<int>(0, 1)(rng) == 1) {
                const double size = std::pow(10.0, std::uniform_real_distribution<double>(-6.0, -2.0)(rng));
                const auto dir = sample_sphere(rng, x.size());
                for (std::size_t i = 0; i < x.size(); ++i) {
                    x[i] += size * dir[i];
                }
            }
            return x;
        },
        [&](const std::vector<double>& x) { return m_plus_membership(sys, x, mtol).agree() ? 0.0 : 1.0; });
    run.sampled<BasePair<D>>("fkm-on-m-plus", n, gen_pair, [&](const BasePair<D>& s) {
        return std::abs(fkm_value(sys, m_plus_point<D>(s.z, s.x, t)) - 1.0);
    });
}

inline void stereographic_checks(CheckRunner& run, int k, std::size_t n) {
    struct Sample {
        std::vector<double> x, tvec;
    };
    const std::size_t dim = static_cast<std::size_t>(k - 1);
    run.sampled<Sample>(
        "stereographic-frames", n,
        [dim](Rng& rng) {
            auto x = gaussian_vector(rng, dim);
            return Sample{x, sample_sphere(rng, dim)};
        },
        [](const Sample& s) {
            double r = 0;
            for (const auto& f : {psi1_real(s.x, s.tvec), psi2_real(s.x, s.tvec)}) {
                r = std::max({r, std::abs(norm(f.z) - 1), std::abs(norm(f.y) - 1), std::abs(detail::dot(f.z, f.y))});
            }
            const auto back = psi1_real_inverse(psi1_real(s.x, s.tvec));
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                r = std::max({r, std::abs(back.first[i] - s.x[i]) / (1 + std::abs(s.x[i])),
                              std::abs(back.second[i] - s.tvec[i])});
            }
            return r;
        });
    run.sampled<Sample>(
        "stereographic-consistency", n,
        [dim](Rng& rng) { return Sample{sample_sphere(rng, dim), sample_sphere(rng, dim)}; },
        [](const Sample& s) {
            const double xt = detail::dot(s.x, s.tvec);
            std::vector<double> chi_t(s.tvec.size());
            for (std::size_t i = 0; i < chi_t.size(); ++i) {
                chi_t[i] = s.tvec[i] - 2 * xt * s.x[i];
            }
            const auto a = psi1_real(s.x, chi_t);
            const auto b = psi2_real(s.x, s.tvec);
            double r = 0;
            for (std::size_t i = 0; i < a.z.size(); ++i) {
                r = std::max({r, std::abs(a.z[i] - b.z[i]), std::abs(a.y[i] - b.y[i])});
            }
            return r;
        });
}

inline void cartan_munzner_checks(CheckRunner& run, const CliffordSystem& sys, std::size_t n) {
    const std::size_t dim = 2 * sys.l();
    auto gen = [dim](Rng& rng) { return sample_sphere(rng, dim); };
    run.sampled<std::vector<double>>("cartan-munzner-gradient", n, gen,
                                     [&](const std::vector<double>& x) { return verify_cartan_munzner(sys, x).gradient; });
    run.sampled<std::vector<double>>("cartan-munzner-laplacian", n, gen,
                                     [&](const std::vector<double>& x) { return verify_cartan_munzner(sys, x).laplacian; });
    run.sampled<std::vector<double>>("gradient-fd", std::min<std::size_t>(n, 1000), gen,
                                     [&](const std::vector<double>& x) { return gradient_fd_residual(sys, x); });
}

inline void cohomogeneity_checks(CheckRunner& run, const CliffordSystem& sys, std::size_t n) {
    const std::size_t k = static_cast<std::size_t>(sys.k());
    struct Sample {
        QuatMatrix a;
        QuatMatrix g;
        QuatVector z;
    };
    auto gen = [k](Rng& rng) {
        QuatMatrix a = random_sp(rng, k);
        QuatMatrix g = random_sp(rng, k);
        return Sample{std::move(a), std::move(g), sample_cohomogeneity_slice(rng, k)};
    };
    const std::size_t nn = std::min<std::size_t>(n, 2000);
    const double mtol = run.config().tolerance("phi-membership");
    run.sampled<Sample>("phi-membership", nn, gen, [&](const Sample& s) {
        const QuatPair v = phi_cohomogeneity(s.a, s.z);
        auto flat = flatten<4>(v.x);
        const auto fy = flatten<4>(v.y);
        flat.insert(flat.end(), fy.begin(), fy.end());
        const auto r = m_plus_membership(sys, flat, mtol);
        return std::max({m_plus_residual(v), r.twisted_residual, r.quadratic_residual});
    });
    run.sampled<Sample>("phi-equivariance", nn, gen,
                        [](const Sample& s) { return equivariance_residual(s.a, s.g, s.z); });
    run.sampled<Sample>("f-formula", nn, gen, [](const Sample& s) {
        return std::abs(isoparametric_f(phi_cohomogeneity(s.a, s.z)) - s.z[0].re());
    });
    run.sampled<Sample>("f-invariance", nn, gen, [](const Sample& s) {
        const QuatPair v = phi_cohomogeneity(s.a, s.z);
        return std::abs(isoparametric_f(act(s.g, v)) - isoparametric_f(v));
    });
    run.sampled<Sample>("f-range", nn, gen, [](const Sample& s) {
        return std::max(0.0, std::abs(isoparametric_f(phi_cohomogeneity(s.a, s.z))) - 1.0);
    });
}

}  // namespace detail

struct VerifyReport {
    RunConfig config;
    std::vector<CheckResult> checks;
    Classification classification;

    bool ok() const {
        for (const auto& c : checks) {
            if (!c.pass) {
                return false;
            }
        }
        return true;
    }
};

/// Full verification suite for one (m, k, p).
inline VerifyReport run_verify(const RunConfig& cfg) {
    CliffordSystem sys = build_clifford_system(cfg.m, cfg.k, cfg.p);
    if (cfg.inject_fault) {
        sys = with_sign_fault(sys, 1, 0);
    }
    CheckRunner run(cfg);
    detail::clifford_checks(run, sys);
    detail::octonion_checks(run, cfg.samples);
    if (cfg.m == 3) {
        detail::cohomogeneity_checks(run, sys, cfg.samples);
    } else if (cfg.k >= 2) {
        dispatch_dim(delta(cfg.m), [&](auto tag) {
            detail::bundle_checks<decltype(tag)::value>(run, sys, cfg.samples);
            return 0;
        });
        if (cfg.m == 1) {
            detail::stereographic_checks(run, cfg.k, cfg.samples);
        }
    }
    detail::cartan_munzner_checks(run, sys, cfg.samples);
    return {cfg, run.take(), classify(cfg.m, cfg.k, cfg.p)};
}

struct WitnessReport {
    RunConfig config;
    std::string pair;
    WitnessResult result;
    std::vector<CheckResult> checks;
    bool ok() const { return !checks.empty() && checks.front().pass; }
};

inline WitnessReport run_witness(const RunConfig& cfg, const std::string& pair_id) {
    const auto& info = witness_pair_info(pair_id);
    WitnessReport rep{cfg, pair_id, {}, {}};
    CheckRunner run(cfg);
    run.run("witness-min", Reduce::min, [&] {
        rep.result = witness_min_norm(info.pair, cfg.m, cfg.k, cfg.p, cfg.samples, cfg.seed, cfg.jobs);
        return std::pair<double, std::size_t>{rep.result.min(), rep.result.n_random + rep.result.n_slice};
    });
    rep.checks = run.take();
    return rep;
}

struct TableRow {
    int k = 0;
    int p = 0;
    HomotopyClass cls;
    bool section = false;
    bool extension = false;
    HomotopyClass definite_cls;  ///< class at p = k-1 for the same k
    bool definite_section = false;
    bool consistent = false;
};

struct TableReport {
    int m = 0;
    int k_min = 0, k_max = 0;
    std::vector<TableRow> rows;
    std::vector<CheckResult> checks;
    bool ok() const { return !checks.empty() && checks.front().pass; }
};

/// One row per (k, p) with p <= k-2 for m in {4, 8} (the definite p = k-1
/// appears as a column), one row per k for m in {1, 2}.
inline TableReport run_table(const RunConfig& cfg, int k_min, int k_max) {
    if (cfg.m != 1 && cfg.m != 2 && cfg.m != 4 && cfg.m != 8) {
        throw std::invalid_argument("report: m must be 1, 2, 4 or 8");
    }
    if (k_min < 2 || k_max < k_min) {
        throw std::invalid_argument("report: need 2 <= k_min <= k_max");
    }
    TableReport rep;
    rep.m = cfg.m;
    rep.k_min = k_min;
    rep.k_max = k_max;
    std::size_t bad = 0;
    for (int k = k_min; k <= k_max; ++k) {
        const bool twisted = cfg.m == 4 || cfg.m == 8;
        const int p_last = twisted ? k - 2 : 0;
        for (int p = 0; p <= p_last; ++p) {
            const int pp = twisted ? p : k - 1;
            TableRow row;
            row.k = k;
            row.p = pp;
            row.cls = homotopy_class(cfg.m, k, pp);
            row.section = cross_section_exists(cfg.m, k, pp);
            row.extension = twisted && extend_clifford(cfg.m, k, pp).op.has_value();
            row.definite_cls = homotopy_class(cfg.m, k, k - 1);
            row.definite_section = cross_section_exists(cfg.m, k, k - 1);
            row.consistent = row.cls.is_zero() == row.section && (!row.extension || row.section);
            bad += row.consistent ? 0 : 1;
            rep.rows.push_back(std::move(row));
        }
    }
    CheckResult c;
    c.id = "table-consistency";
    c.residual = static_cast<double>(bad);
    c.tolerance = cfg.tolerance(c.id);
    c.pass = check_passes(Reduce::max, c.residual, c.tolerance);
    c.n = rep.rows.size();
    rep.checks.push_back(c);
    return rep;
}

}  // namespace fkm

#endif
