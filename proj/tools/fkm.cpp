// Command-line front end: classify, verify, witness, report, sample.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "fkm/report.hpp"

namespace {

struct Options {
    int m = 4;
    std::optional<int> k;
    std::optional<int> p;
    std::string k_range;
    std::size_t samples = 10000;
    std::uint64_t seed = 1;
    std::string format = "json";
    std::string out;
    int jobs = 1;
    bool timings = false;
    bool inject_fault = false;
    std::string pair;
    std::map<std::string, double> tol;
};

std::string fmt_tol(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

void add_common(CLI::App* cmd, Options& o, bool sampling) {
    cmd->add_option("--m", o.m, "Clifford parameter m (1, 2, 3, 4 or 8)");
    cmd->add_option("--p", o.p, "twist index p, 0 <= p <= k-1 (default k-1)");
    cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "md"}));
    cmd->add_option("--out", o.out, "write output to this file instead of stdout");
    if (sampling) {
        cmd->add_option("--samples", o.samples, "samples per check");
        cmd->add_option("--seed", o.seed, "seed for the mt19937_64 sample generator");
        cmd->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
        cmd->add_flag("--timings", o.timings, "record wall time per check");
        for (const auto& [id, v] : fkm::default_tolerances()) {
            cmd->add_option_function<double>(
                "--tol-" + id, [&o, id = id](double t) { o.tol[id] = t; },
                "tolerance for " + id + " (default " + fmt_tol(v) + ")");
        }
    }
}

fkm::RunConfig to_config(const Options& o) {
    fkm::RunConfig c;
    c.m = o.m;
    c.k = *o.k;
    c.p = o.p.value_or(c.k - 1);
    c.samples = o.samples;
    c.seed = o.seed;
    c.jobs = o.jobs;
    c.timings = o.timings;
    c.inject_fault = o.inject_fault;
    c.tolerances = o.tol;
    return c;
}

void emit(const Options& o, const std::string& json_text, const std::string& md_text) {
    const std::string& text = o.format == "md" ? md_text : json_text;
    if (o.out.empty()) {
        std::cout << text << '\n';
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open " + o.out);
    }
    f << text << '\n';
}

std::pair<int, int> parse_k_range(const std::string& s) {
    const auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            const int k = std::stoi(s);
            return {k, k};
        }
        return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
    } catch (const std::exception&) {
        throw std::invalid_argument("--k: expected N or A..B, got '" + s + "'");
    }
}

int run_sample(const Options& o) {
    const fkm::RunConfig cfg = to_config(o);
    const auto sys = fkm::build_clifford_system(cfg.m, cfg.k, cfg.p);
    fkm::Rng rng(cfg.seed);
    fkm::json points = fkm::json::array();
    double worst = 0;
    for (std::size_t i = 0; i < cfg.samples; ++i) {
        std::vector<double> x;
        if (cfg.m == 3) {
            const auto a = fkm::random_sp(rng, static_cast<std::size_t>(cfg.k));
            const auto v = fkm::phi_cohomogeneity(a, fkm::sample_cohomogeneity_slice(rng, static_cast<std::size_t>(cfg.k)));
            x = fkm::flatten<4>(v.x);
            const auto y = fkm::flatten<4>(v.y);
            x.insert(x.end(), y.begin(), y.end());
        } else {
            x = fkm::dispatch_dim(fkm::delta(cfg.m), [&](auto tag) {
                constexpr std::size_t D = decltype(tag)::value;
                const fkm::TwistIndex t(cfg.k, (cfg.m == 4 || cfg.m == 8) ? cfg.p : cfg.k - 1);
                const auto z = fkm::sample_off_poles<D>(rng, cfg.k);
                return fkm::m_plus_point<D>(z, fkm::sample_unit<D>(rng, cfg.k - 1), t);
            });
        }
        const auto r = fkm::m_plus_membership(sys, x, cfg.tolerance("m-plus-membership"));
        worst = std::max({worst, r.twisted_residual, r.quadratic_residual});
        points.push_back(x);
    }
    fkm::CheckResult c;
    c.id = "m-plus-membership";
    c.residual = worst;
    c.tolerance = cfg.tolerance(c.id);
    c.pass = fkm::check_passes(fkm::Reduce::max, worst, c.tolerance);
    c.n = cfg.samples;
    const fkm::json j{{"config", fkm::to_json(cfg)}, {"checks", fkm::checks_json({c})}, {"points", points}};
    std::ostringstream md;
    md << "# sample m=" << cfg.m << " k=" << cfg.k << " p=" << cfg.p << "\n\n";
    for (const auto& pt : points) {
        md << "- " << pt.dump() << "\n";
    }
    emit(o, j.dump(2), md.str());
    return c.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Clifford systems, focal submanifolds and their characteristic maps"};
    app.require_subcommand(1);
    Options o;

    auto* classify = app.add_subcommand("classify", "classify the sphere bundle for (m, k, p)");
    add_common(classify, o, false);
    classify->add_option("--k", o.k, "k >= 1")->required();

    auto* verify = app.add_subcommand("verify", "run the verification suite for (m, k, p)");
    add_common(verify, o, true);
    verify->add_option("--k", o.k, "k >= 1")->required();
    verify->add_flag("--inject-fault", o.inject_fault, "flip one sign of P_1 before certification");

    auto* witness = app.add_subcommand("witness", "sample min |f + g| for a homotopy witness pair");
    add_common(witness, o, true);
    witness->add_option("--k", o.k, "k >= 2 (default 2 for g2-tau and tau-bprime, else 3)");
    witness->add_option("--pair", o.pair, "pair id")->required();

    auto* report = app.add_subcommand("report", "classification table over a range of k");
    add_common(report, o, false);
    report->add_option("--k", o.k_range, "k range, N or A..B")->required();

    auto* sample = app.add_subcommand("sample", "emit seeded points of M_+");
    add_common(sample, o, true);
    sample->add_option("--k", o.k, "k >= 2")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (classify->parsed()) {
            const auto c = fkm::classify(o.m, *o.k, o.p.value_or(*o.k - 1));
            emit(o, fkm::to_json(c).dump(2), fkm::to_markdown(c));
            return 0;
        }
        if (verify->parsed()) {
            const auto r = fkm::run_verify(to_config(o));
            emit(o, fkm::to_json(r).dump(2), fkm::to_markdown(r));
            return r.ok() ? 0 : 1;
        }
        if (witness->parsed()) {
            const auto& info = fkm::witness_pair_info(o.pair);
            if (!o.k) {
                o.k = (info.pair == fkm::WitnessPair::g2_tau || info.pair == fkm::WitnessPair::tau_bprime) ? 2 : 3;
            }
            if (!o.p) {
                switch (info.pair) {
                    case fkm::WitnessPair::sigma_hopf: o.p = 0; break;
                    case fkm::WitnessPair::sigma_theta:
                    case fkm::WitnessPair::phi_theta: o.p = 1; break;
                    default: o.p = *o.k - 1; break;
                }
            }
            if (witness->count("--m") == 0) {
                o.m = info.default_m;
            }
            const auto r = fkm::run_witness(to_config(o), o.pair);
            emit(o, fkm::to_json(r).dump(2), fkm::to_markdown(r));
            return r.ok() ? 0 : 1;
        }
        if (report->parsed()) {
            const auto [lo, hi] = parse_k_range(o.k_range);
            fkm::RunConfig cfg;
            cfg.m = o.m;
            const auto r = fkm::run_table(cfg, lo, hi);
            emit(o, fkm::to_json(r).dump(2), fkm::to_markdown(r));
            return r.ok() ? 0 : 1;
        }
        if (sample->parsed()) {
            return run_sample(o);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
