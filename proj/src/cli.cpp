#include "cvbell/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <unsupported/Eigen/KroneckerProduct>

#include "cvbell/fock.hpp"

namespace cvbell {

namespace {

using nlohmann::ordered_json;

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

int write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return exit_ok;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        return exit_io_error;
    }
    out << text;
    if (!out.good()) {
        std::cerr << "error: write failed for " << path << "\n";
        return exit_io_error;
    }
    return exit_ok;
}

ordered_json params_json(const RunConfig& c) {
    ordered_json p;
    auto pair = [](Complex z) { return ordered_json::array({z.real(), z.imag()}); };
    p["z"] = pair(c.z);
    p["z_prime"] = pair(c.z_prime);
    p["w"] = pair(c.w);
    p["w_prime"] = pair(c.w_prime);
    if (c.kind == Kind::mermin) {
        p["zeta"] = pair(c.zeta);
        p["zeta_prime"] = pair(c.zeta_prime);
    }
    p["eta"] = c.eta;
    p["sigma"] = c.sigma;
    if (c.kind == Kind::mermin) p["tau"] = c.tau;
    return p;
}

CorrelatorValue evaluate_config(const RunConfig& c) {
    if (c.kind == Kind::bell) {
        return bell_chsh({c.z, c.z_prime, c.w, c.w_prime, make_bipartite(c.eta, c.sigma)});
    }
    return mermin3({c.z, c.z_prime, c.w, c.w_prime, c.zeta, c.zeta_prime,
                    make_tripartite(c.eta, c.sigma, c.tau)});
}

ScanSpec scan_spec_from(const RunConfig& c) {
    const ScanBlock block = c.scan.value_or(ScanBlock{});
    return {block.eta_range, block.sigma_range, c.z,    c.z_prime,
            c.w,             c.w_prime,         c.zeta, c.zeta_prime,
            c.tau};
}

}  // namespace

int cmd_eval(const RunConfig& config, int /*threads*/) {
    CorrelatorValue result;
    try {
        result = evaluate_config(config);
    } catch (const DegenerateState& e) {
        std::cerr << "error: degenerate state: " << e.what() << "\n";
        return exit_degenerate;
    }
    std::cout << "kind:           " << kind_name(config.kind) << "\n"
              << "value:          " << fmt12(result.value) << "\n"
              << "classification: " << violation_name(result.classification) << "\n"
              << "bounds:         " << fmt12(result.bound_classical) << " (classical), "
              << fmt12(result.bound_quantum) << " (quantum)\n";

    ordered_json record;
    record["kind"] = kind_name(config.kind);
    record["value"] = result.value;
    record["classification"] = violation_name(result.classification);
    record["params"] = params_json(config);
    record["seed"] = config.rng_seed;
    record["n_evaluations"] = 1;
    record["timestamp"] = utc_timestamp();
    return write_text(config.output_path, record.dump(2) + "\n");
}

int cmd_scan(const RunConfig& config, int threads) {
    ScanResult result;
    try {
        result = scan(scan_spec_from(config), config.kind, threads);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: invalid scan spec: " << e.what() << "\n";
        return exit_parse_error;
    }

    std::string csv = "eta,sigma,value,violated\n";
    const int ne = result.spec.eta_range.count;
    const int ns = result.spec.sigma_range.count;
    for (int i = 0; i < ne; ++i) {
        const double eta = axis_point(result.spec.eta_range, i);
        for (int j = 0; j < ns; ++j) {
            const double sigma = axis_point(result.spec.sigma_range, j);
            csv += fmt12(eta);
            csv += ',';
            csv += fmt12(sigma);
            csv += ',';
            csv += fmt12(result.values(i, j));
            csv += ',';
            csv += result.violated(i, j) ? '1' : '0';
            csv += '\n';
        }
    }
    const int code = write_text(config.output_path, csv);
    if (code != exit_ok) return code;

    std::ostream& summary = config.output_path.empty() ? std::cerr : std::cout;
    if (result.has_max) {
        summary << "scan " << kind_name(config.kind) << ": max "
                << fmt12(result.max_value) << " at eta="
                << fmt12(axis_point(result.spec.eta_range, result.argmax_eta))
                << " sigma="
                << fmt12(axis_point(result.spec.sigma_range, result.argmax_sigma))
                << ", " << result.violated.count() << " of " << ne * ns
                << " cells violate\n";
    } else {
        summary << "scan " << kind_name(config.kind) << ": no finite cells\n";
    }
    return exit_ok;
}

int cmd_optimize(const RunConfig& config, bool warm_paper, int threads) {
    const OptimizeBlock block = config.optimize.value_or(OptimizeBlock{});
    ParameterBounds bounds = default_bounds(config.kind);
    const int n = parameter_count(config.kind);
    if (block.lo) {
        if (block.lo->size() != n) {
            std::cerr << "error: optimize.lo must have " << n << " entries\n";
            return exit_parse_error;
        }
        bounds.lo = *block.lo;
    }
    if (block.hi) {
        if (block.hi->size() != n) {
            std::cerr << "error: optimize.hi must have " << n << " entries\n";
            return exit_parse_error;
        }
        bounds.hi = *block.hi;
    }
    std::optional<Eigen::VectorXd> warm = block.warm_start;
    if (warm_paper) {
        Eigen::VectorXd w(n);
        if (config.kind == Kind::bell) {
            const RunConfig p = preset_config("bell-paper");
            w << p.z.real(), p.z.imag(), p.z_prime.real(), p.z_prime.imag(),
                p.w.real(), p.w.imag(), p.w_prime.real(), p.w_prime.imag(), p.eta,
                p.sigma;
        } else {
            const RunConfig p = preset_config("mermin-paper");
            w << p.z.real(), p.z.imag(), p.z_prime.real(), p.z_prime.imag(),
                p.w.real(), p.w.imag(), p.w_prime.real(), p.w_prime.imag(),
                p.zeta.real(), p.zeta.imag(), p.zeta_prime.real(),
                p.zeta_prime.imag(), p.eta, p.sigma, p.tau;
        }
        warm = w;
    }
    if (warm && warm->size() != n) {
        std::cerr << "error: warm_start must have " << n << " entries\n";
        return exit_parse_error;
    }

    OptimResult result;
    try {
        result = maximize(config.kind, bounds, block.starts, config.rng_seed, warm,
                          threads);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_parse_error;
    }

    const Violation cls =
        classify(result.best_value,
                 config.kind == Kind::bell ? bell_classical_bound : mermin_classical_bound,
                 config.kind == Kind::bell ? bell_quantum_bound : mermin_quantum_bound);

    ordered_json record;
    record["kind"] = kind_name(config.kind);
    record["value"] = result.best_value;
    record["classification"] = violation_name(cls);
    ordered_json params;
    const auto& p = result.best_params;
    auto pair = [&](int k) { return ordered_json::array({p(2 * k), p(2 * k + 1)}); };
    params["z"] = pair(0);
    params["z_prime"] = pair(1);
    params["w"] = pair(2);
    params["w_prime"] = pair(3);
    if (config.kind == Kind::mermin) {
        params["zeta"] = pair(4);
        params["zeta_prime"] = pair(5);
        params["eta"] = p(12);
        params["sigma"] = p(13);
        params["tau"] = p(14);
    } else {
        params["eta"] = p(8);
        params["sigma"] = p(9);
    }
    record["params"] = params;
    record["seed"] = result.seed;
    record["n_evaluations"] = result.n_evaluations;
    record["converged"] = result.converged;
    record["timestamp"] = utc_timestamp();

    std::ostream& summary = config.output_path.empty() ? std::cerr : std::cout;
    summary << "optimize " << kind_name(config.kind) << ": best "
            << fmt12(result.best_value) << " (" << violation_name(cls) << ") after "
            << result.n_evaluations << " evaluations\n";
    return write_text(config.output_path, record.dump(2) + "\n");
}

namespace {

// Worst-case tracker for one verify invariant.
struct Gauge {
    const char* name;
    double tolerance;
    double worst = 0.0;
    std::string worst_draw;

    void feed(double value, const std::string& draw) {
        if (value > worst) {
            worst = value;
            worst_draw = draw;
        }
    }
    bool ok() const { return worst <= tolerance; }
};

double half_block_max(const Eigen::MatrixXcd& m) {
    const Eigen::Index h = m.rows() / 2;
    return m.topLeftCorner(h, h).cwiseAbs().maxCoeff();
}

}  // namespace

int cmd_verify(int dim, int cases, int rng_seed) {
    std::cout << "verify: dim=" << dim << " cases=" << cases << " seed=" << rng_seed
              << "\n";
    if (cases == 0) {
        std::cout << "warning: 0 cases requested; vacuous pass\n";
        return exit_ok;
    }
    if (cases < 0) {
        std::cerr << "error: cases must be >= 0\n";
        return exit_parse_error;
    }

    // A draw needs dim >= required_dim of every displacement magnitude in
    // play, i.e. magnitudes up to sqrt(dim) - 4. Split that budget between
    // amplitudes (cap A) and state parameters (cap H, shifted args 2H).
    const double budget = std::sqrt(static_cast<double>(dim)) - 4.0;
    const double amp_cap = std::min(1.0, budget / 3.0);
    const double state_cap = std::min(1.5, (budget - amp_cap) / 2.0);
    if (!(state_cap >= 0.1)) {
        std::cerr << "TruncationError: dim " << dim
                  << " cannot hold any admissible draw (needs dim >= "
                  << required_dim(3 * 0.1) << " for the smallest draws)\n";
        return exit_verify_failed;
    }
    std::cout << "draw ranges: state params in [0.1, " << fmt12(state_cap)
              << "], |amplitudes| <= " << fmt12(amp_cap) << "\n";

    std::mt19937_64 rng(static_cast<std::uint64_t>(rng_seed));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto draw_state_param = [&] { return 0.1 + (state_cap - 0.1) * unit(rng); };
    auto draw_amp = [&]() -> Complex {
        while (true) {
            const Complex z{amp_cap * (2.0 * unit(rng) - 1.0),
                            amp_cap * (2.0 * unit(rng) - 1.0)};
            if (std::abs(z) <= amp_cap) return z;
        }
    };

    Gauge eq2{"closed-form equivalence (2-mode)", 1e-6};
    Gauge eq3{"closed-form equivalence (3-mode)", 1e-6};
    Gauge reality{"reality |Im|", 1e-7};
    Gauge unitarity{"unitarity half-block", 1e-8};
    Gauge weyl{"weyl law half-block", 1e-7};
    Gauge herm_comm{"hermitian decomposition [M,N]", 1e-7};
    Gauge herm_circ{"hermitian decomposition M^2+N^2-1", 1e-7};
    Gauge commutation{"tensor commutation (exact)", 0.0};

    try {
        for (int c = 0; c < cases; ++c) {
            const double eta = draw_state_param();
            const double sigma = draw_state_param();
            const double tau = draw_state_param();
            const Complex z = draw_amp(), zp = draw_amp(), w = draw_amp(),
                          zeta = draw_amp();
            std::ostringstream d;
            d << "case " << c << ": eta=" << eta << " sigma=" << sigma
              << " tau=" << tau << " z=" << z << " z'=" << zp << " w=" << w
              << " zeta=" << zeta;
            const std::string draw = d.str();

            const FockOperator da = displacement_matrix(z, dim);
            const FockOperator db = displacement_matrix(w, dim);
            const FockOperator dc = displacement_matrix(zeta, dim);

            // closed form vs expectation, both partitions
            const BipartiteState s2 = make_bipartite(eta, sigma);
            const Complex o2 = expectation(da, db, build_state(s2, dim));
            eq2.feed(std::abs(o2.real() - correlator2(z, w, s2)), draw);
            reality.feed(std::abs(o2.imag()), draw);

            const TripartiteState s3 = make_tripartite(eta, sigma, tau);
            const Complex o3 = expectation(da, db, dc, build_state(s3, dim));
            eq3.feed(std::abs(o3.real() - correlator3(z, w, zeta, s3)), draw);
            reality.feed(std::abs(o3.imag()), draw);

            // unitarity of the truncated displacement matrices
            unitarity.feed(
                half_block_max(da.entries.adjoint() * da.entries -
                               Eigen::MatrixXcd::Identity(dim, dim)),
                draw);

            // matrix Weyl law against the label-level compose
            const DisplacementLabel lab = compose(make_label(z), make_label(zp));
            const Complex phase = std::polar(1.0, lab.phase);
            const FockOperator dzp = displacement_matrix(zp, dim);
            const FockOperator dsum = displacement_matrix(lab.amplitude, dim);
            weyl.feed(half_block_max(da.entries * dzp.entries - phase * dsum.entries),
                      draw);

            const auto [comm_res, circ_res] = hermitian_decomposition_check(zp, dim);
            herm_comm.feed(comm_res, draw);
            herm_circ.feed(circ_res, draw);

            // commutation of tensor factors is exact by construction; check
            // the materialized products bit-for-bit at a small dimension
            const double az = std::abs(z), aw = std::abs(w);
            const Complex zc = az > 0 ? z * (0.15 / az) : Complex{0.15, 0.0};
            const Complex wc = aw > 0 ? w * (0.15 / aw) : Complex{0.15, 0.0};
            const int dc_dim = required_dim(0.15);
            const Eigen::MatrixXcd a_small = displacement_matrix(zc, dc_dim).entries;
            const Eigen::MatrixXcd b_small = displacement_matrix(wc, dc_dim).entries;
            const Eigen::MatrixXcd eye =
                Eigen::MatrixXcd::Identity(dc_dim, dc_dim);
            const Eigen::MatrixXcd a_full = Eigen::kroneckerProduct(a_small, eye);
            const Eigen::MatrixXcd b_full = Eigen::kroneckerProduct(eye, b_small);
            commutation.feed(
                (a_full * b_full - b_full * a_full).cwiseAbs().maxCoeff(), draw);
        }
    } catch (const TruncationError& e) {
        std::cerr << "TruncationError: " << e.what() << "\n";
        return exit_verify_failed;
    }

    bool all_ok = true;
    for (const Gauge* g : {&eq2, &eq3, &reality, &unitarity, &weyl, &herm_comm,
                           &herm_circ, &commutation}) {
        const bool ok = g->ok();
        all_ok = all_ok && ok;
        std::printf("  %-36s worst %-12.3e tol %-9.1e %s\n", g->name, g->worst,
                    g->tolerance, ok ? "ok" : "FAIL");
        if (!ok) std::printf("    failing %s\n", g->worst_draw.c_str());
    }
    std::cout << (all_ok ? "verify: PASS" : "verify: FAIL") << " (" << cases
              << " cases)\n";
    return all_ok ? exit_ok : exit_verify_failed;
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Bell-CHSH and Mermin-3 correlators for entangled coherent states "
                 "built from displacement operators"};
    app.require_subcommand(1);

    std::string preset, config_path, out_path;
    int seed = -1;
    int threads = 1;
    bool all_zero = false;
    bool warm_paper = false;
    std::string kind_flag;

    auto add_common = [&](CLI::App* sub, bool with_kind) {
        sub->add_option("--preset", preset, "bell-paper or mermin-paper");
        sub->add_option("--config", config_path, "JSON config file");
        sub->add_option("--out", out_path, "output file path");
        sub->add_option("--seed", seed, "RNG seed");
        sub->add_option("--threads", threads, "worker threads (speed only)");
        if (with_kind) sub->add_option("--kind", kind_flag, "bell or mermin");
    };

    CLI::App* eval = app.add_subcommand("eval", "evaluate a correlator once");
    add_common(eval, true);
    eval->add_flag("--all-zero", all_zero, "zero all operator amplitudes");

    CLI::App* scan_cmd = app.add_subcommand("scan", "grid scan over (eta, sigma)");
    add_common(scan_cmd, true);

    CLI::App* optimize_cmd =
        app.add_subcommand("optimize", "derivative-free maximization");
    add_common(optimize_cmd, true);
    optimize_cmd->add_flag("--warm-paper", warm_paper,
                           "warm start at the published parameter point");

    int verify_dim = 40, verify_cases = 50;
    CLI::App* verify_cmd = app.add_subcommand("verify", "run the oracle suite");
    verify_cmd->add_option("--dim", verify_dim, "Fock truncation per mode");
    verify_cmd->add_option("--cases", verify_cases, "number of random draws");
    verify_cmd->add_option("--seed", seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_parse_error;
    }

    if (app.got_subcommand(verify_cmd)) {
        return cmd_verify(verify_dim, verify_cases, seed < 0 ? 7 : seed);
    }

    RunConfig config;
    try {
        if (!preset.empty() && !config_path.empty()) {
            throw ParseError("--preset and --config are mutually exclusive");
        }
        if (!preset.empty()) {
            config = preset_config(preset);
        } else if (!config_path.empty()) {
            config = load_config(config_path);
        }
        if (!kind_flag.empty()) {
            if (kind_flag == "bell") {
                config.kind = Kind::bell;
            } else if (kind_flag == "mermin") {
                config.kind = Kind::mermin;
            } else {
                throw ParseError("unknown kind \"" + kind_flag + "\"");
            }
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_parse_error;
    }
    if (all_zero) {
        config.z = config.z_prime = config.w = config.w_prime = config.zeta =
            config.zeta_prime = Complex{0.0, 0.0};
    }
    if (!out_path.empty()) config.output_path = out_path;
    if (seed >= 0) config.rng_seed = seed;

    try {
        if (app.got_subcommand(eval)) return cmd_eval(config, threads);
        if (app.got_subcommand(scan_cmd)) return cmd_scan(config, threads);
        if (app.got_subcommand(optimize_cmd)) {
            return cmd_optimize(config, warm_paper, threads);
        }
    } catch (const DegenerateState& e) {
        std::cerr << "error: degenerate state: " << e.what() << "\n";
        return exit_degenerate;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_parse_error;
    }
    return exit_parse_error;
}

}  // namespace cvbell
