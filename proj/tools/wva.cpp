#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wva/config.hpp"
#include "wva/oracle.hpp"
#include "wva/table.hpp"

namespace {

using namespace wva;

struct CommonOpts {
    std::string config_path;
    std::string preset_name;
    std::optional<std::uint64_t> seed;
    std::string out_path;
    std::string format;
};

Config resolve_config(const CommonOpts& opts) {
    if (opts.config_path.empty() && opts.preset_name.empty()) {
        throw ConfigError("provide --config and/or --preset");
    }
    Config c = opts.preset_name.empty() ? Config{} : preset(opts.preset_name);
    if (!opts.config_path.empty()) {
        c = parse_config_file(opts.config_path, c);
    }
    if (opts.seed) c.run.seed = *opts.seed;
    if (!opts.out_path.empty()) c.output.path = opts.out_path;
    if (!opts.format.empty()) {
        if (opts.format != "csv" && opts.format != "json") {
            throw ConfigError("--format expects csv|json");
        }
        c.output.format = opts.format;
    }
    return c;
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "flat key=value config file");
    cmd->add_option("--preset", opts.preset_name,
                    "one of: fig2, fig2-inset, fig3, nat-photon-2009");
    cmd->add_option("--seed", opts.seed, "override run.seed");
    cmd->add_option("--out", opts.out_path, "override output.path");
    cmd->add_option("--format", opts.format, "override output.format (csv|json)");
}

int cmd_state(const CommonOpts& opts) {
    const Config c = resolve_config(opts);
    const SetupParams& s = c.setup;

    const PostSelectionResult post = post_select(s);
    const ReadoutResult readout = mz_readout(s);
    const double d_opt = optimal_delta(s);

    const CoherentSuperposition chi = displaced_probe(s);
    const FockVector chi_fock = to_fock(chi, suggested_cutoff(chi));
    const int n_amps = std::min<int>(3, chi_fock.cutoff);

    nlohmann::json j;
    j["p_exact"] = post.p_exact;
    j["p_approx"] = post.p_approx;
    j["epsilon"] = post.epsilon;
    j["weak_regime"] = post.weak_regime;
    if (s.delta > 0.0) {
        const WeakValue wv = weak_value_photon_number(s.delta);
        j["weak_value_exact"] = wv.exact;
        j["weak_value_approx"] = wv.approx;
    } else {
        j["weak_value_exact"] = nullptr;
        j["weak_value_approx"] = nullptr;
    }
    j["m_minus"] = readout.m_minus;
    j["m_plus"] = readout.m_plus;
    j["phase_exact"] = readout.phase_exact;
    j["phase_first_order"] = readout.phase_first_order;
    j["enhancement"] = readout.enhancement;
    j["delta_opt"] = d_opt;
    nlohmann::json amps = nlohmann::json::array();
    for (int n = 0; n <= n_amps; ++n) {
        amps.push_back({{"n", n},
                        {"re", chi_fock.amps[size_t(n)].real()},
                        {"im", chi_fock.amps[size_t(n)].imag()}});
    }
    j["chi_amplitudes"] = amps;

    std::ostringstream body;
    if (c.output.format == "json") {
        body << j.dump(2) << '\n';
    } else {
        body << "p_exact            = " << format_double(post.p_exact) << '\n'
             << "p_approx           = " << format_double(post.p_approx) << '\n'
             << "epsilon            = " << format_double(post.epsilon) << '\n'
             << "weak_regime        = " << (post.weak_regime ? "true" : "false") << '\n';
        if (s.delta > 0.0) {
            const WeakValue wv = weak_value_photon_number(s.delta);
            body << "weak_value_exact   = " << format_double(wv.exact) << '\n'
                 << "weak_value_approx  = " << format_double(wv.approx) << '\n';
        }
        body << "m_minus            = " << format_double(readout.m_minus) << '\n'
             << "m_plus             = " << format_double(readout.m_plus) << '\n'
             << "phase_exact        = " << format_double(readout.phase_exact) << '\n'
             << "phase_first_order  = " << format_double(readout.phase_first_order) << '\n'
             << "enhancement        = " << format_double(readout.enhancement) << '\n'
             << "delta_opt          = " << format_double(d_opt) << '\n';
        for (int n = 0; n <= n_amps; ++n) {
            body << "chi_amp[" << n << "]         = ("
                 << format_double(chi_fock.amps[size_t(n)].real()) << ", "
                 << format_double(chi_fock.amps[size_t(n)].imag()) << ")\n";
        }
    }

    std::cout << body.str();
    if (!c.output.path.empty() && (!opts.out_path.empty())) {
        std::ofstream out(c.output.path);
        if (!out) throw ConfigError("cannot write '" + c.output.path + "'");
        out << body.str();
    }
    return 0;
}

std::vector<TableRow> sweep_rows(const Config& c) {
    std::vector<TableRow> rows;
    const std::vector<double> grid = make_grid(c.sweep);

    if (c.sweep.axis == "gamma") {
        std::vector<double> deltas = c.sweep.deltas;
        if (deltas.empty()) deltas.push_back(c.setup.delta);

        const auto non_ps = snr_curve(c.setup, c.noise, c.run, grid,
                                      SnrVariant::NonPostSelected);
        for (const SnrPoint& p : non_ps) {
            rows.push_back({p.gamma, p.snr, to_string(p.variant), std::nullopt});
        }
        for (double d : deltas) {
            SetupParams s = c.setup;
            s.delta = d;
            const auto ps = snr_curve(s, c.noise, c.run, grid, SnrVariant::PostSelected);
            const std::string label =
                std::string("post_selected[delta=") + format_double_compact(d) + "]";
            for (const SnrPoint& p : ps) {
                rows.push_back({p.gamma, p.snr, label, std::nullopt});
            }
        }
        const auto ql = snr_curve(c.setup, c.noise, c.run, grid,
                                  SnrVariant::QuantumLimited);
        for (const SnrPoint& p : ql) {
            rows.push_back({p.gamma, p.snr, to_string(p.variant), std::nullopt});
        }
        return rows;
    }

    const SweepAxis axis =
        c.sweep.axis == "alpha2" ? SweepAxis::Alpha2 : SweepAxis::Delta;
    if (axis == SweepAxis::Alpha2) {
        SetupParams uncomp = c.setup;
        uncomp.compensate_back_phase = false;
        SetupParams comp = c.setup;
        comp.compensate_back_phase = true;
        const auto plain = enhancement_sweep(uncomp, axis, grid);
        for (const auto& p : plain) {
            rows.push_back({p.x, p.enhancement, "uncompensated", std::nullopt});
        }
        for (const auto& p : enhancement_sweep(comp, axis, grid)) {
            rows.push_back({p.x, p.enhancement, "compensated", std::nullopt});
        }
        for (const auto& p : plain) {
            rows.push_back({p.x, p.weak_prediction, "weak_prediction", std::nullopt});
        }
    } else {
        const auto points = enhancement_sweep(c.setup, axis, grid);
        for (const auto& p : points) {
            rows.push_back({p.x, p.enhancement, "exact", std::nullopt});
        }
        for (const auto& p : points) {
            rows.push_back({p.x, p.weak_prediction, "weak_prediction", std::nullopt});
        }
    }
    return rows;
}

int cmd_sweep(const CommonOpts& opts) {
    const Config c = resolve_config(opts);
    const std::vector<TableRow> rows = sweep_rows(c);

    std::ofstream out(c.output.path, std::ios::binary);
    if (!out) throw ConfigError("cannot write output file '" + c.output.path + "'");
    if (c.output.format == "json") {
        write_json(out, rows);
    } else {
        write_csv(out, rows);
    }
    out.close();
    if (!out) throw ConfigError("failed writing '" + c.output.path + "'");
    std::cout << "wrote " << rows.size() << " rows to " << c.output.path << '\n';
    return 0;
}

int cmd_oracle(const CommonOpts& opts) {
    const Config c = resolve_config(opts);
    if (std::abs(c.setup.alpha) > 5.0) {
        std::cerr << "oracle: refusing |alpha|^2 = " << std::norm(c.setup.alpha)
                  << "; the brute-force check is limited to |alpha| <= 5 "
                     "(|alpha|^2 <= 25)\n";
        return 1;
    }

    // Battery: the configured point plus seeded draws below it in scale.
    std::vector<SetupParams> battery{c.setup};
    std::mt19937_64 rng(c.run.seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double a2_max = std::norm(c.setup.alpha);
    const double phi_max = std::min(std::abs(c.setup.phi0), 0.1);
    const double delta_max = std::max(c.setup.delta, 1e-3);
    for (int i = 0; i < 100; ++i) {
        SetupParams s = c.setup;
        s.alpha = std::sqrt(a2_max * u01(rng));
        s.phi0 = phi_max * u01(rng) * (c.setup.phi0 < 0.0 ? -1.0 : 1.0);
        s.delta = 1e-3 + (delta_max - 1e-3) * u01(rng);
        battery.push_back(s);
    }

    double max_p = 0.0, max_phase = 0.0, max_dist = 0.0;
    for (const SetupParams& s : battery) {
        const OracleReport rep = fock_oracle(s);
        max_p = std::max(max_p, rep.p_deviation());
        max_phase = std::max(max_phase, rep.phase_deviation());
        max_dist = std::max(max_dist, rep.state_distance);
    }

    const double worst = std::max({max_p, max_phase, max_dist});
    std::cout << "oracle battery over " << battery.size() << " parameter sets\n"
              << "max |p_oracle - p_exact|        = " << format_double(max_p) << '\n'
              << "max |phase_oracle - phase|      = " << format_double(max_phase) << '\n'
              << "max state distance              = " << format_double(max_dist) << '\n'
              << (worst < 1e-8 ? "PASS" : "FAIL") << " (threshold 1e-8)\n";
    return worst < 1e-8 ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"weak-value amplification of a single-photon cross-Kerr phase"};
    app.require_subcommand(1);

    CommonOpts opts;
    CLI::App* state = app.add_subcommand("state", "single-point report");
    CLI::App* sweep = app.add_subcommand("sweep", "write a sweep table");
    CLI::App* oracle = app.add_subcommand("oracle", "brute-force consistency check");
    add_common(state, opts);
    add_common(sweep, opts);
    add_common(oracle, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (state->parsed()) return cmd_state(opts);
        if (sweep->parsed()) return cmd_sweep(opts);
        return cmd_oracle(opts);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return 1;
    } catch (const CutoffError& e) {
        std::cerr << "numerical error: " << e.what()
                  << " (suggested cutoff: " << e.suggested_cutoff << ")\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
