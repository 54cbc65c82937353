// Command-line front end: quantized spectra, verification suites, plot data
// and orbit-space reduction reports.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pendulum/classical.hpp"
#include "pendulum/holonomy.hpp"
#include "pendulum/minus_one.hpp"
#include "pendulum/operators.hpp"
#include "pendulum/reduction.hpp"
#include "pendulum/rng.hpp"
#include "pendulum/spectrum.hpp"
#include "pendulum/verify.hpp"

namespace {

using nlohmann::json;
using namespace pendulum;

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_rejected_hbar = 2;
constexpr int exit_verification = 3;

struct run_config {
    double hbar = 0.4;
    int m_max = 32;
    double tol = 1e-10;
    std::string format = "json";
    std::string out;
    std::uint64_t seed = 0;
};

json config_json(const run_config& cfg) {
    return json{{"hbar", cfg.hbar},
                {"m_max", cfg.m_max},
                {"tol", cfg.tol},
                {"format", cfg.format},
                {"seed", cfg.seed}};
}

int write_output(const run_config& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return exit_ok;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open output file " << cfg.out << "\n";
        return exit_usage;
    }
    f << text;
    return f.good() ? exit_ok : exit_usage;
}

json level_json(const quantum_level& l) {
    json j{{"n", l.n}, {"region", region_name(l.region)}, {"energy", l.energy}};
    j["action"] = l.energy == 0.0 ? 0.0 : component_action(l.energy);
    if (l.energy == 0.0)
        j["period"] = nullptr;
    else
        j["period"] = period(l.energy);
    return j;
}

json reduced_table_json(const std::vector<reduced_level>& levels, const char* representation) {
    json arr = json::array();
    for (const auto& rl : levels) {
        json j{{"k", rl.k}, {"energy", rl.energy}};
        const bool below = rl.energy < separatrix_energy;
        if (representation[0] == '+')
            j["unreduced_n"] = below ? 2 * rl.k : rl.k;
        else if (rl.k == 0)
            j["unreduced_n"] = nullptr;
        else
            j["unreduced_n"] = 2 * rl.k - 1;
        j["parity"] = representation[0] == '+' ? "even" : "odd";
        arr.push_back(j);
    }
    return json{{"reduced", true}, {"representation", representation}, {"levels", arr}};
}

json triplets_json(const linear_operator& op) {
    json arr = json::array();
    for (const auto& t : op.triplets())
        arr.push_back(json::array({static_cast<int>(t[0]), static_cast<int>(t[1]), t[2], t[3]}));
    return arr;
}

std::string csv_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

int cmd_spectrum(const run_config& cfg) {
    const hbar_validation val = validate_hbar(cfg.hbar);
    if (!val.ok) {
        json rep{{"config", config_json(cfg)}, {"rejected_hbar", val.reason}};
        write_output(cfg, rep.dump(2) + "\n");
        return exit_rejected_hbar;
    }
    spectrum sp;
    try {
        sp = build_spectrum(cfg.hbar, cfg.m_max);
    } catch (const rejected_hbar_error& e) {
        json rep{{"config", config_json(cfg)}, {"rejected_hbar", e.what()}};
        write_output(cfg, rep.dump(2) + "\n");
        return exit_rejected_hbar;
    }
    const auto reduced = reduced_spectrum(cfg.hbar, cfg.m_max);
    const auto odd_reduced = odd_reduced_spectrum(cfg.hbar, cfg.m_max);

    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "n,region,energy,action,period\n";
        for (const auto& l : sp.levels) {
            os << l.n << ',' << region_name(l.region) << ',' << csv_number(l.energy) << ','
               << csv_number(l.energy == 0.0 ? 0.0 : component_action(l.energy)) << ',';
            if (l.energy != 0.0) os << csv_number(period(l.energy));
            os << '\n';
        }
        for (const char* rep : {"+1", "-1"}) {
            os << "\nrepresentation,k,energy,parity\n";
            for (const auto& rl : rep[0] == '+' ? reduced : odd_reduced)
                os << rep << ',' << rl.k << ',' << csv_number(rl.energy) << ','
                   << (rep[0] == '+' ? "even" : "odd") << '\n';
        }
        return write_output(cfg, os.str());
    }

    const lattice lat(sp);
    const smoothing_envelope env = make_envelope(sp);
    json rep{{"config", config_json(cfg)},
             {"spectrum",
              {{"N", sp.N},
               {"M", sp.M},
               {"epsilon", sp.epsilon_gap},
               {"levels", json::array()}}},
             {"reduced", json::array({reduced_table_json(reduced, "+1"),
                                      reduced_table_json(odd_reduced, "-1")})},
             {"checks", json::array()}};
    for (const auto& l : sp.levels) rep["spectrum"]["levels"].push_back(level_json(l));
    rep["operators"] = json{{"lowering_plus", triplets_json(lowering(sector::plus, lat, env))},
                            {"lowering_minus", triplets_json(lowering(sector::minus, lat, env))},
                            {"raising_plus", triplets_json(raising(sector::plus, lat, env))},
                            {"raising_minus", triplets_json(raising(sector::minus, lat, env))},
                            {"swap", triplets_json(swap_operator(lat))}};
    return write_output(cfg, rep.dump(2) + "\n");
}

int cmd_verify(const run_config& cfg, const std::string& suite) {
    const hbar_validation val = validate_hbar(cfg.hbar);
    if (!val.ok) {
        json rep{{"config", config_json(cfg)}, {"suite", suite}, {"rejected_hbar", val.reason}};
        write_output(cfg, rep.dump(2) + "\n");
        return exit_rejected_hbar;
    }
    const auto checks = verify_suite(suite, cfg.hbar, cfg.seed);
    bool all_pass = true;
    for (const auto& c : checks) all_pass = all_pass && c.pass;

    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "name,residual,tolerance,pass\n";
        for (const auto& c : checks)
            os << '"' << c.name << "\"," << csv_number(c.residual) << ','
               << csv_number(c.tolerance) << ',' << (c.pass ? "true" : "false") << '\n';
        const int io = write_output(cfg, os.str());
        if (io != exit_ok) return io;
        return all_pass ? exit_ok : exit_verification;
    }

    json arr = json::array();
    for (const auto& c : checks)
        arr.push_back(json{{"name", c.name},
                           {"residual", c.residual},
                           {"tolerance", c.tolerance},
                           {"pass", c.pass}});
    json rep{{"config", config_json(cfg)}, {"suite", suite}, {"checks", arr},
             {"passed", all_pass}};
    const int io = write_output(cfg, rep.dump(2) + "\n");
    if (io != exit_ok) return io;
    return all_pass ? exit_ok : exit_verification;
}

int cmd_plotdata(const run_config& cfg, const std::string& what, int samples, double e_max) {
    if (samples < 1) {
        std::cerr << "error: --samples must be at least 1\n";
        return exit_usage;
    }
    std::ostringstream os;
    os << "e," << what << "\n";
    const double e_min = 0.02;
    for (int i = 0; i < samples; ++i) {
        const double e = e_min + (e_max - e_min) * i / std::max(1, samples - 1);
        if (e > separatrix_energy - 1e-6 && e < separatrix_energy + 1e-6) continue;
        double v = 0.0;
        if (what == "action_curve")
            v = full_action(e);
        else if (what == "period_curve")
            v = period(e);
        else if (what == "reduced_action")
            v = reduced_action(e);
        else if (what == "holonomy_scan")
            v = std::abs(holonomy_phase(e, cfg.hbar) - complexd(1.0, 0.0));
        os << csv_number(e) << ',' << csv_number(v) << '\n';
    }
    return write_output(cfg, os.str());
}

int cmd_reduce(const run_config& cfg, double p, double alpha, double x, double y, int samples) {
    json records = json::array();
    auto emit = [&records](complexd z, const phase_point& pt) {
        const invariant_tuple t = invariants8(z, pt);
        const stratum_class sc = jacobian_rank(t, 1e-8);
        records.push_back(json{{"tau", t.tau},
                               {"sigma", t.sigma},
                               {"rank", sc.rank},
                               {"class", sc.cls == stratum::regular ? "regular" : "singular"}});
    };
    emit(complexd(x, y), phase_point(p, alpha));
    sampler rng(cfg.seed);
    for (int i = 0; i < samples; ++i)
        emit(complexd(rng.uniform(-2, 2), rng.uniform(-2, 2)),
             phase_point(rng.uniform(-2.5, 2.5), rng.uniform(-3.1, 3.1)));
    json rep{{"config", config_json(cfg)}, {"records", records}};
    return write_output(cfg, rep.dump(2) + "\n");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bohr-Sommerfeld-Heisenberg quantization of the mathematical pendulum"};
    app.require_subcommand(1);

    run_config cfg;
    cfg.seed = sampler::seed_from_env();

    auto add_common = [&cfg](CLI::App* sub, bool need_hbar) {
        auto* h = sub->add_option("--hbar", cfg.hbar, "Planck's constant over 2 pi");
        if (need_hbar) h->required();
        sub->add_option("--m-max", cfg.m_max, "rotation lattice truncation")->check(CLI::Range(1, 4096));
        sub->add_option("--tol", cfg.tol, "numerical tolerance")
            ->check(CLI::Range(1e-300, 1e-2));
        sub->add_option("--format", cfg.format, "output format")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", cfg.out, "output path (default stdout)");
    };

    auto* sub_spectrum = app.add_subcommand("spectrum", "compute the quantized energy catalogue");
    add_common(sub_spectrum, true);

    auto* sub_verify = app.add_subcommand("verify", "run a property-verification suite");
    std::string suite = "all";
    sub_verify->add_option("suite", suite, "suite to run")
        ->check(CLI::IsMember({"classical", "holonomy", "operators", "reduction", "minusone",
                               "all"}));
    add_common(sub_verify, true);

    auto* sub_plot = app.add_subcommand("plotdata", "write (e, value) samples for plotting");
    std::string what;
    int samples = 200;
    double e_max = 6.0;
    sub_plot->add_option("what", what, "curve to sample")
        ->required()
        ->check(CLI::IsMember({"action_curve", "period_curve", "reduced_action",
                               "holonomy_scan"}));
    sub_plot->add_option("--samples", samples, "number of grid points");
    sub_plot->add_option("--e-max", e_max, "upper end of the energy grid");
    add_common(sub_plot, false);

    auto* sub_reduce = app.add_subcommand("reduce", "map points to the orbit variety and classify");
    double rp = 1.0, ralpha = 1.0, rx = 1.0, ry = 0.0;
    int rsamples = 0;
    sub_reduce->add_option("--p", rp, "momentum of the base point");
    sub_reduce->add_option("--alpha", ralpha, "angle of the base point");
    sub_reduce->add_option("--x", rx, "fiber real part");
    sub_reduce->add_option("--y", ry, "fiber imaginary part");
    sub_reduce->add_option("--samples", rsamples, "extra random points to classify");
    add_common(sub_reduce, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    if (!(cfg.hbar > 0.0)) {
        std::cerr << "error: --hbar must be positive\n";
        return exit_usage;
    }
    if (!(cfg.tol > 0.0 && cfg.tol < 1e-2)) {
        std::cerr << "error: --tol must lie in (0, 1e-2)\n";
        return exit_usage;
    }

    try {
        if (sub_spectrum->parsed()) return cmd_spectrum(cfg);
        if (sub_verify->parsed()) return cmd_verify(cfg, suite);
        if (sub_plot->parsed()) return cmd_plotdata(cfg, what, samples, e_max);
        if (sub_reduce->parsed()) return cmd_reduce(cfg, rp, ralpha, rx, ry, rsamples);
    } catch (const rejected_hbar_error& e) {
        std::cerr << "rejected hbar: " << e.what() << "\n";
        return exit_rejected_hbar;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
