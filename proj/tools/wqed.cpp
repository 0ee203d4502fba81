// Command-line driver for the waveguide-mediated spin-chain toolkit.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wqed/adiabatic.hpp"
#include "wqed/berry.hpp"
#include "wqed/collective.hpp"
#include "wqed/free_fermion.hpp"
#include "wqed/io.hpp"
#include "wqed/nn_gaps.hpp"
#include "wqed/observables.hpp"
#include "wqed/spectra.hpp"

using nlohmann::json;
using namespace wqed;

namespace {

// Angles are accepted as multiples of pi ("0.25pi", "-0.75pi") or radians.
double parse_angle(const std::string& text) {
    std::string body = text;
    double scale = 1.0;
    if (body.size() > 2 && body.substr(body.size() - 2) == "pi") {
        body = body.substr(0, body.size() - 2);
        scale = M_PI;
        if (body.empty() || body == "-" || body == "+") body += "1";
    }
    std::size_t used = 0;
    const double value = std::stod(body, &used);
    if (used != body.size())
        throw CLI::ValidationError("angle", "cannot parse angle '" + text + "'");
    return value * scale;
}

std::vector<double> linspace(double lo, double hi, int steps) {
    if (steps < 1) throw CLI::ValidationError("grid", "grid needs >= 1 node");
    std::vector<double> grid(steps);
    for (int i = 0; i < steps; ++i)
        grid[i] = steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1);
    return grid;
}

struct ModelOpts {
    std::string pattern = "waveguide"; // waveguide|uniform-lbg|uniform-ubg|nn
    std::string bandgap = "lower";
    double xi = 1.0;
    double delta_eff = 0.0;
    double jtilde = 1.0;
    int n = 12;
    bool pbc = false;
    int workers = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--pattern", pattern,
                        "coupling pattern: waveguide, uniform-lbg, "
                        "uniform-ubg, nn")
            ->check(CLI::IsMember(
                {"waveguide", "uniform-lbg", "uniform-ubg", "nn"}));
        cmd->add_option("--bandgap", bandgap, "lower, middle or upper")
            ->check(CLI::IsMember({"lower", "middle", "upper"}));
        cmd->add_option("--xi", xi, "interaction length");
        cmd->add_option("--dimerization", delta_eff,
                        "effective dimerization in [-1, 1]");
        cmd->add_option("--jtilde", jtilde, "coupling amplitude");
        cmd->add_option("-n,--n", n, "number of spins");
        cmd->add_flag("--pbc,!--obc", pbc, "closed ring (default open)");
        cmd->add_option("--workers", workers,
                        "worker threads (0: WQED_WORKERS or hardware)");
    }

    Boundary boundary() const { return pbc ? Boundary::PBC : Boundary::OBC; }

    CouplingMatrix matrix() const {
        if (pattern == "uniform-lbg") return make_uniform_lbg(n, jtilde);
        if (pattern == "uniform-ubg") return make_uniform_ubg(n, jtilde);
        if (pattern == "nn")
            return make_nn_dimerized(n, delta_eff, boundary(), jtilde);
        const Bandgap gap = bandgap == "lower" ? Bandgap::Lower
                            : bandgap == "middle" ? Bandgap::Middle
                                                  : Bandgap::Upper;
        return build_coupling_matrix(
            EffectiveCouplings::make(gap, xi, delta_eff, jtilde), n,
            boundary());
    }

    json echo() const {
        return {{"pattern", pattern}, {"bandgap", bandgap},     {"xi", xi},
                {"dimerization", delta_eff}, {"jtilde", jtilde}, {"n", n},
                {"boundary", pbc ? "PBC" : "OBC"}, {"workers", workers}};
    }

    SolverOptions solver() const {
        SolverOptions opts;
        opts.workers = workers;
        return opts;
    }
};

void write_manifest(const std::string& prefix, const std::string& command,
                    json config, json results) {
    json manifest;
    manifest["command"] = command;
    manifest["config"] = std::move(config);
    manifest["results"] = std::move(results);
    manifest["timestamp"] =
        std::chrono::duration_cast<std::chrono::seconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count();
    write_text(prefix + ".json", manifest.dump(2) + "\n");
}

// Equal-weight ground multiplet of one sector.
Eigen::MatrixXcd ground_multiplet(const CouplingMatrix& cm, int n_up,
                                  double theta, const SolverOptions& opts) {
    auto basis = std::make_shared<const SectorBasis>(cm.n_spins, n_up);
    const auto h = build_sector_hamiltonian(cm, basis, theta);
    const int k = static_cast<int>(std::min<std::size_t>(4, h.dim()));
    const auto gs = ground_states(h, k, opts);
    return gs.eigenvectors.leftCols(gs.degeneracy);
}

int cmd_couplings(const ModelOpts& model, const std::string& prefix) {
    const auto cm = model.matrix();
    write_text(prefix + ".matrix.json", cm.to_json() + "\n");
    json results = {{"n_max", cm.n_max},
                    {"cutoff_warning", cm.cutoff_warning},
                    {"matrix_file", prefix + ".matrix.json"}};
    if (model.pattern == "waveguide") {
        const Region region = feasible_region_check(model.xi, model.delta_eff);
        results["region"] = region == Region::LowerUpperOnly ? "lower-upper"
                            : region == Region::MiddleOnly   ? "middle"
                                                             : "boundary";
        results["region_threshold"] = region_threshold(model.xi);
    }
    write_manifest(prefix, "couplings", model.echo(), results);
    std::cout << "wrote " << prefix << ".matrix.json\n";
    return 0;
}

int cmd_phase_diagram(const ModelOpts& model, double theta_min,
                      double theta_max, int theta_steps, double mu_min,
                      double mu_max, int mu_steps, const std::string& prefix) {
    const auto grid = magnetization_phase_diagram(
        model.matrix(), linspace(theta_min, theta_max, theta_steps),
        linspace(mu_min, mu_max, mu_steps), model.solver());
    std::vector<std::vector<double>> rows;
    for (std::size_t t = 0; t < grid.theta.size(); ++t)
        for (std::size_t u = 0; u < grid.mu.size(); ++u)
            rows.push_back({grid.theta[t], grid.mu[u],
                            static_cast<double>(grid.m_star(t, u))});
    write_csv(prefix + ".csv", {"theta", "mu", "m"}, rows);
    write_manifest(prefix, "phase-diagram", model.echo(),
                   {{"rows", rows.size()}, {"csv", prefix + ".csv"}});
    std::cout << "wrote " << prefix << ".csv (" << rows.size() << " rows)\n";
    return 0;
}

int cmd_mag_curve(const ModelOpts& model, double theta, double mu_min,
                  double mu_max, int mu_steps, const std::string& prefix) {
    const auto curve = magnetization_curve(
        model.matrix(), theta, linspace(mu_min, mu_max, mu_steps),
        model.solver());
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < curve.mu.size(); ++i)
        rows.push_back({curve.mu[i], static_cast<double>(curve.m[i])});
    write_csv(prefix + ".csv", {"mu", "m"}, rows);
    json results = {{"csv", prefix + ".csv"}};
    if (curve.saturation_mu) results["saturation_mu"] = *curve.saturation_mu;
    write_manifest(prefix, "mag-curve", model.echo(), results);
    std::cout << "wrote " << prefix << ".csv\n";
    return 0;
}

int cmd_correlations(const ModelOpts& model, double theta, int m, int r_max,
                     const std::string& prefix) {
    const auto cm = model.matrix();
    const int n_up = m + cm.n_spins / 2;
    const auto states =
        ground_multiplet(cm, n_up, theta, model.solver());
    SectorBasis basis(cm.n_spins, n_up);
    const int reference = cm.n_spins / 2;
    if (r_max <= 0) r_max = cm.n_spins - 1 - reference;
    const auto cx = two_point_correlations(basis, states, 'x', r_max);
    const auto cz = two_point_correlations(basis, states, 'z', r_max);
    std::vector<std::vector<double>> rows;
    for (int r = 1; r <= r_max; ++r)
        rows.push_back({static_cast<double>(r), cx.values[r - 1],
                        cx.values[r - 1], cz.values[r - 1]});
    write_csv(prefix + ".csv", {"r", "Cx", "Cy", "Cz"}, rows);
    write_manifest(prefix, "correlations", model.echo(),
                   {{"theta", theta},
                    {"m", m},
                    {"reference", reference},
                    {"multiplet", states.cols()},
                    {"csv", prefix + ".csv"}});
    std::cout << "wrote " << prefix << ".csv\n";
    return 0;
}

int cmd_bond_order(const ModelOpts& model, double theta, int m,
                   std::vector<int> periods, const std::string& prefix) {
    const auto cm = model.matrix();
    const int n_up = m + cm.n_spins / 2;
    const auto states = ground_multiplet(cm, n_up, theta, model.solver());
    SectorBasis basis(cm.n_spins, n_up);
    if (periods.empty()) periods = {2};
    std::vector<std::vector<double>> rows;
    for (const int p : periods) {
        const auto result =
            bond_order(basis, states, p, model.boundary());
        rows.push_back({static_cast<double>(p), result.order.real(),
                        result.order.imag(), std::abs(result.order)});
    }
    write_csv(prefix + ".csv", {"p", "ReOp", "ImOp", "AbsOp"}, rows);
    write_manifest(prefix, "bond-order", model.echo(),
                   {{"theta", theta}, {"m", m}, {"csv", prefix + ".csv"}});
    std::cout << "wrote " << prefix << ".csv\n";
    return 0;
}

int cmd_berry(const ModelOpts& model, double theta, int m, int d,
              const std::string& prefix) {
    const auto cm = model.matrix();
    const int n_up = m + cm.n_spins / 2;
    BerryOptions options;
    options.solver = model.solver();
    const auto intra =
        berry_phase_adaptive(cm, n_up, theta, 0, 1, d, options);
    const auto inter =
        berry_phase_adaptive(cm, n_up, theta, 1, 2, d, options);
    const SptClass spt = classify_spt(intra.gamma, inter.gamma);
    const std::string label = spt == SptClass::Trivial      ? "trivial"
                              : spt == SptClass::Nontrivial ? "nontrivial"
                                                            : "unquantized";
    json results = {
        {"d", d},
        {"gamma_intra", intra.gamma},
        {"gamma_inter", inter.gamma},
        {"k_used", {intra.k_used, inter.k_used}},
        {"min_gap", {intra.min_gap, inter.min_gap}},
        {"quantized", intra.quantized && inter.quantized},
        {"classification", label}};
    write_manifest(prefix, "berry", model.echo(), results);
    std::printf("gamma_intra %.12e\ngamma_inter %.12e\nclass %s\n",
                intra.gamma, inter.gamma, label.c_str());
    return 0;
}

int cmd_adiabatic(const ModelOpts& model, int n_up,
                  const std::string& schedule_name,
                  std::vector<double> times, double gamma,
                  const std::string& prefix) {
    const auto cm = model.matrix();
    auto basis = std::make_shared<const SectorBasis>(cm.n_spins, n_up);
    const auto h = build_sector_hamiltonian(cm, basis, Anisotropy{1.0, 1.0});
    const ScheduleKind kind = schedule_name == "uniform"
                                  ? ScheduleKind::Uniform
                              : schedule_name == "hs"
                                  ? ScheduleKind::HS
                                  : ScheduleKind::MinMatrixElement;
    if (times.empty()) times = {10.0, 100.0, 1000.0};
    std::vector<std::vector<double>> rows;
    for (const double total_time : times) {
        const auto sched = schedule_from_gap(h, simple_z_then_xy(), kind,
                                             total_time, 10, 200,
                                             model.solver());
        const auto run = evolve_pure(h, sched);
        const double f_gamma =
            std::exp(-gamma * n_up * total_time) * run.fidelity;
        rows.push_back({total_time, run.infidelity, f_gamma});
    }
    write_csv(prefix + ".csv", {"T", "infidelity", "F_gamma"}, rows);
    write_manifest(prefix, "adiabatic", model.echo(),
                   {{"n_up", n_up},
                    {"schedule", schedule_name},
                    {"gamma", gamma},
                    {"csv", prefix + ".csv"}});
    std::cout << "wrote " << prefix << ".csv\n";
    return 0;
}

int cmd_exact(const std::string& kind, int n, int m, double theta, double mu,
              double delta_eff, int r_max, const std::string& prefix) {
    json results;
    if (kind == "nn-gaps") {
        const auto magnon = magnon_gap_nn(theta, mu);
        const auto spinon = spinon_gap_nn(theta, mu);
        results = {{"magnon_gap", magnon.value},
                   {"spinon_gap", spinon.value},
                   {"spinon_perturbative_warning",
                    spinon.perturbative_warning}};
    } else if (kind == "dicke") {
        const auto ground = dicke_ground_lbg(n, theta, mu);
        results = {{"s", ground.s}, {"m", ground.m}, {"E", ground.energy}};
    } else if (kind == "ubg") {
        const auto ground = ubg_infinite_ground(n, m, theta, mu);
        results = {{"E", ground.energy},
                   {"s_a", ground.s_a},
                   {"s_b", ground.s_b},
                   {"zz_cross", ground.zz_cross},
                   {"xx_cross", ground.xx_cross},
                   {"zz_same", ground.zz_same},
                   {"xx_same", ground.xx_same},
                   {"rule_mismatch", ground.rule_mismatch}};
    } else if (kind == "xx-thermo") {
        const FreeFermionSolution sol(delta_eff, mu);
        std::vector<std::vector<double>> rows;
        const int base = 0;
        for (int r = 1; r <= r_max; ++r)
            rows.push_back({static_cast<double>(r), sol.zz(base, base + r),
                            sol.xx(base, base + r)});
        write_csv(prefix + ".csv", {"r", "zz", "xx"}, rows);
        results = {{"k0", sol.fermi_point()},
                   {"m_per_spin", sol.m_per_spin()},
                   {"O2", sol.dimer_order()},
                   {"csv", prefix + ".csv"}};
    } else if (kind == "xx-finite") {
        const auto sol = dimerized_xx_finite(n, delta_eff);
        const int n_up = m + n / 2;
        const auto corr = sol.correlation_matrix(n_up);
        std::vector<std::vector<double>> rows;
        for (int r = 1; r <= r_max && n / 2 + r < n; ++r)
            rows.push_back({static_cast<double>(r),
                            sol.zz(corr, n / 2, n / 2 + r),
                            sol.xx(corr, n / 2, n / 2 + r)});
        write_csv(prefix + ".csv", {"r", "zz", "xx"}, rows);
        results = {{"sector_energy", sol.sector_energy(n_up)},
                   {"csv", prefix + ".csv"}};
    } else {
        throw CLI::ValidationError("model", "unknown exact model " + kind);
    }
    write_manifest(prefix, "exact/" + kind,
                   {{"model", kind},
                    {"n", n},
                    {"m", m},
                    {"theta", theta},
                    {"mu", mu},
                    {"dimerization", delta_eff}},
                   results);
    std::cout << results.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bandgap-mediated XXZ spin-chain toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key = value configuration file");
    app.allow_config_extras(false);

    ModelOpts model;
    std::string prefix = "wqed_out";
    std::string theta_text = "0.25pi";
    std::string theta_min_text = "-1pi", theta_max_text = "1pi";
    double mu = 0.0, mu_min = 0.0, mu_max = 3.0, gamma = 0.0,
           delta_eff = 0.0;
    int theta_steps = 32, mu_steps = 32, m = 0, r_max = 0, d = 1, n_up = 0;
    std::vector<int> periods;
    std::vector<double> times;
    std::string schedule_name = "min-matrix-element", exact_model = "nn-gaps";

    const auto add_common = [&](CLI::App* cmd) {
        model.attach(cmd);
        cmd->add_option("-o,--output", prefix, "output file prefix");
    };

    auto* couplings = app.add_subcommand("couplings", "coupling matrix");
    add_common(couplings);

    auto* phase = app.add_subcommand("phase-diagram",
                                     "magnetization over a (theta, mu) grid");
    add_common(phase);
    phase->add_option("--theta-min", theta_min_text);
    phase->add_option("--theta-max", theta_max_text);
    phase->add_option("--theta-grid", theta_steps, "theta nodes");
    phase->add_option("--mu-min", mu_min);
    phase->add_option("--mu-max", mu_max);
    phase->add_option("--mu-grid", mu_steps, "mu nodes");

    auto* mag = app.add_subcommand("mag-curve", "m(mu) at fixed theta");
    add_common(mag);
    mag->add_option("--theta", theta_text, "angle, e.g. 0.25pi");
    mag->add_option("--mu-min", mu_min);
    mag->add_option("--mu-max", mu_max);
    mag->add_option("--mu-grid", mu_steps);

    auto* corr = app.add_subcommand("correlations",
                                    "connected correlation profile");
    add_common(corr);
    corr->add_option("--theta", theta_text);
    corr->add_option("--m", m, "magnetization sector");
    corr->add_option("--r-max", r_max, "profile length (0: to chain end)");

    auto* bond = app.add_subcommand("bond-order", "bond-order parameters");
    add_common(bond);
    bond->add_option("--theta", theta_text);
    bond->add_option("--m", m);
    bond->add_option("--period", periods, "periods p");

    auto* berry = app.add_subcommand("berry", "many-body Berry phases");
    add_common(berry);
    berry->add_option("--theta", theta_text);
    berry->add_option("--m", m);
    berry->add_option("--multiplet", d, "ground-multiplet dimension");

    auto* adiabatic = app.add_subcommand("adiabatic",
                                         "state-preparation protocol");
    add_common(adiabatic);
    adiabatic->add_option("--n-up", n_up, "target excitation count");
    adiabatic
        ->add_option("--schedule", schedule_name,
                     "uniform, hs or min-matrix-element")
        ->check(CLI::IsMember({"uniform", "hs", "min-matrix-element"}));
    adiabatic->add_option("--times", times, "total times T");
    adiabatic->add_option("--gamma", gamma, "loss rate");

    auto* exact = app.add_subcommand("exact", "closed-form reference models");
    exact
        ->add_option("--model", exact_model,
                     "nn-gaps, dicke, ubg, xx-thermo, xx-finite")
        ->check(CLI::IsMember(
            {"nn-gaps", "dicke", "ubg", "xx-thermo", "xx-finite"}));
    exact->add_option("-n,--n", model.n);
    exact->add_option("--m", m);
    exact->add_option("--theta", theta_text);
    exact->add_option("--mu", mu);
    exact->add_option("--dimerization", delta_eff);
    exact->add_option("--r-max", r_max);
    exact->add_option("-o,--output", prefix);

    CLI11_PARSE(app, argc, argv);

    try {
        const double theta = parse_angle(theta_text);
        if (couplings->parsed()) return cmd_couplings(model, prefix);
        if (phase->parsed())
            return cmd_phase_diagram(model, parse_angle(theta_min_text),
                                     parse_angle(theta_max_text), theta_steps,
                                     mu_min, mu_max, mu_steps, prefix);
        if (mag->parsed())
            return cmd_mag_curve(model, theta, mu_min, mu_max, mu_steps,
                                 prefix);
        if (corr->parsed())
            return cmd_correlations(model, theta, m, r_max, prefix);
        if (bond->parsed())
            return cmd_bond_order(model, theta, m, periods, prefix);
        if (berry->parsed()) return cmd_berry(model, theta, m, d, prefix);
        if (adiabatic->parsed())
            return cmd_adiabatic(model, n_up, schedule_name, times, gamma,
                                 prefix);
        if (exact->parsed())
            return cmd_exact(exact_model, model.n, m, theta, mu, delta_eff,
                             r_max == 0 ? 10 : r_max, prefix);
    } catch (const std::exception& error) {
        json report = {{"error", error.what()}};
        std::cerr << report.dump() << "\n";
        return 1;
    }
    return 0;
}
