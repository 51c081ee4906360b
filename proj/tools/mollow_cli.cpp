// Command-line front end: spectrum | dispersion | beat | mc-validate |
// sweep | solve | figures. Exit codes: 0 ok, 2 usage/config, 3 numeric.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mollow/mollow.hpp"

namespace fs = std::filesystem;
using mollow::io::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 2;
constexpr int exit_numeric = 3;

struct Globals {
    std::string config;
    std::string out;
    bool quiet = false;
};

class Manifest {
public:
    Manifest(std::string command, const mollow::ModelParams& p)
        : m_start(std::chrono::steady_clock::now())
    {
        m_doc["command"] = std::move(command);
        m_doc["tool_version"] = mollow::version;
        m_doc["params"] = mollow::io::params_to_json(p);
        m_doc["outputs"] = json::array();
        m_doc["warnings"] = 0;
    }

    void add_output(const std::string& path) { m_doc["outputs"].push_back(path); }
    void set(const std::string& key, json value) { m_doc[key] = std::move(value); }
    void warn(int count) { m_doc["warnings"] = m_doc["warnings"].get<int>() + count; }

    void write(const std::string& path)
    {
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - m_start).count();
        m_doc["timing"] = json{{"duration_s", secs}};
        std::ofstream os(path);
        os << m_doc.dump(2) << '\n';
        if (!os)
            throw std::runtime_error("cannot write manifest '" + path + "'");
    }

private:
    std::chrono::steady_clock::time_point m_start;
    json m_doc;
};

std::string manifest_path(const std::string& out) { return out + ".manifest.json"; }

template <typename Writer>
void write_file(const std::string& path, Writer&& writer)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot open output '" + path + "'");
    writer(os);
    if (!os)
        throw std::runtime_error("write failed for '" + path + "'");
}

void require_out(const Globals& g, const char* cmd)
{
    if (g.out.empty())
        throw mollow::Error(mollow::ErrorKind::ConfigError,
                            std::string(cmd) + " needs --out PATH");
}

mollow::ModelParams load(const Globals& g)
{
    if (g.config.empty())
        throw mollow::Error(mollow::ErrorKind::ConfigError, "--config PATH is required");
    return mollow::io::load_config(g.config);
}

void note(const Globals& g, const std::string& msg)
{
    if (!g.quiet)
        std::cerr << msg << '\n';
}

std::vector<double> detuning_grid(const mollow::ModelParams& p, std::optional<double> lo,
                                  std::optional<double> hi, std::size_t points)
{
    const double half = 2.0 * p.omega_e() + 5.0;
    return mollow::numerics::linspace(lo.value_or(-half), hi.value_or(half), points);
}

// ---------------------------------------------------------------------------

struct SpectrumArgs {
    std::optional<double> delta_min, delta_max;
    std::size_t points = 4001;
    bool require_triplet = false;
};

int cmd_spectrum(const Globals& g, const SpectrumArgs& a)
{
    require_out(g, "spectrum");
    const auto p = load(g);
    const auto grid = detuning_grid(p, a.delta_min, a.delta_max, a.points);
    Manifest m("spectrum", p);

    std::optional<mollow::TripletPeaks> peaks;
    try {
        peaks = mollow::find_triplet_peaks(p);
    } catch (const mollow::Error& e) {
        if (a.require_triplet)
            throw;
        note(g, std::string("warning: ") + e.what());
        m.warn(1);
    }
    if (peaks) {
        m.set("result", json{{"triplet_centers", peaks->centers},
                             {"triplet_heights", peaks->heights},
                             {"gamma_center", peaks->linewidths.center},
                             {"gamma_sideband", peaks->linewidths.sideband},
                             {"off_resonant", peaks->off_resonant}});
    } else {
        m.set("result", json{{"triplet_centers", nullptr},
                             {"gamma_center", mollow::resonant_linewidths(p).center},
                             {"gamma_sideband", mollow::resonant_linewidths(p).sideband}});
    }

    const auto samples = mollow::sample_spectrum(grid, p);
    write_file(g.out, [&](std::ostream& os) { mollow::io::write_spectrum_csv(os, samples); });
    m.add_output(g.out);
    m.write(manifest_path(g.out));
    return exit_ok;
}

struct DispersionArgs {
    std::optional<double> delta_min, delta_max;
    std::size_t points = 4001;
    std::optional<double> fd_step;
};

int cmd_dispersion(const Globals& g, const DispersionArgs& a)
{
    require_out(g, "dispersion");
    const auto p = load(g);
    const auto grid = detuning_grid(p, a.delta_min, a.delta_max, a.points);
    const double h = a.fd_step.value_or(mollow::default_fd_step(p));
    if (!(h > 0.0))
        throw mollow::Error(mollow::ErrorKind::InvalidGrid, "--fd-step must be > 0");

    const auto pts = mollow::sample_dispersion(grid, p, h);
    const auto phase = mollow::evaluate_phase(p);
    int evanescent_rows = 0;
    for (const auto& pt : pts)
        evanescent_rows += pt.n ? 0 : 1;

    Manifest m("dispersion", p);
    json result = mollow::io::phase_to_json(phase);
    result["evanescent_rows"] = evanescent_rows;
    result["in_operating_window"] = mollow::in_operating_window(phase);
    m.set("result", result);
    if (evanescent_rows > 0) {
        note(g, "warning: " + std::to_string(evanescent_rows) + " evanescent rows");
        m.warn(evanescent_rows);
    }
    if (phase.evanescent) {
        note(g, "warning: sideband index is imaginary; phase undefined");
        m.warn(1);
    } else if (phase.n_plus >= 2.0) {
        note(g, "warning: upper sideband index >= 2");
        m.warn(1);
    }

    write_file(g.out, [&](std::ostream& os) { mollow::io::write_dispersion_csv(os, pts); });
    m.add_output(g.out);
    m.write(manifest_path(g.out));
    return exit_ok;
}

struct BeatArgs {
    std::optional<double> tau_max;
    std::size_t points = 2000;
    std::optional<double> phi_override;
};

int cmd_beat(const Globals& g, const BeatArgs& a)
{
    require_out(g, "beat");
    const auto p = load(g);
    const double phi = a.phi_override ? *a.phi_override : mollow::compute_phase(p).phi;
    const auto bp = mollow::BeatParams::from_model(p, phi);
    const double tau_max = a.tau_max.value_or(6.0 / std::min(p.gamma_g, p.gamma2));
    const auto tr = mollow::sample_trace(bp, tau_max, a.points);

    Manifest m("beat", p);
    json result = mollow::io::trace_metadata(bp, tr);
    result["character"] = to_string(mollow::center_metrics(bp).character);
    result["phi_source"] = a.phi_override ? "override" : "dispersion";
    m.set("result", result);

    write_file(g.out, [&](std::ostream& os) { mollow::io::write_trace_csv(os, tr); });
    m.add_output(g.out);
    m.write(manifest_path(g.out));
    return exit_ok;
}

struct McArgs {
    std::size_t n = 1000000;
    std::uint64_t seed = 1;
    std::optional<double> tau_max;
    std::optional<double> phi_override;
};

int cmd_mc_validate(const Globals& g, const McArgs& a)
{
    const auto p = load(g);
    const double phi = a.phi_override ? *a.phi_override : mollow::compute_phase(p).phi;
    const auto bp = mollow::BeatParams::from_model(p, phi);
    const double tau_max = a.tau_max.value_or(mollow::default_tau_max(bp));
    const auto report = mollow::validate(bp, a.n, a.seed, tau_max);
    const std::string text = mollow::io::report_to_json(report).dump(2) + "\n";

    if (g.out.empty()) {
        std::cout << text;
        return exit_ok;
    }
    write_file(g.out, [&](std::ostream& os) { os << text; });
    Manifest m("mc-validate", p);
    m.set("result", json{{"phi", phi}, {"omega_e", bp.omega_e}});
    m.add_output(g.out);
    m.write(manifest_path(g.out));
    return exit_ok;
}

struct SweepArgs {
    std::string axis;
    double min = 0.0;
    double max = 1.0;
    std::size_t points = 101;
    bool log = false;
    bool no_lock_g3 = false;
};

int cmd_sweep(const Globals& g, const SweepArgs& a)
{
    require_out(g, "sweep");
    const auto p = load(g);
    const auto axis = mollow::parse_axis(a.axis);
    std::vector<double> values;
    if (a.log) {
        if (!(a.min > 0.0))
            throw mollow::Error(mollow::ErrorKind::InvalidGrid, "--log needs --min > 0");
        for (double e : mollow::numerics::linspace(std::log10(a.min), std::log10(a.max), a.points))
            values.push_back(std::pow(10.0, e));
        values.front() = a.min;
        values.back() = a.max;
    } else {
        values = mollow::numerics::linspace(a.min, a.max, a.points);
    }
    mollow::SweepOptions opts;
    opts.lock_g3_to_density = !a.no_lock_g3;
    const auto r = mollow::sweep_visibility(p, axis, values, opts);

    int masked = 0;
    for (bool b : r.evanescent_mask)
        masked += b ? 1 : 0;
    Manifest m("sweep", p);
    m.set("result", json{{"axis", r.axis_name}, {"points", values.size()}, {"evanescent", masked}});
    if (masked > 0)
        m.warn(masked);

    write_file(g.out, [&](std::ostream& os) { mollow::io::write_sweep_csv(os, r); });
    m.add_output(g.out);
    m.write(manifest_path(g.out));
    return exit_ok;
}

struct SolveArgs {
    double target_phi = 0.0;
    std::string target;
    std::vector<double> bracket;
};

int cmd_solve(const Globals& g, const SolveArgs& a)
{
    const auto p = load(g);
    json result{{"target_phi", a.target_phi}, {"for", a.target}};
    if (a.target == "length") {
        const double beta = mollow::solve_length_for_phase(p, a.target_phi);
        auto q = mollow::with_axis_value(p, mollow::SweepAxis::length_param, beta);
        result["length_param"] = beta;
        result["phi"] = mollow::compute_phase(q).phi;
    } else {
        if (a.bracket.size() != 2)
            throw mollow::Error(mollow::ErrorKind::ConfigError, "--bracket needs LO HI");
        const auto sol = mollow::solve_pump_for_phase(p, a.target_phi, a.bracket[0], a.bracket[1]);
        result["omega_rabi"] = sol.omega_rabi;
        result["phi"] = sol.phi;
        result["iterations"] = sol.iterations;
    }
    const std::string text = result.dump(2) + "\n";
    if (g.out.empty()) {
        std::cout << text;
        return exit_ok;
    }
    write_file(g.out, [&](std::ostream& os) { os << text; });
    Manifest m("solve", p);
    m.set("result", result);
    m.add_output(g.out);
    m.write(manifest_path(g.out));
    return exit_ok;
}

struct FiguresArgs {
    std::string kind = "all";
    double weak = 5.0;
    double strong = 10.0;
    std::size_t points = 4001;
    std::size_t trace_points = 2000;
    std::optional<double> tau_max;
};

int cmd_figures(const Globals& g, const FiguresArgs& a)
{
    require_out(g, "figures");
    const auto p = load(g);
    fs::create_directories(g.out);
    const fs::path dir(g.out);

    std::vector<mollow::FigureKind> kinds;
    if (a.kind == "all")
        kinds = {mollow::FigureKind::fig1c, mollow::FigureKind::fig1d, mollow::FigureKind::fig2};
    else if (a.kind == "fig1c")
        kinds = {mollow::FigureKind::fig1c};
    else if (a.kind == "fig1d")
        kinds = {mollow::FigureKind::fig1d};
    else if (a.kind == "fig2")
        kinds = {mollow::FigureKind::fig2};
    else
        throw mollow::Error(mollow::ErrorKind::ConfigError, "unknown figure kind '" + a.kind + "'");

    mollow::FigureOptions opts;
    opts.spectrum_points = a.points;
    opts.weak_pump = a.weak;
    opts.strong_pump = a.strong;
    opts.trace_points = a.trace_points;
    opts.tau_max = a.tau_max.value_or(0.0);

    Manifest m("figures", p);
    json result = json::object();
    for (auto kind : kinds) {
        const auto data = mollow::figure_datasets(kind, p, opts);
        switch (kind) {
        case mollow::FigureKind::fig1c: {
            const auto path = (dir / "fig1c_spectrum.csv").string();
            write_file(path, [&](std::ostream& os) { mollow::io::write_spectrum_csv(os, data.spectrum); });
            m.add_output(path);
            break;
        }
        case mollow::FigureKind::fig1d: {
            const auto path = (dir / "fig1d_dispersion.csv").string();
            write_file(path, [&](std::ostream& os) { mollow::io::write_dispersion_csv(os, data.dispersion); });
            m.add_output(path);
            result["fig1d_phase"] = mollow::io::phase_to_json(data.phase);
            break;
        }
        case mollow::FigureKind::fig2: {
            const char* names[] = {"weak", "strong"};
            json traces = json::array();
            for (std::size_t k = 0; k < data.traces.size(); ++k) {
                const auto path = (dir / ("fig2_" + std::string(names[k]) + ".csv")).string();
                write_file(path, [&](std::ostream& os) { mollow::io::write_trace_csv(os, data.traces[k]); });
                m.add_output(path);
                const auto& q = data.trace_params[k];
                const auto bp = mollow::BeatParams::from_model(q, mollow::compute_phase(q).phi);
                json meta = mollow::io::trace_metadata(bp, data.traces[k]);
                meta["omega_rabi"] = q.omega_rabi;
                traces.push_back(meta);
            }
            result["fig2_traces"] = traces;
            break;
        }
        }
    }
    m.set("result", result);
    m.write((dir / "manifest.json").string());
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Two-photon beating from a resonantly driven two-level medium"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(mollow::version));

    Globals g;
    app.add_option("--config", g.config, "JSON parameter file")->check(CLI::ExistingFile);
    app.add_option("--out", g.out, "Output file (directory for figures)");
    app.add_flag("--quiet", g.quiet, "Suppress warnings on stderr");
    auto global = [&](CLI::App* sub) {
        sub->fallthrough();
        return sub;
    };

    SpectrumArgs spectrum;
    auto* sp = global(app.add_subcommand("spectrum", "Susceptibility spectrum CSV"));
    sp->add_option("--delta-min", spectrum.delta_min);
    sp->add_option("--delta-max", spectrum.delta_max);
    sp->add_option("--points", spectrum.points)->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
    sp->add_flag("--require-triplet", spectrum.require_triplet,
                 "Fail (exit 3) unless three |chi3| maxima are resolved");

    DispersionArgs disp;
    auto* dp = global(app.add_subcommand("dispersion", "Refractive index / group index CSV"));
    dp->add_option("--delta-min", disp.delta_min);
    dp->add_option("--delta-max", disp.delta_max);
    dp->add_option("--points", disp.points)->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
    dp->add_option("--fd-step", disp.fd_step);

    BeatArgs beat;
    auto* bt = global(app.add_subcommand("beat", "Coincidence trace CSV"));
    bt->add_option("--tau-max", beat.tau_max);
    bt->add_option("--points", beat.points)->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
    bt->add_option("--phi-override", beat.phi_override);

    McArgs mc;
    auto* mv = global(app.add_subcommand("mc-validate", "Monte Carlo check of the coincidence density"));
    mv->add_option("--n", mc.n)->check(CLI::Range(std::size_t{1}, std::size_t{1000000000}));
    mv->add_option("--seed", mc.seed);
    mv->add_option("--tau-max", mc.tau_max);
    mv->add_option("--phi-override", mc.phi_override);

    SweepArgs sw;
    auto* swp = global(app.add_subcommand("sweep", "Center visibility versus one parameter"));
    swp->add_option("--axis", sw.axis)->required();
    swp->add_option("--min", sw.min)->required();
    swp->add_option("--max", sw.max)->required();
    swp->add_option("--points", sw.points)->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
    swp->add_flag("--log", sw.log);
    swp->add_flag("--no-lock-g3", sw.no_lock_g3, "Keep g3 fixed in density (g1) sweeps");

    SolveArgs sv;
    auto* slv = global(app.add_subcommand("solve", "Length or pump giving a target phase"));
    slv->add_option("--target-phi", sv.target_phi)->required();
    slv->add_option("--for", sv.target)->required()->check(CLI::IsMember({"length", "pump"}));
    slv->add_option("--bracket", sv.bracket)->expected(2);

    FiguresArgs fig;
    auto* fg = global(app.add_subcommand("figures", "Figure datasets into --out DIR"));
    fg->add_option("--kind", fig.kind)->check(CLI::IsMember({"fig1c", "fig1d", "fig2", "all"}));
    fg->add_option("--weak", fig.weak);
    fg->add_option("--strong", fig.strong);
    fg->add_option("--points", fig.points)->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
    fg->add_option("--trace-points", fig.trace_points)->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
    fg->add_option("--tau-max", fig.tau_max);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*sp)
            return cmd_spectrum(g, spectrum);
        if (*dp)
            return cmd_dispersion(g, disp);
        if (*bt)
            return cmd_beat(g, beat);
        if (*mv)
            return cmd_mc_validate(g, mc);
        if (*swp)
            return cmd_sweep(g, sw);
        if (*slv)
            return cmd_solve(g, sv);
        if (*fg)
            return cmd_figures(g, fig);
    } catch (const mollow::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return mollow::is_usage_error(e.kind()) ? exit_usage : exit_numeric;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_numeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return exit_usage;
}
