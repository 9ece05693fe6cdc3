// ionex command-line driver.
//
// Subcommands:
//   ground        variational ground states + wavefunction files
//   limits        high-energy ratio limits A_n
//   coefficients  1/omega coefficients, partitioned
//   ratios        R_n(omega) curves on an omega grid
//   zscan         1/Z systematics of the scaled limits
//
// Exit codes: 0 success, 1 usage or I/O error, 2 non-convergence,
// 3 domain error (closed channel / guarded omega range).

#include <cstdio>
#include <filesystem>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "ionex/ionex.hpp"

namespace fs = std::filesystem;
using ionex::format_sig6;
using ionex::Table;

namespace {

struct Options {
    std::vector<double> z_list = {2.0};
    int nmax = 6;
    int lmax = 3;
    int degree = 6;
    double nu = 1.0;
    double alpha = 0.0;  // 0 = use the variational optimum
    double omega_min = 0.0, omega_max = 0.0;
    int omega_points = 24;
    std::string omega_scale = "log";
    std::string kappa = "c1";
    std::string out;
    std::string format = "csv";
    bool paper_style = false;
    bool allow_low_omega = false;
};

std::string z_tag(double z) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", z);
    std::string s = buf;
    for (char& ch : s)
        if (ch == '.') ch = 'p';
    return s;
}

struct RawFile {
    std::string name;
    std::string kind;
    std::string content;
};

struct Emission {
    std::vector<std::pair<std::string, Table>> tables;  // basename (no extension), table
    std::vector<RawFile> raw;
};

ionex::Wavefunction solve_state(const Options& o, double z) {
    const auto terms = ionex::basis_terms(o.degree);
    if (o.alpha > 0.0) return ionex::solve_ground(terms, o.alpha, z);
    return ionex::optimize_alpha(terms, z, 1e-6);
}

std::vector<double> make_grid(const Options& o, double z) {
    if (o.omega_min > 0.0)
        return ionex::omega_grid(o.omega_min, o.omega_max, o.omega_points, o.omega_scale == "log");
    return ionex::default_omega_grid(z);
}

// ---------------------------------------------------------------- commands

int cmd_ground(const Options& o, Emission& em) {
    Table t;
    t.name = "ground_summary";
    t.columns = {"Z", "degree", "terms", "alpha", "energy", "norm_check", "kato_cusp"};
    t.units = {"-", "-", "-", "1/a0", "ha", "-", "1/a0"};
    int failures = 0;
    for (const double z : o.z_list) {
        try {
            const ionex::Wavefunction wf = solve_state(o, z);
            t.add_row({format_sig6(z), std::to_string(o.degree), std::to_string(wf.terms.size()),
                       format_sig6(wf.alpha), format_sig6(wf.energy), format_sig6(wf.norm),
                       format_sig6(ionex::cusp_diagnostic(wf))});
            std::ostringstream os;
            ionex::save_wavefunction(wf, os);
            em.raw.push_back({"wavefunction_z" + z_tag(z) + ".dat", "wavefunction", os.str()});
        } catch (const ionex::NonConvergenceError& e) {
            std::fprintf(stderr, "ionex: ground: Z=%g did not converge: %s\n", z, e.what());
            ++failures;
        }
    }
    em.tables.push_back({"ground_summary", std::move(t)});
    return failures > 0 ? 2 : 0;
}

int cmd_limits(const Options& o, Emission& em) {
    Table t;
    t.name = "limits";
    t.columns = {"Z", "n", "A_n", "100_Z2_A_n", "n3_A_n"};
    t.units = {"-", "-", "-", "-", "-"};
    for (const double z : o.z_list) {
        const ionex::Wavefunction wf = solve_state(o, z);
        const auto elements = ionex::compute_elements(wf, o.nmax, 0, o.nu);
        for (const auto& row : ionex::high_energy_limits(elements)) {
            const double n3 = static_cast<double>(row.n) * row.n * row.n;
            t.add_row({format_sig6(z), std::to_string(row.n), format_sig6(row.A),
                       format_sig6(100.0 * z * z * row.A), format_sig6(n3 * row.A)});
        }
    }
    em.tables.push_back({"limits", std::move(t)});
    return 0;
}

int cmd_coefficients(const Options& o, Emission& em) {
    const ionex::Kappa kappa = ionex::kappa_from_string(o.kappa);
    const int ltop = std::min(o.nmax - 1, o.lmax);
    Table t;
    t.name = "coefficients";
    t.columns = {"Z",        "n",        "kin_const", "kin_mu", "isi_const",
                 "fsi_const", "b0_const", "b0_mu"};
    t.units = {"-", "-", "ha", "ha", "ha", "ha", "ha", "ha"};
    for (int l = 1; l <= ltop; ++l) {
        t.columns.push_back("B_" + std::to_string(l));
        t.units.push_back("ha");
    }
    t.columns.insert(t.columns.end(), {"B_total_const", "B_total_mu"});
    t.units.insert(t.units.end(), {"ha", "ha"});

    for (const double z : o.z_list) {
        const ionex::Wavefunction wf = solve_state(o, z);
        const auto elements = ionex::compute_elements(wf, o.nmax, o.lmax, o.nu);
        for (const auto& row : ionex::b_coefficients(elements, z, kappa)) {
            const auto parts = ionex::decompose_b0(elements, z, row.n);
            std::vector<std::string> cells = {
                format_sig6(z),
                std::to_string(row.n),
                format_sig6(parts.kinematical),
                format_sig6(-parts.kinematical),
                format_sig6(parts.isi),
                format_sig6(parts.fsi),
                format_sig6(row.d),
                format_sig6(row.f)};
            for (int l = 1; l <= ltop; ++l)
                cells.push_back(static_cast<std::size_t>(l) <= row.B.size()
                                    ? format_sig6(row.B[l - 1])
                                    : std::string());
            cells.push_back(format_sig6(row.b_total_const));
            cells.push_back(format_sig6(row.b_total_mu));
            t.add_row(std::move(cells));
        }
    }
    em.tables.push_back({"coefficients", std::move(t)});
    return 0;
}

int cmd_ratios(const Options& o, Emission& em) {
    const ionex::Kappa kappa = ionex::kappa_from_string(o.kappa);
    const int ltop = std::min(o.nmax - 1, o.lmax);
    for (const double z : o.z_list) {
        const ionex::Wavefunction wf = solve_state(o, z);
        const auto elements = ionex::compute_elements(wf, o.nmax, o.lmax, o.nu);
        const auto rows = ionex::b_coefficients(elements, z, kappa);
        const auto grid = make_grid(o, z);

        Table t;
        t.name = "ratios_z" + z_tag(z);
        t.columns = {"omega", "omega_ha", "mu", "n", "in_domain", "R_total", "R_s"};
        t.units = {"eV", "ha", "-", "-", "-", "-", "-"};
        for (int l = 1; l <= ltop; ++l) {
            t.columns.push_back("R_" + std::to_string(l));
            t.units.push_back("-");
        }
        t.columns.push_back("X_s");
        t.units.push_back("-");
        for (int l = 1; l <= ltop; ++l) {
            t.columns.push_back("X_" + std::to_string(l));
            t.units.push_back("-");
        }
        t.columns.push_back("R_su");
        t.units.push_back("-");

        for (const auto& row : rows) {
            for (const auto& pt : ionex::ratio_curves(row, z, grid, o.allow_low_omega)) {
                std::vector<std::string> cells = {format_sig6(pt.omega_ev),
                                                  format_sig6(pt.omega_hartree),
                                                  format_sig6(pt.mu),
                                                  std::to_string(pt.n),
                                                  pt.in_domain ? "1" : "0",
                                                  format_sig6(pt.R_total),
                                                  format_sig6(pt.R_s)};
                for (int l = 1; l <= ltop; ++l)
                    cells.push_back(static_cast<std::size_t>(l) <= pt.R_l.size()
                                        ? format_sig6(pt.R_l[l - 1])
                                        : std::string());
                cells.push_back(format_sig6(pt.X[0]));
                for (int l = 1; l <= ltop; ++l)
                    cells.push_back(static_cast<std::size_t>(l) < pt.X.size()
                                        ? format_sig6(pt.X[l])
                                        : std::string());
                cells.push_back(format_sig6(pt.R_su));
                t.add_row(std::move(cells));
            }
        }
        em.tables.push_back({"ratios_z" + z_tag(z), std::move(t)});
    }
    return 0;
}

int cmd_zscan(const Options& o, Emission& em) {
    const ionex::Kappa kappa = ionex::kappa_from_string(o.kappa);
    if (o.z_list.size() < 3)
        throw std::invalid_argument(
            "zscan: need at least 3 distinct charges (--z), e.g. --z 2,3,4,6,10");

    struct PerZ {
        std::vector<ionex::LimitRow> limits;
        std::vector<ionex::BRow> rows;
    };
    std::vector<std::pair<double, PerZ>> per_z;
    for (const double z : o.z_list) {
        const ionex::Wavefunction wf = solve_state(o, z);
        const auto elements = ionex::compute_elements(wf, o.nmax, o.lmax, o.nu);
        per_z.push_back({z, {ionex::high_energy_limits(elements),
                             ionex::b_coefficients(elements, z, kappa)}});
    }

    Table fit_table;
    fit_table.name = "zscan_fit";
    fit_table.columns = {"n",      "a_n",          "b_n",   "rms_residual",
                         "max_rel_residual", "c_ref", "points", "weight_exponent"};
    fit_table.units = {"-", "-", "-", "-", "-", "-", "-", "-"};
    const auto& c_ref = ionex::z_series_reference_c();
    for (int n = 2; n <= o.nmax; ++n) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& [z, d] : per_z) pts.push_back({z, z * z * d.limits[n - 2].A});
        const auto fit = ionex::fit_z_series(pts);
        fit_table.add_row({std::to_string(n), format_sig6(fit.a), format_sig6(fit.b),
                           format_sig6(fit.rms_residual), format_sig6(fit.max_rel_residual),
                           static_cast<std::size_t>(n - 2) < c_ref.size()
                               ? format_sig6(c_ref[n - 2])
                               : std::string(),
                           std::to_string(fit.points), format_sig6(fit.weight_exponent)});
    }
    em.tables.push_back({"zscan_fit", std::move(fit_table)});

    const int ltop = std::min(o.nmax - 1, o.lmax);
    Table scaled_table;
    scaled_table.name = "zscan_scaled";
    scaled_table.columns = {"Z", "n", "r_d0", "r_f0"};
    scaled_table.units = {"-", "-", "-", "-"};
    for (int l = 1; l <= ltop; ++l) {
        scaled_table.columns.push_back("r_" + std::to_string(l));
        scaled_table.units.push_back("-");
    }
    scaled_table.columns.push_back("r_total");
    scaled_table.units.push_back("-");
    for (const auto& [z, d] : per_z) {
        for (const auto& s : ionex::scaled_ratios(d.rows, z)) {
            std::vector<std::string> cells = {format_sig6(z), std::to_string(s.n),
                                              format_sig6(s.r_d0), format_sig6(s.r_f0)};
            for (int l = 1; l <= ltop; ++l)
                cells.push_back(static_cast<std::size_t>(l) <= s.r_l.size()
                                    ? format_sig6(s.r_l[l - 1])
                                    : std::string());
            cells.push_back(format_sig6(s.r_d_total));
            scaled_table.add_row(std::move(cells));
        }
    }
    em.tables.push_back({"zscan_scaled", std::move(scaled_table)});
    return 0;
}

// ---------------------------------------------------------------- emission

nlohmann::ordered_json config_echo(const Options& o, const std::string& command) {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["z"] = o.z_list;
    j["nmax"] = o.nmax;
    j["lmax"] = o.lmax;
    j["degree"] = o.degree;
    j["nu"] = o.nu;
    j["alpha"] = o.alpha > 0.0 ? nlohmann::ordered_json(o.alpha)
                               : nlohmann::ordered_json("variational");
    j["kappa"] = o.kappa;
    if (o.omega_min > 0.0) {
        j["omega"] = {{"min_ev", o.omega_min},
                      {"max_ev", o.omega_max},
                      {"points", o.omega_points},
                      {"scale", o.omega_scale}};
    } else {
        j["omega"] = "default: 300..5000 eV times (Z/2)^2, 24 log points";
    }
    j["allow_low_omega"] = o.allow_low_omega;
    j["format"] = o.format;
    return j;
}

int emit(const Options& o, const std::string& command, const Emission& em, int status) {
    const bool json = o.format == "json";
    if (o.out.empty()) {
        bool first = true;
        for (const auto& [name, table] : em.tables) {
            if (!first) std::printf("\n");
            first = false;
            if (o.paper_style)
                std::fputs(ionex::to_pretty(table).c_str(), stdout);
            else if (json)
                std::printf("%s\n", ionex::to_json(table).dump(2).c_str());
            else
                std::fputs(ionex::to_csv(table).c_str(), stdout);
        }
        if (!em.raw.empty())
            std::fprintf(stderr,
                         "ionex: note: %zu wavefunction file(s) are only written with --out\n",
                         em.raw.size());
        return status;
    }

    fs::create_directories(o.out);
    std::vector<ionex::ManifestEntry> entries;
    const auto write_one = [&](const std::string& name, const std::string& kind,
                               const std::string& content) {
        const std::string path = (fs::path(o.out) / name).string();
        ionex::write_file(path, content);
        entries.push_back({name, kind, ionex::fnv1a64_hex(content), content.size()});
    };
    for (const auto& r : em.raw) write_one(r.name, r.kind, r.content);
    for (const auto& [name, table] : em.tables) {
        const std::string content =
            json ? ionex::to_json(table).dump(2) + "\n" : ionex::to_csv(table);
        write_one(name + (json ? ".json" : ".csv"), "table", content);
    }
    const auto manifest = ionex::manifest_json(command, config_echo(o, command), entries);
    ionex::write_file((fs::path(o.out) / "manifest.json").string(), manifest.dump(2) + "\n");

    std::printf("wrote %zu file(s) + manifest.json to %s\n", entries.size(), o.out.c_str());
    for (const auto& e : entries)
        std::printf("  %-28s %-13s %8zu bytes  fnv1a64 %s\n", e.path.c_str(), e.kind.c_str(),
                    e.bytes, e.digest.c_str());
    if (o.paper_style)
        for (const auto& [name, table] : em.tables) {
            std::printf("\n");
            std::fputs(ionex::to_pretty(table).c_str(), stdout);
        }
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ionex: ratios of photoionization-with-excitation to photoionization "
                 "cross sections for heliumlike ions"};
    app.set_config("--config", "", "Read options from an INI/TOML file");
    Options o;

    CLI::Option* z_option = app.add_option("--z", o.z_list, "Nuclear charges (comma separated)")
                                ->delimiter(',')
                                ->check(CLI::PositiveNumber);
    app.add_option("--nmax", o.nmax, "Highest residual shell n")->check(CLI::Range(2, 12));
    app.add_option("--lmax", o.lmax, "Highest residual angular momentum l")
        ->check(CLI::Range(0, 6));
    app.add_option("--degree", o.degree, "Hylleraas basis degree (i+j+k <= degree)")
        ->check(CLI::Range(0, 10));
    app.add_option("--nu", o.nu, "Continuum normalization scale (results are invariant)")
        ->check(CLI::PositiveNumber);
    app.add_option("--alpha", o.alpha,
                   "Fixed exponential parameter; 0 selects the variational optimum")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--omega-min", o.omega_min, "Grid start, eV (with --omega-max)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--omega-max", o.omega_max, "Grid end, eV")->check(CLI::NonNegativeNumber);
    app.add_option("--omega-points", o.omega_points, "Grid size")->check(CLI::Range(2, 100000));
    app.add_option("--omega-scale", o.omega_scale, "Grid spacing: log or linear")
        ->check(CLI::IsMember({"log", "linear"}));
    app.add_option("--kappa", o.kappa, "p-channel interference convention")
        ->check(CLI::IsMember({"literal", "c1"}));
    app.add_option("--out", o.out, "Output directory (tables + manifest.json)");
    app.add_option("--format", o.format, "Table file format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--paper-style", o.paper_style, "Fixed-width table rendering on stdout");
    app.add_flag("--allow-low-omega", o.allow_low_omega,
                 "Emit rows below the 2 Z^2 hartree validity guard, tagged in_domain=0");

    CLI::App* c_ground =
        app.add_subcommand("ground", "Variational ground states and wavefunction files");
    CLI::App* c_limits = app.add_subcommand("limits", "High-energy ratio limits A_n");
    CLI::App* c_coefficients =
        app.add_subcommand("coefficients", "1/omega coefficients and their partition");
    CLI::App* c_ratios = app.add_subcommand("ratios", "Ratio curves R_n(omega)");
    CLI::App* c_zscan = app.add_subcommand("zscan", "1/Z systematics of the scaled limits");
    for (CLI::App* sub : {c_ground, c_limits, c_coefficients, c_ratios, c_zscan})
        sub->fallthrough();
    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (app.got_subcommand(c_zscan) && z_option->count() == 0)
        o.z_list = {2.0, 3.0, 4.0, 6.0, 10.0};

    if ((o.omega_min > 0.0) != (o.omega_max > 0.0)) {
        std::fprintf(stderr, "ionex: --omega-min and --omega-max must be given together\n");
        return 1;
    }
    if (o.omega_min > 0.0 && !(o.omega_max > o.omega_min)) {
        std::fprintf(stderr, "ionex: --omega-max must exceed --omega-min\n");
        return 1;
    }
    {
        std::set<double> distinct(o.z_list.begin(), o.z_list.end());
        if (distinct.size() != o.z_list.size()) {
            std::fprintf(stderr, "ionex: --z entries must be distinct\n");
            return 1;
        }
    }

    try {
        Emission em;
        int status = 0;
        std::string command;
        if (app.got_subcommand(c_ground)) {
            command = "ground";
            status = cmd_ground(o, em);
        } else if (app.got_subcommand(c_limits)) {
            command = "limits";
            status = cmd_limits(o, em);
        } else if (app.got_subcommand(c_coefficients)) {
            command = "coefficients";
            status = cmd_coefficients(o, em);
        } else if (app.got_subcommand(c_ratios)) {
            command = "ratios";
            status = cmd_ratios(o, em);
        } else {
            command = "zscan";
            status = cmd_zscan(o, em);
        }
        return emit(o, command, em, status);
    } catch (const ionex::NonConvergenceError& e) {
        std::fprintf(stderr, "ionex: non-convergence: %s\n", e.what());
        return 2;
    } catch (const ionex::DomainError& e) {
        std::fprintf(stderr, "ionex: domain error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "ionex: error: %s\n", e.what());
        return 1;
    }
}
