// Command-line front end: evaluates sigma-model actions symbolically and on
// the 2x2 representation, runs Haar-quadrature thermodynamic sweeps, scans the
// action landscape, and searches for the integer relations that govern which
// quantum tori admit unital *-homomorphisms between them.

#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nctorus/clock_shift.hpp"
#include "nctorus/errors.hpp"
#include "nctorus/existence.hpp"
#include "nctorus/ncpoly.hpp"
#include "nctorus/ncpoly_json.hpp"
#include "nctorus/su2.hpp"
#include "nctorus/thermo.hpp"

namespace {

constexpr int exit_usage = 2;
constexpr int exit_consistency = 3;
constexpr int exit_io = 4;
constexpr int schema_version = 1;

// golden-ratio conjugate: a convenient generic irrational in (0,1)
constexpr double default_theta = 0.6180339887498949;

struct Defaults {
    std::array<int, 3> grid{32, 32, 32};
    double r_start = 1.0, r_stop = 3.0;
    int r_count = 20;
    double h_rel = 1e-3;
    int scan_per_axis = 16;
    int refine_starts = 8;
    int relation_n_max = 10;
    std::int64_t relation_c_max = 10, relation_d_max = 10;
    double relation_tol = 1e-9;
};

// shortest-round-trip formatting keeps CSV byte-identical across runs
std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw nctorus::io_error("cannot open output file: " + path);
    return out;
}

void emit_json(const nlohmann::json& j, const std::string& path) {
    if (path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        auto out = open_output(path);
        out << j.dump(2) << "\n";
        if (!out) throw nctorus::io_error("write failed: " + path);
    }
}

int run_action(const std::vector<std::int64_t>& sl2, const std::vector<double>& euler,
               const std::string& morphism_path, double r, double theta,
               const std::string& emit_path) {
    const int specs = int(!sl2.empty()) + int(!euler.empty()) + int(!morphism_path.empty());
    if (specs != 1)
        throw std::invalid_argument("action: give exactly one of --sl2, --euler, --morphism");

    if (!sl2.empty()) {
        const auto [p, q, rr, s] = std::array{sl2[0], sl2[1], sl2[2], sl2[3]};
        if (!nctorus::validate_sl2_morphism(p, q, rr, s))
            throw std::invalid_argument("action: ps - qr must equal 1 for an SL(2,Z) morphism");
        auto phi = nctorus::TorusMorphism::sl2(theta, p, q, rr, s);
        const double value = nctorus::action(phi);
        const std::int64_t sq = p * p + q * q + rr * rr + s * s;
        std::cout << "S(phi) = 4*pi^2*(p^2+q^2+r^2+s^2) = 4*pi^2*" << sq << " = "
                  << fmt(value) << "\n";
        if (!emit_path.empty()) {
            auto j = nctorus::to_json(phi);
            j["schema_version"] = schema_version;
            emit_json(j, emit_path);
        }
        return 0;
    }
    if (!euler.empty()) {
        const double value = nctorus::closed_form_action(euler[0], euler[1], euler[2], r);
        std::cout << "S_P(g) = " << fmt(value) << "\n";
        return 0;
    }
    std::ifstream in(morphism_path);
    if (!in) throw nctorus::io_error("cannot open morphism file: " + morphism_path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("action: bad morphism JSON: ") + e.what());
    }
    auto phi = nctorus::morphism_from_json(j);
    std::cout << "S(phi) = " << fmt(nctorus::action(phi)) << "\n";
    return 0;
}

int run_thermo(const Defaults& def, const std::array<int, 3>& grid_spec, double r_start,
               double r_stop, int count, double h_rel, const std::string& format,
               const std::string& out_path, const std::string& dump_grid_path) {
    if (count < 2) throw std::invalid_argument("thermo: --count must be >= 2");
    if (!(r_start < r_stop))
        throw std::invalid_argument("thermo: r range must satisfy start < stop");
    if (!(h_rel > 0.0)) throw std::invalid_argument("thermo: --h-rel must be positive");
    (void)def;

    auto grid = nctorus::haar_grid(grid_spec[0], grid_spec[1], grid_spec[2]);
    if (!dump_grid_path.empty()) {
        auto out = open_output(dump_grid_path);
        out << "phi,theta,psi,weight\n";
        for (const auto& p : grid)
            out << fmt(p.phi) << "," << fmt(p.theta) << "," << fmt(p.psi) << ","
                << fmt(p.weight) << "\n";
    }
    auto table = nctorus::tabulate_action(grid);

    struct Row {
        double r, Z, E, E_abs, varE_paper, varE_std, Cv, entropy;
    };
    std::vector<Row> rows;
    nctorus::ThermoCurve energy_curve{nctorus::ThermoCurve::Abscissa::r, {}, {}};
    nctorus::ThermoCurve var_std_curve{nctorus::ThermoCurve::Abscissa::r, {}, {}};
    for (int i = 0; i < count; ++i) {
        const double r = r_start + (r_stop - r_start) * i / (count - 1.0);
        const double h = h_rel * r;
        Row row;
        row.r = r;
        row.Z = nctorus::partition(r, table);
        row.E = nctorus::energy(r, table, h);
        row.E_abs = std::abs(row.E);
        row.varE_paper = nctorus::energy_variance(r, table, h);
        row.varE_std = nctorus::energy_variance_standard(r, table, h);
        row.Cv = nctorus::specific_heat(1.0 / r, table, h_rel);
        row.entropy = nctorus::entropy(1.0 / r, table, h_rel);
        rows.push_back(row);
        energy_curve.append(r, row.E);
        var_std_curve.append(r, row.varE_std);
    }
    energy_curve.fit_magnitudes();
    var_std_curve.fit_magnitudes();
    const auto& efit = *energy_curve.fit;
    const auto& vfit = *var_std_curve.fit;

    if (format == "csv") {
        auto write_csv = [&](std::ostream& out) {
            out << "r,Z,E,E_abs,varE_paper,varE_std,Cv,entropy\n";
            for (const auto& w : rows)
                out << fmt(w.r) << "," << fmt(w.Z) << "," << fmt(w.E) << ","
                    << fmt(w.E_abs) << "," << fmt(w.varE_paper) << ","
                    << fmt(w.varE_std) << "," << fmt(w.Cv) << "," << fmt(w.entropy)
                    << "\n";
        };
        if (out_path.empty()) {
            write_csv(std::cout);
        } else {
            auto out = open_output(out_path);
            write_csv(out);
            if (!out) throw nctorus::io_error("write failed: " + out_path);
        }
        std::cerr << "fit |E|       ~ " << fmt(efit.prefactor) << " * r^"
                  << fmt(efit.exponent) << " (rms " << fmt(efit.residual) << ")\n"
                  << "fit |varE_std| ~ " << fmt(vfit.prefactor) << " * r^"
                  << fmt(vfit.exponent) << " (rms " << fmt(vfit.residual) << ")\n";
    } else if (format == "json") {
        nlohmann::json jpoints = nlohmann::json::array();
        for (const auto& w : rows)
            jpoints.push_back({{"r", w.r},
                               {"Z", w.Z},
                               {"E", w.E},
                               {"E_abs", w.E_abs},
                               {"varE_paper", w.varE_paper},
                               {"varE_std", w.varE_std},
                               {"Cv", w.Cv},
                               {"entropy", w.entropy}});
        nlohmann::json j{
            {"schema_version", schema_version},
            {"grid", grid_spec},
            {"h_rel", h_rel},
            {"points", jpoints},
            {"fits",
             {{"energy_abs",
               {{"prefactor", efit.prefactor},
                {"exponent", efit.exponent},
                {"residual", efit.residual}}},
              {"varE_std_abs",
               {{"prefactor", vfit.prefactor},
                {"exponent", vfit.exponent},
                {"residual", vfit.residual}}}}}};
        emit_json(j, out_path);
    } else {
        throw std::invalid_argument("thermo: --format must be csv or json");
    }
    return 0;
}

int run_scan(const std::string& fix, double value, double r, int n1, int n2,
             const std::string& out_path) {
    if (n1 < 2 || n2 < 2) throw std::invalid_argument("scan: counts must be >= 2");
    struct Axis {
        const char* name;
        double lo, hi;
    };
    const Axis axes[3] = {{"phi", 0.0, 2.0 * nctorus::pi},
                          {"theta", 0.0, nctorus::pi},
                          {"psi", 0.0, 4.0 * nctorus::pi}};
    int fixed = fix == "phi" ? 0 : fix == "theta" ? 1 : fix == "psi" ? 2 : -1;
    if (fixed < 0) throw std::invalid_argument("scan: --fix must be phi, theta or psi");
    const int free1 = fixed == 0 ? 1 : 0;
    const int free2 = fixed == 2 ? 1 : 2;

    auto write = [&](std::ostream& out) {
        out << axes[free1].name << "," << axes[free2].name << ",S\n";
        for (int i = 0; i < n1; ++i) {
            const double a1 =
                axes[free1].lo + (axes[free1].hi - axes[free1].lo) * i / (n1 - 1.0);
            for (int j = 0; j < n2; ++j) {
                const double a2 =
                    axes[free2].lo + (axes[free2].hi - axes[free2].lo) * j / (n2 - 1.0);
                double ang[3];
                ang[fixed] = value;
                ang[free1] = a1;
                ang[free2] = a2;
                out << fmt(a1) << "," << fmt(a2) << ","
                    << fmt(nctorus::closed_form_action(ang[0], ang[1], ang[2], r))
                    << "\n";
            }
        }
    };
    if (out_path.empty()) {
        write(std::cout);
    } else {
        auto out = open_output(out_path);
        write(out);
        if (!out) throw nctorus::io_error("write failed: " + out_path);
    }
    return 0;
}

int run_extremize(double r, int scan, int starts, const std::string& out_path) {
    auto ex = nctorus::extremize(r, scan, starts);
    nlohmann::json j{
        {"schema_version", schema_version},
        {"r", r},
        {"min", ex.min_value},
        {"argmin", {{"phi", ex.argmin.phi}, {"theta", ex.argmin.theta}, {"psi", ex.argmin.psi}}},
        {"max", ex.max_value},
        {"argmax", {{"phi", ex.argmax.phi}, {"theta", ex.argmax.theta}, {"psi", ex.argmax.psi}}},
        {"converged", ex.converged}};
    emit_json(j, out_path);
    return 0;
}

int run_existence(double Theta, double theta, int n_max, std::int64_t c_max,
                  std::int64_t d_max, double tol, const std::string& out_path) {
    auto hits = nctorus::relation_search(Theta, theta, n_max, c_max, d_max, tol);
    nlohmann::json jhits = nlohmann::json::array();
    for (const auto& h : hits)
        jhits.push_back({{"n", h.n},
                         {"c", h.c},
                         {"d", h.d},
                         {"residual", h.residual},
                         {"isomorphism_candidate", h.isomorphism_candidate}});
    emit_json({{"schema_version", schema_version}, {"hits", jhits}}, out_path);
    return 0;  // an empty list is a valid answer
}

void print_config(const Defaults& def) {
    nlohmann::json j{{"schema_version", schema_version},
                     {"theta_default", default_theta},
                     {"grid", def.grid},
                     {"r_sweep", {{"start", def.r_start}, {"stop", def.r_stop}, {"count", def.r_count}}},
                     {"h_rel", def.h_rel},
                     {"extremize", {{"scan_per_axis", def.scan_per_axis}, {"refine_starts", def.refine_starts}}},
                     {"existence",
                      {{"n_max", def.relation_n_max},
                       {"c_max", def.relation_c_max},
                       {"d_max", def.relation_d_max},
                       {"tol", def.relation_tol}}},
                     {"exit_codes", {{"success", 0}, {"usage", exit_usage}, {"consistency", exit_consistency}, {"io", exit_io}}}};
    std::cout << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    Defaults def;
    CLI::App app{"noncommutative sigma-model toolkit"};
    app.require_subcommand(1);

    // action
    auto* action_cmd = app.add_subcommand("action", "evaluate the Polyakov action");
    std::vector<std::int64_t> sl2;
    std::vector<double> euler;
    std::string morphism_path, emit_path;
    double action_r = 1.0, action_theta = default_theta;
    action_cmd->add_option("--sl2", sl2, "integers p q r s of the morphism U->U^pV^q, V->U^rV^s")
        ->expected(4);
    action_cmd->add_option("--euler", euler, "Euler angles phi theta psi")->expected(3);
    action_cmd->add_option("--morphism", morphism_path, "morphism JSON file");
    action_cmd->add_option("--r", action_r, "representation scale r (with --euler)");
    action_cmd->add_option("--theta", action_theta, "deformation parameter in (0,1)");
    action_cmd->add_option("--emit", emit_path, "write the morphism as JSON (with --sl2)");

    // thermo
    auto* thermo_cmd = app.add_subcommand("thermo", "partition function / observable sweep");
    std::array<int, 3> grid_spec = def.grid;
    double r_start = def.r_start, r_stop = def.r_stop, h_rel = def.h_rel;
    int r_count = def.r_count;
    std::string format = "csv", out_path, dump_grid_path;
    thermo_cmd->add_option("--grid", grid_spec, "quadrature counts n_theta n_phi n_psi");
    thermo_cmd->add_option("--r-start", r_start, "sweep start");
    thermo_cmd->add_option("--r-stop", r_stop, "sweep stop");
    thermo_cmd->add_option("--count", r_count, "sweep points");
    thermo_cmd->add_option("--h-rel", h_rel, "finite-difference step as a fraction of r");
    thermo_cmd->add_option("--format", format, "csv or json");
    thermo_cmd->add_option("--out", out_path, "output file (default stdout)");
    thermo_cmd->add_option("--dump-grid", dump_grid_path, "also write the Haar grid CSV here");

    // scan
    auto* scan_cmd = app.add_subcommand("scan", "2D contour scan of the action");
    std::string fix_name = "psi";
    double fix_value = 0.0, scan_r = 1.0;
    int scan_n1 = 64, scan_n2 = 64;
    std::string scan_out;
    scan_cmd->add_option("--fix", fix_name, "angle held fixed: phi, theta or psi");
    scan_cmd->add_option("--value", fix_value, "value of the fixed angle");
    scan_cmd->add_option("--r", scan_r, "representation scale r");
    scan_cmd->add_option("--n1", scan_n1, "samples along the first free angle");
    scan_cmd->add_option("--n2", scan_n2, "samples along the second free angle");
    scan_cmd->add_option("--out", scan_out, "output CSV (default stdout)");

    // extremize
    auto* ext_cmd = app.add_subcommand("extremize", "global extrema of the action at fixed r");
    double ext_r = 1.0;
    int ext_scan = def.scan_per_axis, ext_starts = def.refine_starts;
    std::string ext_out;
    ext_cmd->add_option("--r", ext_r, "representation scale r");
    ext_cmd->add_option("--scan", ext_scan, "coarse scan resolution per axis");
    ext_cmd->add_option("--starts", ext_starts, "simplex refinement starts per extremum");
    ext_cmd->add_option("--out", ext_out, "output JSON (default stdout)");

    // existence
    auto* ex_cmd = app.add_subcommand("existence", "integer relation search n*Theta = c*theta + d");
    double ex_Theta = 0.0, ex_theta = 0.0, ex_tol = def.relation_tol;
    int ex_nmax = def.relation_n_max;
    std::int64_t ex_cmax = def.relation_c_max, ex_dmax = def.relation_d_max;
    std::string ex_out;
    ex_cmd->add_option("--Theta", ex_Theta, "source deformation parameter in (0,1)")->required();
    ex_cmd->add_option("--theta", ex_theta, "target deformation parameter in (0,1)")->required();
    ex_cmd->add_option("--n-max", ex_nmax, "bound on n");
    ex_cmd->add_option("--c-max", ex_cmax, "bound on |c|");
    ex_cmd->add_option("--d-max", ex_dmax, "bound on |d|");
    ex_cmd->add_option("--tol", ex_tol, "residual tolerance");
    ex_cmd->add_option("--out", ex_out, "output JSON (default stdout)");

    auto* cfg_cmd = app.add_subcommand("print-config", "print all defaults");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (action_cmd->parsed())
            return run_action(sl2, euler, morphism_path, action_r, action_theta, emit_path);
        if (thermo_cmd->parsed())
            return run_thermo(def, grid_spec, r_start, r_stop, r_count, h_rel, format,
                              out_path, dump_grid_path);
        if (scan_cmd->parsed())
            return run_scan(fix_name, fix_value, scan_r, scan_n1, scan_n2, scan_out);
        if (ext_cmd->parsed()) return run_extremize(ext_r, ext_scan, ext_starts, ext_out);
        if (ex_cmd->parsed())
            return run_existence(ex_Theta, ex_theta, ex_nmax, ex_cmax, ex_dmax, ex_tol,
                                 ex_out);
        if (cfg_cmd->parsed()) {
            print_config(def);
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const nctorus::consistency_error& e) {
        std::cerr << "numerical-consistency error: " << e.what() << "\n";
        return exit_consistency;
    } catch (const nctorus::io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return exit_io;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return exit_io;
    }
    return 0;
}
