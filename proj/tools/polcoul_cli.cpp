// Command-line front end: every analysis is a subcommand with JSON or CSV
// output (fixed 17-significant-digit formatting, stable key order).

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polcoul/polcoul.hpp"

namespace {

using polcoul::cplx;

std::string g17(double v) {
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string pair17(const cplx& z) { return "[" + g17(z.real()) + ", " + g17(z.imag()) + "]"; }

// minimal ordered JSON object emitter
class JsonObject {
public:
    void field(const std::string& key, const std::string& raw) {
        parts_.push_back("\"" + key + "\": " + raw);
    }
    void number(const std::string& key, double v) { field(key, g17(v)); }
    void complex_pair(const std::string& key, const cplx& z) { field(key, pair17(z)); }
    std::string str() const {
        std::string out = "{";
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            out += (i ? ", " : "") + parts_[i];
        }
        return out + "}";
    }

private:
    std::vector<std::string> parts_;
};

struct Output {
    std::string path;  // empty = stdout

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::invalid_argument("cannot open output file: " + path);
        f << text;
    }
};

struct CommonFlags {
    double epsilon = 0.75;
    double mass = 1.0;
    double alpha = 1.0;
    int j = 0;
    double sigma = -1.0;

    polcoul::PhysicalParams params() const {
        polcoul::PhysicalParams p;
        p.epsilon = epsilon;
        p.mass = mass;
        p.alpha = alpha;
        p.j = j;
        p.sigma = sigma;
        polcoul::validate(p);
        return p;
    }
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--epsilon", f.epsilon, "energy (default 0.75)");
    cmd->add_option("--mass", f.mass, "particle mass M (default 1)");
    cmd->add_option("--alpha", f.alpha, "Coulomb coupling (default 1)");
    cmd->add_option("--j", f.j, "angular quantum number (default 0)");
    cmd->add_option("--sigma", f.sigma, "polarizability sign/strength (default -1)");
}

std::string csv_row(const std::vector<std::string>& cells) {
    std::string row;
    for (std::size_t i = 0; i < cells.size(); ++i) row += (i ? "," : "") + cells[i];
    return row + "\n";
}

std::string csv_g17(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------- regimes

int cmd_regimes(const CommonFlags& flags, const std::string& convention, int samples,
                const Output& out) {
    if (samples > 0 && out.path.empty())
        throw std::invalid_argument("--samples requires --out for the CSV file");
    const polcoul::PhysicalParams p = flags.params();
    const polcoul::Convention conv = convention == "section4" ? polcoul::Convention::section4
                                                              : polcoul::Convention::section2;
    const polcoul::QuarticAnalysis qa = polcoul::turning_points(p, conv);

    JsonObject jo;
    jo.field("regime", std::string("\"") + polcoul::to_string(qa.regime) + "\"");
    jo.field("convention", std::string("\"") + polcoul::to_string(qa.convention) + "\"");
    std::string roots = "[";
    for (int i = 0; i < 4; ++i) roots += (i ? ", " : "") + pair17(qa.roots[i]);
    jo.field("roots", roots + "]");
    std::string ivals = "[";
    for (std::size_t i = 0; i < qa.motion_intervals.size(); ++i) {
        const auto& iv = qa.motion_intervals[i];
        ivals += (i ? ", " : "") + ("[" + g17(iv.lo) + ", " + g17(iv.hi) + "]");
    }
    jo.field("motion_intervals", ivals + "]");
    std::cout << jo.str() << "\n";

    if (samples > 0) {
        const auto pos = polcoul::positive_real_roots(qa);
        const double r_hi = pos.empty() ? 5.0 : 2.0 * pos.back();
        std::string csv = csv_row({"r", "p_squared"});
        for (int i = 1; i <= samples; ++i) {
            const double r = r_hi * i / samples;
            csv += csv_row({csv_g17(r), csv_g17(polcoul::p_squared(r, p))});
        }
        out.write(csv);
    }
    return 0;
}

// ------------------------------------------------------------ bifurcation

int cmd_bifurcation(const CommonFlags& flags, const std::vector<double>& scan,
                    const std::vector<double>& bracket, const Output& out) {
    const polcoul::PhysicalParams p = flags.params();

    if (!scan.empty()) {
        if (scan.size() != 3)
            throw std::invalid_argument("--scan expects: lo hi n");
        const double lo = scan[0], hi = scan[1];
        const int n = static_cast<int>(scan[2]);
        if (!(n >= 2 && lo < hi))
            throw std::invalid_argument("--scan expects lo < hi and n >= 2");
        std::string csv = csv_row({"e", "residual"});
        for (int i = 0; i < n; ++i) {
            const double e = lo + (hi - lo) * i / (n - 1.0);
            csv += csv_row({csv_g17(e), csv_g17(polcoul::bifurcation_residual(e, p))});
        }
        out.write(csv);
        return 0;
    }

    double emin;
    try {
        emin = bracket.empty() ? polcoul::e_min(p) : polcoul::e_min(p, bracket[0], bracket[1]);
    } catch (const polcoul::no_root_error&) {
        std::cerr << "no bifurcation in (-1,1)\n";
        return 3;
    }
    const polcoul::DoubleRootGeometry g = polcoul::double_root_geometry(emin, p);
    JsonObject jo;
    jo.number("e_min", emin);
    jo.number("r0", g.r0);
    jo.number("a", g.a);
    jo.number("b2", g.b2);
    std::string text = jo.str() + "\n";
    out.write(text);
    return 0;
}

// ------------------------------------------------------------- variational

int cmd_variational(const CommonFlags& flags, const std::string& branch,
                    const std::vector<double>& krange, bool curves, bool wavefunction,
                    int samples, const std::string& format, const Output& out) {
    const double alpha = flags.alpha;
    const polcoul::RootBranch rb =
        branch == "root1" ? polcoul::RootBranch::root1 : polcoul::RootBranch::root2;
    const std::pair<double, double> range{krange[0], krange[1]};

    if (curves) {
        const auto samplesv = polcoul::sample_root_curves(alpha, range.first, range.second,
                                                          samples > 0 ? samples : 500);
        std::string csv = csv_row({"kappa", "eps1", "eps2"});
        for (const auto& s : samplesv) {
            csv += csv_row({csv_g17(s.kappa), s.eps1 ? csv_g17(*s.eps1) : "",
                            s.eps2 ? csv_g17(*s.eps2) : ""});
        }
        out.write(csv);
        return 0;
    }

    const polcoul::VariationalResult res = polcoul::minimize_root(alpha, rb, range);
    if (res.boundary_minimum)
        std::cerr << "warning: minimizer at the edge of the kappa range\n";

    if (wavefunction) {
        const polcoul::TrialState ts = polcoul::make_trial_state(alpha, res.kappa_star);
        polcoul::PhysicalParams p = flags.params();
        p.epsilon = res.e_star * p.mass;
        const int n = samples > 0 ? samples : 500;
        const double r_hi = 12.0 / res.kappa_star;
        std::string csv = csv_row({"r", "C", "p_squared"});
        for (int i = 1; i <= n; ++i) {
            const double r = r_hi * i / n;
            csv += csv_row({csv_g17(r), csv_g17(polcoul::trial_wavefunction(r, ts)),
                            csv_g17(polcoul::p_squared(r, p))});
        }
        out.write(csv);
        return 0;
    }

    if (format == "csv") {
        std::string csv = csv_row({"e_star", "kappa_star"});
        csv += csv_row({csv_g17(res.e_star), csv_g17(res.kappa_star)});
        out.write(csv);
        return 0;
    }
    JsonObject jo;
    jo.number("e_star", res.e_star);
    jo.number("kappa_star", res.kappa_star);
    out.write(jo.str() + "\n");
    return 0;
}

// -------------------------------------------------------------------- heun

int cmd_heun(const CommonFlags& flags, const std::string& sign, const Output& out) {
    const polcoul::PhysicalParams p = flags.params();
    const int s = sign == "-" ? -1 : +1;
    const polcoul::HeunParams h = polcoul::heun_params(p, s);
    JsonObject jo;
    jo.complex_pair("mu", h.mu);
    jo.complex_pair("beta", h.beta);
    jo.complex_pair("gamma", h.gamma);
    jo.complex_pair("delta", h.delta);
    jo.number("constraint_residual", polcoul::constraint_residual(h));
    out.write(jo.str() + "\n");
    return 0;
}

// ---------------------------------------------------- radial wavefunctions

// Outward and inward integrations glued at the matching radius (the inward
// branch is rescaled for continuity of f; at an eigenvalue the slopes agree
// as well).
polcoul::RadialSolution glued_solution(const polcoul::PhysicalParams& p, double e) {
    if (!(std::abs(e) < 1.0))
        throw std::domain_error("radial profile needs a bound-state energy, |e| < 1");
    const auto span = polcoul::default_span(p, e);
    const double kap = std::sqrt(std::max(1e-12, 1.0 - e * e));
    const double match = std::sqrt(p.alpha / kap);
    const polcoul::RadialSolution out =
        polcoul::integrate_radial(p, e, {span.first, match}, polcoul::Direction::outward);
    const polcoul::RadialSolution in =
        polcoul::integrate_radial(p, e, {match, span.second}, polcoul::Direction::inward);
    const double scale = out.f.back() / in.f.front();

    polcoul::RadialSolution glue;
    glue.e = e;
    glue.grid = out.grid;
    glue.f = out.f;
    glue.df = out.df;
    for (std::size_t i = 1; i < in.grid.size(); ++i) {
        glue.grid.push_back(in.grid[i]);
        glue.f.push_back(in.f[i] * scale);
        glue.df.push_back(in.df[i] * scale);
    }
    return glue;
}

double resolve_energy(const CommonFlags& flags, double e_flag, bool shoot) {
    if (shoot) {
        const polcoul::PhysicalParams p = flags.params();
        // coarse scan for the first defect sign change, then refine
        const double kap0 = std::sqrt(1.0 - 0.8 * 0.8);
        const double match = std::sqrt(p.alpha / kap0);
        double prev_e = 0.62;
        double prev_d = polcoul::matching_defect(p, prev_e, match);
        for (double e = 0.64; e <= 0.99; e += 0.02) {
            const double d = polcoul::matching_defect(p, e, match);
            if ((d > 0.0) != (prev_d > 0.0))
                return polcoul::shoot_eigenvalue(p, {prev_e, e}, match);
            prev_e = e;
            prev_d = d;
        }
        throw polcoul::no_root_error("shooting: no matching-defect sign change in (0.62, 0.99)");
    }
    if (!std::isnan(e_flag)) return e_flag;
    const polcoul::VariationalResult res =
        polcoul::minimize_root(flags.alpha, polcoul::RootBranch::root2, {0.05, 3.0});
    return res.e_star;
}

int cmd_wavefunction(const CommonFlags& flags, double e_flag, bool shoot, const Output& out) {
    const polcoul::PhysicalParams p = flags.params();
    const double e = resolve_energy(flags, e_flag, shoot);
    const polcoul::RadialSolution sol = glued_solution(p, e);
    polcoul::PhysicalParams q = p;
    q.epsilon = e * p.mass;
    std::string csv = csv_row({"r", "f", "C", "p_squared"});
    for (std::size_t i = 0; i < sol.grid.size(); ++i) {
        const double r = sol.grid[i];
        csv += csv_row({csv_g17(r), csv_g17(sol.f[i]), csv_g17(sol.f[i] / r),
                        csv_g17(polcoul::p_squared(r, q))});
    }
    out.write(csv);
    return 0;
}

int cmd_reconstruct(const CommonFlags& flags, double e_flag, bool shoot, double mass_m,
                    const std::string& sign, const Output& out) {
    const polcoul::PhysicalParams p = flags.params();
    const double e = resolve_energy(flags, e_flag, shoot);
    const polcoul::RadialSolution sol = glued_solution(p, e);
    const double m = std::isnan(mass_m) ? p.mass : mass_m;
    const polcoul::FieldComponents fc =
        polcoul::reconstruct_components(sol, p, m, sign == "-" ? -1 : +1);

    const char* names[] = {"C",    "C0",   "C1",   "C2", "C3", "Phi0", "Phi1", "Phi2",
                           "Phi3", "E1",   "E2",   "E3", "H1", "H2",   "H3"};
    const std::vector<std::complex<double>>* cols[] = {
        &fc.C,    &fc.C0,   &fc.C1,   &fc.C2, &fc.C3, &fc.Phi0, &fc.Phi1, &fc.Phi2,
        &fc.Phi3, &fc.E1,   &fc.E2,   &fc.E3, &fc.H1, &fc.H2,   &fc.H3};

    std::vector<std::string> header{"r"};
    for (const char* n : names) {
        header.push_back(std::string(n) + "_re");
        header.push_back(std::string(n) + "_im");
    }
    std::string csv = csv_row(header);
    for (std::size_t i = 0; i < sol.grid.size(); ++i) {
        std::vector<std::string> row{csv_g17(sol.grid[i])};
        for (const auto* col : cols) {
            row.push_back(csv_g17((*col)[i].real()));
            row.push_back(csv_g17((*col)[i].imag()));
        }
        csv += csv_row(row);
    }
    out.write(csv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"analysis toolkit for a polarizable scalar particle in a Coulomb field"};
    app.require_subcommand(1);

    CommonFlags flags;
    Output out;
    std::string convention = "section2";
    std::string sign = "+";
    std::string branch = "root2";
    std::string format = "json";
    std::vector<double> scan, bracket, krange{0.05, 3.0};
    int samples = 0;
    bool curves = false, wavefunction = false, shoot = false;
    double e_flag = std::numeric_limits<double>::quiet_NaN();
    double mass_m = std::numeric_limits<double>::quiet_NaN();

    CLI::App* regimes = app.add_subcommand("regimes", "turning points, regime and motion intervals");
    add_common(regimes, flags);
    regimes->add_option("--convention", convention, "r^2 coefficient: section2|section4")
        ->check(CLI::IsMember({"section2", "section4"}));
    regimes->add_option("--samples", samples, "also write a CSV of (r, P^2) with N rows");
    regimes->add_option("--out", out.path, "output file (default stdout)");

    CLI::App* bif = app.add_subcommand("bifurcation", "double-root energy e_min and geometry");
    add_common(bif, flags);
    bif->add_option("--scan", scan, "emit residual CSV over [lo, hi] with n points")
        ->expected(3);
    bif->add_option("--bracket", bracket, "search bracket for e_min")->expected(2);
    bif->add_option("--out", out.path, "output file (default stdout)");

    CLI::App* var = app.add_subcommand("variational", "Ritz estimate of the lowest level");
    add_common(var, flags);
    var->add_option("--branch", branch, "root branch to minimize: root1|root2")
        ->check(CLI::IsMember({"root1", "root2"}));
    var->add_option("--kappa-range", krange, "search range for kappa")->expected(2);
    var->add_flag("--curves", curves, "emit (kappa, eps1, eps2) CSV");
    var->add_flag("--wavefunction", wavefunction, "emit (r, C, P^2) CSV at the minimum");
    var->add_option("--samples", samples, "number of CSV rows");
    var->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    var->add_option("--out", out.path, "output file (default stdout)");

    CLI::App* heun = app.add_subcommand("heun", "double confluent Heun parameters");
    add_common(heun, flags);
    heun->add_option("--sign", sign, "sign choice for D = +-4A: + or -")
        ->check(CLI::IsMember({"+", "-"}));
    heun->add_option("--out", out.path, "output file (default stdout)");

    CLI::App* wf = app.add_subcommand("wavefunction", "radial profile CSV (r, f, C, P^2)");
    add_common(wf, flags);
    wf->add_option("--e", e_flag, "dimensionless energy (default: variational minimum)");
    wf->add_flag("--shoot", shoot, "locate the energy by shooting first");
    wf->add_option("--out", out.path, "output file (default stdout)");

    CLI::App* rec = app.add_subcommand("reconstruct", "all 15 component profiles as CSV");
    add_common(rec, flags);
    rec->add_option("--e", e_flag, "dimensionless energy (default: variational minimum)");
    rec->add_flag("--shoot", shoot, "locate the energy by shooting first");
    rec->add_option("--m", mass_m, "mass parameter of the component relations (default: mass)");
    rec->add_option("--sign", sign, "overall sign of the E/H block: + or -")
        ->check(CLI::IsMember({"+", "-"}));
    rec->add_option("--out", out.path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }

    try {
        if (app.got_subcommand(regimes)) return cmd_regimes(flags, convention, samples, out);
        if (app.got_subcommand(bif)) return cmd_bifurcation(flags, scan, bracket, out);
        if (app.got_subcommand(var))
            return cmd_variational(flags, branch, krange, curves, wavefunction, samples, format,
                                   out);
        if (app.got_subcommand(heun)) return cmd_heun(flags, sign, out);
        if (app.got_subcommand(wf)) return cmd_wavefunction(flags, e_flag, shoot, out);
        if (app.got_subcommand(rec)) return cmd_reconstruct(flags, e_flag, shoot, mass_m, sign, out);
    } catch (const polcoul::degenerate_error& e) {
        std::cerr << "degenerate configuration: " << e.what() << "\n";
        return 2;
    } catch (const polcoul::no_root_error& e) {
        std::cerr << "no solution: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
