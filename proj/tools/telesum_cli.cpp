// Command-line front end for the telegraph-sum distribution library:
// tabulate densities / distribution functions / characteristic functions,
// run the formula verification suite, and run seeded Monte Carlo
// comparisons.  Exit codes: 0 success, 1 numeric or check failure, 2 usage
// error.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "telesum/telesum.hpp"

namespace {

using namespace telesum;

struct GridFlags {
    double lo = std::numeric_limits<double>::quiet_NaN();
    double hi = std::numeric_limits<double>::quiet_NaN();
    int n = 1001;
};

// verify/simulate checks raise this to exit with code 1
struct check_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class OutputTarget {
  public:
    explicit OutputTarget(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

// ---------------------------------------------------------------------- pdf / cdf

void run_distribution_table(const std::string& cmd, const TelegraphParams& p, double t,
                            const GridFlags& g, const std::string& format,
                            const std::string& out_path) {
    const SeriesControl ctl = SeriesControl::from_env();
    const double edge = 2.0 * p.c * t;
    const double nudge = 1e-9 * p.c * t;
    const double lo = std::isnan(g.lo) ? -edge + nudge : g.lo;
    const double hi = std::isnan(g.hi) ? edge - nudge : g.hi;
    const MixedDistribution law = sum_law(p, t, ctl);
    DistributionTable tbl = make_distribution_table(law, linspace(lo, hi, g.n));
    tbl.command = cmd;
    tbl.meta = {{"c", p.c}, {"lambda", p.lambda}, {"t", t},
                {"grid_n", static_cast<double>(g.n)}};
    OutputTarget out(out_path);
    if (format == "csv")
        write_csv(out.stream(), tbl);
    else if (format == "json")
        write_json(out.stream(), tbl);
    else
        write_svg(out.stream(), tbl, cmd == "cdf" ? SvgColumn::cdf : SvgColumn::pdf_ac);
}

// ---------------------------------------------------------------------- charfn

void run_charfn(const TelegraphParams& p, double t, const GridFlags& g,
                const std::string& format, const std::string& out_path) {
    const double span = 4.0 * p.lambda / p.c; // covers both branches of the cone
    const double lo = std::isnan(g.lo) ? -span : g.lo;
    const double hi = std::isnan(g.hi) ? span : g.hi;
    const std::vector<double> xs = linspace(lo, hi, g.n);
    OutputTarget out(out_path);
    std::ostream& os = out.stream();
    if (format == "csv") {
        os << "# " << tool_name << "," << tool_version << "\n";
        os << "# command,charfn\n";
        os << "# c," << fmt17(p.c) << "\n# lambda," << fmt17(p.lambda) << "\n# t,"
           << fmt17(t) << "\n";
        os << "xi,re,im\n";
        for (double xi : xs)
            os << fmt17(xi) << "," << fmt17(sum_charfn(p, xi, t)) << ",0\n";
    } else if (format == "json") {
        nlohmann::ordered_json j;
        j["tool"] = tool_name;
        j["version"] = tool_version;
        j["command"] = "charfn";
        j["meta"] = {{{"name", "c"}, {"value", p.c}},
                     {{"name", "lambda"}, {"value", p.lambda}},
                     {{"name", "t"}, {"value", t}}};
        j["rows"] = nlohmann::ordered_json::array();
        for (double xi : xs)
            j["rows"].push_back({{"xi", xi}, {"re", sum_charfn(p, xi, t)}, {"im", 0.0}});
        os << j.dump(2) << "\n";
    } else {
        DistributionTable tbl; // re(psi) in the value column, no atoms
        for (double xi : xs) tbl.rows.push_back({xi, sum_charfn(p, xi, t), 0.0});
        tbl.command = "charfn";
        write_svg(os, tbl, SvgColumn::pdf_ac, "Re psi", "xi");
    }
}

// ---------------------------------------------------------------------- verify

struct Check {
    std::string name;
    double measured = 0.0;
    double tol = 0.0;
    bool pass() const { return measured <= tol; }
};

std::vector<Check> run_checks(const TelegraphParams& p, double t, double tol_scale,
                              bool inject_fault, const SeriesControl& ctl) {
    std::vector<Check> checks;
    const double edge = 2.0 * p.c * t;

    // normalization: atoms + integrated density = 1
    {
        TelegraphParams pf = p;
        if (inject_fault) pf.lambda *= 1.01; // deliberate formula perturbation
        double mass = 0.0;
        for (const auto& a : sum_atoms(p, t)) mass += a.mass;
        mass += integrate([&](double x) { return sum_pdf_ac(pf, x, t); }, -edge, edge,
                          1e-11)
                    .value;
        checks.push_back({"normalization", std::fabs(mass - 1.0), 1e-9 * tol_scale});
    }

    // distribution function differentiates back to the density
    {
        double worst = 0.0;
        const double h = 1e-4 * edge;
        for (double frac : {-0.62, -0.27, 0.18, 0.45, 0.81}) {
            const double x = frac * edge;
            const double der =
                fd_d1([&](double y) { return sum_cdf(p, y, t, ctl); }, x, h);
            const double pdf = sum_pdf_ac(p, x, t);
            worst = std::max(worst, std::fabs(der - pdf) / std::fabs(pdf));
        }
        checks.push_back({"cdf_derivative", worst, 1e-6 * tol_scale});
    }

    // the two series forms of the distribution function agree
    {
        double worst = 0.0;
        for (int i = 0; i <= 20; ++i) {
            const double x = -edge + 2.0 * edge * i / 20.0 - 1e-3 * edge;
            if (std::fabs(x) >= edge) continue;
            worst = std::max(worst, std::fabs(sum_cdf(p, x, t, ctl) -
                                              sum_cdf_alt(p, x, t, ctl)));
        }
        checks.push_back({"cdf_alt_identity", worst, 1e-10 * tol_scale});
    }

    // the two density routes agree
    {
        double worst = 0.0;
        for (int i = 1; i < 20; ++i) {
            const double x = -edge + 2.0 * edge * i / 20.0 + 1e-3;
            if (std::fabs(x) >= edge) continue;
            const double a = sum_pdf_ac(p, x, t), b = sum_pdf_ac_alt(p, x, t);
            worst = std::max(worst, std::fabs(a - b) / std::fabs(a));
        }
        checks.push_back({"pdf_alt_identity", worst, 1e-12 * tol_scale});
    }

    // forward transform of the mixed law reproduces the characteristic function
    {
        const MixedDistribution law = sum_law(p, t, ctl);
        double worst = 0.0;
        for (double r : {0.3, 0.9, 1.0, 1.8, 3.5}) {
            const double xi = r * p.lambda / p.c;
            worst = std::max(worst, std::abs(charfn_of_law(law, xi, 1e-9) -
                                             std::complex<double>(sum_charfn(p, xi, t))));
        }
        checks.push_back({"fourier_consistency", worst, 1e-7 * tol_scale});
    }

    // arc kernel transform against direct quadrature
    {
        const double a = p.c * t, b = p.lambda / p.c;
        double worst = 0.0;
        for (double r : {0.0, 0.3, 1.0, 2.0}) {
            const double xi = r * b;
            const double closed = arc_bessel_transform(a, b, xi);
            const double quad =
                integrate([&](double x) {
                    return std::cos(xi * x) * bessel_i0(b * std::sqrt((a - x) * (a + x)));
                }, -a, a, 1e-10)
                    .value;
            worst = std::max(worst, std::fabs(closed - quad) / (1.0 + std::fabs(closed)));
        }
        checks.push_back({"arc_transform", worst, 1e-8 * tol_scale});
    }

    // squared transform identity (both branches)
    {
        double worst = 0.0;
        for (double xi : {0.5 * p.lambda, 3.0 * p.lambda}) {
            const auto [lhs, rhs] = arc_transform_identity(p.lambda, t, xi);
            worst = std::max(worst, std::fabs(lhs - rhs));
        }
        checks.push_back({"arc_identity_squared", worst, 1e-7 * tol_scale});
    }

    // hypergeometric antiderivative against quadrature
    {
        const int n = 4, k = 2;
        const double x = 0.3, z1 = 1.0, z2 = 2.0;
        const double closed = power_hyp2f1_antiderivative(n, k, x, z2) -
                              power_hyp2f1_antiderivative(n, k, x, z1);
        const double quad =
            integrate([&](double z) {
                return std::pow(z, n) * hyp2f1_term(k, 0.5, 1.5, x * x / (z * z));
            }, z1, z2, 1e-12)
                .value;
        checks.push_back({"power_antiderivative", std::fabs(closed - quad) / std::fabs(closed),
                          1e-8 * tol_scale});
    }

    // both finite-difference PDE residuals, hyperbolic and trigonometric branches
    {
        double worst = 0.0;
        for (double r : {0.7, 3.0})
            worst = std::max(worst, pde_residual_order3(p, r * p.lambda / p.c, t));
        checks.push_back({"pde_residual_order3", worst, 1e-5 * tol_scale});
    }
    {
        double worst = 0.0;
        for (double r : {0.5, 2.0})
            worst = std::max(worst, wave_charfn_residual(p, r * p.lambda / p.c, t));
        checks.push_back({"wave_equation_residual", worst, 1e-6 * tol_scale});
    }

    return checks;
}

void run_verify(const TelegraphParams& p, double t, double tol_scale, bool inject_fault,
                bool as_json, const std::string& out_path) {
    const SeriesControl ctl = SeriesControl::from_env();
    const std::vector<Check> checks = run_checks(p, t, tol_scale, inject_fault, ctl);
    OutputTarget out(out_path);
    std::ostream& os = out.stream();
    int passed = 0;
    if (as_json) {
        nlohmann::ordered_json j;
        j["tool"] = tool_name;
        j["version"] = tool_version;
        j["command"] = "verify";
        j["params"] = {{"c", p.c}, {"lambda", p.lambda}, {"t", t}};
        j["checks"] = nlohmann::ordered_json::array();
        for (const auto& ck : checks) {
            j["checks"].push_back({{"name", ck.name},
                                   {"status", ck.pass() ? "pass" : "fail"},
                                   {"measured", ck.measured},
                                   {"tolerance", ck.tol}});
            passed += ck.pass();
        }
        j["all_pass"] = passed == static_cast<int>(checks.size());
        os << j.dump(2) << "\n";
    } else {
        for (const auto& ck : checks) {
            char line[160];
            std::snprintf(line, sizeof line, "[%s] %-24s measured=%-12.3e tol=%.3e",
                          ck.pass() ? "PASS" : "FAIL", ck.name.c_str(), ck.measured,
                          ck.tol);
            os << line << "\n";
            passed += ck.pass();
        }
        os << "verify: " << passed << "/" << checks.size() << " checks passed\n";
    }
    if (passed != static_cast<int>(checks.size()))
        throw check_failure("verification failed");
}

// ---------------------------------------------------------------------- simulate

double binomial_z(std::int64_t hits, std::int64_t n, double mass) {
    const double freq = static_cast<double>(hits) / static_cast<double>(n);
    const double sd = std::sqrt(mass * (1.0 - mass) / static_cast<double>(n));
    return (freq - mass) / sd;
}

// Atom locations reachable by zero-event sample arithmetic (the four
// direction sign pairs), with coinciding values merged.
std::vector<Atom> simulated_atom_set(const SumParams& sp, double t) {
    const double m = 0.25 * std::exp(-(sp.p1.lambda + sp.p2.lambda) * t);
    std::vector<Atom> raw;
    for (double d1 : {1.0, -1.0})
        for (double d2 : {1.0, -1.0})
            raw.push_back({sp.x01 + d1 * sp.p1.c * t + sp.x02 + d2 * sp.p2.c * t, m});
    std::sort(raw.begin(), raw.end(),
              [](const Atom& a, const Atom& b) { return a.location < b.location; });
    std::vector<Atom> merged;
    for (const auto& a : raw) {
        if (!merged.empty() && merged.back().location == a.location)
            merged.back().mass += a.mass;
        else
            merged.push_back(a);
    }
    return merged;
}

// Trapezoid mass of one accumulation cell.  The ac density may jump at an
// interior atom location (the inner singular points), so a cell containing
// one is split there, with the density re-evaluated just outside the atom
// exclusion radius on both sides.
double cell_mass(const SumParams& sp, double t, double delta, double x0, double p0,
                 double x1, double p1, const std::vector<Atom>& atoms) {
    for (const auto& a : atoms)
        if (a.location > x0 && a.location < x1) {
            const double al = a.location - 1.25 * delta;
            const double ar = a.location + 1.25 * delta;
            const double pl = general_pdf_ac(sp, al, t, delta);
            const double pr = general_pdf_ac(sp, ar, t, delta);
            return 0.5 * (p0 + pl) * (al - x0) + 0.5 * (pl + pr) * (ar - al) +
                   0.5 * (pr + p1) * (x1 - ar);
        }
    return 0.5 * (p0 + p1) * (x1 - x0);
}

// Model law for the general case: exact atoms plus a distribution function
// interpolated from a trapezoid accumulation of the inverted density.
// The discretization leaves ~1e-3 model error; choose --ks-threshold
// accordingly when comparing.
MixedDistribution general_law_numeric(const SumParams& sp, double t, int grid_n) {
    MixedDistribution law;
    law.atoms = simulated_atom_set(sp, t);
    law.support = general_support(sp, t);
    const double span = (sp.p1.c + sp.p2.c) * t;
    const double delta = 5e-4 * span;
    const double lo = law.support.lo, hi = law.support.hi;
    std::vector<double> xs = linspace(lo + 2.5 * delta, hi - 2.5 * delta, grid_n);
    std::vector<double> pdf(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double x = xs[i];
        // step off any atom that the grid happens to graze
        for (const auto& a : law.atoms)
            if (std::fabs(x - a.location) <= delta) x = a.location + 1.5 * delta;
        xs[i] = x;
        pdf[i] = general_pdf_ac(sp, x, t, delta);
    }
    // cumulative Pr{S < x} on the grid: trapezoid plus atom masses passed
    auto cum = std::make_shared<std::vector<double>>(xs.size());
    auto grid = std::make_shared<std::vector<double>>(xs);
    double acc = 0.0;
    for (const auto& a : law.atoms)
        if (a.location < xs.front()) acc += a.mass;
    acc += pdf.front() * (xs.front() - lo); // edge sliver
    (*cum)[0] = acc;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        acc += cell_mass(sp, t, delta, xs[i - 1], pdf[i - 1], xs[i], pdf[i], law.atoms);
        for (const auto& a : law.atoms)
            if (a.location >= xs[i - 1] && a.location < xs[i]) acc += a.mass;
        (*cum)[i] = acc;
    }
    const std::vector<Atom> atoms = law.atoms;
    law.cdf = [grid, cum, atoms](double x) {
        if (x <= grid->front()) {
            double below = 0.0;
            for (const auto& a : atoms)
                if (a.location < x) below += a.mass;
            return below;
        }
        if (x >= grid->back()) {
            double above = 0.0;
            for (const auto& a : atoms)
                if (a.location >= x) above += a.mass;
            return std::max(0.0, 1.0 - above);
        }
        const auto it = std::upper_bound(grid->begin(), grid->end(), x);
        const std::size_t i = static_cast<std::size_t>(it - grid->begin());
        const double x0 = (*grid)[i - 1], x1 = (*grid)[i];
        const double th = (x - x0) / (x1 - x0);
        double v = (*cum)[i - 1] + ((*cum)[i] - (*cum)[i - 1]) * th;
        // the lerp smears a within-cell atom across the cell; restore the
        // step: no mass before the atom location, full mass after it
        for (const auto& a : atoms)
            if (a.location >= x0 && a.location < x1) {
                if (x <= a.location)
                    v -= a.mass * th;
                else
                    v += a.mass * (1.0 - th);
            }
        return std::min(1.0, std::max(0.0, v));
    };
    law.pdf_ac = [sp, t, delta](double x) { return general_pdf_ac(sp, x, t, delta); };
    return law;
}

void run_simulate(bool general, const SumParams& sp, const SimConfig& cfg, bool compare,
                  double ks_threshold, int model_grid, const std::string& out_path) {
    const SeriesControl ctl = SeriesControl::from_env();
    OutputTarget out(out_path);
    std::ostream& os = out.stream();
    const std::vector<PathSample> samples = simulate_sum(sp, cfg);
    const std::int64_t n = cfg.n_paths;

    os << "simulate: n_paths=" << n << " seed=" << cfg.seed << " t=" << fmt17(cfg.t)
       << "\n";
    if (general)
        os << "params: c1=" << fmt17(sp.p1.c) << " lambda1=" << fmt17(sp.p1.lambda)
           << " c2=" << fmt17(sp.p2.c) << " lambda2=" << fmt17(sp.p2.lambda)
           << " x01=" << fmt17(sp.x01) << " x02=" << fmt17(sp.x02) << "\n";
    else
        os << "params: c=" << fmt17(sp.p1.c) << " lambda=" << fmt17(sp.p1.lambda) << "\n";

    // atom frequencies from the exact zero-event bookkeeping
    const std::vector<Atom> atoms =
        general ? simulated_atom_set(sp, cfg.t) : sum_atoms(sp.p1, cfg.t);
    std::vector<std::int64_t> hits(atoms.size(), 0);
    std::int64_t atom_total = 0;
    for (const auto& s : samples) {
        if (s.event_count != 0) continue;
        ++atom_total;
        std::size_t best = 0;
        double bestd = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            const double d = std::fabs(s.position - atoms[i].location);
            if (d < bestd) {
                bestd = d;
                best = i;
            }
        }
        ++hits[best];
    }
    bool z_ok = true;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const double z = binomial_z(hits[i], n, atoms[i].mass);
        z_ok = z_ok && std::fabs(z) <= 4.0;
        char line[160];
        std::snprintf(line, sizeof line,
                      "atom x=%-22.17g mass=%-22.17g freq=%-12.6g z=%+.3f",
                      atoms[i].location, atoms[i].mass,
                      static_cast<double>(hits[i]) / static_cast<double>(n), z);
        os << line << "\n";
    }
    os << "continuum fraction: "
       << fmt17(static_cast<double>(n - atom_total) / static_cast<double>(n))
       << " (model " << fmt17(1.0 - std::exp(-(sp.p1.lambda + sp.p2.lambda) * cfg.t))
       << ")\n";

    if (!compare) {
        if (!z_ok) throw check_failure("atom frequency z-score outside +-4");
        return;
    }
    const MixedDistribution law = general
                                      ? general_law_numeric(sp, cfg.t, model_grid)
                                      : sum_law(sp.p1, cfg.t, ctl);
    const double ks = ks_distance(samples, law);
    os << "ks_distance: " << fmt17(ks) << " threshold: " << fmt17(ks_threshold) << "\n";
    const bool ks_ok = ks <= ks_threshold;
    os << (ks_ok && z_ok ? "compare: PASS\n" : "compare: FAIL\n");
    if (!ks_ok) throw check_failure("ks_distance above threshold");
    if (!z_ok) throw check_failure("atom frequency z-score outside +-4");
}

// ---------------------------------------------------------------------- general

void run_general(const SumParams& sp, double t, const GridFlags& g,
                 const std::string& format, double tol, const std::string& out_path) {
    const Interval sup = general_support(sp, t);
    const double span = (sp.p1.c + sp.p2.c) * t;
    const double delta = 1e-3 * span;
    const double lo = std::isnan(g.lo) ? sup.lo + 2.0 * delta : g.lo;
    const double hi = std::isnan(g.hi) ? sup.hi - 2.0 * delta : g.hi;
    const std::vector<Atom> atoms = general_atoms_full(sp, t);

    InversionConfig cfg;
    if (tol > 0.0) cfg.abs_tol = tol;

    std::vector<double> xs = linspace(lo, hi, g.n);
    xs.erase(std::remove_if(xs.begin(), xs.end(),
                            [&](double x) {
                                if (!(x > sup.lo + delta) || !(x < sup.hi - delta))
                                    return true;
                                for (const auto& a : atoms)
                                    if (std::fabs(x - a.location) <= 1.1 * delta)
                                        return true;
                                return false;
                            }),
             xs.end());
    if (xs.size() < 2)
        throw std::domain_error("general: grid too coarse after atom exclusion");

    DistributionTable tbl;
    tbl.command = "general";
    tbl.meta = {{"c1", sp.p1.c},     {"lambda1", sp.p1.lambda}, {"c2", sp.p2.c},
                {"lambda2", sp.p2.lambda}, {"x01", sp.x01},     {"x02", sp.x02},
                {"t", t},            {"grid_n", static_cast<double>(g.n)},
                {"cdf_numeric", 1.0}};
    tbl.atoms = atoms;
    tbl.rows.reserve(xs.size());
    for (double x : xs)
        tbl.rows.push_back({x, general_pdf_ac(sp, x, t, delta, cfg), 0.0});

    // distribution column by trapezoid accumulation (flagged in the meta
    // block as numeric: closed forms exist only for the equal case)
    double acc = 0.0;
    for (const auto& a : atoms)
        if (a.location < xs.front()) acc += a.mass;
    acc += tbl.rows.front().pdf_ac * (xs.front() - sup.lo);
    tbl.rows.front().cdf = std::min(1.0, acc);
    for (std::size_t i = 1; i < tbl.rows.size(); ++i) {
        acc += cell_mass(sp, t, delta, tbl.rows[i - 1].x, tbl.rows[i - 1].pdf_ac,
                         tbl.rows[i].x, tbl.rows[i].pdf_ac, atoms);
        for (const auto& a : atoms)
            if (a.location >= tbl.rows[i - 1].x && a.location < tbl.rows[i].x)
                acc += a.mass;
        tbl.rows[i].cdf = std::min(1.0, acc);
    }
    tbl.validate();

    OutputTarget out(out_path);
    if (format == "csv")
        write_csv(out.stream(), tbl);
    else if (format == "json")
        write_json(out.stream(), tbl);
    else
        write_svg(out.stream(), tbl, SvgColumn::pdf_ac);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"telegraph-sum distribution toolkit"};
    app.require_subcommand(1);

    // shared flag storage (only the chosen subcommand's options are parsed)
    double c = 1.0, lambda = 1.0, t = 1.0;
    double c1 = 1.0, c2 = 1.0, lambda1 = 1.0, lambda2 = 1.0, x01 = 0.0, x02 = 0.0;
    GridFlags grid_tab{std::numeric_limits<double>::quiet_NaN(),
                       std::numeric_limits<double>::quiet_NaN(), 1001};
    GridFlags grid_gen{std::numeric_limits<double>::quiet_NaN(),
                       std::numeric_limits<double>::quiet_NaN(), 101};
    std::string format = "csv", out_path;
    double tol_scale = 1.0, tol = 0.0, ks_threshold = 0.005;
    std::int64_t paths = 100000;
    std::uint64_t seed = 42;
    int threads = 0;
    bool as_json = false, inject_fault = false, compare = false;

    auto add_equal_flags = [&](CLI::App* sub) {
        sub->add_option("--c", c, "speed c")->check(CLI::PositiveNumber);
        sub->add_option("--lambda", lambda, "reversal rate lambda")
            ->check(CLI::PositiveNumber);
    };
    auto add_time_flag = [&](CLI::App* sub) {
        sub->add_option("--t", t, "time")->check(CLI::PositiveNumber);
    };
    auto add_grid_flags = [&](CLI::App* sub, GridFlags& g) {
        sub->add_option("--grid-min", g.lo, "grid lower end");
        sub->add_option("--grid-max", g.hi, "grid upper end");
        sub->add_option("--grid-n", g.n, "number of grid points")
            ->check(CLI::Range(2, 10000000));
    };
    auto add_format_flags = [&](CLI::App* sub) {
        sub->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"csv", "json", "svg"}));
        sub->add_option("-o,--output", out_path, "output file (default stdout)");
    };
    auto add_general_flags = [&](CLI::App* sub) {
        sub->add_option("--c1", c1, "speed of process 1")->check(CLI::PositiveNumber);
        sub->add_option("--c2", c2, "speed of process 2")->check(CLI::PositiveNumber);
        sub->add_option("--lambda1", lambda1, "rate of process 1")
            ->check(CLI::PositiveNumber);
        sub->add_option("--lambda2", lambda2, "rate of process 2")
            ->check(CLI::PositiveNumber);
        sub->add_option("--x01", x01, "start of process 1");
        sub->add_option("--x02", x02, "start of process 2");
    };

    CLI::App* pdf = app.add_subcommand("pdf", "tabulate density and distribution");
    add_equal_flags(pdf);
    add_time_flag(pdf);
    add_grid_flags(pdf, grid_tab);
    add_format_flags(pdf);
    pdf->callback([&] {
        run_distribution_table("pdf", TelegraphParams{c, lambda}, t, grid_tab, format,
                               out_path);
    });

    CLI::App* cdf = app.add_subcommand("cdf", "tabulate distribution (cdf chart)");
    add_equal_flags(cdf);
    add_time_flag(cdf);
    add_grid_flags(cdf, grid_tab);
    add_format_flags(cdf);
    cdf->callback([&] {
        run_distribution_table("cdf", TelegraphParams{c, lambda}, t, grid_tab, format,
                               out_path);
    });

    CLI::App* chf = app.add_subcommand("charfn", "tabulate the characteristic function");
    add_equal_flags(chf);
    add_time_flag(chf);
    add_grid_flags(chf, grid_tab);
    add_format_flags(chf);
    chf->callback(
        [&] { run_charfn(TelegraphParams{c, lambda}, t, grid_tab, format, out_path); });

    CLI::App* ver = app.add_subcommand("verify", "run the formula verification suite");
    add_equal_flags(ver);
    add_time_flag(ver);
    ver->add_option("--tol", tol_scale, "scale factor on all check tolerances")
        ->check(CLI::PositiveNumber);
    ver->add_flag("--json", as_json, "machine-readable report");
    ver->add_option("-o,--output", out_path, "output file (default stdout)");
    ver->add_flag("--inject-fault", inject_fault)->group(""); // hidden self-test hook
    ver->callback([&] {
        run_verify(TelegraphParams{c, lambda}, t, tol_scale, inject_fault, as_json,
                   out_path);
    });

    CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo simulation of the sum");
    add_equal_flags(sim);
    add_general_flags(sim);
    add_time_flag(sim);
    sim->add_option("--paths", paths, "number of sample paths")
        ->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 40));
    sim->add_option("--seed", seed, "random seed");
    sim->add_option("--threads", threads, "worker threads (0 = hardware)");
    sim->add_flag("--compare", compare, "compare against the model law");
    sim->add_option("--ks-threshold", ks_threshold, "failure threshold for ks_distance")
        ->check(CLI::PositiveNumber);
    int model_grid = 513;
    sim->add_option("--model-grid", model_grid,
                    "grid size of the inverted model law (general case only)")
        ->check(CLI::Range(65, 100000));
    sim->add_option("-o,--output", out_path, "output file (default stdout)");
    sim->callback([&] {
        const bool general = sim->count("--c1") || sim->count("--c2") ||
                             sim->count("--lambda1") || sim->count("--lambda2") ||
                             sim->count("--x01") || sim->count("--x02");
        SumParams sp;
        if (general)
            sp = SumParams{{c1, lambda1}, {c2, lambda2}, x01, x02};
        else
            sp = SumParams{{c, lambda}, {c, lambda}, 0.0, 0.0};
        SimConfig cfg{seed, paths, t, threads};
        run_simulate(general, sp, cfg, compare, ks_threshold, model_grid, out_path);
    });

    CLI::App* gen = app.add_subcommand("general",
                                       "tabulate the unequal-parameter sum by inversion");
    add_general_flags(gen);
    add_time_flag(gen);
    add_grid_flags(gen, grid_gen);
    add_format_flags(gen);
    gen->add_option("--tol", tol, "absolute tolerance for the inversion");
    gen->callback([&] {
        run_general(SumParams{{c1, lambda1}, {c2, lambda2}, x01, x02}, t, grid_gen,
                    format, tol, out_path);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const check_failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
