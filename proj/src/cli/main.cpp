// fraclab command-line driver.
//
// Subcommands expose the library layer by layer: `specfun` evaluates the
// special functions, `table1` tabulates the critical times of backward
// fractional diffusion, `spectrum` writes the singular-value spectrum of a
// discrete forward map, and `invert` runs reconstruction demos on synthetic
// exact data described by a key=value config file.
//
// Exit codes: 0 success, 1 usage or config error, 2 domain or numerical
// error, 3 I/O error.

#include "fraclab/errors.hpp"
#include "fraclab/inverse.hpp"
#include "fraclab/numcore.hpp"
#include "fraclab/sfd.hpp"
#include "fraclab/specfun.hpp"
#include "fraclab/tfd.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace {

using namespace fraclab;

constexpr double PI = 3.14159265358979323846;

std::string sig15(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", x);
    return buf;
}

std::string sig15(const Cplx& z) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%.15g%+.15gi", z.real(), z.imag());
    return buf;
}

std::string fixed4(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", x);
    return buf;
}

/// A problem with a config file or its contents; mapped to exit code 1.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Flat key=value config file: one pair per line, `#` starts a comment,
/// blank lines ignored. Keys the command never reads are rejected.
class Config {
public:
    explicit Config(const std::string& path) : path_(path) {
        std::ifstream in(path);
        if (!in.good()) throw config_error("cannot read config file: " + path);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const size_t hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            const std::string stripped = trim(line);
            if (stripped.empty()) continue;
            const size_t eq = stripped.find('=');
            if (eq == std::string::npos)
                throw config_error(path + ":" + std::to_string(line_no) +
                                   ": expected key=value, got '" + stripped + "'");
            const std::string key = trim(stripped.substr(0, eq));
            const std::string value = trim(stripped.substr(eq + 1));
            if (key.empty())
                throw config_error(path + ":" + std::to_string(line_no) + ": empty key");
            if (values_.count(key))
                throw config_error(path + ": duplicate key '" + key + "'");
            values_[key] = value;
        }
    }

    double number(const std::string& key, double fallback) {
        if (!values_.count(key)) return fallback;
        consumed_.insert(key);
        const std::string& text = values_[key];
        size_t pos = 0;
        double parsed = 0.0;
        try {
            parsed = std::stod(text, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != text.size())
            throw config_error(path_ + ": value for '" + key + "' is not a number: '" +
                               text + "'");
        return parsed;
    }

    int integer(const std::string& key, int fallback) {
        if (!values_.count(key)) return fallback;
        consumed_.insert(key);
        const std::string& text = values_[key];
        size_t pos = 0;
        long parsed = 0;
        try {
            parsed = std::stol(text, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != text.size())
            throw config_error(path_ + ": value for '" + key + "' is not an integer: '" +
                               text + "'");
        return static_cast<int>(parsed);
    }

    std::string text(const std::string& key, const std::string& fallback) {
        if (!values_.count(key)) return fallback;
        consumed_.insert(key);
        return values_[key];
    }

    /// Rejects keys that no accessor consumed; call after all reads.
    void reject_unconsumed() const {
        for (const auto& [key, value] : values_)
            if (!consumed_.count(key))
                throw config_error(path_ + ": unknown key '" + key + "'");
    }

private:
    static std::string trim(const std::string& s) {
        const size_t first = s.find_first_not_of(" \t\r");
        if (first == std::string::npos) return "";
        const size_t last = s.find_last_not_of(" \t\r");
        return s.substr(first, last - first + 1);
    }

    std::string path_;
    std::map<std::string, std::string> values_;
    std::set<std::string> consumed_;
};

double rel_l2(const std::vector<double>& got, const std::vector<double>& want) {
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < got.size(); ++i) {
        num += (got[i] - want[i]) * (got[i] - want[i]);
        den += want[i] * want[i];
    }
    return std::sqrt(num / den);
}

// ---------------------------------------------------------------------------
// specfun
// ---------------------------------------------------------------------------

void setup_specfun(CLI::App& app) {
    auto* sf = app.add_subcommand("specfun", "Evaluate the special functions");
    sf->require_subcommand(1);

    {
        auto* cmd = sf->add_subcommand("ml", "Mittag-Leffler value E_{alpha,beta}(z)");
        auto alpha = std::make_shared<double>(0.0);
        auto beta = std::make_shared<double>(0.0);
        auto z = std::make_shared<double>(0.0);
        cmd->add_option("--alpha", *alpha, "order alpha, in (0, 2]")->required();
        cmd->add_option("--beta", *beta, "weight beta")->required();
        cmd->add_option("--z", *z, "real argument")->required();
        cmd->callback([alpha, beta, z] {
            std::cout << sig15(ml(*alpha, *beta, Cplx(*z, 0.0)).real()) << "\n";
        });
    }
    {
        auto* cmd = sf->add_subcommand("wright", "Wright value W_{rho,mu}(-x)");
        auto rho = std::make_shared<double>(0.0);
        auto mu = std::make_shared<double>(0.0);
        auto x = std::make_shared<double>(0.0);
        cmd->add_option("--rho", *rho, "order rho, in (-1, 0)")->required();
        cmd->add_option("--mu", *mu, "weight mu, < 1")->required();
        cmd->add_option("--x", *x, "argument x >= 0; the function is evaluated at -x")
            ->required();
        cmd->callback([rho, mu, x] {
            std::cout << sig15(wright_neg(WrightParams{*rho, *mu}, *x)) << "\n";
        });
    }
    {
        auto* cmd = sf->add_subcommand(
            "kfun", "Free-space fundamental solution K_alpha(x, t) of the time-fractional "
                    "diffusion equation");
        auto alpha = std::make_shared<double>(0.0);
        auto x = std::make_shared<double>(0.0);
        auto t = std::make_shared<double>(0.0);
        cmd->add_option("--alpha", *alpha, "order alpha, in (0, 1]")->required();
        cmd->add_option("--x", *x, "space point")->required();
        cmd->add_option("--t", *t, "time, > 0")->required();
        cmd->callback([alpha, x, t] {
            std::cout << sig15(fundamental_solution(*alpha, *x, *t)) << "\n";
        });
    }
    {
        auto* cmd = sf->add_subcommand(
            "zeros", "Zeros lambda of E_{beta,w}(-lambda), ordered by modulus");
        auto beta = std::make_shared<double>(0.0);
        auto weight = std::make_shared<double>(2.0);
        auto count = std::make_shared<int>(0);
        cmd->add_option("--beta", *beta, "order beta, in (1, 2]")->required();
        cmd->add_option("--count", *count, "how many zeros, 1..64")->required();
        cmd->add_option("--weight-beta", *weight, "weight w: 2 or beta")
            ->capture_default_str();
        cmd->callback([beta, weight, count] {
            for (const Cplx& z : ml_zeros(*beta, *weight, *count))
                std::cout << sig15(z) << "\n";
        });
    }
}

// ---------------------------------------------------------------------------
// table1
// ---------------------------------------------------------------------------

void setup_table1(CLI::App& app) {
    auto* cmd = app.add_subcommand(
        "table1", "Critical times T* of backward fractional diffusion for orders "
                  "{1/4, 1/2, 3/4} and modes J in {3, 5, 10}, 4 decimal places");
    auto out = std::make_shared<std::string>("table1.csv");
    cmd->add_option("--out", *out, "output CSV path")->capture_default_str();
    cmd->callback([out] {
        const double alphas[] = {0.25, 0.5, 0.75};
        const int modes[] = {3, 5, 10};
        const std::vector<std::string> header = {"alpha", "J=3", "J=5", "J=10"};
        double cells[9];
        parallel_for(9, [&alphas, &modes, &cells](int k) {
            cells[k] = critical_time(alphas[k / 3], modes[k % 3], 1e-6, 1.0);
        });
        std::vector<std::vector<std::string>> rows;
        for (int i = 0; i < 3; ++i) {
            std::vector<std::string> row = {csv_number(alphas[i])};
            for (int j = 0; j < 3; ++j) row.push_back(fixed4(cells[3 * i + j]));
            rows.push_back(row);
        }
        write_csv(*out, header, rows);
        for (size_t c = 0; c < header.size(); ++c)
            std::cout << header[c] << (c + 1 < header.size() ? "," : "\n");
        for (const auto& row : rows)
            for (size_t c = 0; c < row.size(); ++c)
                std::cout << row[c] << (c + 1 < row.size() ? "," : "\n");
    });
}

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

struct SpectrumOpts {
    double order = 0.0;
    double T = 1.0;
    int n = 100;
    int K = 100;
    std::string out = "spectrum.csv";
    std::string observe = "flux";
};

void report_spectrum(const std::string& label, const DenseMatrix& map,
                     const SpectrumOpts& o) {
    const ConditioningReport report =
        conditioning_report(map, label, o.order, o.T, o.n, o.K);
    write_spectrum_csv(report, o.out);
    std::cout << sig15(report.cond) << "\n";
}

CLI::App* add_spectrum_problem(CLI::App* spectrum, const std::string& name,
                               const std::string& help,
                               const std::shared_ptr<SpectrumOpts>& o,
                               const std::string& order_flag,
                               const std::string& order_help) {
    auto* cmd = spectrum->add_subcommand(name, help);
    cmd->add_option(order_flag, o->order, order_help)->required();
    cmd->add_option("--T", o->T, "final time")->capture_default_str();
    cmd->add_option("--n", o->n, "number of space cells")->capture_default_str();
    cmd->add_option("--K", o->K, "number of time steps")->capture_default_str();
    cmd->add_option("--out", o->out, "output CSV path")->capture_default_str();
    return cmd;
}

void setup_spectrum(CLI::App& app) {
    auto* spectrum = app.add_subcommand(
        "spectrum", "Assemble a discrete forward map, print its condition number, and "
                    "write the singular-value spectrum as CSV");
    spectrum->require_subcommand(1);

    const std::string alpha_help = "time-fractional order alpha, in (0, 1]";
    const std::string beta_help = "space-fractional order beta, in (1, 2)";

    {
        auto o = std::make_shared<SpectrumOpts>();
        auto* cmd = add_spectrum_problem(
            spectrum, "tfd-backward", "final-time data -> initial data", o, "--alpha",
            alpha_help);
        cmd->callback([o] {
            const Grid1D grid(0.0, 1.0, o->n);
            report_spectrum("tfd-backward", map_backward(o->order, grid, o->T, o->K), *o);
        });
    }
    {
        auto o = std::make_shared<SpectrumOpts>();
        auto* cmd = add_spectrum_problem(
            spectrum, "tfd-sideways", "left-boundary flux history -> right-boundary "
                                      "trace history",
            o, "--alpha", alpha_help);
        cmd->callback([o] {
            const Grid1D grid(0.0, 1.0, o->n);
            report_spectrum("tfd-sideways", map_sideways(o->order, grid, o->T, o->K), *o);
        });
    }
    {
        auto o = std::make_shared<SpectrumOpts>();
        auto* cmd = add_spectrum_problem(
            spectrum, "tfd-source-space", "space-dependent source -> final-time data", o,
            "--alpha", alpha_help);
        cmd->callback([o] {
            const Grid1D grid(0.0, 1.0, o->n);
            report_spectrum("tfd-source-space", map_source_space(o->order, grid, o->T, o->K),
                            *o);
        });
    }
    {
        auto o = std::make_shared<SpectrumOpts>();
        auto* cmd = add_spectrum_problem(
            spectrum, "tfd-source-time", "time-dependent source amplitude -> observation "
                                         "(unit space profile)",
            o, "--alpha", alpha_help);
        cmd->add_option("--observe", o->observe,
                        "observation functional: flux (left-boundary flux history) or "
                        "final (final-time profile)")
            ->check(CLI::IsMember({"flux", "final"}))
            ->capture_default_str();
        cmd->callback([o] {
            const Grid1D grid(0.0, 1.0, o->n);
            const std::vector<double> qx(grid.n_nodes(), 1.0);
            const SourceTimeData kind = o->observe == "flux" ? SourceTimeData::flux_at_0
                                                             : SourceTimeData::final_time;
            report_spectrum("tfd-source-time",
                            map_source_time(o->order, grid, o->T, o->K, qx, kind), *o);
        });
    }
    {
        auto o = std::make_shared<SpectrumOpts>();
        auto* cmd = add_spectrum_problem(
            spectrum, "sfd-backward", "final-time data -> initial data, space-fractional "
                                      "evolution",
            o, "--beta", beta_help);
        cmd->callback([o] {
            const Grid1D grid(0.0, 1.0, o->n);
            report_spectrum("sfd-backward", map_backward_space(o->order, grid, o->T, o->K),
                            *o);
        });
    }
    {
        auto o = std::make_shared<SpectrumOpts>();
        auto* cmd = add_spectrum_problem(
            spectrum, "sfd-sideways-0", "Cauchy data at x = 0 -> opposite boundary trace",
            o, "--beta", beta_help);
        cmd->callback([o] {
            const Grid1D grid(0.0, 1.0, o->n);
            report_spectrum(
                "sfd-sideways-0",
                map_sideways_space(o->order, grid, o->T, o->K, CauchySite::cauchy_at_0),
                *o);
        });
    }
    {
        auto o = std::make_shared<SpectrumOpts>();
        auto* cmd = add_spectrum_problem(
            spectrum, "sfd-sideways-1", "Cauchy data at x = 1 -> opposite boundary trace",
            o, "--beta", beta_help);
        cmd->callback([o] {
            const Grid1D grid(0.0, 1.0, o->n);
            report_spectrum(
                "sfd-sideways-1",
                map_sideways_space(o->order, grid, o->T, o->K, CauchySite::cauchy_at_1),
                *o);
        });
    }
}

// ---------------------------------------------------------------------------
// invert
// ---------------------------------------------------------------------------

void run_invert_backward(const std::string& config_path) {
    Config cfg(config_path);
    const double alpha = cfg.number("alpha", 0.5);
    const double T = cfg.number("T", 0.02);
    const int modes = cfg.integer("modes", 10);
    const std::string out = cfg.text("out", "backward.csv");
    cfg.reject_unconsumed();

    std::vector<double> coefficients(std::max(modes, 0));
    for (int j = 0; j < modes; ++j) coefficients[j] = 1.0 / (j + 1);
    const std::vector<SpectralData> truth = sine_modes(coefficients);

    std::vector<SpectralData> data = truth;
    for (SpectralData& mode : data)
        mode.coefficient *=
            ml(alpha, 1.0, Cplx(-mode.lambda * std::pow(T, alpha), 0.0)).real();
    const std::vector<SpectralData> recovered = backward_reconstruct(alpha, T, data);

    double max_error = 0.0;
    std::vector<std::vector<std::string>> rows;
    for (size_t j = 0; j < truth.size(); ++j) {
        const double err = std::fabs(recovered[j].coefficient - truth[j].coefficient);
        max_error = std::max(max_error, err);
        rows.push_back({std::to_string(truth[j].index), csv_number(truth[j].lambda),
                        csv_number(truth[j].coefficient), csv_number(data[j].coefficient),
                        csv_number(recovered[j].coefficient), csv_number(err)});
    }
    write_csv(out,
              {"index", "lambda", "true_coefficient", "data_coefficient",
               "recovered_coefficient", "abs_error"},
              rows);
    std::cout << sig15(max_error) << "\n";
}

void run_invert_source_space(const std::string& config_path) {
    Config cfg(config_path);
    const double alpha = cfg.number("alpha", 0.5);
    const double T = cfg.number("T", 1.0);
    const int modes = cfg.integer("modes", 8);
    const std::string out = cfg.text("out", "source_space.csv");
    cfg.reject_unconsumed();

    std::vector<double> coefficients(std::max(modes, 0));
    for (int j = 0; j < modes; ++j) coefficients[j] = 1.0 / (j + 1);
    const std::vector<SpectralData> truth = sine_modes(coefficients);

    std::vector<SpectralData> data = truth;
    for (SpectralData& mode : data) {
        const double relax =
            ml(alpha, 1.0, Cplx(-mode.lambda * std::pow(T, alpha), 0.0)).real();
        mode.coefficient *= (1.0 - relax) / mode.lambda;
    }
    const std::vector<SpectralData> recovered = source_space_reconstruct(alpha, T, data);

    double max_error = 0.0;
    std::vector<std::vector<std::string>> rows;
    for (size_t j = 0; j < truth.size(); ++j) {
        const double err = std::fabs(recovered[j].coefficient - truth[j].coefficient);
        max_error = std::max(max_error, err);
        rows.push_back({std::to_string(truth[j].index), csv_number(truth[j].lambda),
                        csv_number(truth[j].coefficient), csv_number(data[j].coefficient),
                        csv_number(recovered[j].coefficient), csv_number(err)});
    }
    write_csv(out,
              {"index", "lambda", "true_coefficient", "data_coefficient",
               "recovered_coefficient", "abs_error"},
              rows);
    std::cout << sig15(max_error) << "\n";
}

void run_invert_potential(const std::string& config_path) {
    Config cfg(config_path);
    const double alpha = cfg.number("alpha", 0.5);
    const double T = cfg.number("T", 0.1);
    const int n = cfg.integer("n", 100);
    const int K = cfg.integer("K", 100);
    const int iterations = cfg.integer("iterations", 8);
    const std::string out = cfg.text("out", "potential.csv");
    cfg.reject_unconsumed();

    const Grid1D grid(0.0, 1.0, n);
    std::vector<double> truth(grid.n_nodes());
    for (int i = 0; i < grid.n_nodes(); ++i) {
        const double x = grid.node(i);
        truth[i] = x <= 0.5 ? 1.0 + 2.0 * x : 1.0 + 2.0 * (1.0 - x);
    }

    // Exact synthetic data: final-time profile of the forward problem with the
    // true potential, unit initial state, insulated walls.
    TfdProblem forward;
    forward.alpha = alpha;
    forward.grid = grid;
    forward.T = T;
    forward.n_steps = K;
    forward.q = truth;
    forward.v.assign(grid.n_nodes(), 1.0);
    forward.left = BoundaryKind::neumann;
    forward.right = BoundaryKind::neumann;
    const DenseMatrix table = solve_tfd(forward);
    std::vector<double> g(grid.n_nodes());
    for (int i = 0; i < grid.n_nodes(); ++i) g[i] = table(i, K);

    const std::vector<double> q0(grid.n_nodes(), 1.0);
    const PotentialRecovery rec =
        potential_fixed_point(alpha, T, grid, K, g, forward.v, q0, iterations);

    std::vector<std::vector<std::string>> rows;
    double final_error = 0.0;
    for (int k = 1; k < static_cast<int>(rec.iterates.size()); ++k) {
        final_error = rel_l2(rec.iterates[k], truth);
        rows.push_back({std::to_string(k), csv_number(final_error),
                        csv_number(rec.step_changes[k - 1])});
    }
    write_csv(out, {"iteration", "rel_l2_error", "step_change"}, rows);
    std::cout << sig15(final_error) << "\n";
}

void run_invert_jones(const std::string& config_path) {
    Config cfg(config_path);
    const double T = cfg.number("T", 1.0);
    const int K = cfg.integer("K", 40);
    const double value = cfg.number("value", 2.0);
    const int iterations = cfg.integer("iterations", 30);
    const std::string out = cfg.text("out", "jones.csv");
    cfg.reject_unconsumed();
    if (K < 1) throw config_error(config_path + ": K must be at least 1");
    if (!(value > 0.0)) throw config_error(config_path + ": value must be positive");

    // Manufactured data for the constant coefficient a(t) = value with the
    // linear flux history psi(t) = t: g(t) = 2 sqrt(value * t) / sqrt(pi).
    std::vector<double> psi(K + 1), g(K + 1);
    for (int k = 0; k <= K; ++k) {
        psi[k] = T * k / K;
        g[k] = 2.0 * std::sqrt(value * psi[k]) / std::sqrt(PI);
    }
    const JonesResult rec = jones_fixed_point(g, psi, T, iterations);

    std::vector<std::vector<std::string>> rows;
    double final_error = 0.0;
    for (size_t it = 0; it < rec.iterates.size(); ++it) {
        double worst = 0.0;
        for (double a : rec.iterates[it]) worst = std::max(worst, std::fabs(a - value));
        final_error = worst;
        rows.push_back({std::to_string(it), csv_number(worst)});
    }
    write_csv(out, {"iteration", "max_abs_error"}, rows);
    std::cout << sig15(final_error) << "\n";
}

void setup_invert(CLI::App& app) {
    auto* invert = app.add_subcommand(
        "invert", "Run a reconstruction on synthetic exact data from a key=value config "
                  "file and write the iterate/error trace as CSV");
    invert->require_subcommand(1);

    struct Task {
        const char* name;
        const char* help;
        void (*run)(const std::string&);
        const char* keys;
    };
    const Task tasks[] = {
        {"backward", "recover sine-mode initial data from final-time data", //
         run_invert_backward, "keys: alpha, T, modes, out"},
        {"source-space", "recover a space-dependent source from final-time data",
         run_invert_source_space, "keys: alpha, T, modes, out"},
        {"potential", "recover a potential from final-time data by fixed-point iteration",
         run_invert_potential, "keys: alpha, T, n, K, iterations, out"},
        {"jones", "recover a constant diffusion coefficient from boundary data",
         run_invert_jones, "keys: T, K, value, iterations, out"},
    };
    for (const Task& task : tasks) {
        auto* cmd = invert->add_subcommand(task.name, task.help);
        auto config_path = std::make_shared<std::string>();
        cmd->add_option("--config", *config_path,
                        std::string("config file (") + task.keys + ")")
            ->required();
        auto run = task.run;
        cmd->callback([run, config_path] { run(*config_path); });
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fraclab: forward solvers, spectra, and inversion demos for "
                 "time- and space-fractional diffusion"};
    app.require_subcommand(1);
    setup_specfun(app);
    setup_table1(app);
    setup_spectrum(app);
    setup_invert(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
