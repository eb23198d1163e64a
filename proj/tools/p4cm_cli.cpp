// p4cm: command-line front end. Subcommands solve, classify, asymptote, fredholm, integral, verify.
// Exit codes: 0 success, 2 invalid input, 3 numerical failure, 4 verification failure.
// Errors go to stderr as {"code", "message", "context"}.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "p4cm/asymptotics.hpp"
#include "p4cm/errors.hpp"
#include "p4cm/fredholm.hpp"
#include "p4cm/integrals.hpp"
#include "p4cm/io.hpp"
#include "p4cm/painleve.hpp"
#include "p4cm/verify.hpp"

namespace fs = std::filesystem;
using namespace p4cm;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitVerification = 4;

// Input rejected before any computation.
struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExitWith {
    int code;
};

json context;  // command and flags, echoed in error bodies

int fail(int code, const std::string& message, const json& extra = json::object()) {
    json body{{"code", code}, {"message", message}, {"context", context}};
    for (const auto& [k, v] : extra.items()) body["context"][k] = v;
    std::cerr << body.dump() << '\n';
    return code;
}

double default_tol() {
    const char* env = std::getenv("P4CM_TOL");
    if (env == nullptr || *env == '\0') return 1e-9;
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0') throw InvalidInput(std::string("P4CM_TOL is not a number: ") + env);
    return v;
}

void check_tol(double tol) {
    if (!(tol >= 1e-12 && tol <= 1e-4)) throw InvalidInput("tol must lie in [1e-12, 1e-4]");
}

void check_range(double from, double to) {
    if (!(from > to)) throw InvalidInput("--from must exceed --to");
}

void check_output(const std::string& path) {
    if (path == "-") return;
    const fs::path parent = fs::path(path).parent_path();
    if (!parent.empty() && !fs::is_directory(parent)) throw InvalidInput("output directory does not exist: " + parent.string());
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << text;
    if (!f) throw NumericalFailure("could not write " + path);
}

fs::path poles_path(const std::string& csv_path) {
    fs::path p(csv_path);
    return p.parent_path() / (p.stem().string() + ".poles.json");
}

std::vector<double> grid(double from, double to, double step) {
    if (!(step > 0.0)) throw InvalidInput("--step must be positive");
    std::vector<double> xs;
    const auto n = static_cast<long>(std::floor((from - to) / step + 1e-9));
    for (long i = 0; i <= n; ++i) xs.push_back(from - static_cast<double>(i) * step);
    return xs;
}

// --- solve ---------------------------------------------------------------------

struct SolveArgs {
    double alpha = 0.0, kappa = 0.0, from = 8.0, to = -5.0;
    std::optional<double> tol, step;
    std::string format = "csv", output = "-";
};

void run_solve(const SolveArgs& a) {
    const double tol = a.tol.value_or(default_tol());
    check_tol(tol);
    check_range(a.from, a.to);
    check_output(a.output);
    if (a.step && !(*a.step > 0.0)) throw InvalidInput("--step must be positive");

    const Trajectory traj = integrate({a.alpha, a.kappa}, a.from, a.to, tol);
    const auto rows = trajectory_rows(traj, a.step);
    if (a.format == "json") {
        write_text(a.output, trajectory_json(traj, rows).dump(2) + "\n");
        return;
    }
    std::ostringstream csv;
    write_trajectory_csv(csv, rows);
    write_text(a.output, csv.str());
    if (a.output != "-") write_text(poles_path(a.output).string(), poles_json(traj).dump(2) + "\n");
}

// --- classify ------------------------------------------------------------------

struct ClassifyArgs {
    std::optional<double> alpha, kappa;
    std::vector<double> alpha_grid, kappa_grid;  // lo hi n
    unsigned threads = 0;
    std::string output = "-";
};

json classify_one(double alpha, double kappa) {
    try {
        return to_json(connection_data(alpha, kappa), alpha, kappa);
    } catch (const Error& e) {
        return json{{"alpha", alpha}, {"kappa", kappa}, {"error", e.what()}};
    }
}

std::vector<double> linspace(const std::vector<double>& g, const char* flag) {
    const double n = g[2];
    if (!(n >= 1.0) || n != std::floor(n)) throw InvalidInput(std::string(flag) + ": count must be a positive integer");
    if (n == 1.0) return {g[0]};
    std::vector<double> out;
    for (int i = 0; i < static_cast<int>(n); ++i) out.push_back(g[0] + (g[1] - g[0]) * i / (n - 1.0));
    return out;
}

void run_classify(const ClassifyArgs& a) {
    check_output(a.output);
    const bool grid_mode = !a.alpha_grid.empty() || !a.kappa_grid.empty();
    if (!grid_mode) {
        if (!a.alpha || !a.kappa) throw InvalidInput("classify needs --alpha and --kappa, or --alpha-grid and --kappa-grid");
        const ConnectionData d = connection_data(*a.alpha, *a.kappa);
        write_text(a.output, to_json(d, *a.alpha, *a.kappa).dump(2) + "\n");
        return;
    }
    if (a.alpha_grid.empty() || a.kappa_grid.empty()) throw InvalidInput("grid mode needs both --alpha-grid and --kappa-grid");
    const auto alphas = linspace(a.alpha_grid, "--alpha-grid");
    const auto kappas = linspace(a.kappa_grid, "--kappa-grid");

    std::vector<json> results(alphas.size() * kappas.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < results.size(); i = next++) {
            results[i] = classify_one(alphas[i / kappas.size()], kappas[i % kappas.size()]);
        }
    };
    const unsigned n = std::max(1u, a.threads != 0 ? a.threads : std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    json out = json::array();
    for (auto& r : results) out.push_back(std::move(r));
    write_text(a.output, out.dump(2) + "\n");
}

// --- asymptote -----------------------------------------------------------------

struct AsymptoteArgs {
    double alpha = 0.0, kappa = 0.0, from = -8.0, to = -20.0, step = 0.01;
    bool compare = false;
    std::optional<double> tol;
    std::string output = "-";
};

void run_asymptote(const AsymptoteArgs& a) {
    const double tol = a.tol.value_or(default_tol());
    check_tol(tol);
    check_range(a.from, a.to);
    check_output(a.output);
    const auto xs = grid(a.from, a.to, a.step);
    const ConnectionData data = connection_data(a.alpha, a.kappa);

    std::optional<Trajectory> traj;
    if (a.compare) traj = integrate({a.alpha, a.kappa}, std::max(8.0, a.from + 1.0), a.to - 0.5, tol);

    std::ostringstream csv;
    csv << (a.compare ? "x,q,q_asym,H,H_asym\n" : "x,q_asym,H_asym\n");
    for (double x : xs) {
        double qa = 0.0, ha = 0.0;
        try {
            qa = q_asym(x, data, a.alpha, a.kappa);
            ha = h_asym(x, data, a.alpha, a.kappa);
        } catch (const PoleError&) {
            continue;  // on a predicted singularity
        }
        csv << format_double(x) << ',';
        if (traj) {
            bool near = false;
            for (const PoleRecord& p : traj->poles()) near = near || std::abs(x - p.location) < traj->pole_radius();
            if (near) {
                csv << "nan," << format_double(qa) << ",nan," << format_double(ha) << '\n';
                continue;
            }
            const auto [q, dq] = traj->eval(x);
            csv << format_double(q) << ',' << format_double(qa) << ',' << format_double(hamiltonian(q, dq, x, a.alpha))
                << ',' << format_double(ha) << '\n';
        } else {
            csv << format_double(qa) << ',' << format_double(ha) << '\n';
        }
    }
    write_text(a.output, csv.str());
}

// --- fredholm ------------------------------------------------------------------

struct FredholmArgs {
    double nu = 1.0, gamma = 0.0, from = 3.0, to = -1.0, step = 0.25, h = 1e-3;
    int m = 80;
    std::string format = "csv", output = "-";
};

void run_fredholm(const FredholmArgs& a) {
    check_range(a.from, a.to);
    check_output(a.output);
    if (a.m < 1) throw InvalidInput("--m must be positive");
    if (!(a.h >= 1e-5 && a.h <= 1e-2)) throw InvalidInput("--dx must lie in [1e-5, 1e-2]");
    std::vector<DetResult> rows;
    for (double x : grid(a.from, a.to, a.step)) {
        rows.push_back(sigma_from_det({a.nu, a.gamma}, x, default_quadrature(x, a.m), a.h));
    }
    if (a.format == "json") {
        json j{{"nu", a.nu}, {"gamma", a.gamma}, {"m", a.m}};
        json xs = json::array(), det = json::array(), logdet = json::array(), sigma = json::array();
        for (const DetResult& r : rows) {
            xs.push_back(r.x);
            det.push_back(r.det);
            logdet.push_back(r.logdet);
            sigma.push_back(r.sigma);
        }
        j["x"] = xs;
        j["det"] = det;
        j["logdet"] = logdet;
        j["sigma"] = sigma;
        write_text(a.output, j.dump(2) + "\n");
        return;
    }
    std::ostringstream csv;
    write_det_csv(csv, rows);
    write_text(a.output, csv.str());
}

// --- integral ------------------------------------------------------------------

struct IntegralArgs {
    double alpha = 0.0, kappa = 0.0, c = -1.0, d = 1.0, x_far = -35.0;
    std::optional<double> tol;
    std::string output = "-";
};

void run_integral(const IntegralArgs& a) {
    const double tol = a.tol.value_or(1e-10);
    check_tol(tol);
    check_output(a.output);
    if (!(a.c < 0.0 && a.d > 0.0)) throw InvalidInput("need c < 0 < d");
    if (!(a.x_far < a.c - 10.0)) throw InvalidInput("--x-far must lie below c - 10");
    const Regime r = classify(a.alpha, a.kappa);
    if (r != Regime::Oscillatory && r != Regime::Separatrix) {
        throw InvalidInput("total integrals exist for the oscillatory and separatrix regimes only; got " +
                           std::string(regime_name(r)));
    }
    TotalIntegralOptions opts;
    opts.x_far = a.x_far;
    opts.tol = tol;
    const IntegralReport rep = verify_total_integral({a.alpha, a.kappa}, a.c, a.d, opts);
    write_text(a.output, to_json(rep).dump(2) + "\n");
}

// --- verify --------------------------------------------------------------------

struct VerifyArgs {
    std::string suite;
    SuiteOptions opts;
    std::string output = "-";
};

bool run_verify(const VerifyArgs& a) {
    check_tol(a.opts.tol);
    check_output(a.output);
    std::vector<std::string> names;
    if (a.suite == "all") {
        names = suite_names();
    } else {
        names = {a.suite};
    }
    json out = json::array();
    bool ok = true;
    for (const auto& n : names) {
        const SuiteReport rep = run_suite(n, a.opts);
        ok = ok && rep.passed();
        out.push_back(to_json(rep));
    }
    write_text(a.output, (names.size() == 1 ? out[0] : out).dump(2) + "\n");
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Clarkson-McLeod solutions of the fourth Painleve equation"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto* s = app.add_subcommand("solve", "integrate q(x; alpha, kappa) and write x,q,dq,H,sigma");
    s->add_option("--alpha", solve.alpha, "PIV parameter")->required();
    s->add_option("--kappa", solve.kappa, "amplitude at +infinity")->required();
    s->add_option("--from", solve.from, "start (upper end)")->capture_default_str();
    s->add_option("--to", solve.to, "end (lower end)")->capture_default_str();
    s->add_option("--tol", solve.tol, "local tolerance (default: P4CM_TOL or 1e-9)");
    s->add_option("--step", solve.step, "uniform output spacing (default: integrator steps)");
    s->add_option("--format", solve.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    s->add_option("-o,--output", solve.output, "file, or - for stdout; csv also writes <name>.poles.json")->capture_default_str();

    ClassifyArgs cls;
    auto* c = app.add_subcommand("classify", "regime and connection data");
    c->add_option("--alpha", cls.alpha);
    c->add_option("--kappa", cls.kappa);
    c->add_option("--alpha-grid", cls.alpha_grid, "lo hi n")->expected(3);
    c->add_option("--kappa-grid", cls.kappa_grid, "lo hi n")->expected(3);
    c->add_option("--threads", cls.threads, "worker threads for grids (0: all cores)");
    c->add_option("-o,--output", cls.output)->capture_default_str();

    AsymptoteArgs asy;
    auto* y = app.add_subcommand("asymptote", "leading asymptotics of q and H on a grid");
    y->add_option("--alpha", asy.alpha)->required();
    y->add_option("--kappa", asy.kappa)->required();
    y->add_option("--from", asy.from)->capture_default_str();
    y->add_option("--to", asy.to)->capture_default_str();
    y->add_option("--step", asy.step)->capture_default_str();
    y->add_flag("--compare", asy.compare, "add the integrated q and H");
    y->add_option("--tol", asy.tol);
    y->add_option("-o,--output", asy.output)->capture_default_str();

    FredholmArgs fr;
    auto* f = app.add_subcommand("fredholm", "det(I - gamma K_nu,x), logdet and sigma on a grid");
    f->add_option("--nu", fr.nu)->required();
    f->add_option("--gamma", fr.gamma)->required();
    f->add_option("--from", fr.from)->capture_default_str();
    f->add_option("--to", fr.to)->capture_default_str();
    f->add_option("--step", fr.step)->capture_default_str();
    f->add_option("--m", fr.m, "quadrature nodes")->capture_default_str();
    f->add_option("--dx", fr.h, "difference step for sigma")->capture_default_str();
    f->add_option("--format", fr.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    f->add_option("-o,--output", fr.output)->capture_default_str();

    IntegralArgs in;
    auto* g = app.add_subcommand("integral", "regularised total integral of q against its closed form");
    g->add_option("--alpha", in.alpha)->required();
    g->add_option("--kappa", in.kappa)->required();
    g->add_option("--c", in.c)->capture_default_str();
    g->add_option("--d", in.d)->capture_default_str();
    g->add_option("--x-far", in.x_far)->capture_default_str();
    g->add_option("--tol", in.tol, "default 1e-10");
    g->add_option("-o,--output", in.output)->capture_default_str();

    VerifyArgs ver;
    std::vector<std::string> suites = suite_names();
    suites.push_back("all");
    auto* v = app.add_subcommand("verify", "run a verification suite");
    v->add_option("--suite", ver.suite)->required()->check(CLI::IsMember(suites));
    v->add_option("--alpha", ver.opts.alpha)->capture_default_str();
    v->add_option("--kappa", ver.opts.kappa)->capture_default_str();
    v->add_option("--nu", ver.opts.nu)->capture_default_str();
    v->add_option("--gamma", ver.opts.gamma)->capture_default_str();
    v->add_option("--tol", ver.opts.tol)->capture_default_str();
    v->add_option("-o,--output", ver.output)->capture_default_str();

    context = json{{"argv", json::array()}};
    for (int i = 1; i < argc; ++i) context["argv"].push_back(argv[i]);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(kExitInvalid, e.what());
    }

    try {
        if (s->parsed()) {
            run_solve(solve);
        } else if (c->parsed()) {
            run_classify(cls);
        } else if (y->parsed()) {
            run_asymptote(asy);
        } else if (f->parsed()) {
            run_fredholm(fr);
        } else if (g->parsed()) {
            run_integral(in);
        } else if (v->parsed()) {
            if (!run_verify(ver)) return fail(kExitVerification, "verification failed", {{"suite", ver.suite}});
        }
    } catch (const InvalidInput& e) {
        return fail(kExitInvalid, e.what());
    } catch (const DomainError& e) {
        return fail(kExitInvalid, e.what());
    } catch (const NumericalFailure& e) {
        return fail(kExitNumerical, e.what(), {{"where", e.where()}});
    } catch (const Error& e) {
        return fail(kExitNumerical, e.what());
    }
    return 0;
}
