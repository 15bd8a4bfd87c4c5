// Command-line surface: compute incomplete/complete elliptic integral ratios
// via interscribed-polygon iteration, run ellipse and numerical-range scans,
// and verify results against quadrature references.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <thread>

#include <CLI11.hpp>

#include "ipoly/cf.hpp"
#include "ipoly/circle.hpp"
#include "ipoly/ellipse.hpp"
#include "ipoly/errors.hpp"
#include "ipoly/nr.hpp"
#include "ipoly/oracle.hpp"
#include "ipoly/pipeline.hpp"
#include "ipoly/report.hpp"

namespace {

using namespace ipoly;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct ThetaArgs {
    std::string c, r, psi, k2;
    int digits = 24;
    long budget = 1000000;
    bool verify = false;
    bool json = false;
};

struct EllipseArgs {
    std::string a, b, c;
    std::string alpha0, alpha1, alpha2, cos_psi1;
    int digits = 50;
    long budget = 1000000;
    bool verify = false;
    bool json = false;
};

struct NrArgs {
    std::string a, b1, b2, c1 = "0", c2 = "0", c3 = "0";
    int start = 3;
    std::string z0;
    int digits = 34;
    long budget = 1000000;
    bool fast = false;
    bool json = false;
    std::string trace_file;
};

void emit(const RunReport& report, bool json) {
    if (json)
        std::cout << report.to_json().dump(2) << "\n";
    else
        std::cout << report.render_text();
}

int run_theta(const ThetaArgs& args) {
    const auto t0 = Clock::now();
    PrecisionGuard guard(working_digits(args.digits));

    CirclePair pair;
    RunReport report;
    if (!args.c.empty() || !args.r.empty()) {
        if (args.c.empty() || args.r.empty())
            throw DomainError("theta: both --c and --r are required");
        pair = CirclePair::create(Real(args.c), Real(args.r));
        report.inputs["c"] = args.c;
        report.inputs["r"] = args.r;
    } else if (!args.psi.empty() && !args.k2.empty()) {
        IntegralSpec spec{Real(args.psi), Real(args.k2), args.digits};
        pair = pair_for_integral_ratio(spec);
        report.inputs["psi"] = args.psi;
        report.inputs["k2"] = args.k2;
    } else {
        throw DomainError("theta: supply --c/--r or --psi/--k2");
    }
    report.inputs["digits"] = args.digits;

    ThetaOptions opt;
    opt.digits = args.digits;
    opt.baby_budget = args.budget;
    ThetaResult result = compute_theta(pair, opt);

    report.table = &result.table;
    report.theta = to_decimal_string(result.theta, args.digits);
    report.stages["baby_iterations"] = result.stages.baby_iterations;
    report.stages["baby_records"] = result.stages.baby_records;
    report.stages["giant_sets"] = result.stages.giant_sets;
    Json pq = Json::array();
    for (const auto& a : result.stages.partial_quotients) pq.push_back(a.str());
    report.stages["partial_quotients"] = pq;
    if (result.rational) {
        report.stages["closure"] = "rational";
        report.stages["closure_n"] = result.closure->n.str();
        report.stages["closure_p"] = result.closure->p.str();
    } else {
        report.stages["delta"] = result.stages.final_delta.str(3, std::ios_base::scientific);
        const IntegralView view = integral_view(pair, result.theta, args.digits);
        report.stages["psi"] = to_decimal_string(view.psi, args.digits);
        report.stages["k2"] = to_decimal_string(view.k2, args.digits);
        report.stages["beta"] = to_decimal_string(view.beta, args.digits);
        report.stages["F"] = to_decimal_string(view.F, args.digits);
        report.stages["F_complete"] = to_decimal_string(view.F_complete, args.digits);
    }

    if (args.verify) {
        const Real oracle = theta_reference(pair, args.digits + 5);
        report.oracle_theta = to_decimal_string(oracle, args.digits);
        report.agreement_digits = agreement_digit_count(result.theta, oracle);
    }
    report.elapsed_seconds = seconds_since(t0);
    emit(report, args.json);
    return 0;
}

int run_theta_sweep(const ThetaArgs& args, int sweep, int jobs, unsigned seed) {
    // one shared working precision for all workers (the default precision of
    // the mpfr backend is process-global)
    PrecisionPin pin(std::max<unsigned>(working_digits(args.digits), args.digits + 30));
    std::atomic<int> next{0}, failures{0};
    std::vector<std::string> lines(sweep);
    auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= sweep) break;
            std::mt19937_64 rng(seed + 1000003UL * static_cast<unsigned long>(i));
            std::uniform_real_distribution<double> uc(0.05, 0.85), ur(0.05, 0.95);
            const double cd = uc(rng);
            const double rd = ur(rng) * (1 - cd) * 0.95 + 0.01;
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.12f", cd);
            const std::string cs = buf;
            std::snprintf(buf, sizeof(buf), "%.12f", rd);
            const std::string rs = buf;
            const CirclePair pair = CirclePair::create(Real(cs), Real(rs));
            ThetaOptions opt;
            opt.digits = args.digits;
            opt.baby_budget = args.budget;
            std::string status = "ok";
            int agreement = 0;
            try {
                const ThetaResult res = compute_theta(pair, opt);
                const Real oracle = theta_reference(pair, args.digits + 5);
                agreement = agreement_digit_count(res.theta, oracle);
                if (!res.rational && agreement < args.digits - 2) {
                    status = "disagree";
                    failures.fetch_add(1);
                }
            } catch (const std::exception& e) {
                status = std::string("error: ") + e.what();
                failures.fetch_add(1);
            }
            lines[i] = "c=" + cs + " r=" + rs + " agreement=" + std::to_string(agreement) +
                       " status=" + status;
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < std::max(jobs, 1); ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (const auto& line : lines) std::cout << line << "\n";
    std::cout << "sweep: " << sweep - failures.load() << "/" << sweep << " verified\n";
    return failures.load() == 0 ? 0 : 3;
}

int run_ellipse(const EllipseArgs& args) {
    const auto t0 = Clock::now();
    PrecisionGuard guard(working_digits(args.digits));

    EllipseConfig cfg;
    RunReport report;
    if (!args.a.empty() || !args.b.empty() || !args.c.empty()) {
        if (args.a.empty() || args.b.empty() || args.c.empty())
            throw DomainError("ellipse: --a, --b, --c must be supplied together");
        cfg = EllipseConfig::create(Real(args.a), Real(args.b), Real(args.c));
        report.inputs["a"] = args.a;
        report.inputs["b"] = args.b;
        report.inputs["c"] = args.c;
    } else if (!args.alpha0.empty()) {
        WeightSpec spec{Real(args.alpha0), Real(args.alpha1), Real(args.alpha2),
                        Real(args.cos_psi1)};
        cfg = ellipse_from_weights(spec);
        report.inputs["alpha0"] = args.alpha0;
        report.inputs["alpha1"] = args.alpha1;
        report.inputs["alpha2"] = args.alpha2;
        report.inputs["cos_psi1"] = args.cos_psi1;
        report.stages["a"] = to_decimal_string(cfg.a, 17);
        report.stages["b"] = to_decimal_string(cfg.b, 17);
        report.stages["c"] = to_decimal_string(cfg.c, 17);
    } else {
        throw DomainError("ellipse: supply --a/--b/--c or --alpha0/--alpha1/--alpha2/--cos-psi1");
    }
    report.inputs["digits"] = args.digits;
    report.inputs["budget"] = args.budget;

    const EllipseScanResult scan = ellipse_ratio_scan(cfg, ellipse_start_vertex(cfg), args.budget);
    report.table = &scan.table;
    report.stages["iterations"] = scan.iterations;
    if (scan.closure) {
        report.stages["closure"] = "rational";
        report.stages["closure_n"] = scan.closure->str();
        const auto& rows = scan.table.rows;
        if (!rows.empty())
            report.theta = to_decimal_string(
                real_from_bigint(rows.back().p) / real_from_bigint(rows.back().q), args.digits);
    } else if (!scan.table.rows.empty()) {
        const auto& last = scan.table.back();
        report.theta =
            to_decimal_string(real_from_bigint(last.p) / real_from_bigint(last.q), args.digits);
        report.stages["theta_note"] = "last convergent p/q";
    }
    if (args.verify) {
        const Real oracle = ellipse_theta_reference(cfg, args.digits);
        report.oracle_theta = to_decimal_string(oracle, args.digits);
        if (!scan.table.rows.empty()) {
            const auto& last = scan.table.back();
            report.agreement_digits = agreement_digit_count(
                real_from_bigint(last.p) / real_from_bigint(last.q), oracle);
        }
    }
    report.elapsed_seconds = seconds_since(t0);
    emit(report, args.json);
    return 0;
}

struct TraceFile {
    std::FILE* f = nullptr;
    ~TraceFile() {
        if (f) std::fclose(f);
    }
    static void sink(void* ctx, long k, const Real& cps, const Real& sps, const Real& lam2,
                     const Real& logh) {
        auto* self = static_cast<TraceFile*>(ctx);
        std::fprintf(self->f, "%ld,%s,%s,%s,%s\n", k, cps.str(17).c_str(), sps.str(17).c_str(),
                     lam2.str(17).c_str(), logh.str(17).c_str());
    }
};

int run_nr(const NrArgs& args) {
    const auto t0 = Clock::now();
    // --digits is the trajectory working precision itself (default 34)
    PrecisionGuard guard(std::max(args.digits, 34));

    if (args.a.empty() || args.b1.empty() || args.b2.empty())
        throw DomainError("nr: --a, --b1, --b2 are required");
    const NRConfig cfg = NRConfig::create(Real(args.a), Real(args.b1), Real(args.b2),
                                          Real(args.c1), Real(args.c2), Real(args.c3), args.start);

    std::optional<Complex> z0;
    if (!args.z0.empty()) {
        const auto comma = args.z0.find(',');
        if (comma == std::string::npos)
            throw DomainError("nr: --z0 expects \"re,im\"");
        z0 = Complex(Real(args.z0.substr(0, comma)), Real(args.z0.substr(comma + 1)));
    }

    ClassifyOptions opt;
    opt.budget = args.budget;
    opt.fast_path = args.fast;

    TraceFile trace;
    TraceOptions trace_opt;
    if (!args.trace_file.empty()) {
        trace.f = std::fopen(args.trace_file.c_str(), "w");
        if (!trace.f) throw DomainError("nr: cannot open trace file " + args.trace_file);
        std::fprintf(trace.f, "k,cos_psi,sin_psi,lambda_sq,log_h\n");
        trace_opt.sink = &TraceFile::sink;
        trace_opt.ctx = &trace;
    }

    const DynamicsVerdict verdict = classify_dynamics(cfg, opt, z0, trace_opt);

    RunReport report;
    report.inputs["a"] = args.a;
    report.inputs["b1"] = args.b1;
    report.inputs["b2"] = args.b2;
    report.inputs["c1"] = args.c1;
    report.inputs["c2"] = args.c2;
    report.inputs["c3"] = args.c3;
    report.inputs["start"] = args.start;
    if (!args.z0.empty()) report.inputs["z0"] = args.z0;
    report.inputs["budget"] = args.budget;
    report.inputs["digits"] = args.digits;

    report.stages["steps"] = verdict.steps;
    report.stages["records"] = static_cast<long>(verdict.records.size());

    Json v;
    switch (verdict.kind) {
        case DynamicsVerdict::Kind::Regular: v["kind"] = "regular"; break;
        case DynamicsVerdict::Kind::Attractive: v["kind"] = "attractive"; break;
        case DynamicsVerdict::Kind::Repelling: v["kind"] = "repelling"; break;
        default: v["kind"] = "undecided"; break;
    }
    if (verdict.period) v["period"] = verdict.period->str();
    if (verdict.product) v["product"] = to_decimal_string(*verdict.product, 10);
    v["log_h_slope"] = verdict.log_h_slope.str(6, std::ios_base::scientific);
    v["log_h_range"] = verdict.log_h_range.str(6, std::ios_base::scientific);
    if (verdict.start_return)
        v["start_return"] = verdict.start_return->str(3, std::ios_base::scientific);
    if (!verdict.cycle.empty()) {
        Json cyc = Json::array();
        for (const auto& z : verdict.cycle) {
            Json p;
            p["re"] = to_decimal_string(z.re, 17);
            p["im"] = to_decimal_string(z.im, 17);
            cyc.push_back(p);
        }
        v["cycle"] = cyc;
    }
    report.verdict = v;
    if (verdict.kind == DynamicsVerdict::Kind::Regular) report.table = &verdict.table;
    report.elapsed_seconds = seconds_since(t0);
    emit(report, args.json);
    return 0;
}

void add_theta_flags(CLI::App* cmd, ThetaArgs& args) {
    cmd->add_option("--c", args.c, "inner circle center abscissa");
    cmd->add_option("--r", args.r, "inner circle radius");
    cmd->add_option("--psi", args.psi, "amplitude of the incomplete integral, in (0, pi/2)");
    cmd->add_option("--k2", args.k2, "modulus squared, in (0, 1)");
    cmd->add_option("--digits", args.digits, "requested significant digits of theta");
    cmd->add_option("--budget", args.budget, "baby-step iteration budget");
    cmd->add_flag("--verify", args.verify, "compare against the quadrature reference");
    cmd->add_flag("--json", args.json, "machine-readable report");
}

void add_ellipse_flags(CLI::App* cmd, EllipseArgs& args) {
    cmd->add_option("--a", args.a, "semi-axis along x");
    cmd->add_option("--b", args.b, "semi-axis along y");
    cmd->add_option("--c", args.c, "center abscissa");
    cmd->add_option("--alpha0", args.alpha0, "weight alpha0");
    cmd->add_option("--alpha1", args.alpha1, "weight alpha1");
    cmd->add_option("--alpha2", args.alpha2, "weight alpha2");
    cmd->add_option("--cos-psi1", args.cos_psi1, "start-chord cosine");
    cmd->add_option("--digits", args.digits, "working precision in digits");
    cmd->add_option("--budget", args.budget, "vertex iteration budget");
    cmd->add_flag("--verify", args.verify, "compare against the quadrature reference");
    cmd->add_flag("--json", args.json, "machine-readable report");
}

void add_nr_flags(CLI::App* cmd, NrArgs& args) {
    cmd->add_option("--a", args.a, "matrix entry a")->required();
    cmd->add_option("--b1", args.b1, "matrix entry b1")->required();
    cmd->add_option("--b2", args.b2, "matrix entry b2")->required();
    cmd->add_option("--c1", args.c1, "matrix entry c1");
    cmd->add_option("--c2", args.c2, "matrix entry c2");
    cmd->add_option("--c3", args.c3, "matrix entry c3");
    cmd->add_option("--start", args.start, "starting point case (3, 4, or 5)")
        ->check(CLI::IsMember({3, 4, 5}));
    cmd->add_option("--z0", args.z0, "custom start vertex \"re,im\" on the unit circle");
    cmd->add_option("--digits", args.digits, "trajectory working precision in digits");
    cmd->add_option("--budget", args.budget, "iteration budget");
    cmd->add_flag("--fast", args.fast, "hardware-double stepping with periodic audits");
    cmd->add_option("--trace", args.trace_file, "write a per-step CSV trace to FILE");
    cmd->add_flag("--json", args.json, "machine-readable report");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"elliptic integral ratios via interscribed polygons"};
    app.set_config("--config");
    app.require_subcommand(1);

    ThetaArgs theta_args;
    EllipseArgs ellipse_args;
    NrArgs nr_args;
    ThetaArgs vtheta_args;
    EllipseArgs vellipse_args;
    NrArgs vnr_args;
    int sweep = 0, jobs = 1;
    unsigned seed = 20240601;

    auto* theta_cmd = app.add_subcommand("theta", "rotation number / integral ratio for circles");
    add_theta_flags(theta_cmd, theta_args);

    auto* ellipse_cmd = app.add_subcommand("ellipse", "integral ratio for an inner ellipse");
    add_ellipse_flags(ellipse_cmd, ellipse_args);

    auto* nr_cmd = app.add_subcommand("nr", "numerical-range boundary dynamics");
    add_nr_flags(nr_cmd, nr_args);

    auto* verify_cmd = app.add_subcommand("verify", "run with the oracle comparison enabled");
    auto* vtheta_cmd = verify_cmd->add_subcommand("theta");
    add_theta_flags(vtheta_cmd, vtheta_args);
    vtheta_cmd->add_option("--sweep", sweep, "verify N randomized configurations");
    vtheta_cmd->add_option("--jobs", jobs, "parallel workers for --sweep");
    vtheta_cmd->add_option("--seed", seed, "sweep RNG seed");
    auto* vellipse_cmd = verify_cmd->add_subcommand("ellipse");
    add_ellipse_flags(vellipse_cmd, vellipse_args);
    auto* vnr_cmd = verify_cmd->add_subcommand("nr");
    add_nr_flags(vnr_cmd, vnr_args);
    verify_cmd->require_subcommand(1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (theta_cmd->parsed()) return run_theta(theta_args);
        if (ellipse_cmd->parsed()) return run_ellipse(ellipse_args);
        if (nr_cmd->parsed()) return run_nr(nr_args);
        if (vtheta_cmd->parsed()) {
            vtheta_args.verify = true;
            if (sweep > 0) return run_theta_sweep(vtheta_args, sweep, jobs, seed);
            return run_theta(vtheta_args);
        }
        if (vellipse_cmd->parsed()) {
            vellipse_args.verify = true;
            return run_ellipse(vellipse_args);
        }
        if (vnr_cmd->parsed()) return run_nr(vnr_args);
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const PrecisionError& e) {
        std::cerr << "precision error: " << e.what() << "\n";
        return 3;
    } catch (const BudgetError& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
