// Command-line front end: every library operation is reachable through a
// subcommand, with series/measure/report payloads carried as JSON (CSV for
// radius scans).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mlbaz/function_classes.hpp"
#include "mlbaz/json_io.hpp"
#include "mlbaz/ml_operator.hpp"
#include "mlbaz/series.hpp"
#include "mlbaz/special_functions.hpp"
#include "mlbaz/theorems.hpp"

namespace {

using mlbaz::Cplx;
using nlohmann::json;

/// Accepts "re", "re+imi", "re-imi" or a pure imaginary "imi" (e.g. "1.5",
/// "1+0.2i", "-2i").
Cplx parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty complex literal");
    if (s.back() != 'i' && s.back() != 'I') return Cplx(std::stod(s), 0.0);

    s.pop_back();  // drop the trailing i
    std::size_t split = std::string::npos;
    for (std::size_t pos = 1; pos < s.size(); ++pos) {
        if ((s[pos] == '+' || s[pos] == '-') && s[pos - 1] != 'e' && s[pos - 1] != 'E')
            split = pos;
    }
    if (split == std::string::npos) {
        if (s.empty() || s == "+" || s == "-") s += "1";
        return Cplx(0.0, std::stod(s));
    }
    std::string im = s.substr(split);
    if (im == "+" || im == "-") im += "1";
    return Cplx(std::stod(s.substr(0, split)), std::stod(im));
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read input file: " + path);
    json j;
    in >> j;
    return j;
}

void emit(const json& j, const std::string& out_path) {
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("cannot write output file: " + out_path);
        out << text;
    }
}

void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("cannot write output file: " + out_path);
        out << text;
    }
}

std::size_t default_series_order() {
    if (const char* env = std::getenv("ML_BAZ_ORDER")) {
        const long v = std::atol(env);
        if (v >= 1) return static_cast<std::size_t>(v);
    }
    return mlbaz::default_order;
}

struct OperatorFlags {
    int m = 0;
    double lambda = 1.0;
    std::string alpha = "0";
    std::string beta = "1";

    void attach(CLI::App* cmd) {
        cmd->add_option("--m", m, "operator iteration count m (>= 0)");
        cmd->add_option("--lambda", lambda, "operator step weight lambda (>= 0)");
        cmd->add_option("--alpha", alpha, "operator alpha, complex (\"re\" or \"re+imi\")");
        cmd->add_option("--beta", beta, "operator beta, complex");
    }
    mlbaz::OperatorParams params() const {
        mlbaz::OperatorParams p{m, lambda, parse_complex(alpha), parse_complex(beta)};
        validate(p);
        return p;
    }
};

struct ClassFlags {
    double k = 2.0;
    double rho = 0.0;
    double vartheta = 1.0;
    std::string gamma = "1";

    void attach(CLI::App* cmd) {
        cmd->add_option("--k", k, "boundary-rotation budget k (>= 2)");
        cmd->add_option("--rho", rho, "level rho in [0, 1)");
        cmd->add_option("--theta", vartheta, "quotient power vartheta (> 0)");
        cmd->add_option("--gamma", gamma, "derivative-term weight gamma, complex");
    }
    mlbaz::ClassParams params() const {
        mlbaz::ClassParams cp{k, rho, vartheta, parse_complex(gamma)};
        validate(cp);
        return cp;
    }
};

struct ProbeFlags {
    std::vector<double> radii{0.5, 0.9, 0.99};
    int angles = 1024;
    double margin_tol = 1e-6;
    bool exact = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--radii", radii, "probe radii, strictly increasing in (0, 1)");
        cmd->add_option("--angles", angles, "angular resolution (>= 64)");
        cmd->add_option("--margin-tol", margin_tol, "verdict tolerance band");
        cmd->add_flag("--exact", exact,
                      "treat input coefficients as exact (disable the truncation allowance)");
    }
    mlbaz::DiskProbe probe() const {
        mlbaz::DiskProbe p{radii, angles, margin_tol};
        validate(p);
        return p;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mittag-Leffler operator / boundary-rotation class toolkit"};
    app.require_subcommand(1);

    const std::size_t env_order = default_series_order();
    std::string input_path, output_path, g_path, p_path;
    std::size_t order = env_order;

    // --- apply ---
    auto* cmd_apply = app.add_subcommand("apply", "apply the operator to a class-A series");
    OperatorFlags apply_op;
    apply_op.attach(cmd_apply);
    cmd_apply->add_option("-i,--input", input_path, "series JSON")->required();
    cmd_apply->add_option("-o,--output", output_path, "output path (default: stdout)");

    // --- bernardi ---
    auto* cmd_bern = app.add_subcommand("bernardi", "apply the Bernardi averaging operator");
    double sigma = 1.0;
    cmd_bern->add_option("--sigma", sigma, "Bernardi parameter sigma (> -1)");
    cmd_bern->add_option("-i,--input", input_path, "series JSON")->required();
    cmd_bern->add_option("-o,--output", output_path, "output path");

    // --- functional ---
    auto* cmd_func = app.add_subcommand("functional", "evaluate the class functional of f");
    OperatorFlags func_op;
    ClassFlags func_cp;
    func_op.attach(cmd_func);
    func_cp.attach(cmd_func);
    cmd_func->add_option("-i,--input", input_path, "class-A series JSON")->required();
    cmd_func->add_option("-o,--output", output_path, "output path");

    // --- membership ---
    auto* cmd_mem = app.add_subcommand("membership", "disk membership tests");
    std::string kind = "pk";
    OperatorFlags mem_op;
    ClassFlags mem_cp;
    ProbeFlags mem_probe;
    cmd_mem->add_option("--kind", kind, "p | pk | functional | b2 | b3 | b4 | m")
        ->check(CLI::IsMember({"p", "pk", "functional", "b2", "b3", "b4", "m"}));
    mem_op.attach(cmd_mem);
    mem_cp.attach(cmd_mem);
    mem_probe.attach(cmd_mem);
    cmd_mem->add_option("-i,--input", input_path, "series JSON")->required();
    cmd_mem->add_option("-o,--output", output_path, "output path");

    // --- inverse ---
    auto* cmd_inv = app.add_subcommand(
        "inverse", "solve for the class-A series whose functional equals the target");
    OperatorFlags inv_op;
    ClassFlags inv_cp;
    inv_op.attach(cmd_inv);
    inv_cp.attach(cmd_inv);
    cmd_inv->add_option("-i,--input", input_path, "target series JSON (normalized)")->required();
    cmd_inv->add_option("-o,--output", output_path, "output path");

    // --- radius ---
    auto* cmd_rad = app.add_subcommand("radius", "closed-form radius (and empirical radius of f)");
    OperatorFlags rad_op;
    ClassFlags rad_cp;
    ProbeFlags rad_probe;
    rad_op.attach(cmd_rad);
    rad_cp.attach(cmd_rad);
    rad_probe.attach(cmd_rad);
    cmd_rad->add_option("-i,--input", input_path, "optional class-A series JSON for the empirical radius");
    cmd_rad->add_option("-o,--output", output_path, "output path");

    // --- sharp ---
    auto* cmd_sharp = app.add_subcommand("sharp", "boundary extremal function of the class");
    OperatorFlags sharp_op;
    ClassFlags sharp_cp;
    sharp_op.attach(cmd_sharp);
    sharp_cp.attach(cmd_sharp);
    cmd_sharp->add_option("--order", order, "series order of the result");
    cmd_sharp->add_option("-o,--output", output_path, "output path");

    // --- iota ---
    auto* cmd_iota = app.add_subcommand("iota", "Bernardi-transfer level");
    double iota_rho = 0.0, iota_gamma = 1.0, iota_sigma = 0.0;
    cmd_iota->add_option("--rho", iota_rho, "level rho in [0, 1)");
    cmd_iota->add_option("--gamma", iota_gamma, "weight gamma (> 0, real)");
    cmd_iota->add_option("--sigma", iota_sigma, "Bernardi parameter sigma (> -1)");
    cmd_iota->add_option("-o,--output", output_path, "output path");

    // --- bazilevic ---
    auto* cmd_baz = app.add_subcommand("bazilevic", "series of the Bazilevic integral (tau = 0)");
    double baz_theta = 1.0, baz_tau = 0.0;
    cmd_baz->add_option("--theta", baz_theta, "power vartheta (> 0)");
    cmd_baz->add_option("--tau", baz_tau, "must be 0 (series model)");
    cmd_baz->add_option("-g,--g-input", g_path, "starlike reference series JSON")->required();
    cmd_baz->add_option("-p,--p-input", p_path, "Caratheodory factor series JSON")->required();
    cmd_baz->add_option("--order", order, "series order of the result");
    cmd_baz->add_option("-o,--output", output_path, "output path");

    // --- verify ---
    auto* cmd_ver = app.add_subcommand("verify", "seeded randomized theorem verification");
    std::string theorem = "2.1";
    int trials = 200, threads = 1;
    std::uint64_t seed = 0;
    bool csv = false;
    OperatorFlags ver_op;
    ClassFlags ver_cp;
    ProbeFlags ver_probe;
    double ver_sigma = 0.0, ver_gamma1 = 0.0;
    cmd_ver->add_option("--theorem", theorem, "2.1 | 2.2 | 3.1 | 4.1")
        ->check(CLI::IsMember({"2.1", "2.2", "3.1", "4.1"}));
    cmd_ver->add_option("--trials", trials, "number of randomized trials");
    cmd_ver->add_option("--seed", seed, "base seed (trials derive independent streams)");
    cmd_ver->add_option("--threads", threads, "worker threads (report is identical for any count)");
    cmd_ver->add_option("--order", order, "series order used by the trials");
    cmd_ver->add_flag("--csv", csv, "emit per-trial CSV rows (theorem 3.1 scans)");
    bool pin_cp = false, pin_op = false;
    cmd_ver->add_flag("--pin-class", pin_cp, "use --k/--rho/--theta/--gamma for every trial");
    cmd_ver->add_flag("--pin-operator", pin_op, "use --m/--lambda/--alpha/--beta for every trial");
    ver_cp.attach(cmd_ver);
    ver_op.attach(cmd_ver);
    ver_probe.attach(cmd_ver);
    cmd_ver->add_option("--sigma", ver_sigma, "pin sigma (theorem 4.1)");
    cmd_ver->add_option("--gamma1", ver_gamma1, "pin gamma1 (theorem 2.2; gamma2 from --gamma)");
    cmd_ver->add_option("-o,--output", output_path, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        using namespace mlbaz;

        if (cmd_apply->parsed()) {
            const TruncatedSeries f = io::series_from_json(read_json(input_path));
            emit(io::to_json(apply_operator(f, apply_op.params())), output_path);
        } else if (cmd_bern->parsed()) {
            const TruncatedSeries f = io::series_from_json(read_json(input_path));
            emit(io::to_json(bernardi(f, BernardiParams{sigma})), output_path);
        } else if (cmd_func->parsed()) {
            const TruncatedSeries f = io::series_from_json(read_json(input_path));
            emit(io::to_json(class_functional(f, func_cp.params(), func_op.params())),
                 output_path);
        } else if (cmd_mem->parsed()) {
            const TruncatedSeries s = io::series_from_json(read_json(input_path));
            const DiskProbe probe = mem_probe.probe();
            const ClassParams cp = mem_cp.params();
            const bool allow = !mem_probe.exact;
            json out;
            if (kind == "p") {
                out = io::to_json(in_p_rho(s, cp.rho, probe, allow));
            } else if (kind == "pk") {
                out = io::to_json(in_pk_rho(s, cp.k, cp.rho, probe, allow));
            } else if (kind == "functional") {
                const NormalizedSeries g = class_functional(s, cp, mem_op.params());
                out = io::to_json(in_pk_rho(g, cp.k, cp.rho, probe, allow));
            } else {
                NamedSubclass which = NamedSubclass::quotient;
                if (kind == "b2") which = NamedSubclass::b2;
                else if (kind == "b3") which = NamedSubclass::starlike;
                else if (kind == "b4") which = NamedSubclass::bounded_turning;
                out = io::to_json(in_named_subclass(s, which, cp.vartheta, cp.rho, probe));
            }
            emit(out, output_path);
        } else if (cmd_inv->parsed()) {
            const NormalizedSeries target = io::series_from_json(read_json(input_path));
            emit(io::to_json(solve_functional_inverse(target, inv_cp.params(), inv_op.params())),
                 output_path);
        } else if (cmd_rad->parsed()) {
            const ClassParams cp = rad_cp.params();
            const OperatorParams op = rad_op.params();
            const double g = real_gamma(cp, "radius");
            json out{{"r_formula", radius_r1(op.lambda, g, cp.vartheta)}};
            if (!input_path.empty()) {
                const TruncatedSeries f = io::series_from_json(read_json(input_path));
                const RadiusResult res = empirical_radius(f, cp, op, rad_probe.probe());
                out = io::to_json(res);
            }
            emit(out, output_path);
        } else if (cmd_sharp->parsed()) {
            emit(io::to_json(sharp_function(sharp_cp.params(), sharp_op.params(), order)),
                 output_path);
        } else if (cmd_iota->parsed()) {
            const auto [level, i1] = iota(iota_rho, iota_gamma, iota_sigma);
            emit(json{{"iota", level}, {"iota1", i1}}, output_path);
        } else if (cmd_baz->parsed()) {
            BazilevicParams bp;
            bp.vartheta = baz_theta;
            bp.tau = baz_tau;
            bp.g = io::series_from_json(read_json(g_path));
            bp.p = io::series_from_json(read_json(p_path));
            emit(io::to_json(bazilevic_construct(bp, order)), output_path);
        } else if (cmd_ver->parsed()) {
            VerifyOptions opt;
            opt.trials = trials;
            opt.seed = seed;
            opt.threads = threads;
            opt.order = order;
            opt.probe = ver_probe.probe();
            const bool pin_sigma = cmd_ver->count("--sigma") > 0;
            const bool pin_gamma1 = cmd_ver->count("--gamma1") > 0;
            if (pin_cp) opt.fixed_class = ver_cp.params();
            if (pin_op) opt.fixed_operator = ver_op.params();
            if (pin_sigma) opt.fixed_sigma = ver_sigma;
            if (pin_gamma1)
                opt.fixed_gammas = std::make_pair(ver_gamma1, parse_complex(ver_cp.gamma).real());

            TheoremReport rep;
            json extra{{"order", opt.order},
                       {"angles", opt.probe.angles},
                       {"margin_tol", opt.probe.margin_tol}};
            if (pin_cp) extra["class"] = io::to_json(*opt.fixed_class);
            if (pin_op) extra["operator"] = io::to_json(*opt.fixed_operator);
            if (theorem == "2.1") {
                rep = verify_t21(opt);
            } else if (theorem == "2.2") {
                rep = verify_t22(opt);
            } else if (theorem == "4.1") {
                if (pin_sigma) extra["sigma"] = ver_sigma;
                rep = verify_t41(opt);
            } else {
                auto [report, rows] = verify_t31(opt);
                rep = report;
                if (csv) {
                    std::ostringstream os;
                    os.precision(17);
                    os << "lambda_gamma,vartheta,r_formula,r_empirical,gap\n";
                    for (const auto& row : rows)
                        os << row.lambda_gamma << ',' << row.vartheta << ','
                           << row.result.r_formula << ',' << row.result.r_empirical << ','
                           << row.result.gap << '\n';
                    emit_text(os.str(), output_path);
                    return rep.failures > 0 ? 3 : 0;
                }
            }
            emit(io::to_json(rep, std::move(extra)), output_path);
            return rep.failures > 0 ? 3 : 0;
        }
        return 0;
    } catch (const std::exception& e) {
        emit(json{{"error", e.what()}}, "");
        return 1;
    }
}
