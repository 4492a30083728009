#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "svg.hpp"
#include "triopt/energy.hpp"
#include "triopt/field.hpp"
#include "triopt/mesh.hpp"
#include "triopt/mesh_io.hpp"
#include "triopt/optimizer.hpp"
#include "triopt/whitney.hpp"

namespace fs = std::filesystem;
using namespace triopt;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNoConvergence = 3;

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string g12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// --------------------------------------------------------------------------
// Config file: flat `key = value` lines, '#' comments; flags override.
// --------------------------------------------------------------------------

std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config '" + path + "'");
    std::vector<std::pair<std::string, std::string>> kvs;
    std::string line;
    int number = 0;
    auto trim = [](std::string s) {
        const auto from = s.find_first_not_of(" \t\r");
        const auto to = s.find_last_not_of(" \t\r");
        return from == std::string::npos ? std::string() : s.substr(from, to - from + 1);
    };
    while (std::getline(in, line)) {
        ++number;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(number) +
                                     ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || key == "config")
            throw std::runtime_error("config line " + std::to_string(number) + ": bad key");
        kvs.emplace_back(key, value);
    }
    return kvs;
}

// Inserts `--key value` pairs from the config file right after the
// subcommand token, so that explicit flags (parsed later, TakeLast) win.
void inject_config(std::vector<std::string>& args) {
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
    }
    if (config_path.empty()) return;
    if (args.empty() || args[0].empty() || args[0][0] == '-') return;

    std::vector<std::string> tokens;
    for (const auto& [key, value] : read_config(config_path)) {
        tokens.push_back("--" + key);
        tokens.push_back(value);
    }
    args.insert(args.begin() + 1, tokens.begin(), tokens.end());
}

// --------------------------------------------------------------------------
// Shared run setup
// --------------------------------------------------------------------------

struct RunArgs {
    std::string mesh_path;
    std::string gen;
    std::string field;
    std::string form;
    std::string out = "out";
    std::string config;  // consumed by inject_config
    double c0 = 1.0;
    double c1 = 0.0;
    int levels = 3;
    OptimizerConfig opt;
};

Triangulation generate_mesh(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon != std::string::npos) {
        const std::string kind = spec.substr(0, colon);
        int size = 0;
        try {
            size = std::stoi(spec.substr(colon + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad generator size in '" + spec + "'");
        }
        if (kind == "interval") return uniform_interval_mesh(0.0, 1.0, size);
        if (kind == "square") return structured_square_mesh(size);
    }
    throw std::invalid_argument("unknown generator '" + spec + "', expected interval:N or square:M");
}

Triangulation load_mesh(const RunArgs& args) {
    const bool has_path = !args.mesh_path.empty();
    const bool has_gen = !args.gen.empty();
    if (has_path == has_gen)
        throw std::invalid_argument("exactly one of --mesh and --gen is required");
    if (has_path) return read_mesh_file(args.mesh_path);
    return generate_mesh(args.gen);
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
}

void write_trace_csv(const fs::path& path, const std::vector<TraceRow>& trace) {
    std::ostringstream out;
    out << "iter,phi,grad_inf,min_volume,step\n";
    for (const TraceRow& row : trace)
        out << row.iter << ',' << g17(row.phi) << ',' << g17(row.grad_inf) << ','
            << g17(row.min_volume) << ',' << g17(row.step) << '\n';
    write_file(path, out.str());
}

// --------------------------------------------------------------------------
// Commands
// --------------------------------------------------------------------------

int cmd_validate(const std::string& path) {
    Triangulation mesh;
    try {
        mesh = read_mesh_file(path);
    } catch (const ParseError& e) {
        std::cerr << "error: " << path << ": " << e.what() << "\n";
        return kExitUsage;
    }
    const ValidationReport report = validate(mesh);
    if (report.ok()) {
        std::cout << "valid: " << mesh.vertices.size() << " vertices, "
                  << mesh.cells.size() << " cells\n";
        return kExitOk;
    }
    for (const Violation& v : report.violations) {
        if (v.condition == 0)
            std::cout << "structural: " << v.what << "\n";
        else
            std::cout << "condition (" << v.condition << "): " << v.what << "\n";
    }
    std::cout << report.violations.size() << " violation(s)\n";
    return kExitValidation;
}

int cmd_optimize(const RunArgs& args, bool whitney) {
    const Triangulation initial = load_mesh(args);
    {
        const ValidationReport report = validate(initial);
        if (!report.ok()) {
            std::cerr << "error: initial mesh is invalid ("
                      << report.violations.front().what << "); run the validate command\n";
            return kExitUsage;
        }
    }
    const EnergyWeights weights(args.c0, args.c1);

    OptResult result;
    if (whitney) {
        if (args.form.empty()) throw std::invalid_argument("--form is required");
        result = optimize_form(initial, form_by_name(args.form), weights, args.opt);
    } else {
        if (args.field.empty()) throw std::invalid_argument("--field is required");
        const ScalarField f = field_by_name(args.field);
        if (f.dim != initial.dim)
            throw std::invalid_argument("field '" + args.field + "' is " +
                                        std::to_string(f.dim) + "D but the mesh is " +
                                        std::to_string(initial.dim) + "D");
        result = optimize(initial, f, weights, args.opt);
    }

    fs::create_directories(args.out);
    write_file(fs::path(args.out) / "final.meshtri", write_mesh(result.mesh));
    write_trace_csv(fs::path(args.out) / "trace.csv", result.trace);
    write_file(fs::path(args.out) / "convergence.svg", svg::render_convergence(result.trace));
    if (initial.dim == 2)
        write_file(fs::path(args.out) / "mesh.svg", svg::render_mesh_pair(initial, result.mesh));

    std::cout << "final phi         = " << g12(result.final_phi()) << "\n";
    std::cout << "gradient residual = " << g12(result.final_grad_inf()) << " (max-norm)\n";
    std::cout << "termination       = " << to_string(result.reason) << "\n";
    std::cout << "iterations        = " << result.trace.back().iter << "\n";
    std::cout << "outputs in " << args.out << "\n";

    const bool converged = result.reason == StopReason::gradient_tolerance ||
                           result.reason == StopReason::f_decrease;
    return converged ? kExitOk : kExitNoConvergence;
}

int cmd_study(const RunArgs& args) {
    if (args.field.empty()) throw std::invalid_argument("--field is required");
    if (args.gen.empty()) throw std::invalid_argument("study requires --gen interval:N or square:M");
    if (args.levels < 3) throw std::invalid_argument("study needs at least 3 levels");

    const Triangulation base = generate_mesh(args.gen);
    const MeshFamily family =
        base.dim == 1 ? MeshFamily::interval : MeshFamily::square;
    const int base_size = base.dim == 1 ? static_cast<int>(base.cells.size())
                                        : static_cast<int>(std::lround(
                                              std::sqrt(base.cells.size() / 2.0)));
    std::vector<int> sizes;
    for (int level = 0, size = base_size; level < args.levels; ++level, size *= 2)
        sizes.push_back(size);

    const ScalarField f = field_by_name(args.field);
    if (f.dim != base.dim)
        throw std::invalid_argument("field dimension does not match the mesh family");
    const auto rows = convergence_study(f, family, sizes);

    std::ostringstream csv;
    csv << "h,err_l2,err_h1,rate_l2,rate_h1\n";
    for (const StudyRow& row : rows) {
        csv << g17(row.h) << ',' << g17(row.err_l2) << ',' << g17(row.err_h1) << ',';
        csv << (row.rate_l2 ? g17(*row.rate_l2) : "na") << ',';
        csv << (row.rate_h1 ? g17(*row.rate_h1) : "na") << '\n';
    }
    fs::create_directories(args.out);
    write_file(fs::path(args.out) / "rates.csv", csv.str());

    std::cout << "h          err_l2        err_h1        rate_l2  rate_h1\n";
    for (const StudyRow& row : rows) {
        std::printf("%-10.4g %-13.6e %-13.6e %-8s %-8s\n", row.h, row.err_l2, row.err_h1,
                    row.rate_l2 ? g12(*row.rate_l2).c_str() : "na",
                    row.rate_h1 ? g12(*row.rate_h1).c_str() : "na");
    }
    std::cout << "rates written to " << (fs::path(args.out) / "rates.csv").string() << "\n";
    return kExitOk;
}

int cmd_demo_reparam(double c0, double c1) {
    const ScalarField f = field_by_name("paper1d");
    const EnergyWeights weights(c0, c1);

    const double at_identity = phi_reparam_1d(f, identity_parametrization(), weights);
    const double at_inverse = phi_reparam_1d(f, inverse_parametrization(f), weights);
    const double at_f = phi_reparam_1d(f, field_parametrization(f), weights);

    std::cout << "single-chart reparametrization of f(x) = (x + x^2)/2 on [0,1]\n";
    std::cout << "weights (c0, c1)  = (" << g12(c0) << ", " << g12(c1) << ")\n\n";
    std::cout << "sigma         phi\n";
    std::cout << "identity      " << g12(at_identity) << "\n";
    std::cout << "f_inverse     " << g12(at_inverse) << "\n";
    std::cout << "f             " << g12(at_f) << "\n\n";
    std::cout << "note: the chart constraint pins f_h(sigma(t)) = t, so sigma = f^{-1}\n"
              << "      cancels the error entirely while sigma = f leaves a strictly\n"
              << "      positive residual; the best chart is the inverse of f, not f.\n";
    return kExitOk;
}

void add_optimizer_flags(CLI::App* cmd, RunArgs& args) {
    const auto last = CLI::MultiOptionPolicy::TakeLast;
    cmd->add_option("--mesh", args.mesh_path, "mesh file (meshtri format)")
        ->multi_option_policy(last);
    cmd->add_option("--gen", args.gen, "mesh generator, interval:N or square:M")
        ->multi_option_policy(last);
    cmd->add_option("--c0", args.c0, "L2 term weight")->multi_option_policy(last);
    cmd->add_option("--c1", args.c1, "gradient term weight")->multi_option_policy(last);
    cmd->add_option("--gtol", args.opt.gtol, "gradient max-norm tolerance")
        ->multi_option_policy(last);
    cmd->add_option("--max-iters", args.opt.max_iters, "iteration cap")
        ->multi_option_policy(last);
    cmd->add_option("--out", args.out, "output directory")->multi_option_policy(last);
    cmd->add_option("--config", args.config, "key = value config file; flags override")
        ->multi_option_policy(last);
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        inject_config(args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    CLI::App app{"triangulation optimizer for weighted H1 interpolation error"};
    app.require_subcommand(1);
    const auto last = CLI::MultiOptionPolicy::TakeLast;

    std::string validate_path;
    CLI::App* validate_cmd = app.add_subcommand("validate", "check a mesh file");
    validate_cmd->add_option("mesh", validate_path, "mesh file")->required();

    RunArgs opt_args;
    CLI::App* optimize_cmd =
        app.add_subcommand("optimize", "move free vertices to minimize the field error");
    add_optimizer_flags(optimize_cmd, opt_args);
    optimize_cmd->add_option("--field", opt_args.field, "scalar field name")
        ->multi_option_policy(last);

    RunArgs whitney_args;
    CLI::App* whitney_cmd = app.add_subcommand(
        "whitney-optimize", "move free vertices to minimize the 1-form error");
    add_optimizer_flags(whitney_cmd, whitney_args);
    whitney_cmd->add_option("--form", whitney_args.form, "1-form name")
        ->multi_option_policy(last);

    RunArgs study_args;
    CLI::App* study_cmd =
        app.add_subcommand("study", "interpolation error convergence study");
    study_cmd->add_option("--gen", study_args.gen, "base mesh, interval:N or square:M")
        ->multi_option_policy(last);
    study_cmd->add_option("--field", study_args.field, "scalar field name")
        ->multi_option_policy(last);
    study_cmd->add_option("--levels", study_args.levels, "number of refinement levels")
        ->multi_option_policy(last);
    study_cmd->add_option("--out", study_args.out, "output directory")
        ->multi_option_policy(last);
    study_cmd->add_option("--config", study_args.config, "key = value config file")
        ->multi_option_policy(last);

    double demo_c0 = 1.0, demo_c1 = 0.0;
    std::string demo_config;
    CLI::App* demo_cmd = app.add_subcommand(
        "demo-reparam", "single-chart reparametrization table for paper1d");
    demo_cmd->add_option("--c0", demo_c0, "L2 term weight")->multi_option_policy(last);
    demo_cmd->add_option("--c1", demo_c1, "gradient term weight")->multi_option_policy(last);
    demo_cmd->add_option("--config", demo_config, "key = value config file")
        ->multi_option_policy(last);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (validate_cmd->parsed()) return cmd_validate(validate_path);
        if (optimize_cmd->parsed()) return cmd_optimize(opt_args, false);
        if (whitney_cmd->parsed()) return cmd_optimize(whitney_args, true);
        if (study_cmd->parsed()) return cmd_study(study_args);
        if (demo_cmd->parsed()) return cmd_demo_reparam(demo_c0, demo_c1);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InfeasibleMeshError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
