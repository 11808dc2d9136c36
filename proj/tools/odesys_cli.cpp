// odesys command-line front end: run, compare, serve, des, case.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "odesys/baselines.hpp"
#include "odesys/cases.hpp"
#include "odesys/floating_wind.hpp"
#include "odesys/io.hpp"
#include "odesys/service/http_api.hpp"
#include "odesys/service/store.hpp"

namespace fs = std::filesystem;
using namespace odesys;

namespace {

struct SolverFlags {
    std::optional<unsigned long long> rng_seed;
    std::optional<std::size_t> pop;
    std::optional<std::size_t> gens;
    std::optional<double> p_star;

    void attach(CLI::App* cmd) {
        cmd->add_option("--rng-seed", rng_seed, "Random seed");
        cmd->add_option("--pop", pop, "Population size");
        cmd->add_option("--gens", gens, "Maximum number of generations");
        cmd->add_option("--p-star", p_star, "Relevance threshold P* for the second aggregation pass");
    }

    GAConfig config() const {
        GAConfig c;
        if (rng_seed) c.rng_seed = *rng_seed;
        if (pop) c.population_size = *pop;
        if (gens) c.max_generations = *gens;
        if (p_star) c.relevance_threshold = *p_star;
        c.validate();
        return c;
    }
};

/// As given, then under ODESYS_DATA_DIR, then the build's data directory,
/// then as a bundled problem name.
Document resolve_problem(const std::string& arg) {
    if (fs::exists(arg)) return read_document(arg);
    std::vector<fs::path> dirs;
    if (const char* env = std::getenv("ODESYS_DATA_DIR"); env && *env) dirs.emplace_back(env);
#ifdef ODESYS_DATA_DIR
    dirs.emplace_back(ODESYS_DATA_DIR);
#endif
    for (const auto& d : dirs) {
        for (const auto& candidate : {d / arg, d / (arg + ".json")}) {
            if (fs::exists(candidate)) return read_document(candidate.string());
        }
    }
    const auto stem = fs::path(arg).stem().string();
    for (const auto& name : bundled_problem_names()) {
        if (name == stem) return bundled_document(name);
    }
    throw ValidationError("cannot find problem file '" + arg + "'");
}

std::string design_text(const DesignVector& x) {
    std::string s = "(";
    for (std::size_t n = 0; n < x.size(); ++n) {
        if (n) s += ", ";
        s += format_number(x[n]);
    }
    return s + ")";
}

std::string file_safe(std::string s) {
    for (auto& c : s) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
    }
    return s;
}

int cmd_run(const std::string& problem_arg, const std::string& method, const SolverFlags& flags,
            const std::string& seeds_file, const std::string& out_dir) {
    const auto& hooks = builtin_registry();
    const auto problem = load_problem(resolve_problem(problem_arg), hooks);
    const auto label = MethodLabel::parse(method);
    const auto config = flags.config();
    std::vector<std::vector<double>> seeds;
    if (!seeds_file.empty()) seeds = seeds_from_json(read_document(seeds_file));

    const auto result = run_method(problem, label, config, seeds);

    fs::create_directories(out_dir);
    write_text_file((fs::path(out_dir) / "result.json").string(), render_run_result(problem, result));
    std::string jsonl;
    for (const auto& rec : result.diagnostics) jsonl += generation_record_to_json(rec).dump() + "\n";
    write_text_file((fs::path(out_dir) / "diagnostics.jsonl").string(), jsonl);

    for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << result.method << " " << problem.name() << ": x=" << design_text(result.best)
              << " value=" << format_number(result.best_value) << " generations=" << result.generations << " ("
              << result.termination << ")\n";
    return 0;
}

/// One CSV per preference curve: the knots followed by each row's marker.
void write_plot_data(const Problem& problem, const ComparisonTable& table, const fs::path& dir) {
    const auto& criteria = problem.criteria();
    for (std::size_t c = 0; c < criteria.size(); ++c) {
        const auto& cr = criteria[c];
        std::vector<std::vector<std::string>> lines{{"kind", "label", "objective", "preference"}};
        for (const auto& k : cr.curve.knots()) {
            lines.push_back({"knot", "", format_number(k.objective), format_number(k.score)});
        }
        for (const auto& row : table.rows) {
            lines.push_back({"marker", row.label, format_number(row.objectives[cr.objective]),
                             format_number(row.preferences[c])});
        }
        const auto name = "curve_" + file_safe(problem.stakeholders()[cr.stakeholder].name) + "_" +
                          file_safe(problem.objectives()[cr.objective].name) + ".csv";
        write_text_file((dir / name).string(), to_csv_text(lines));
    }
}

int cmd_compare(const std::string& problem_arg, const std::string& alternatives_file, bool automatic,
                const SolverFlags& flags, const std::string& out_dir) {
    const auto& hooks = builtin_registry();
    const auto problem = load_problem(resolve_problem(problem_arg), hooks);

    ComparisonTable table;
    if (automatic) {
        table = compare_methods(problem, flags.config()).table;
    } else {
        table = evaluate_alternatives(problem, alternatives_from_json(read_document(alternatives_file)));
    }

    const auto csv = table.to_csv();
    fs::create_directories(out_dir);
    write_text_file((fs::path(out_dir) / "comparison.csv").string(), csv);
    write_plot_data(problem, table, out_dir);
    std::cout << csv;
    return 0;
}

int cmd_des(int x1, int x2, int x3) {
    const auto des = fw::run_des(x1, x2, x3);
    std::cout << des.event_log_csv();
    std::cerr << "project duration " << format_number(des.project_duration) << " days, " << des.installed()
              << " anchors installed\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"odesys: preference-based multi-objective design optimization"};
    app.require_subcommand(1);

    std::string problem_arg, method = "imap", seeds_file, out_dir = ".", alternatives_file;
    bool automatic = false;
    SolverFlags run_flags, compare_flags;

    auto* run = app.add_subcommand("run", "Optimize a problem with one method");
    run->add_option("problem", problem_arg, "Problem file or bundled problem name")->required();
    run->add_option("--method", method, "imap | minmax | brute | sodo:<objective>[:min|:max]");
    run_flags.attach(run);
    run->add_option("--seeds", seeds_file, "JSON file with initial design vectors");
    run->add_option("--out", out_dir, "Directory for result.json and diagnostics.jsonl");

    auto* compare = app.add_subcommand("compare", "Tabulate alternatives or method results");
    compare->add_option("problem", problem_arg, "Problem file or bundled problem name")->required();
    auto* alt_opt = compare->add_option("--alternatives", alternatives_file, "JSON file with design alternatives");
    auto* auto_flag = compare->add_flag("--auto", automatic, "Run the single-objective, min-max and IMAP methods");
    alt_opt->excludes(auto_flag);
    compare_flags.attach(compare);
    compare->add_option("--out", out_dir, "Directory for comparison.csv and curve plot data");

    std::string host = "127.0.0.1", store_dir;
    int port = 8080;
    auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
    serve->add_option("--host", host, "Listen address");
    serve->add_option("--port", port, "Listen port");
    serve->add_option("--store", store_dir, "Store directory (default ODESYS_STORE_DIR or ./odesys_store)");

    int x1 = 0, x2 = 0, x3 = 0;
    auto* des = app.add_subcommand("des", "Print the installation event log for a floating-wind fleet");
    des->add_option("small", x1, "Small OCVs")->required();
    des->add_option("large", x2, "Large OCVs")->required();
    des->add_option("barges", x3, "Barges")->required();

    std::string case_name;
    auto* show = app.add_subcommand("case", "Print a bundled problem document");
    show->add_option("name", case_name, "Bundled problem name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*run) return cmd_run(problem_arg, method, run_flags, seeds_file, out_dir);
        if (*compare) {
            if (!automatic && alternatives_file.empty()) {
                throw ValidationError("compare needs --alternatives <file> or --auto");
            }
            return cmd_compare(problem_arg, alternatives_file, automatic, compare_flags, out_dir);
        }
        if (*serve) {
            service::SessionStore store(store_dir.empty() ? service::SessionStore::default_root() : fs::path(store_dir));
            std::cerr << "serving on http://" << host << ":" << port << " (store " << store.root().string() << ")\n";
            service::serve(host, port, store, builtin_registry());
            return 0;
        }
        if (*des) return cmd_des(x1, x2, x3);
        if (*show) {
            std::cout << bundled_document(case_name).dump(2) << "\n";
            return 0;
        }
    } catch (const NoFeasiblePointError& e) {
        std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
        return 2;
    } catch (const SchemaError& e) {
        std::cerr << "error [" << e.code() << "] at " << e.path() << ": " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
