#include "odesys/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "odesys/error.hpp"

namespace odesys {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc()) throw std::runtime_error("number formatting failed");
    return std::string(buf, end);
}

std::string to_csv_text(const std::vector<std::vector<std::string>>& lines) {
    std::string out;
    for (const auto& line : lines) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (i > 0) out += ',';
            const auto& cell = line[i];
            if (cell.find_first_of(",\"\r\n") == std::string::npos) {
                out += cell;
                continue;
            }
            out += '"';
            for (char c : cell) {
                if (c == '"') out += '"';
                out += c;
            }
            out += '"';
        }
        out += "\r\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Config

Document config_to_json(const GAConfig& c) {
    Document d = Document::object();
    d["population_size"] = c.population_size;
    d["max_generations"] = c.max_generations;
    d["crossover_rate"] = c.crossover_rate;
    d["mutation_rate"] = c.mutation_rate ? Document(*c.mutation_rate) : Document(nullptr);
    d["elite_count"] = c.elite_count;
    d["tournament_size"] = c.tournament_size;
    d["relevance_threshold"] = c.relevance_threshold;
    d["stall_limit"] = c.stall_limit;
    d["rng_seed"] = c.rng_seed;
    return d;
}

namespace {

std::size_t read_count(const Document& v, const std::string& path) {
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
        throw SchemaError(path, "expected a non-negative integer");
    }
    return v.get<std::size_t>();
}

double read_real(const Document& v, const std::string& path) {
    if (!v.is_number()) throw SchemaError(path, "expected a number");
    return v.get<double>();
}

}  // namespace

GAConfig config_from_json(const Document& doc, const std::string& path) {
    GAConfig c;
    if (doc.is_null()) return c;
    if (!doc.is_object()) throw SchemaError(path, "expected an object");
    for (const auto& [key, v] : doc.items()) {
        const std::string p = path + "/" + key;
        if (key == "population_size") c.population_size = read_count(v, p);
        else if (key == "max_generations") c.max_generations = read_count(v, p);
        else if (key == "crossover_rate") c.crossover_rate = read_real(v, p);
        else if (key == "mutation_rate") c.mutation_rate = v.is_null() ? std::nullopt : std::optional(read_real(v, p));
        else if (key == "elite_count") c.elite_count = read_count(v, p);
        else if (key == "tournament_size") c.tournament_size = read_count(v, p);
        else if (key == "relevance_threshold") c.relevance_threshold = read_real(v, p);
        else if (key == "stall_limit") c.stall_limit = read_count(v, p);
        else if (key == "rng_seed") c.rng_seed = read_count(v, p);
        else throw SchemaError(p, "unknown configuration field");
    }
    return c;
}

// ---------------------------------------------------------------------------
// Results

Document generation_record_to_json(const GenerationRecord& r) {
    Document d = Document::object();
    d["generation"] = r.generation;
    d["best_u"] = r.best_u ? Document(*r.best_u) : Document(nullptr);
    d["verdict"] = to_string(r.verdict);
    d["feasible_fraction"] = r.feasible_fraction;
    return d;
}

Document run_result_to_json(const Problem& problem, const RunResult& r) {
    Document d = Document::object();
    d["problem"] = problem.name();
    d["method"] = r.method;
    d["feasible"] = r.feasible;

    Document x = Document::object();
    for (std::size_t n = 0; n < problem.variables().size() && n < r.best.size(); ++n) {
        x[problem.variables()[n].name] = r.best[n];
    }
    d["design"] = std::move(x);

    Document o = Document::object();
    for (std::size_t i = 0; i < problem.objectives().size() && i < r.objectives.size(); ++i) {
        o[problem.objectives()[i].name] = r.objectives[i];
    }
    d["objectives"] = std::move(o);

    Document p = Document::object();
    for (std::size_t c = 0; c < problem.criteria().size() && c < r.preferences.size(); ++c) {
        p[problem.criterion_label(c)] = r.preferences[c];
    }
    d["preferences"] = std::move(p);

    d["best_value"] = r.best_value;
    d["generations"] = r.generations;
    d["termination"] = r.termination;
    Document history = Document::array();
    for (const auto& h : r.history) history.push_back(h ? Document(*h) : Document(nullptr));
    d["history"] = std::move(history);
    d["warnings"] = r.warnings;
    d["config"] = config_to_json(r.config);
    return d;
}

std::string render_run_result(const Problem& problem, const RunResult& result) {
    return run_result_to_json(problem, result).dump(2) + "\n";
}

Document comparison_to_json(const ComparisonTable& t) {
    Document d = Document::object();
    d["variables"] = t.variable_names;
    d["objectives"] = t.objective_names;
    d["criteria"] = t.criterion_labels;
    Document rows = Document::array();
    for (const auto& r : t.rows) {
        Document row = Document::object();
        row["method"] = r.label;
        row["x"] = std::vector<double>(r.x.values().begin(), r.x.values().end());
        row["feasible"] = r.feasible;
        row["objectives"] = r.objectives;
        row["preferences"] = r.preferences;
        row["score"] = r.score;
        rows.push_back(std::move(row));
    }
    d["rows"] = std::move(rows);
    d["ranking"] = t.ranking;
    return d;
}

// ---------------------------------------------------------------------------
// Input files

namespace {

std::vector<double> read_vector(const Document& v, const std::string& path) {
    if (!v.is_array()) throw SchemaError(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(read_real(v[i], path + "/" + std::to_string(i)));
    return out;
}

const Document& unwrap(const Document& doc, const char* key, std::string& path) {
    if (doc.is_object() && doc.contains(key)) {
        path += std::string("/") + key;
        return doc.at(key);
    }
    return doc;
}

}  // namespace

std::vector<Alternative> alternatives_from_json(const Document& doc, const std::string& base) {
    std::string path = base;
    const auto& list = unwrap(doc, "alternatives", path);
    if (!list.is_array()) throw SchemaError(path, "expected an array of alternatives");
    std::vector<Alternative> out;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string p = path + "/" + std::to_string(i);
        const auto& e = list[i];
        Alternative a;
        if (e.is_array()) {
            a.label = "alternative " + std::to_string(i + 1);
            a.values = read_vector(e, p);
        } else if (e.is_object()) {
            if (!e.contains("x")) throw SchemaError(p + "/x", "required field is missing");
            a.values = read_vector(e.at("x"), p + "/x");
            if (e.contains("label")) {
                if (!e.at("label").is_string()) throw SchemaError(p + "/label", "expected a string");
                a.label = e.at("label").get<std::string>();
            } else {
                a.label = "alternative " + std::to_string(i + 1);
            }
        } else {
            throw SchemaError(p, "expected {label, x} or an array of numbers");
        }
        out.push_back(std::move(a));
    }
    return out;
}

std::vector<std::vector<double>> seeds_from_json(const Document& doc, const std::string& base) {
    std::string path = base;
    const auto& list = unwrap(doc, "seeds", path);
    if (!list.is_array()) throw SchemaError(path, "expected an array of design vectors");
    std::vector<std::vector<double>> out;
    for (std::size_t i = 0; i < list.size(); ++i) out.push_back(read_vector(list[i], path + "/" + std::to_string(i)));
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write '" + path + "'");
    out << text;
    if (!out) throw ValidationError("failed writing '" + path + "'");
}

}  // namespace odesys
