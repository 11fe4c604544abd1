#include "alm/config.hpp"

#include "alm/errors.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace alm {

namespace {

// Minimal TOML reader covering this project's flat config schema:
// [section] headers, key = value lines, scalars (number, bool, "string"),
// arrays of numbers and arrays of number pairs, '#' comments.
struct TomlValue {
    enum class Kind { Number, Bool, String, NumberArray, PairArray } kind;
    double number = 0.0;
    bool boolean = false;
    std::string text;
    std::vector<double> numbers;
    std::vector<std::pair<double, double>> pairs;
};

using TomlTable = std::map<std::string, std::map<std::string, TomlValue>>;

std::string strip(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// removes a trailing comment that is not inside a quoted string
std::string strip_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        if (line[i] == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

double parse_number(const std::string& tok, int line_no) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0') {
        throw ConfigError("config line " + std::to_string(line_no) + ": bad number '" + tok + "'");
    }
    return v;
}

TomlValue parse_value(const std::string& raw, int line_no) {
    TomlValue v;
    const std::string s = strip(raw);
    if (s.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": missing value");
    if (s.front() == '"') {
        if (s.size() < 2 || s.back() != '"') {
            throw ConfigError("config line " + std::to_string(line_no) + ": unterminated string");
        }
        v.kind = TomlValue::Kind::String;
        v.text = s.substr(1, s.size() - 2);
        return v;
    }
    if (s == "true" || s == "false") {
        v.kind = TomlValue::Kind::Bool;
        v.boolean = (s == "true");
        return v;
    }
    if (s.front() == '[') {
        if (s.back() != ']') {
            throw ConfigError("config line " + std::to_string(line_no) + ": unterminated array");
        }
        const std::string body = strip(s.substr(1, s.size() - 2));
        if (body.empty()) {
            v.kind = TomlValue::Kind::NumberArray;
            return v;
        }
        if (body.front() == '[') {
            // array of [a, b] pairs
            v.kind = TomlValue::Kind::PairArray;
            std::size_t pos = 0;
            while (pos < body.size()) {
                const std::size_t open = body.find('[', pos);
                if (open == std::string::npos) break;
                const std::size_t close = body.find(']', open);
                if (close == std::string::npos) {
                    throw ConfigError("config line " + std::to_string(line_no) + ": unterminated pair");
                }
                std::string inner = body.substr(open + 1, close - open - 1);
                const std::size_t comma = inner.find(',');
                if (comma == std::string::npos) {
                    throw ConfigError("config line " + std::to_string(line_no) + ": pair needs two entries");
                }
                v.pairs.emplace_back(parse_number(strip(inner.substr(0, comma)), line_no),
                                     parse_number(strip(inner.substr(comma + 1)), line_no));
                pos = close + 1;
            }
            return v;
        }
        v.kind = TomlValue::Kind::NumberArray;
        std::stringstream ss(body);
        std::string tok;
        while (std::getline(ss, tok, ',')) v.numbers.push_back(parse_number(strip(tok), line_no));
        return v;
    }
    v.kind = TomlValue::Kind::Number;
    v.number = parse_number(s, line_no);
    return v;
}

TomlTable parse_toml(const std::string& text) {
    TomlTable table;
    std::string section;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string s = strip(strip_comment(line));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') {
                throw ConfigError("config line " + std::to_string(line_no) + ": bad section header");
            }
            section = strip(s.substr(1, s.size() - 2));
            table[section];
            continue;
        }
        const std::size_t eq = s.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = strip(s.substr(0, eq));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        }
        table[section][key] = parse_value(s.substr(eq + 1), line_no);
    }
    return table;
}

class SectionReader {
public:
    SectionReader(const TomlTable& table, std::string name) : name_(std::move(name)) {
        if (auto it = table.find(name_); it != table.end()) entries_ = &it->second;
    }

    bool present() const { return entries_ != nullptr; }

    double number(const std::string& key, double fallback) {
        const TomlValue* v = fetch(key);
        if (v == nullptr) return fallback;
        if (v->kind != TomlValue::Kind::Number) throw ConfigError(where(key) + ": expected a number");
        return v->number;
    }

    double required_number(const std::string& key) {
        const TomlValue* v = fetch(key);
        if (v == nullptr) throw ConfigError(where(key) + ": missing required key");
        if (v->kind != TomlValue::Kind::Number) throw ConfigError(where(key) + ": expected a number");
        return v->number;
    }

    bool boolean(const std::string& key, bool fallback) {
        const TomlValue* v = fetch(key);
        if (v == nullptr) return fallback;
        if (v->kind != TomlValue::Kind::Bool) throw ConfigError(where(key) + ": expected true/false");
        return v->boolean;
    }

    std::string text(const std::string& key, const std::string& fallback) {
        const TomlValue* v = fetch(key);
        if (v == nullptr) return fallback;
        if (v->kind != TomlValue::Kind::String) throw ConfigError(where(key) + ": expected a string");
        return v->text;
    }

    std::vector<std::pair<double, double>> pair_array(const std::string& key) {
        const TomlValue* v = fetch(key);
        if (v == nullptr) return {};
        if (v->kind == TomlValue::Kind::NumberArray && v->numbers.empty()) return {};
        if (v->kind != TomlValue::Kind::PairArray) throw ConfigError(where(key) + ": expected [[a, b], ...]");
        return v->pairs;
    }

    void reject_unknown() const {
        if (entries_ == nullptr) return;
        for (const auto& [key, value] : *entries_) {
            if (!seen_.count(key)) throw ConfigError("[" + name_ + "] unknown key '" + key + "'");
        }
    }

private:
    const TomlValue* fetch(const std::string& key) {
        seen_.insert(key);
        if (entries_ == nullptr) return nullptr;
        auto it = entries_->find(key);
        return it == entries_->end() ? nullptr : &it->second;
    }
    std::string where(const std::string& key) const { return "[" + name_ + "] " + key; }

    std::string name_;
    const std::map<std::string, TomlValue>* entries_ = nullptr;
    std::set<std::string> seen_;
};

} // namespace

Truncation truncation_from_name(const std::string& name) {
    if (name == "atom") return Truncation::Atom;
    if (name == "restriction") return Truncation::Restriction;
    if (name == "renormalized") return Truncation::Renormalized;
    throw ConfigError("unknown truncation mode '" + name + "' (atom|restriction|renormalized)");
}

RunConfig parse_config(const std::string& text) {
    const TomlTable table = parse_toml(text);
    for (const auto& [section, _] : table) {
        if (section != "market" && section != "liability" && section != "claims" &&
            section != "preferences" && section != "solver" && section != "sim" &&
            section != "sweep" && section != "output") {
            throw ConfigError("unknown section [" + section + "]");
        }
    }

    RunConfig rc;
    ModelConfig raw;

    SectionReader market(table, "market");
    raw.market.r = market.required_number("r");
    raw.market.mu = market.required_number("mu");
    raw.market.sigma = market.required_number("sigma");
    market.reject_unknown();

    SectionReader liability(table, "liability");
    raw.liability.a = liability.required_number("a");
    raw.liability.b = liability.required_number("b");
    raw.liability.rho = liability.required_number("rho");
    raw.liability.lambda = liability.required_number("lambda");
    raw.liability.premium = liability.required_number("premium");
    liability.reject_unknown();

    SectionReader claims(table, "claims");
    const std::string family = claims.text("family", "");
    if (family == "gamma") {
        GammaClaims g;
        g.shape = claims.required_number("alpha");
        g.scale = claims.required_number("beta");
        raw.claims.family = g;
    } else if (family == "pareto") {
        ParetoClaims p;
        p.alpha = claims.required_number("alpha");
        p.gamma = claims.required_number("gamma");
        raw.claims.family = p;
    } else if (family == "pointmass") {
        PointMassClaims pm;
        pm.y0 = claims.required_number("y0");
        raw.claims.family = pm;
    } else {
        throw ConfigError("[claims] family must be gamma|pareto|pointmass");
    }
    raw.claims.limit = claims.required_number("limit");
    raw.claims.mode = truncation_from_name(claims.text("truncation", "atom"));
    claims.reject_unknown();

    SectionReader prefs(table, "preferences");
    raw.preferences.eta = prefs.required_number("eta");
    raw.preferences.horizon = prefs.number("horizon", 1.0);
    raw.preferences.initial_wealth = prefs.number("initial_wealth", 1.0);
    prefs.reject_unknown();

    rc.model = validate(raw);

    SectionReader solver(table, "solver");
    rc.solver.bracket_tol = solver.number("bracket_tol", rc.solver.bracket_tol);
    rc.solver.residual_tol = solver.number("residual_tol", rc.solver.residual_tol);
    rc.solver.allow_negative_kappa =
        solver.boolean("allow_negative_kappa", rc.solver.allow_negative_kappa);
    rc.solver.max_iter = static_cast<int>(solver.number("max_iter", rc.solver.max_iter));
    solver.reject_unknown();

    SectionReader sim(table, "sim");
    rc.sim.n_paths = static_cast<std::int64_t>(sim.number("n_paths", static_cast<double>(rc.sim.n_paths)));
    rc.sim.n_steps = static_cast<int>(sim.number("n_steps", rc.sim.n_steps));
    rc.sim.seed = static_cast<std::uint64_t>(sim.number("seed", static_cast<double>(rc.sim.seed)));
    const std::string scheme = sim.text("scheme", "logeuler");
    if (scheme == "logeuler") {
        rc.sim.scheme = Scheme::LogEuler;
    } else if (scheme == "euler") {
        rc.sim.scheme = Scheme::Euler;
    } else {
        throw ConfigError("[sim] scheme must be logeuler|euler");
    }
    rc.sim.antithetic = sim.boolean("antithetic", rc.sim.antithetic);
    rc.sim.common_random_numbers = sim.boolean("common_random_numbers", rc.sim.common_random_numbers);
    rc.sim.n_threads = static_cast<int>(sim.number("n_threads", rc.sim.n_threads));
    sim.reject_unknown();

    SectionReader sweep(table, "sweep");
    rc.sweep = sweep.pair_array("pairs");
    sweep.reject_unknown();

    SectionReader output(table, "output");
    rc.output.dir = output.text("dir", rc.output.dir);
    rc.output.stem = output.text("stem", rc.output.stem);
    output.reject_unknown();

    return rc;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace alm
