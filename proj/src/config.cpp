#include "rwrs/config.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace rwrs {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

/// Strip a '#' comment that sits outside any double-quoted string.
std::string strip_comment(const std::string& s) {
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') quoted = !quoted;
        else if (s[i] == '#' && !quoted) return s.substr(0, i);
    }
    return s;
}

bool valid_key(const std::string& key) {
    if (key.empty()) return false;
    for (char c : key)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

struct RawValue {
    std::string text;
    int line = 0;
};

class Parser {
  public:
    Parser(const std::string& text, const std::string& source) : source_(source) {
        std::istringstream in(text);
        std::string raw;
        int line = 0;
        std::string section;
        int section_line = 0;
        while (std::getline(in, raw)) {
            ++line;
            const std::string s = trim(strip_comment(raw));
            if (s.empty()) continue;
            if (s.front() == '[') {
                if (s.back() != ']') fail(line, "unterminated section header");
                section = trim(s.substr(1, s.size() - 2));
                if (section != "walk" && section != "scenery" && section != "experiment")
                    fail(line, "unknown section [" + section + "]");
                section_line = line;
                if (!section_lines_.emplace(section, section_line).second)
                    fail(line, "duplicate section [" + section + "]");
                continue;
            }
            const std::size_t eq = s.find('=');
            if (eq == std::string::npos) fail(line, "expected key = value");
            const std::string key = trim(s.substr(0, eq));
            const std::string value = trim(s.substr(eq + 1));
            if (!valid_key(key)) fail(line, "invalid key name '" + key + "'");
            if (value.empty()) fail(line, "missing value for key '" + key + "'");
            const std::string qualified = section.empty() ? key : section + "." + key;
            if (!values_.emplace(qualified, RawValue{value, line}).second)
                fail(line, "duplicate key '" + key + "'" +
                               (section.empty() ? "" : " in [" + section + "]"));
        }
    }

    [[noreturn]] void fail(int line, const std::string& message) const {
        throw ConfigError(source_, line, message);
    }

    bool has(const std::string& qualified) const { return values_.count(qualified) != 0; }

    const RawValue& require(const std::string& qualified) const {
        auto it = values_.find(qualified);
        if (it == values_.end()) {
            const std::size_t dot = qualified.find('.');
            const std::string section = dot == std::string::npos ? "" : qualified.substr(0, dot);
            const std::string key = dot == std::string::npos ? qualified
                                                             : qualified.substr(dot + 1);
            auto sl = section_lines_.find(section);
            const int line = sl == section_lines_.end() ? 1 : sl->second;
            fail(line, "missing required key '" + key + "'" +
                           (section.empty() ? "" : " in [" + section + "]"));
        }
        return it->second;
    }

    int section_line(const std::string& section) const {
        auto it = section_lines_.find(section);
        return it == section_lines_.end() ? 1 : it->second;
    }

    bool has_section(const std::string& section) const {
        return section_lines_.count(section) != 0;
    }

    std::string get_string(const std::string& qualified) {
        const RawValue& v = consume(qualified);
        if (v.text.size() < 2 || v.text.front() != '"' || v.text.back() != '"')
            fail(v.line, "expected a quoted string for '" + qualified + "'");
        return v.text.substr(1, v.text.size() - 2);
    }

    double get_number(const std::string& qualified) {
        const RawValue& v = consume(qualified);
        return to_number(v.text, v.line, qualified);
    }

    std::int64_t get_integer(const std::string& qualified) {
        const RawValue& v = consume(qualified);
        return to_integer(v.text, v.line, qualified);
    }

    std::uint64_t get_unsigned(const std::string& qualified) {
        const RawValue& v = consume(qualified);
        if (!v.text.empty() && v.text.front() == '-')
            fail(v.line, "'" + qualified + "' must not be negative");
        errno = 0;
        char* end = nullptr;
        const unsigned long long u = std::strtoull(v.text.c_str(), &end, 10);
        if (errno != 0 || end != v.text.c_str() + v.text.size())
            fail(v.line, "expected a non-negative integer for '" + qualified + "'");
        return static_cast<std::uint64_t>(u);
    }

    std::vector<double> get_number_array(const std::string& qualified) {
        const RawValue& v = consume(qualified);
        std::vector<double> out;
        for (const std::string& item : split_array(v.text, v.line, qualified))
            out.push_back(to_number(item, v.line, qualified));
        return out;
    }

    std::vector<std::uint64_t> get_unsigned_array(const std::string& qualified) {
        const RawValue& v = consume(qualified);
        std::vector<std::uint64_t> out;
        for (const std::string& item : split_array(v.text, v.line, qualified)) {
            const std::int64_t x = to_integer(item, v.line, qualified);
            if (x < 0) fail(v.line, "'" + qualified + "' entries must not be negative");
            out.push_back(static_cast<std::uint64_t>(x));
        }
        return out;
    }

    int line_of(const std::string& qualified) const {
        auto it = values_.find(qualified);
        return it == values_.end() ? 1 : it->second.line;
    }

    /// Everything parsed must have been consumed by a known-key accessor.
    void reject_unknown() const {
        for (const auto& [qualified, raw] : values_) {
            if (consumed_.count(qualified)) continue;
            const std::size_t dot = qualified.find('.');
            if (dot == std::string::npos)
                fail(raw.line, "unknown key '" + qualified + "'");
            fail(raw.line, "unknown key '" + qualified.substr(dot + 1) + "' in [" +
                               qualified.substr(0, dot) + "]");
        }
    }

  private:
    const RawValue& consume(const std::string& qualified) {
        const RawValue& v = require(qualified);
        consumed_.insert(qualified);
        return v;
    }

    double to_number(const std::string& text, int line, const std::string& qualified) const {
        errno = 0;
        char* end = nullptr;
        const double x = std::strtod(text.c_str(), &end);
        if (errno != 0 || end != text.c_str() + text.size())
            fail(line, "expected a number for '" + qualified + "'");
        return x;
    }

    std::int64_t to_integer(const std::string& text, int line,
                            const std::string& qualified) const {
        errno = 0;
        char* end = nullptr;
        const long long x = std::strtoll(text.c_str(), &end, 10);
        if (errno != 0 || end != text.c_str() + text.size())
            fail(line, "expected an integer for '" + qualified + "'");
        return x;
    }

    std::vector<std::string> split_array(const std::string& text, int line,
                                         const std::string& qualified) const {
        if (text.size() < 2 || text.front() != '[' || text.back() != ']')
            fail(line, "expected a single-line array for '" + qualified + "'");
        std::vector<std::string> items;
        std::string body = text.substr(1, text.size() - 2);
        std::size_t start = 0;
        while (start <= body.size()) {
            const std::size_t comma = body.find(',', start);
            const std::string item =
                trim(comma == std::string::npos ? body.substr(start)
                                                : body.substr(start, comma - start));
            if (!item.empty()) items.push_back(item);
            else if (comma != std::string::npos || !trim(body).empty())
                fail(line, "empty array element in '" + qualified + "'");
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (items.empty()) fail(line, "'" + qualified + "' must not be empty");
        return items;
    }

    std::string source_;
    std::map<std::string, RawValue> values_;
    std::map<std::string, int> section_lines_;
    std::set<std::string> consumed_;
};

} // namespace

ParsedConfig parse_config(const std::string& text, const std::string& source) {
    Parser p(text, source);

    ParsedConfig parsed;
    parsed.schema = p.get_string("schema");
    if (parsed.schema != kConfigSchema)
        p.fail(p.line_of("schema"),
               "unsupported schema '" + parsed.schema + "' (expected \"" +
                   std::string(kConfigSchema) + "\")");

    if (!p.has_section("walk")) p.fail(1, "missing section [walk]");
    if (!p.has_section("scenery")) p.fail(1, "missing section [scenery]");
    if (!p.has_section("experiment")) p.fail(1, "missing section [experiment]");

    ExperimentConfig& config = parsed.experiment;

    // --- walk ---------------------------------------------------------
    {
        const std::string kind = p.get_string("walk.kind");
        const int kind_line = p.line_of("walk.kind");
        auto forbid = [&](const char* key, const char* why) {
            if (p.has(std::string("walk.") + key))
                p.fail(p.line_of(std::string("walk.") + key),
                       std::string("key '") + key + "' only applies to " + why);
        };
        if (kind == "simple") {
            config.walk.kind = WalkKind::stable_increments;
            config.walk.simple_symmetric = true;
            config.walk.step_law = StableParams{};
            forbid("alpha", "stable walks");
            forbid("sigma", "stable walks");
            forbid("skewness", "stable walks");
            forbid("hurst", "correlated walks");
        } else if (kind == "stable") {
            config.walk.kind = WalkKind::stable_increments;
            config.walk.simple_symmetric = false;
            config.walk.step_law.index = p.get_number("walk.alpha");
            if (!(config.walk.step_law.index > 1.0 && config.walk.step_law.index <= 2.0))
                p.fail(p.line_of("walk.alpha"), "walk index must lie in (1, 2]");
            if (p.has("walk.sigma")) config.walk.step_law.scale = p.get_number("walk.sigma");
            if (p.has("walk.skewness"))
                config.walk.step_law.skewness = p.get_number("walk.skewness");
            forbid("hurst", "correlated walks");
        } else if (kind == "correlated") {
            config.walk.kind = WalkKind::correlated_gaussian;
            config.walk.hurst = p.get_number("walk.hurst");
            if (!(config.walk.hurst > 0.0 && config.walk.hurst < 1.0))
                p.fail(p.line_of("walk.hurst"), "walk hurst index must lie in (0, 1)");
            forbid("alpha", "stable walks");
            forbid("sigma", "stable walks");
            forbid("skewness", "stable walks");
        } else {
            p.fail(kind_line, "walk kind must be \"simple\", \"stable\" or \"correlated\"");
        }
        try {
            config.walk.validate();
        } catch (const std::exception& e) {
            p.fail(p.section_line("walk"), e.what());
        }
    }

    // --- scenery ------------------------------------------------------
    {
        const std::string kind = p.get_string("scenery.kind");
        const int kind_line = p.line_of("scenery.kind");
        auto forbid = [&](const char* key, const char* why) {
            if (p.has(std::string("scenery.") + key))
                p.fail(p.line_of(std::string("scenery.") + key),
                       std::string("key '") + key + "' only applies to " + why);
        };
        if (kind == "iid") {
            config.scenery.kind = SceneryKind::iid_stable;
            config.scenery.marginal.index = p.get_number("scenery.beta");
            if (!(config.scenery.marginal.index > 1.0 && config.scenery.marginal.index <= 2.0))
                p.fail(p.line_of("scenery.beta"), "scenery index must lie in (1, 2]");
            if (p.has("scenery.sigma"))
                config.scenery.marginal.scale = p.get_number("scenery.sigma");
            if (p.has("scenery.skewness"))
                config.scenery.marginal.skewness = p.get_number("scenery.skewness");
            for (const char* key : {"kernel", "coeffs", "min_lag", "decay", "p_plus",
                                    "p_minus", "radius", "innovation_std"})
                forbid(key, "moving-average sceneries");
        } else if (kind == "moving_average") {
            config.scenery.kind = SceneryKind::moving_average;
            const std::string kernel = p.get_string("scenery.kernel");
            const int kernel_line = p.line_of("scenery.kernel");
            if (kernel == "summable") {
                config.scenery.kernel.kind = KernelKind::summable;
                config.scenery.kernel.coeffs = p.get_number_array("scenery.coeffs");
                if (p.has("scenery.min_lag"))
                    config.scenery.kernel.min_lag = p.get_integer("scenery.min_lag");
                for (const char* key : {"decay", "p_plus", "p_minus", "radius"})
                    forbid(key, "power-decay kernels");
            } else if (kernel == "power_decay") {
                config.scenery.kernel.kind = KernelKind::power_decay;
                config.scenery.kernel.decay = p.get_number("scenery.decay");
                if (!(config.scenery.kernel.decay > 0.5 && config.scenery.kernel.decay < 1.0))
                    p.fail(p.line_of("scenery.decay"),
                           "kernel decay exponent must lie in (1/2, 1)");
                if (p.has("scenery.p_plus"))
                    config.scenery.kernel.p_plus = p.get_number("scenery.p_plus");
                if (p.has("scenery.p_minus"))
                    config.scenery.kernel.p_minus = p.get_number("scenery.p_minus");
                if (p.has("scenery.radius"))
                    config.scenery.kernel.radius = p.get_integer("scenery.radius");
                for (const char* key : {"coeffs", "min_lag"})
                    forbid(key, "summable kernels");
            } else {
                p.fail(kernel_line, "scenery kernel must be \"summable\" or \"power_decay\"");
            }
            if (p.has("scenery.innovation_std"))
                config.scenery.innovation_std = p.get_number("scenery.innovation_std");
            for (const char* key : {"beta", "sigma", "skewness"})
                forbid(key, "i.i.d. sceneries");
        } else {
            p.fail(kind_line, "scenery kind must be \"iid\" or \"moving_average\"");
        }
        try {
            config.scenery.validate();
        } catch (const std::exception& e) {
            p.fail(p.section_line("scenery"), e.what());
        }
    }

    // --- experiment ---------------------------------------------------
    {
        config.n_grid = p.get_unsigned_array("experiment.n_grid");
        const std::int64_t replicates = p.get_integer("experiment.replicates");
        if (replicates < 0)
            p.fail(p.line_of("experiment.replicates"), "replicates must not be negative");
        config.replicates = static_cast<std::size_t>(replicates);
        if (p.has("experiment.t_grid")) config.t_grid = p.get_number_array("experiment.t_grid");
        if (p.has("experiment.weights"))
            config.weights = p.get_number_array("experiment.weights");
        if (p.has("experiment.p")) config.p = p.get_number("experiment.p");
        if (p.has("experiment.walker_counts")) {
            config.walker_counts.clear();
            for (std::uint64_t c : p.get_unsigned_array("experiment.walker_counts"))
                config.walker_counts.push_back(static_cast<std::size_t>(c));
        }
        if (p.has("experiment.delta_grid"))
            config.delta_grid = p.get_number_array("experiment.delta_grid");
        if (p.has("experiment.window")) config.window = p.get_number("experiment.window");
        if (p.has("experiment.seed")) config.seed = p.get_unsigned("experiment.seed");
        if (p.has("experiment.threads"))
            config.threads = static_cast<std::size_t>(p.get_unsigned("experiment.threads"));
        if (p.has("experiment.identity_tolerance"))
            config.identity_tolerance = p.get_number("experiment.identity_tolerance");
        if (p.has("experiment.scaling_tolerance"))
            config.scaling_tolerance = p.get_number("experiment.scaling_tolerance");
        if (p.has("experiment.h_grid")) parsed.h_grid = p.get_number_array("experiment.h_grid");

        p.reject_unknown();
        try {
            config.validate();
        } catch (const std::exception& e) {
            p.fail(p.section_line("experiment"), e.what());
        }
        for (double h : parsed.h_grid)
            if (!(h > 0.0))
                p.fail(p.line_of("experiment.h_grid"), "meshes must be positive");
    }

    return parsed;
}

ParsedConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw std::ios_base::failure("cannot read config file: " + path);
    return parse_config(buffer.str(), path);
}

} // namespace rwrs
