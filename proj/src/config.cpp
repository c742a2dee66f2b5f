#include "macrovar/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "macrovar/error.hpp"

namespace macrovar {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw DataError(fmt::format("config line {}: {}", line, msg));
}

// Reads a quoted string starting at s[pos] == '"'; advances pos past the closing quote.
std::string read_string(const std::string& s, std::size_t& pos, int line) {
    std::string out;
    for (++pos; pos < s.size(); ++pos) {
        const char c = s[pos];
        if (c == '"') {
            ++pos;
            return out;
        }
        if (c == '\\') {
            if (++pos >= s.size()) break;
            switch (s[pos]) {
                case 'n': out += '\n'; break;
                case 't': out += '\t'; break;
                case '"': out += '"'; break;
                case '\\': out += '\\'; break;
                default: fail(line, "unknown escape");
            }
        } else {
            out += c;
        }
    }
    fail(line, "unterminated string");
}

// Drops a trailing comment that is not inside a string.
std::string strip_comment(const std::string& s) {
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '\\' && quoted) {
            ++i;
        } else if (s[i] == '"') {
            quoted = !quoted;
        } else if (s[i] == '#' && !quoted) {
            return s.substr(0, i);
        }
    }
    return s;
}

ConfigValue parse_scalar(const std::string& raw, int line) {
    if (raw == "true") return true;
    if (raw == "false") return false;
    std::int64_t i = 0;
    auto [p, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), i);
    if (ec == std::errc() && p == raw.data() + raw.size()) return i;
    double d = 0.0;
    auto [q, ec2] = std::from_chars(raw.data(), raw.data() + raw.size(), d);
    if (ec2 == std::errc() && q == raw.data() + raw.size()) return d;
    fail(line, "cannot parse value '" + raw + "' (strings must be quoted)");
}

ConfigValue parse_value(const std::string& v, int line) {
    if (v.empty()) fail(line, "missing value");
    std::size_t pos = 0;
    if (v[0] == '"') {
        auto s = read_string(v, pos, line);
        if (!trim(v.substr(pos)).empty()) fail(line, "trailing characters after string");
        return s;
    }
    if (v[0] == '[') {
        if (v.back() != ']') fail(line, "lists must close on the same line");
        std::vector<std::string> items;
        const std::string body = v.substr(1, v.size() - 2);
        pos = 0;
        while (true) {
            while (pos < body.size() && (body[pos] == ' ' || body[pos] == '\t')) ++pos;
            if (pos >= body.size()) break;
            if (body[pos] == '"') {
                items.push_back(read_string(body, pos, line));
            } else {
                const auto end = body.find(',', pos);
                items.push_back(trim(body.substr(pos, end == std::string::npos ? std::string::npos : end - pos)));
                pos = end == std::string::npos ? body.size() : end;
            }
            while (pos < body.size() && (body[pos] == ' ' || body[pos] == '\t')) ++pos;
            if (pos >= body.size()) break;
            if (body[pos] != ',') fail(line, "expected ',' in list");
            ++pos;
        }
        return items;
    }
    return parse_scalar(v, line);
}

struct Reader {
    const std::map<std::string, ConfigValue>& kv;

    template <class T>
    const T* get(const std::string& key) const {
        auto it = kv.find(key);
        if (it == kv.end()) return nullptr;
        if (auto* p = std::get_if<T>(&it->second)) return p;
        throw DataError("config key '" + key + "' has the wrong type");
    }
    void str(const std::string& key, std::string& out) const {
        if (auto* p = get<std::string>(key)) out = *p;
    }
    void integer(const std::string& key, int& out) const {
        if (auto* p = get<std::int64_t>(key)) out = static_cast<int>(*p);
    }
    void boolean(const std::string& key, bool& out) const {
        if (auto* p = get<bool>(key)) out = *p;
    }
    void list(const std::string& key, std::vector<std::string>& out) const {
        if (auto* p = get<std::vector<std::string>>(key)) out = *p;
    }
};

SampleForm parse_form(const std::string& key, const std::string& v) {
    if (v == "levels") return SampleForm::Levels;
    if (v == "differences") return SampleForm::Differences;
    throw DataError("config key '" + key + "' must be \"levels\" or \"differences\"");
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + '"';
}

std::string quote_list(const std::vector<std::string>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + quote(v[i]);
    return out + "]";
}

const char* const kKnownKeys[] = {
    "countries", "data_source", "data_dir", "cache_dir", "hdi_csv", "health_indicator", "edu_indicator",
    "start_year", "end_year", "estimate_on", "johansen_on", "lag_order", "max_lag_search", "horizon",
    "ordering", "seed", "output_format", "adf_lag_rule", "adf_lags", "adf_max_lags", "johansen_lags",
    "lm_max_lag", "xcorr_max_lag", "irf_draws", "holdout", "keep_going", "offline", "threads"};

}  // namespace

std::map<std::string, ConfigValue> parse_flat_config(const std::string& text) {
    std::map<std::string, ConfigValue> out;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = trim(strip_comment(raw));
        if (s.empty()) continue;
        if (s.front() == '[') fail(line, "tables are not supported; use dotted keys");
        const auto eq = s.find('=');
        if (eq == std::string::npos) fail(line, "expected key = value");
        const std::string key = trim(s.substr(0, eq));
        if (key.empty()) fail(line, "empty key");
        if (out.count(key)) fail(line, "duplicate key '" + key + "'");
        out.emplace(key, parse_value(trim(s.substr(eq + 1)), line));
    }
    return out;
}

PipelineConfig config_from_text(const std::string& text) {
    const auto kv = parse_flat_config(text);
    for (const auto& [key, value] : kv) {
        if (key.rfind("units.", 0) == 0 || key.rfind("iso3.", 0) == 0) continue;
        bool known = false;
        for (const char* k : kKnownKeys) known = known || key == k;
        if (!known) throw DataError("unknown config key '" + key + "'");
    }

    PipelineConfig c;
    Reader r{kv};
    r.list("countries", c.countries);
    if (auto* v = r.get<std::string>("data_source")) {
        if (*v == "csv_dir") c.data_source = DataSourceKind::CsvDir;
        else if (*v == "worldbank_fetch") c.data_source = DataSourceKind::WorldBankFetch;
        else throw DataError("config key 'data_source' must be \"csv_dir\" or \"worldbank_fetch\"");
    }
    r.str("data_dir", c.data_dir);
    r.str("cache_dir", c.cache_dir);
    r.str("hdi_csv", c.hdi_csv);
    r.str("health_indicator", c.health_indicator);
    r.str("edu_indicator", c.edu_indicator);
    r.integer("start_year", c.start_year);
    r.integer("end_year", c.end_year);
    if (auto* v = r.get<std::string>("estimate_on")) c.estimate_on = parse_form("estimate_on", *v);
    if (auto* v = r.get<std::string>("johansen_on")) c.johansen_on = parse_form("johansen_on", *v);
    if (auto it = kv.find("lag_order"); it != kv.end()) {
        if (auto* s = std::get_if<std::string>(&it->second); s && *s == "auto") {
            c.lag_order.reset();
        } else if (auto* i = std::get_if<std::int64_t>(&it->second)) {
            c.lag_order = static_cast<int>(*i);
        } else {
            throw DataError("config key 'lag_order' must be an integer or \"auto\"");
        }
    }
    r.integer("max_lag_search", c.max_lag_search);
    r.integer("horizon", c.horizon);
    r.list("ordering", c.ordering);
    if (auto* v = r.get<std::int64_t>("seed")) {
        if (*v < 0) throw DataError("config key 'seed' must be non-negative");
        c.seed = static_cast<std::uint64_t>(*v);
    }
    if (auto* v = r.get<std::string>("output_format")) c.output_format = parse_output_format(*v);
    r.str("adf_lag_rule", c.adf_lag_rule);
    r.integer("adf_lags", c.adf_lags);
    if (auto* v = r.get<std::int64_t>("adf_max_lags")) c.adf_max_lags = static_cast<int>(*v);
    r.integer("johansen_lags", c.johansen_lags);
    r.integer("lm_max_lag", c.lm_max_lag);
    r.integer("xcorr_max_lag", c.xcorr_max_lag);
    r.integer("irf_draws", c.irf_draws);
    r.integer("holdout", c.holdout);
    r.boolean("keep_going", c.keep_going);
    r.boolean("offline", c.offline);
    r.integer("threads", c.threads);
    for (const auto& [key, value] : kv) {
        auto* s = std::get_if<std::string>(&value);
        if (key.rfind("units.", 0) == 0) {
            if (!s) throw DataError("config key '" + key + "' must be a string");
            c.units[key.substr(6)] = *s;
        } else if (key.rfind("iso3.", 0) == 0) {
            if (!s) throw DataError("config key '" + key + "' must be a string");
            c.iso3[key.substr(5)] = *s;
        }
    }
    c.validate();
    return c;
}

PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return config_from_text(buf.str());
}

void PipelineConfig::validate() const {
    if (countries.empty()) throw DataError("config: no countries");
    if (horizon < 1) throw DataError("config: horizon must be >= 1");
    if (lag_order && *lag_order < 1) throw DataError("config: lag_order must be >= 1 or \"auto\"");
    if (max_lag_search < 1) throw DataError("config: max_lag_search must be >= 1");
    if (adf_lag_rule != "schwarz" && adf_lag_rule != "fixed") {
        throw DataError("config: adf_lag_rule must be \"schwarz\" or \"fixed\"");
    }
    if (adf_lags < 0) throw DataError("config: adf_lags must be >= 0");
    if (johansen_lags < 1) throw DataError("config: johansen_lags must be >= 1");
    if (lm_max_lag < 1) throw DataError("config: lm_max_lag must be >= 1");
    if (xcorr_max_lag < 0) throw DataError("config: xcorr_max_lag must be >= 0");
    if (irf_draws != 0 && irf_draws < 2) throw DataError("config: irf_draws must be 0 or >= 2");
    if (holdout < 0) throw DataError("config: holdout must be >= 0");
    if (threads < 1) throw DataError("config: threads must be >= 1");
    if (start_year > end_year) throw DataError("config: start_year after end_year");
    if (data_source == DataSourceKind::WorldBankFetch && hdi_csv.empty()) {
        throw DataError("config: worldbank_fetch needs hdi_csv");
    }
}

std::string to_string(DataSourceKind k) { return k == DataSourceKind::CsvDir ? "csv_dir" : "worldbank_fetch"; }
std::string to_string(SampleForm f) { return f == SampleForm::Levels ? "levels" : "differences"; }

std::string to_string(OutputFormat f) {
    switch (f) {
        case OutputFormat::Markdown: return "markdown";
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Json: return "json";
    }
    return "markdown";
}

OutputFormat parse_output_format(const std::string& s) {
    if (s == "markdown" || s == "md") return OutputFormat::Markdown;
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw DataError("output format must be markdown, csv or json (got '" + s + "')");
}

std::string describe_config(const PipelineConfig& c, bool include_runtime) {
    std::string o;
    auto line = [&](const std::string& k, const std::string& v) { o += k + " = " + v + "\n"; };
    line("countries", quote_list(c.countries));
    line("data_source", quote(to_string(c.data_source)));
    line("data_dir", quote(c.data_dir));
    line("cache_dir", quote(c.cache_dir));
    line("hdi_csv", quote(c.hdi_csv));
    line("health_indicator", quote(c.health_indicator));
    line("edu_indicator", quote(c.edu_indicator));
    line("start_year", std::to_string(c.start_year));
    line("end_year", std::to_string(c.end_year));
    line("estimate_on", quote(to_string(c.estimate_on)));
    line("johansen_on", quote(to_string(c.johansen_on)));
    line("lag_order", c.lag_order ? std::to_string(*c.lag_order) : quote("auto"));
    line("max_lag_search", std::to_string(c.max_lag_search));
    line("horizon", std::to_string(c.horizon));
    line("ordering", quote_list(c.ordering));
    line("seed", std::to_string(c.seed));
    line("output_format", quote(to_string(c.output_format)));
    line("adf_lag_rule", quote(c.adf_lag_rule));
    line("adf_lags", std::to_string(c.adf_lags));
    if (c.adf_max_lags) line("adf_max_lags", std::to_string(*c.adf_max_lags));
    line("johansen_lags", std::to_string(c.johansen_lags));
    line("lm_max_lag", std::to_string(c.lm_max_lag));
    line("xcorr_max_lag", std::to_string(c.xcorr_max_lag));
    line("irf_draws", std::to_string(c.irf_draws));
    line("holdout", std::to_string(c.holdout));
    line("keep_going", c.keep_going ? "true" : "false");
    line("offline", c.offline ? "true" : "false");
    if (include_runtime) line("threads", std::to_string(c.threads));
    for (const auto& [k, v] : c.iso3) line("iso3." + k, quote(v));
    for (const auto& [k, v] : c.units) line("units." + k, quote(v));
    return o;
}

}  // namespace macrovar
