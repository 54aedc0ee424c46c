#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "nlmbench/bench.hpp"
#include "nlmbench/errors.hpp"

// Experiment file format: INI-style sections of key = value lines. Blank
// lines and lines starting with '#' or ';' are comments. Sections:
//   [experiment]    run-wide settings
//   [images]        one "<id> = <path>" entry per input image
//   [filter <id>]   one section per filter entry
// Unknown sections or keys are rejected so typos fail loudly.

namespace nlmbench {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        fail(line, "expected a number, got '" + v + "'");
    }
}

int parse_int(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        const int i = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return i;
    } catch (const std::exception&) {
        fail(line, "expected an integer, got '" + v + "'");
    }
}

std::uint64_t parse_u64(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        const unsigned long long i = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return i;
    } catch (const std::exception&) {
        fail(line, "expected an unsigned integer, got '" + v + "'");
    }
}

bool parse_bool(const std::string& v, int line) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    fail(line, "expected a boolean, got '" + v + "'");
}

void apply_filter_key(FilterSpec& f, const std::string& key, const std::string& value,
                      int line) {
    if (key == "kind") {
        try {
            f.kind = filter_kind_from_string(value);
        } catch (const Error& e) {
            fail(line, e.what());
        }
    } else if (key == "h") {
        if (value == "auto") {
            f.h_auto = true;
        } else {
            f.h_auto = false;
            f.params.h = parse_double(value, line);
        }
    } else if (key == "h_scale") {
        f.h_scale = parse_double(value, line);
    } else if (key == "patch_side") {
        f.params.patch_side = parse_int(value, line);
    } else if (key == "search_radius") {
        if (value == "full") {
            f.params.search_radius = std::nullopt;
        } else {
            f.params.search_radius = parse_int(value, line);
        }
    } else if (key == "rho") {
        f.params.rho = parse_double(value, line);
    } else if (key == "center_weight") {
        if (value == "literal") {
            f.params.center_weight = CenterWeight::literal;
        } else if (value == "max") {
            f.params.center_weight = CenterWeight::max_of_others;
        } else {
            fail(line, "center_weight must be 'literal' or 'max'");
        }
    } else if (key == "threads") {
        f.params.threads = parse_int(value, line);
    } else {
        fail(line, "unknown filter key '" + key + "'");
    }
}

void apply_experiment_key(ExperimentConfig& cfg, const std::string& key,
                          const std::string& value, int line) {
    if (key == "noise_levels") {
        cfg.noise_levels.clear();
        for (const std::string& item : split_list(value)) {
            cfg.noise_levels.push_back(parse_double(item, line));
        }
    } else if (key == "seed") {
        cfg.seed = parse_u64(value, line);
    } else if (key == "output_dir") {
        cfg.output_dir = value;
    } else if (key == "emit_residuals") {
        cfg.emit_residuals = parse_bool(value, line);
    } else if (key == "crop") {
        cfg.crop = parse_int(value, line);
    } else if (key == "formats") {
        cfg.write_csv_file = false;
        cfg.write_markdown_file = false;
        for (const std::string& item : split_list(value)) {
            if (item == "csv") {
                cfg.write_csv_file = true;
            } else if (item == "md" || item == "markdown") {
                cfg.write_markdown_file = true;
            } else {
                fail(line, "unknown format '" + item + "' (use csv, md)");
            }
        }
    } else {
        fail(line, "unknown experiment key '" + key + "'");
    }
}

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.images.empty()) throw ConfigError("config lists no images");
    if (cfg.noise_levels.empty()) throw ConfigError("config lists no noise levels");
    if (cfg.filters.empty()) throw ConfigError("config lists no filters");
    for (double level : cfg.noise_levels) {
        if (!(level > 0.0) || level > 1.0) {
            throw ConfigError("noise levels must lie in (0, 1]");
        }
    }
    if (cfg.crop < 0) throw ConfigError("crop must be >= 0");
    for (const FilterSpec& f : cfg.filters) {
        if (!f.h_auto && f.h_scale) {
            throw ConfigError("filter '" + f.id + "': h_scale requires h = auto");
        }
    }
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileNotFound("cannot open config file: " + path);

    ExperimentConfig cfg;
    cfg.noise_levels.clear();  // default applies only when the file omits them
    enum class Section { none, experiment, images, filter };
    Section section = Section::none;
    FilterSpec* current_filter = nullptr;

    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string text = trim(raw);
        if (text.empty() || text[0] == '#' || text[0] == ';') continue;
        if (text.front() == '[') {
            if (text.back() != ']') fail(line, "unterminated section header");
            const std::string name = trim(text.substr(1, text.size() - 2));
            if (name == "experiment") {
                section = Section::experiment;
            } else if (name == "images") {
                section = Section::images;
            } else if (name.rfind("filter ", 0) == 0) {
                const std::string id = trim(name.substr(7));
                if (id.empty()) fail(line, "filter section needs an id");
                for (const FilterSpec& f : cfg.filters) {
                    if (f.id == id) fail(line, "duplicate filter id '" + id + "'");
                }
                FilterSpec f;
                f.id = id;
                cfg.filters.push_back(std::move(f));
                current_filter = &cfg.filters.back();
                section = Section::filter;
            } else {
                fail(line, "unknown section '" + name + "'");
            }
            continue;
        }
        const std::size_t eq = text.find('=');
        if (eq == std::string::npos) fail(line, "expected 'key = value'");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty()) fail(line, "empty key");
        switch (section) {
            case Section::none:
                fail(line, "key outside any section");
            case Section::experiment:
                apply_experiment_key(cfg, key, value, line);
                break;
            case Section::images:
                for (const auto& [id, p] : cfg.images) {
                    if (id == key) fail(line, "duplicate image id '" + key + "'");
                }
                cfg.images.emplace_back(key, value);
                break;
            case Section::filter:
                apply_filter_key(*current_filter, key, value, line);
                break;
        }
    }
    if (cfg.noise_levels.empty()) {
        cfg.noise_levels = {0.05, 0.10, 0.15, 0.20};
    }
    validate_config(cfg);
    return cfg;
}

}  // namespace nlmbench
