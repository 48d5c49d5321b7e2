#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "efl/cell_map_builder.hpp"

namespace efl {

/// A parsed analysis job: field + grid + integrator controls + the
/// requested checks.
struct analysis_config {
    vector_field field;
    grid_spec grid;
    approx_params approx;
    std::vector<std::string> checks;
    int depth = -1;
    unsigned seed = 1;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double to_number(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw error(errc::config_error, "key '" + key + "' expects a number, got '" + value + "'");
    }
}

inline int to_int(const std::string& key, const std::string& value) {
    double v = to_number(key, value);
    int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw error(errc::config_error, "key '" + key + "' expects an integer");
    return i;
}

}  // namespace detail

/// Line-oriented `key = value` config with [field], [grid], [approx] and
/// [analysis] sections.  Unknown sections or keys are errors naming the
/// offender; '#' starts a comment.
inline analysis_config parse_config(std::istream& in) {
    std::map<std::string, std::map<std::string, std::string>> sections;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw error(errc::config_error, "malformed section header at line " +
                                                    std::to_string(lineno));
            section = line.substr(1, line.size() - 2);
            if (section != "field" && section != "grid" && section != "approx" &&
                section != "analysis")
                throw error(errc::config_error, "unknown section '" + section + "'");
            sections[section];
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw error(errc::config_error, "expected 'key = value' at line " + std::to_string(lineno));
        if (section.empty())
            throw error(errc::config_error, "key outside any section at line " + std::to_string(lineno));
        std::string key = detail::trim(line.substr(0, eq));
        std::string value = detail::trim(line.substr(eq + 1));
        if (!sections[section].emplace(key, value).second)
            throw error(errc::config_error, "duplicate key '" + key + "' in [" + section + "]");
    }

    auto take = [&](const std::string& sec, const std::string& key) -> std::optional<std::string> {
        auto s = sections.find(sec);
        if (s == sections.end()) return std::nullopt;
        auto it = s->second.find(key);
        if (it == s->second.end()) return std::nullopt;
        std::string v = it->second;
        s->second.erase(it);
        return v;
    };
    auto require = [&](const std::string& sec, const std::string& key) {
        auto v = take(sec, key);
        if (!v) throw error(errc::config_error, "missing key '" + key + "' in [" + sec + "]");
        return *v;
    };

    analysis_config cfg;

    // [field]
    std::string family = require("field", "family");
    if (family == "linear") {
        auto a12 = take("field", "a12");
        if (a12) {
            cfg.field = vector_field::linear2(
                detail::to_number("a11", require("field", "a11")), detail::to_number("a12", *a12),
                detail::to_number("a21", require("field", "a21")),
                detail::to_number("a22", require("field", "a22")));
        } else {
            cfg.field = vector_field::linear1(detail::to_number("a11", require("field", "a11")));
        }
    } else if (family == "gradient_descent") {
        polynomial h = parse_polynomial(require("field", "height"));
        int dims = 1;
        for (const auto& t : h.terms)
            if (t.ey > 0) dims = 2;
        if (auto d = take("field", "dims")) dims = detail::to_int("dims", *d);
        cfg.field = vector_field::gradient(h, dims);
    } else if (family == "radial_cycle") {
        cfg.field = vector_field::radial();
    } else if (family == "custom") {
        polynomial px = parse_polynomial(require("field", "fx"));
        auto fy = take("field", "fy");
        cfg.field = fy ? vector_field::custom(px, parse_polynomial(*fy), 2)
                       : vector_field::custom(px, {}, 1);
    } else {
        throw error(errc::config_error, "unknown field family '" + family + "'");
    }

    // [grid]
    cfg.grid.lo = {detail::to_number("xmin", require("grid", "xmin"))};
    cfg.grid.hi = {detail::to_number("xmax", require("grid", "xmax"))};
    cfg.grid.res = {detail::to_int("resx", require("grid", "resx"))};
    if (cfg.field.dims == 2) {
        cfg.grid.lo.push_back(detail::to_number("ymin", require("grid", "ymin")));
        cfg.grid.hi.push_back(detail::to_number("ymax", require("grid", "ymax")));
        cfg.grid.res.push_back(detail::to_int("resy", require("grid", "resy")));
    }
    cfg.grid.validate();

    // [approx]
    if (auto v = take("approx", "tau")) cfg.approx.tau = detail::to_number("tau", *v);
    if (auto v = take("approx", "substeps")) cfg.approx.substeps = detail::to_int("substeps", *v);
    if (auto v = take("approx", "bloat")) cfg.approx.bloat = detail::to_number("bloat", *v);
    if (cfg.approx.tau <= 0) throw error(errc::config_error, "key 'tau' must be positive");
    if (cfg.approx.substeps < 1) throw error(errc::config_error, "key 'substeps' must be at least 1");
    if (cfg.approx.bloat < 0 && cfg.approx.bloat != -1.0)
        throw error(errc::config_error, "key 'bloat' must be nonnegative");

    // [analysis]
    if (auto v = take("analysis", "checks")) {
        std::stringstream ss(*v);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = detail::trim(item);
            if (item.empty()) continue;
            static const std::set<std::string> known{"ends",       "limits",      "complete",
                                                     "thm66",      "separation",  "compactness",
                                                     "basins",     "duality"};
            if (!known.count(item))
                throw error(errc::config_error, "unknown check '" + item + "' in [analysis]");
            cfg.checks.push_back(item);
        }
    }
    if (cfg.checks.empty()) cfg.checks = {"thm66"};
    if (auto v = take("analysis", "depth")) cfg.depth = detail::to_int("depth", *v);
    if (auto v = take("analysis", "seed"))
        cfg.seed = static_cast<unsigned>(detail::to_int("seed", *v));

    for (const auto& [sec, keys] : sections)
        for (const auto& [key, value] : keys)
            throw error(errc::config_error, "unknown key '" + key + "' in [" + sec + "]");

    return cfg;
}

inline analysis_config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error(errc::config_error, "cannot open config file '" + path + "'");
    return parse_config(in);
}

}  // namespace efl
