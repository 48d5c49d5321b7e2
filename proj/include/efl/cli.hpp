#pragma once

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "efl/config.hpp"
#include "efl/dot.hpp"
#include "efl/report.hpp"

namespace efl::cli {

namespace detail {

struct job {
    std::string source;
    finite_space space;
    std::optional<cell_map> map;
    std::optional<tower> twr;
};

inline job resolve_fixture(const std::string& name, int n, int d, int res, int depth) {
    int param = -1;
    if (name == "bintree") param = d;
    if (name == "morse-circle") param = n;
    if (name == "limit-cycle-grid" || name == "double-well") param = res;
    fixture f = gallery(name, param);
    job j{f.name, std::move(f.space), std::move(f.map), std::move(f.twr)};
    if (j.map && depth > 0) j.twr = r_exterior_tower(j.space, *j.map, depth);
    return j;
}

inline job resolve_config(const std::string& path, const analysis_config& cfg, int depth_flag) {
    auto [space, map] = build_cell_map(cfg.field, cfg.grid, cfg.approx);
    int depth = depth_flag > 0 ? depth_flag : cfg.depth;
    tower t = depth > 0 ? r_exterior_tower(space, map, depth) : r_exterior_tower(space, map);
    return job{"config:" + path, std::move(space), std::move(map), std::move(t)};
}

inline const tower& need_tower(const job& j) {
    if (!j.twr) throw error(errc::invalid_tower, "fixture '" + j.source + "' carries no tower");
    return *j.twr;
}

inline const cell_map& need_map(const job& j) {
    if (!j.map) throw error(errc::not_a_top_cell, "fixture '" + j.source + "' carries no cell map");
    return *j.map;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error(errc::config_error, "cannot write '" + path + "'");
    out << content;
}

inline void emit(const report::json& doc, const std::string& json_path, std::ostream& out) {
    std::string text = doc.dump(2);
    text.push_back('\n');
    if (!json_path.empty())
        write_file(json_path, text);
    else
        out << text;
}

inline report::json run_named_check(const std::string& check, const job& j, int depth) {
    const finite_space& s = j.space;
    if (check == "ends") return report::ends_block(s, need_tower(j));
    if (check == "limits") return report::limits_block(s, need_tower(j));
    if (check == "complete") return report::complete_block(s, need_tower(j));
    if (check == "separation") return report::separation_block(s, need_tower(j));
    if (check == "compactness") return report::compactness_block(s, need_tower(j));
    if (check == "basins") return report::basins_block(s, need_map(j), need_tower(j));
    if (check == "duality") return report::duality_block(s, need_map(j));
    if (check == "thm66") {
        int d = depth > 0 ? depth : static_cast<int>(need_map(j).cell_count()) + 1;
        return report::thm66_block(s, check_thm66(s, need_map(j), d));
    }
    throw error(errc::config_error, "unknown check '" + check + "'");
}

}  // namespace detail

/// Entry point of the command-line front end.  Returns the process exit
/// code: 0 on success, 2 for unusable arguments or configs, 1 for analysis
/// errors (reason mirrored as JSON on stderr).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"finite exterior-flow laboratory: limits, ends, completions and"
                 " dynamics checkers on finite models"};
    app.require_subcommand(1);

    std::string fixture_name, json_path, dot_path, config_path, check_name, gallery_action = "list";
    int n = -1, d = -1, res = -1, depth = -1, from_cell = 0, steps = 32;
    unsigned seed = 0;

    auto add_common = [&](CLI::App* cmd, bool needs_fixture = true) {
        if (needs_fixture) cmd->add_option("--fixture", fixture_name, "gallery fixture name")->required();
        cmd->add_option("--n", n, "cell count for morse-circle");
        cmd->add_option("--d", d, "depth for bintree");
        cmd->add_option("--res", res, "resolution for the ODE fixtures");
        cmd->add_option("--json", json_path, "write the JSON report here");
        cmd->add_option("--dot", dot_path, "write a DOT export here");
        cmd->add_option("--depth", depth, "absorbing tower depth cap");
        cmd->add_option("--seed", seed, "seed for randomized walk sampling");
    };

    CLI::App* cmd_gallery = app.add_subcommand("gallery", "list the fixture gallery");
    cmd_gallery->add_option("action", gallery_action, "list")->check(CLI::IsMember({"list"}));

    CLI::App* cmd_analyze = app.add_subcommand("analyze", "run the checks requested by a config file");
    cmd_analyze->add_option("config", config_path, "path to the config file")->required();
    add_common(cmd_analyze, false);

    CLI::App* cmd_ends = app.add_subcommand("ends", "end space of the fixture's tower");
    add_common(cmd_ends);
    CLI::App* cmd_limits = app.add_subcommand("limits", "limit and bar-limit sets");
    add_common(cmd_limits);
    CLI::App* cmd_complete = app.add_subcommand("complete", "build the completion");
    add_common(cmd_complete);
    CLI::App* cmd_check = app.add_subcommand("check", "run a theorem checker");
    cmd_check->add_option("what", check_name, "complete | thm66 | separation | compactness")
        ->required()
        ->check(CLI::IsMember({"complete", "thm66", "separation", "compactness"}));
    add_common(cmd_check);
    CLI::App* cmd_basins = app.add_subcommand("basins", "trajectory-end basin decomposition");
    add_common(cmd_basins);
    CLI::App* cmd_orbit = app.add_subcommand("orbit", "sample one orbit and test convergence");
    cmd_orbit->add_option("--from", from_cell, "start cell index")->required();
    cmd_orbit->add_option("--steps", steps, "walk length");
    add_common(cmd_orbit);
    CLI::App* cmd_duality = app.add_subcommand("duality", "left/right reversal duality report");
    add_common(cmd_duality);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help and friends
            out << app.help();
            return 0;
        }
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (cmd_gallery->parsed()) {
            for (const auto& name : gallery_names()) out << name << "\n";
            return 0;
        }

        std::optional<analysis_config> cfg;
        if (cmd_analyze->parsed()) cfg = load_config(config_path);
        detail::job j = cfg ? detail::resolve_config(config_path, *cfg, depth)
                            : detail::resolve_fixture(fixture_name, n, d, res, depth);
        report::json doc = report::envelope(j.source, j.space, j.twr ? &*j.twr : nullptr);

        if (cmd_analyze->parsed()) {
            for (const auto& check : cfg->checks)
                doc["results"][check] = detail::run_named_check(check, j, depth);
        } else if (cmd_ends->parsed()) {
            doc["results"]["ends"] = report::ends_block(j.space, detail::need_tower(j));
        } else if (cmd_limits->parsed()) {
            doc["results"]["limits"] = report::limits_block(j.space, detail::need_tower(j));
        } else if (cmd_complete->parsed()) {
            completion c(j.space, detail::need_tower(j));
            doc["results"]["completion"] = report::completion_block(c);
        } else if (cmd_check->parsed()) {
            doc["results"][check_name] = detail::run_named_check(check_name, j, depth);
        } else if (cmd_basins->parsed()) {
            doc["results"]["basins"] =
                report::basins_block(j.space, detail::need_map(j), detail::need_tower(j));
        } else if (cmd_orbit->parsed()) {
            const cell_map& m = detail::need_map(j);
            if (from_cell < 0 || static_cast<std::size_t>(from_cell) >= m.cell_count())
                throw error(errc::not_a_top_cell, "--from is out of range");
            orbit_sample walk = [&] {
                if (seed) {
                    std::mt19937 rng(seed);
                    return random_walk(j.space, m, from_cell, steps, rng);
                }
                return greedy_walk(j.space, m, from_cell, steps);
            }();
            doc["results"]["orbit"] =
                report::orbit_block(j.space, m, detail::need_tower(j), walk);
        } else if (cmd_duality->parsed()) {
            doc["results"]["duality"] = report::duality_block(j.space, detail::need_map(j));
        }

        if (!dot_path.empty()) {
            std::ostringstream dot_text;
            if (cmd_basins->parsed() || cmd_orbit->parsed() || cmd_duality->parsed()) {
                basin_result basins =
                    basin_decomposition(j.space, detail::need_map(j), detail::need_tower(j));
                dot::dynamics(dot_text, j.space, detail::need_map(j), &basins);
            } else {
                dot::component_tree(dot_text, j.space, detail::need_tower(j));
            }
            detail::write_file(dot_path, dot_text.str());
        }
        detail::emit(doc, json_path, out);
        return 0;
    } catch (const error& e) {
        bool usage = e.code() == errc::config_error || e.code() == errc::unknown_fixture;
        if (usage) {
            err << e.what() << "\n";
            return 2;
        }
        report::json reason{{"error", errc_name(e.code())}, {"message", e.what()}};
        err << reason.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        report::json reason{{"error", "Internal"}, {"message", e.what()}};
        err << reason.dump() << "\n";
        return 1;
    }
}

}  // namespace efl::cli
