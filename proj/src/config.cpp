#include "esw/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <optional>

#include "esw/errors.hpp"

namespace esw {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, std::string_view v) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out))
        throw ConfigError(key, "expected a number, got '" + std::string(v) + "'");
    return out;
}

std::size_t parse_size(const std::string& key, std::string_view v) {
    std::size_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw ConfigError(key, "expected a non-negative integer, got '" + std::string(v) + "'");
    return out;
}

bool parse_bool(const std::string& key, std::string_view v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError(key, "expected true or false, got '" + std::string(v) + "'");
}

std::vector<double> parse_list(const std::string& key, std::string_view v) {
    std::vector<double> out;
    if (trim(v).empty()) return out;
    while (true) {
        const auto comma = v.find(',');
        out.push_back(parse_double(key, trim(v.substr(0, comma))));
        if (comma == std::string_view::npos) break;
        v.remove_prefix(comma + 1);
    }
    return out;
}

std::string format_list(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += format_double(values[i]);
    }
    return out;
}

OutflowKind parse_outflow(const std::string& key, std::string_view v) {
    if (v == "free") return OutflowKind::Free;
    if (v == "far_field") return OutflowKind::FarField;
    throw ConfigError(key, "expected free or far_field");
}

ScenarioKind parse_scenario(const std::string& key, std::string_view v) {
    if (v == "blasius_steady") return ScenarioKind::BlasiusSteady;
    if (v == "impulsive_start") return ScenarioKind::ImpulsiveStart;
    if (v == "bump") return ScenarioKind::Bump;
    if (v == "mlsw_compare") return ScenarioKind::MlswCompare;
    throw ConfigError(key, "unknown scenario '" + std::string(v) + "'");
}

struct Line {
    std::string key;
    std::string value;
    std::string where;  // "line N" or "--set"
};

std::optional<Line> split_line(std::string_view raw, const std::string& where) {
    const auto hash = raw.find('#');
    const std::string_view s = trim(raw.substr(0, hash));
    if (s.empty()) return std::nullopt;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos)
        throw ConfigError(std::string(s), where + ": expected key=value");
    Line l{std::string(trim(s.substr(0, eq))), std::string(trim(s.substr(eq + 1))), where};
    if (l.key.empty()) throw ConfigError("", where + ": empty key");
    return l;
}

// Closure parameters are collected while parsing and assembled at the end, so that
// closure.H may appear before or after closure.law.
struct ClosureDraft {
    std::string law;
    double H = BlasiusConstant::shape_factor;
    double f2 = BlasiusConstant::friction_factor;
};

using Setter = std::function<void(ScenarioConfig&, ClosureDraft&, const std::string&, std::string_view)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"scenario", [](ScenarioConfig& c, ClosureDraft&, const std::string& k, std::string_view v) {
             c.scenario = parse_scenario(k, v);
         }},
        {"physics.froude", [](ScenarioConfig& c, ClosureDraft&, const std::string& k, std::string_view v) {
             c.params.froude = parse_double(k, v);
         }},
        {"physics.delta_bar", [](ScenarioConfig& c, ClosureDraft&, const std::string& k, std::string_view v) {
             c.params.delta_bar = parse_double(k, v);
         }},
        {"physics.h_dry", [](ScenarioConfig& c, ClosureDraft&, const std::string& k, std::string_view v) {
             c.params.h_dry = parse_double(k, v);
         }},
        {"physics.u_eps", [](ScenarioConfig& c, ClosureDraft&, const std::string& k, std::string_view v) {
             c.params.u_eps = parse_double(k, v);
         }},
        {"closure.law", [](ScenarioConfig&, ClosureDraft& d, const std::string&, std::string_view v) {
             d.law = std::string(v);
         }},
        {"closure.H", [](ScenarioConfig&, ClosureDraft& d, const std::string& k, std::string_view v) {
             d.H = parse_double(k, v);
         }},
        {"closure.f2", [](ScenarioConfig&, ClosureDraft& d, const std::string& k, std::string_view v) {
             d.f2 = parse_double(k, v);
         }},
        {"grid.x_min", [](ScenarioConfig& c, ClosureDraft&, const std::string& k, std::string_view v) {
             c.x_min = parse_double(k, v);
         }},
        {"grid.x_max", [](ScenarioConfig& c, ClosureDraft&, const std::string& k, std::string_view v) {
             c.x_max = parse_double(k, v);
         }},
        {"grid.n_cells", [](ScenarioConfig& c, ClosureDraft&, const std::string& k, std::string_view v) {
             c.n_cells = parse_size(k, v);
         }},
        {"flow.regime", [](ScenarioConfig& c, ClosureDraft&, const std::string& k, std::string_view v) {
             if (v == "subcritical") c.regime = FlowRegime::Subcritical;
             else if (v == "supercritical") c.regime = FlowRegime::Supercritical;
             else throw ConfigError(k, "expected subcritical or supercritical");
         }},
        {"flow.outflow", [](ScenarioConfig& c, ClosureDraft&, const std::string& k, std::string_view v) {
             c.outflow = parse_outflow(k, v);
         }},
        {"flow.h0", [](ScenarioConfig& c, ClosureDraft&, const std::string& k, std::string_view v) {
             c.h0 = parse_double(k, v);
         }},
        {"flow.u0", [](ScenarioConfig& c, ClosureDraft&, const std::string& k, std::string_view v) {
             c.u0 = parse_double(k, v);
         }},
        {"bump.alpha", [](ScenarioConfig& c, ClosureDraft&, const std::string& k, std::string_view v) {
             c.bump.alpha = parse_double(k, v);
         }},
        {"bump.sigma", [](ScenarioConfig& c, ClosureDraft&, const std::string& k, std::string_view v) {
             c.bump.sigma = parse_double(k, v);
         }},
        {"bump.center", [](ScenarioConfig& c, ClosureDraft&, const std::string& k, std::string_view v) {
             c.bump.center = parse_double(k, v);
         }},
        {"time.t_end", [](ScenarioConfig& c, ClosureDraft&, const std::string& k, std::string_view v) {
             c.t_end = parse_double(k, v);
         }},
        {"time.snapshots", [](ScenarioConfig& c, ClosureDraft&, const std::string& k, std::string_view v) {
             c.snapshot_times = parse_list(k, v);
         }},
        {"numerics.gradient_order", [](ScenarioConfig& c, ClosureDraft&, const std::string& k, std::string_view v) {
             const std::size_t o = parse_size(k, v);
             if (o == 2) c.gradient_order = GradientOrder::Second;
             else if (o == 4) c.gradient_order = GradientOrder::Fourth;
             else throw ConfigError(k, "gradient order must be 2 or 4");
         }},
        {"numerics.cfl", [](ScenarioConfig& c, ClosureDraft&, const std::string& k, std::string_view v) {
             c.cfl_number = parse_double(k, v);
         }},
        {"numerics.dt_max", [](ScenarioConfig& c, ClosureDraft&, const std::string& k, std::string_view v) {
             c.dt_max = parse_double(k, v);
         }},
        {"mlsw.layers", [](ScenarioConfig& c, ClosureDraft&, const std::string& k, std::string_view v) {
             c.mlsw_layers = parse_size(k, v);
         }},
        {"converge.dx_list", [](ScenarioConfig& c, ClosureDraft&, const std::string& k, std::string_view v) {
             c.convergence.dx_list = parse_list(k, v);
         }},
        {"converge.steady_tol", [](ScenarioConfig& c, ClosureDraft&, const std::string& k, std::string_view v) {
             c.convergence.steady_tol = parse_double(k, v);
         }},
        {"converge.max_steps", [](ScenarioConfig& c, ClosureDraft&, const std::string& k, std::string_view v) {
             c.convergence.max_steps = parse_size(k, v);
         }},
        {"converge.supercritical", [](ScenarioConfig& c, ClosureDraft&, const std::string& k, std::string_view v) {
             c.convergence.include_supercritical = parse_bool(k, v);
         }},
        {"converge.outflow", [](ScenarioConfig& c, ClosureDraft&, const std::string& k, std::string_view v) {
             c.convergence.outflow = parse_outflow(k, v);
         }},
        {"output.dir", [](ScenarioConfig& c, ClosureDraft&, const std::string&, std::string_view v) {
             c.output_dir = std::string(v);
         }},
    };
    return table;
}

ClosureLaw build_closure(const ClosureDraft& d, const ClosureLaw& current) {
    if (d.law.empty()) {
        if (std::holds_alternative<FixedProfile>(current)) return make_fixed_profile(d.H, d.f2);
        return current;
    }
    if (d.law == "falkner_skan") return FalknerSkanFit{};
    if (d.law == "blasius") return BlasiusConstant{};
    if (d.law == "pohlhausen4") return Pohlhausen4{};
    if (d.law == "fixed") {
        try {
            return make_fixed_profile(d.H, d.f2);
        } catch (const DomainError& e) {
            throw ConfigError("closure.H", e.what());
        }
    }
    throw ConfigError("closure.law", "unknown closure '" + d.law + "'");
}

}  // namespace

std::string scenario_name(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::BlasiusSteady: return "blasius_steady";
        case ScenarioKind::ImpulsiveStart: return "impulsive_start";
        case ScenarioKind::Bump: return "bump";
        case ScenarioKind::MlswCompare: return "mlsw_compare";
    }
    return "unknown";
}

std::string regime_name(FlowRegime regime) {
    return regime == FlowRegime::Subcritical ? "subcritical" : "supercritical";
}

std::string outflow_name(OutflowKind kind) { return kind == OutflowKind::Free ? "free" : "far_field"; }

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

ScenarioConfig scenario_defaults(ScenarioKind kind) {
    ScenarioConfig c;
    c.scenario = kind;
    switch (kind) {
        case ScenarioKind::BlasiusSteady:
            break;
        case ScenarioKind::ImpulsiveStart:
            c.params.closure = BlasiusConstant{};
            c.x_max = 4.0;
            c.n_cells = 4000;
            c.t_end = 4.0;
            c.snapshot_times = {0.5, 1.0, 2.0, 4.0};
            break;
        case ScenarioKind::Bump:
            c.x_max = 2.0;
            c.n_cells = 2000;
            c.t_end = 6.0;
            c.snapshot_times = {1.0, 2.0, 4.0};
            break;
        case ScenarioKind::MlswCompare:
            c.x_max = 2.0;
            c.n_cells = 400;
            c.t_end = 6.0;
            break;
    }
    return c;
}

void ScenarioConfig::validate() const {
    params.validate();
    if (!(x_max > x_min)) throw ConfigError("grid.x_max", "domain must satisfy x_max > x_min");
    if (n_cells < 10) throw ConfigError("grid.n_cells", "need at least 10 cells");
    if (!(h0 > 0.0)) throw ConfigError("flow.h0", "initial depth must be positive");
    if (!(t_end >= 0.0)) throw ConfigError("time.t_end", "t_end must be non-negative");
    for (double t : snapshot_times)
        if (!(t >= 0.0 && t <= t_end))
            throw ConfigError("time.snapshots", "snapshot time " + format_double(t) + " outside [0, t_end]");
    if (!(cfl_number > 0.0 && cfl_number <= 1.0)) throw ConfigError("numerics.cfl", "must lie in (0, 1]");
    if (!(dt_max > 0.0)) throw ConfigError("numerics.dt_max", "must be positive");
    if (!(bump.sigma > 0.0)) throw ConfigError("bump.sigma", "must be positive");
    if (mlsw_layers == 0) throw ConfigError("mlsw.layers", "need at least one layer");
    if (convergence.dx_list.empty()) throw ConfigError("converge.dx_list", "empty list");
    for (std::size_t i = 0; i < convergence.dx_list.size(); ++i) {
        if (!(convergence.dx_list[i] > 0.0)) throw ConfigError("converge.dx_list", "entries must be positive");
        if (i > 0 && !(convergence.dx_list[i] < convergence.dx_list[i - 1]))
            throw ConfigError("converge.dx_list", "entries must be decreasing");
    }
    if (!(convergence.steady_tol > 0.0)) throw ConfigError("converge.steady_tol", "must be positive");
}

ScenarioConfig parse_config(std::string_view text, const std::vector<std::string>& overrides) {
    std::vector<Line> lines;
    std::size_t number = 0;
    while (!text.empty() || number == 0) {
        ++number;
        const auto nl = text.find('\n');
        const std::string_view raw = text.substr(0, nl);
        if (auto l = split_line(raw, "line " + std::to_string(number))) lines.push_back(std::move(*l));
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
    }
    for (const std::string& o : overrides) {
        auto l = split_line(o, "--set");
        if (!l) throw ConfigError(o, "--set: expected key=value");
        lines.push_back(std::move(*l));
    }

    // The last `scenario` entry selects the defaults everything else overrides.
    ScenarioKind kind = ScenarioKind::BlasiusSteady;
    for (const Line& l : lines)
        if (l.key == "scenario") kind = parse_scenario(l.key, l.value);
    ScenarioConfig config = scenario_defaults(kind);
    ClosureDraft draft;
    if (const auto* fixed = std::get_if<FixedProfile>(&config.params.closure)) {
        draft.H = fixed->shape_factor;
        draft.f2 = fixed->friction_factor;
    }

    const auto& table = setters();
    for (const Line& l : lines) {
        // written by run metadata; informational only
        if (l.key == "code_version") continue;
        const auto it = table.find(l.key);
        if (it == table.end()) throw ConfigError(l.key, l.where + ": unknown key");
        try {
            it->second(config, draft, l.key, l.value);
        } catch (const ConfigError& e) {
            throw ConfigError(l.key, l.where + ": " + e.what());
        }
    }
    config.params.closure = build_closure(draft, config.params.closure);
    config.validate();
    return config;
}

std::vector<std::pair<std::string, std::string>> config_entries(const ScenarioConfig& c) {
    std::vector<std::pair<std::string, std::string>> out;
    auto add = [&](std::string k, std::string v) { out.emplace_back(std::move(k), std::move(v)); };
    add("scenario", scenario_name(c.scenario));
    add("physics.froude", format_double(c.params.froude));
    add("physics.delta_bar", format_double(c.params.delta_bar));
    add("physics.h_dry", format_double(c.params.h_dry));
    add("physics.u_eps", format_double(c.params.u_eps));
    add("closure.law", closure_name(c.params.closure));
    if (const auto* fixed = std::get_if<FixedProfile>(&c.params.closure)) {
        add("closure.H", format_double(fixed->shape_factor));
        add("closure.f2", format_double(fixed->friction_factor));
    }
    add("grid.x_min", format_double(c.x_min));
    add("grid.x_max", format_double(c.x_max));
    add("grid.n_cells", std::to_string(c.n_cells));
    add("flow.regime", regime_name(c.regime));
    add("flow.outflow", outflow_name(c.outflow));
    add("flow.h0", format_double(c.h0));
    add("flow.u0", format_double(c.u0));
    add("bump.alpha", format_double(c.bump.alpha));
    add("bump.sigma", format_double(c.bump.sigma));
    add("bump.center", format_double(c.bump.center));
    add("time.t_end", format_double(c.t_end));
    add("time.snapshots", format_list(c.snapshot_times));
    add("numerics.gradient_order", std::to_string(static_cast<int>(c.gradient_order)));
    add("numerics.cfl", format_double(c.cfl_number));
    add("numerics.dt_max", format_double(c.dt_max));
    add("mlsw.layers", std::to_string(c.mlsw_layers));
    add("converge.dx_list", format_list(c.convergence.dx_list));
    add("converge.steady_tol", format_double(c.convergence.steady_tol));
    add("converge.max_steps", std::to_string(c.convergence.max_steps));
    add("converge.supercritical", c.convergence.include_supercritical ? "true" : "false");
    add("converge.outflow", outflow_name(c.convergence.outflow));
    add("output.dir", c.output_dir);
    return out;
}

}  // namespace esw
