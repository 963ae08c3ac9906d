#include "sqeiar/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <vector>

#include "sqeiar/errors.hpp"
#include "sqeiar/format.hpp"

namespace sqeiar {

RunMode parse_run_mode(std::string_view text) {
    if (text == "baseline") return RunMode::kBaseline;
    if (text == "optimal") return RunMode::kOptimal;
    if (text == "both") return RunMode::kBoth;
    throw ConfigError("run.mode: expected baseline, optimal or both (got '" + std::string(text) + "')");
}

std::string_view to_string(RunMode mode) {
    switch (mode) {
        case RunMode::kBaseline: return "baseline";
        case RunMode::kOptimal: return "optimal";
        case RunMode::kBoth: return "both";
    }
    return "both";
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
    text = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw ConfigError(std::string(key) + ": expected a number (got '" + std::string(text) + "')");
    }
    return value;
}

template <typename Int>
Int parse_integer(std::string_view key, std::string_view text) {
    text = trim(text);
    Int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw ConfigError(std::string(key) + ": expected a nonnegative integer (got '" + std::string(text) + "')");
    }
    return value;
}

std::vector<Interval> parse_intervals(std::string_view key, std::string_view text) {
    std::vector<Interval> out;
    while (!trim(text).empty()) {
        const auto semi = text.find(';');
        const std::string_view pair = trim(text.substr(0, semi));
        text = semi == std::string_view::npos ? std::string_view{} : text.substr(semi + 1);
        const auto comma = pair.find(',');
        if (comma == std::string_view::npos) {
            throw ConfigError(std::string(key) + ": expected 'a,b' pairs separated by ';' (got '" +
                              std::string(pair) + "')");
        }
        out.push_back({parse_double(key, pair.substr(0, comma)), parse_double(key, pair.substr(comma + 1))});
    }
    return out;
}

std::string format_intervals(const std::vector<Interval>& regions) {
    std::string out;
    for (std::size_t i = 0; i < regions.size(); ++i) {
        if (i) out += "; ";
        out += format_number(regions[i].a) + "," + format_number(regions[i].b);
    }
    return out;
}

struct Setting {
    std::string key;
    std::function<void(ScenarioConfig&, std::string_view key, std::string_view value)> set;
    std::function<std::string(const ScenarioConfig&)> get;
};

template <typename Access>
Setting real(std::string key, Access access) {
    return {std::move(key),
            [access](ScenarioConfig& c, std::string_view k, std::string_view v) { access(c) = parse_double(k, v); },
            [access](const ScenarioConfig& c) { return format_number(access(c)); }};
}

template <typename Int, typename Access>
Setting integer(std::string key, Access access) {
    return {std::move(key),
            [access](ScenarioConfig& c, std::string_view k, std::string_view v) {
                access(c) = parse_integer<Int>(k, v);
            },
            [access](const ScenarioConfig& c) { return std::to_string(access(c)); }};
}

const std::vector<Setting>& settings() {
    static const std::vector<Setting> all = [] {
        std::vector<Setting> s;
        s.push_back(real("model.beta", [](auto& c) -> auto& { return c.params.beta; }));
        s.push_back(real("model.delta", [](auto& c) -> auto& { return c.params.delta; }));
        s.push_back(real("model.q", [](auto& c) -> auto& { return c.params.q; }));
        s.push_back(real("model.mu", [](auto& c) -> auto& { return c.params.mu; }));
        s.push_back(real("model.xi", [](auto& c) -> auto& { return c.params.xi; }));
        s.push_back(real("model.k", [](auto& c) -> auto& { return c.params.k; }));
        s.push_back(real("model.z", [](auto& c) -> auto& { return c.params.z; }));
        s.push_back(real("model.eta", [](auto& c) -> auto& { return c.params.eta; }));
        s.push_back(real("model.p", [](auto& c) -> auto& { return c.params.p; }));
        s.push_back(real("model.f", [](auto& c) -> auto& { return c.params.f; }));
        s.push_back(real("model.alpha", [](auto& c) -> auto& { return c.params.alpha; }));
        s.push_back(real("model.d1", [](auto& c) -> auto& { return c.params.diffusion[0]; }));
        s.push_back(real("model.d2", [](auto& c) -> auto& { return c.params.diffusion[1]; }));
        s.push_back(real("model.d3", [](auto& c) -> auto& { return c.params.diffusion[2]; }));
        s.push_back(real("model.d4", [](auto& c) -> auto& { return c.params.diffusion[3]; }));
        s.push_back(real("model.d5", [](auto& c) -> auto& { return c.params.diffusion[4]; }));
        s.push_back(real("model.d6", [](auto& c) -> auto& { return c.params.diffusion[5]; }));
        // Shorthand that sets all six diffusion coefficients; not printed by format_config.
        s.push_back({"model.diffusion",
                     [](ScenarioConfig& c, std::string_view k, std::string_view v) {
                         c.params.diffusion.fill(parse_double(k, v));
                     },
                     nullptr});
        s.push_back(real("weights.rho1", [](auto& c) -> auto& { return c.weights.rho1; }));
        s.push_back(real("weights.rho3", [](auto& c) -> auto& { return c.weights.rho3; }));
        s.push_back(real("weights.rho4", [](auto& c) -> auto& { return c.weights.rho4; }));
        s.push_back(real("weights.rho5", [](auto& c) -> auto& { return c.weights.rho5; }));
        s.push_back(real("weights.sigma1", [](auto& c) -> auto& { return c.weights.sigma1; }));
        s.push_back(real("weights.sigma2", [](auto& c) -> auto& { return c.weights.sigma2; }));
        s.push_back({"regions.intervals",
                     [](ScenarioConfig& c, std::string_view k, std::string_view v) {
                         c.regions.regions = parse_intervals(k, v);
                     },
                     [](const ScenarioConfig& c) { return format_intervals(c.regions.regions); }});
        s.push_back(real("grid.x_min", [](auto& c) -> auto& { return c.grid.x_min; }));
        s.push_back(real("grid.x_max", [](auto& c) -> auto& { return c.grid.x_max; }));
        s.push_back(integer<std::size_t>("grid.nx", [](auto& c) -> auto& { return c.grid.nx; }));
        s.push_back(real("grid.tau", [](auto& c) -> auto& { return c.grid.tau; }));
        s.push_back(integer<std::size_t>("grid.nt", [](auto& c) -> auto& { return c.grid.nt; }));
        for (std::size_t comp = 0; comp < kCompartments; ++comp) {
            std::string name = kCompartmentNames[comp];
            name[0] = static_cast<char>(name[0] - 'A' + 'a');
            s.push_back({"initial." + name,
                         [comp](ScenarioConfig& c, std::string_view, std::string_view v) {
                             c.initial[comp] = std::string(trim(v));
                         },
                         [comp](const ScenarioConfig& c) { return c.initial[comp]; }});
        }
        s.push_back(real("sweep.tolerance", [](auto& c) -> auto& { return c.sweep.tolerance; }));
        s.push_back(integer<std::size_t>("sweep.max_iterations",
                                         [](auto& c) -> auto& { return c.sweep.max_iterations; }));
        s.push_back(real("sweep.relaxation", [](auto& c) -> auto& { return c.sweep.relaxation; }));
        s.push_back({"run.mode",
                     [](ScenarioConfig& c, std::string_view, std::string_view v) { c.mode = parse_run_mode(trim(v)); },
                     [](const ScenarioConfig& c) { return std::string(to_string(c.mode)); }});
        s.push_back(integer<std::uint64_t>("run.seed", [](auto& c) -> auto& { return c.seed; }));
        s.push_back({"output.dir",
                     [](ScenarioConfig& c, std::string_view, std::string_view v) {
                         c.output_dir = std::filesystem::path(std::string(trim(v)));
                     },
                     [](const ScenarioConfig& c) { return c.output_dir.string(); }});
        s.push_back(
            integer<std::size_t>("output.stride", [](auto& c) -> auto& { return c.output_stride; }));
        return s;
    }();
    return all;
}

const Setting& find_setting(std::string_view key) {
    const auto& all = settings();
    for (const auto& s : all) {
        if (s.key == key) return s;
    }
    if (key.find('.') == std::string_view::npos) {
        const Setting* match = nullptr;
        std::size_t hits = 0;
        for (const auto& s : all) {
            const auto dot = s.key.find('.');
            if (dot != std::string::npos && s.key.size() - dot - 1 == key.size() &&
                s.key.compare(dot + 1, key.size(), key.data(), key.size()) == 0) {
                match = &s;
                ++hits;
            }
        }
        if (hits == 1) return *match;
        if (hits > 1) throw ConfigError(std::string(key) + ": ambiguous key, qualify it with a section");
    }
    throw ConfigError(std::string(key) + ": unknown configuration key");
}

template <typename Fn>
void wrap(const char* section, Fn&& fn) {
    try {
        fn();
    } catch (const ContractError& e) {
        throw ConfigError(std::string(section) + ": " + e.what());
    }
}

}  // namespace

void ScenarioConfig::validate() const {
    wrap("model", [&] { params.validate(); });
    wrap("weights", [&] { weights.validate(); });
    wrap("grid", [&] { grid.require_stable(params); });
    wrap("regions.intervals", [&] { regions.validate(grid.x_min, grid.x_max); });
    if (!(sweep.tolerance > 0.0)) throw ConfigError("sweep.tolerance: must be positive");
    if (sweep.max_iterations < 1) throw ConfigError("sweep.max_iterations: must be at least 1");
    if (!(sweep.relaxation > 0.0 && sweep.relaxation <= 1.0)) throw ConfigError("sweep.relaxation: must lie in (0, 1]");
    if (output_stride < 1) throw ConfigError("output.stride: must be at least 1");
    if (output_dir.empty()) throw ConfigError("output.dir: must not be empty");
    for (std::size_t c = 0; c < kCompartments; ++c) {
        const std::string key = std::string("initial.") + static_cast<char>(kCompartmentNames[c][0] - 'A' + 'a');
        try {
            (void)make_profile(initial[c], grid, base_dir);
        } catch (const ConfigError& e) {
            throw ConfigError(key + ": " + e.what());
        }
    }
}

ScenarioConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
    ScenarioConfig cfg;
    cfg.base_dir = base_dir;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'section.key = value'");
        }
        const std::string_view key = trim(line.substr(0, eq));
        const Setting& setting = find_setting(key);
        setting.set(cfg, setting.key, trim(line.substr(eq + 1)));
    }
    cfg.validate();
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path.string() + ": cannot open configuration file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path.has_parent_path() ? path.parent_path() : std::filesystem::path("."));
}

std::string format_config(const ScenarioConfig& config) {
    std::string out;
    std::string section;
    for (const auto& s : settings()) {
        if (!s.get) continue;
        const std::string prefix = s.key.substr(0, s.key.find('.'));
        if (prefix != section) {
            if (!section.empty()) out += '\n';
            section = prefix;
        }
        out += s.key + " = " + s.get(config) + '\n';
    }
    return out;
}

std::vector<double> make_profile(std::string_view spec, const Grid& grid, const std::filesystem::path& base_dir) {
    using std::numbers::pi;
    std::vector<double> out(grid.nx, 0.0);
    auto fill = [&](auto fn) {
        for (std::size_t j = 0; j < grid.nx; ++j) out[j] = fn(grid.x(j));
    };
    if (spec == "zero") return out;
    if (spec == "paper_s0") {
        fill([](double x) { return 4000.0 * std::sin(pi * x) + 8000.0 * (1.0 - 1.0 / pi); });
    } else if (spec == "paper_e0") {
        fill([](double x) { return 100.0 * std::exp(x) + 282.2; });
    } else if (spec == "paper_a0" || spec == "paper_i0") {
        fill([](double x) { return 500.0 * std::cos(pi * x) + 500.0; });
    } else if (spec.starts_with("const:")) {
        const double value = parse_double("const", spec.substr(6));
        fill([value](double) { return value; });
    } else if (spec.starts_with("file:")) {
        std::filesystem::path path(std::string(spec.substr(5)));
        if (path.is_relative()) path = base_dir / path;
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open profile table " + path.string());
        std::vector<double> values;
        std::string line;
        while (std::getline(in, line)) {
            const std::string_view t = trim(line);
            if (t.empty() || t.front() == '#') continue;
            values.push_back(parse_double(path.string(), t));
        }
        if (values.size() != grid.nx) {
            throw ConfigError("profile table " + path.string() + " has " + std::to_string(values.size()) +
                              " values, expected grid.nx = " + std::to_string(grid.nx));
        }
        out = std::move(values);
    } else {
        throw ConfigError("unknown profile '" + std::string(spec) +
                          "' (expected paper_s0, paper_e0, paper_a0, paper_i0, zero, const:<v> or file:<path>)");
    }
    for (double v : out) {
        if (!(std::isfinite(v) && v >= 0.0)) {
            throw ConfigError("profile '" + std::string(spec) + "' must be finite and nonnegative");
        }
    }
    return out;
}

InitialState make_initial_state(const ScenarioConfig& config) {
    InitialState state;
    for (std::size_t c = 0; c < kCompartments; ++c) state[c] = make_profile(config.initial[c], config.grid, config.base_dir);
    return state;
}

Problem make_problem(const ScenarioConfig& config) {
    return {config.params, config.weights, config.regions, config.grid, make_initial_state(config)};
}

}  // namespace sqeiar
