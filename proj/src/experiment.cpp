#include "swarm/experiment.hpp"

#include <atomic>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace swarm {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError(path + ": " + what);
}

double as_number(const Json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    return v.get<double>();
}

std::int64_t as_integer(const Json& v, const std::string& path) {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<std::int64_t>();
}

std::string as_string(const Json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
}

std::pair<int, int> as_range(const Json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 2) fail(path, "expected [min, max]");
    return {static_cast<int>(as_integer(v[0], path + "[0]")),
            static_cast<int>(as_integer(v[1], path + "[1]"))};
}

FaultKind parse_fault_kind(const std::string& s, const std::string& path) {
    if (s == "stuck") return FaultKind::Stuck;
    if (s == "slowdown") return FaultKind::Slowdown;
    fail(path, "expected \"stuck\" or \"slowdown\"");
}

template <class F>
auto translate(const std::string& path, F&& f) {
    try {
        return f();
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
}

using Setter = std::function<void(WorldConfig&, const Json&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = [] {
        std::map<std::string, Setter> t;
        const auto num = [&](const char* key, auto getter) {
            t[key] = [getter](WorldConfig& c, const Json& v, const std::string& p) {
                getter(c) = as_number(v, p);
            };
        };
        t["n_robots"] = [](WorldConfig& c, const Json& v, const std::string& p) {
            c.n_robots = static_cast<int>(as_integer(v, p));
        };
        t["seed"] = [](WorldConfig& c, const Json& v, const std::string& p) {
            if (!v.is_number_unsigned()) fail(p, "expected a non-negative integer");
            c.seed = v.get<std::uint64_t>();
        };
        t["ticks"] = [](WorldConfig& c, const Json& v, const std::string& p) {
            c.ticks = as_integer(v, p);
        };
        t["fault_onset"] = [](WorldConfig& c, const Json& v, const std::string& p) {
            c.fault.onset_tick = as_integer(v, p);
        };
        t["fault_kind"] = [](WorldConfig& c, const Json& v, const std::string& p) {
            c.fault.kind = parse_fault_kind(as_string(v, p), p);
        };
        t["model"] = [](WorldConfig& c, const Json& v, const std::string& p) {
            c.model = translate(p, [&] { return parse_model_kind(as_string(v, p)); });
        };
        t["occlusion"] = [](WorldConfig& c, const Json& v, const std::string& p) {
            c.occlusion = translate(p, [&] { return parse_occlusion_policy(as_string(v, p)); });
        };
        t["interaction"] = [](WorldConfig& c, const Json& v, const std::string& p) {
            c.pg.rule = translate(p, [&] { return parse_interaction_rule(as_string(v, p)); });
        };
        t["pause"] = [](WorldConfig& c, const Json& v, const std::string& p) {
            std::tie(c.pg.pause_min, c.pg.pause_max) = as_range(v, p);
        };
        t["go"] = [](WorldConfig& c, const Json& v, const std::string& p) {
            std::tie(c.pg.go_min, c.pg.go_max) = as_range(v, p);
        };
        num("faulty_fraction", [](WorldConfig& c) -> double& { return c.faulty_fraction; });
        num("s_f", [](WorldConfig& c) -> double& { return c.fault.slowdown; });
        num("init_side", [](WorldConfig& c) -> double& { return c.init_side; });
        num("dt", [](WorldConfig& c) -> double& { return c.dt; });
        num("r_d", [](WorldConfig& c) -> double& { return c.params.r_d; });
        num("r_sense", [](WorldConfig& c) -> double& { return c.params.r_sense; });
        num("k_f", [](WorldConfig& c) -> double& { return c.params.k_f; });
        num("k_3", [](WorldConfig& c) -> double& { return c.params.k_align; });
        num("k_1", [](WorldConfig& c) -> double& { return c.gains.k1; });
        num("k_2", [](WorldConfig& c) -> double& { return c.gains.k2; });
        num("u_max", [](WorldConfig& c) -> double& { return c.gains.u_max; });
        num("u_forward", [](WorldConfig& c) -> double& { return c.gains.u_forward; });
        num("omega_lim", [](WorldConfig& c) -> double& { return c.gains.omega_lim; });
        num("l_w", [](WorldConfig& c) -> double& { return c.gains.wheelbase; });
        num("l", [](WorldConfig& c) -> double& { return c.body.length; });
        num("w", [](WorldConfig& c) -> double& { return c.body.width; });
        num("v", [](WorldConfig& c) -> double& { return c.body.height; });
        num("epsilon", [](WorldConfig& c) -> double& { return c.body.eps; });
        num("u_min", [](WorldConfig& c) -> double& { return c.pg.u_min; });
        num("theta_min", [](WorldConfig& c) -> double& { return c.pg.theta_min; });
        num("p", [](WorldConfig& c) -> double& { return c.pg.p; });
        return t;
    }();
    return table;
}

void apply(WorldConfig& cfg, const std::string& key, const Json& value, const std::string& path) {
    const auto it = setters().find(key);
    if (it == setters().end()) fail(path, "unknown key");
    it->second(cfg, value, path);
}

void validate_at(const WorldConfig& cfg, const std::string& where) {
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(where + e.what());
    }
}

std::string label_of(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_array()) {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i > 0) out += '-';
            out += label_of(v[i]);
        }
        return out;
    }
    return v.dump();
}

}  // namespace

ExperimentSpec parse_config(const std::string& json_text) {
    Json root;
    try {
        root = Json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("parse error: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("$: expected an object");

    ExperimentSpec spec;
    for (const auto& [key, value] : root.items()) {
        const std::string path = "$." + key;
        if (key == "trials") {
            spec.trials = static_cast<int>(as_integer(value, path));
            if (spec.trials < 1) fail(path, "must be at least 1");
        } else if (key == "output_dir") {
            spec.output_dir = as_string(value, path);
        } else if (key == "sweep") {
            if (!value.is_object()) fail(path, "expected an object of key: [values]");
            for (const auto& [axis, values] : value.items()) {
                const std::string apath = path + "." + axis;
                if (!setters().contains(axis)) fail(apath, "unknown key");
                if (!values.is_array() || values.empty()) fail(apath, "expected a non-empty list");
                SweepAxis a{axis, {}};
                for (std::size_t i = 0; i < values.size(); ++i) {
                    WorldConfig probe;
                    apply(probe, axis, values[i], apath + "[" + std::to_string(i) + "]");
                    a.values.push_back(values[i].dump());
                }
                spec.axes.push_back(std::move(a));
            }
        } else {
            apply(spec.base, key, value, path);
        }
    }
    validate_at(spec.base, "$.");
    for (const auto& cell : expand_grid(spec)) {
        validate_at(cell.config, "$.sweep cell " + std::to_string(cell.index) + ": ");
    }
    return spec;
}

ExperimentSpec load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string() + ": cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::vector<GridCell> expand_grid(const ExperimentSpec& spec) {
    std::size_t total = 1;
    for (const auto& a : spec.axes) total *= a.values.size();

    std::vector<GridCell> grid;
    grid.reserve(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        GridCell cell;
        cell.index = idx;
        cell.config = spec.base;
        cell.labels.resize(spec.axes.size());
        std::size_t rem = idx;
        for (std::size_t k = spec.axes.size(); k-- > 0;) {
            const auto& axis = spec.axes[k];
            const std::size_t pick = rem % axis.values.size();
            rem /= axis.values.size();
            const Json v = Json::parse(axis.values[pick]);
            apply(cell.config, axis.key, v, "$.sweep." + axis.key);
            cell.labels[k] = {axis.key, label_of(v)};
        }
        grid.push_back(std::move(cell));
    }
    return grid;
}

std::uint64_t child_seed(std::uint64_t master, std::size_t cell, std::size_t trial) {
    return derive_seed(derive_seed(master, cell), trial);
}

std::string trial_file_name(std::size_t cell, std::size_t trial, const char* suffix) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "cell_%03zu_trial_%03zu%s", cell, trial, suffix);
    return buf;
}

CellSummary summarize_cell(std::size_t cell, const std::vector<RunSummary>& trials) {
    CellSummary s;
    s.cell = cell;
    s.trials = static_cast<int>(trials.size());
    std::vector<double> orders;
    double fp = 0.0, speed = 0.0, neighbors = 0.0;
    for (const auto& t : trials) {
        orders.push_back(t.final_order);
        fp += t.fp_per_cycle;
        speed += t.mean_speed;
        neighbors += t.mean_neighbors;
        s.fp_total += t.fp_total;
        s.cycles += t.cycles;
    }
    s.final_order = mean_se(orders);
    if (!trials.empty()) {
        const double n = static_cast<double>(trials.size());
        s.mean_fp_per_cycle = fp / n;
        s.mean_speed = speed / n;
        s.mean_neighbors = neighbors / n;
    }
    return s;
}

void write_summary_csv(std::ostream& out, const std::vector<GridCell>& grid,
                       const std::vector<CellSummary>& cells) {
    out << "cell";
    if (!grid.empty()) {
        for (const auto& [key, value] : grid.front().labels) out << ',' << key;
    }
    out << ",trials,mean_final_order,se_order,mean_fp_per_cycle,mean_speed,mean_neighbors,fp_total,"
           "cycles\n";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& c = cells[i];
        out << c.cell;
        for (const auto& [key, value] : grid[i].labels) out << ',' << value;
        out << ',' << c.trials << ',' << format_double(c.final_order.mean) << ','
            << format_double(c.final_order.se) << ',' << format_double(c.mean_fp_per_cycle) << ','
            << format_double(c.mean_speed) << ',' << format_double(c.mean_neighbors) << ','
            << c.fp_total << ',' << c.cycles << '\n';
    }
}

std::vector<CellSummary> run_experiment(const ExperimentSpec& spec, const RunOptions& options) {
    namespace fs = std::filesystem;
    const std::vector<GridCell> grid = expand_grid(spec);
    const auto trials = static_cast<std::size_t>(spec.trials);
    const fs::path dir(spec.output_dir);
    if (options.write_files) {
        fs::create_directories(dir);
        fs::remove(dir / "DONE");
    }

    std::vector<std::vector<RunSummary>> results(grid.size(), std::vector<RunSummary>(trials));
    const std::size_t tasks = grid.size() * trials;
    const int jobs = std::max(1, options.jobs);
    // Worker threads already saturate the cores; keep the tick kernel serial under them.
    const ExecPolicy policy = jobs > 1 ? ExecPolicy::Serial : ExecPolicy::Parallel;

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    const auto worker = [&] {
        for (std::size_t task = next++; task < tasks; task = next++) {
            const std::size_t c = task / trials;
            const std::size_t t = task % trials;
            try {
                WorldConfig cfg = grid[c].config;
                cfg.seed = child_seed(spec.base.seed, c, t);
                std::ofstream traj;
                if (options.write_files && options.trajectories) {
                    traj.open(dir / trial_file_name(c, t, "_traj.csv"));
                    if (!traj) throw std::runtime_error("cannot write trajectory file");
                }
                RunResult r = run(cfg, traj.is_open() ? &traj : nullptr, policy);
                if (options.write_files) {
                    std::ofstream out(dir / trial_file_name(c, t));
                    write_metrics_csv(out, r.records);
                    if (!out) throw std::runtime_error("cannot write " + trial_file_name(c, t));
                }
                results[c][t] = r.summary;
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next = tasks;
            }
        }
    };

    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);

    std::vector<CellSummary> cells;
    cells.reserve(grid.size());
    for (std::size_t c = 0; c < grid.size(); ++c) cells.push_back(summarize_cell(c, results[c]));

    if (options.write_files) {
        std::ofstream out(dir / "summary.csv");
        write_summary_csv(out, grid, cells);
        out.close();
        if (!out) throw std::runtime_error("cannot write summary.csv");
        std::ofstream(dir / "DONE") << "ok\n";
    }
    return cells;
}

}  // namespace swarm
