#include "cenra/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cenra/errors.hpp"

namespace cenra {

WeightMode weight_mode_from_string(const std::string& s) {
    if (s == "full") return WeightMode::full;
    if (s == "similarity_only") return WeightMode::similarity_only;
    if (s == "performance_only") return WeightMode::performance_only;
    if (s == "uniform") return WeightMode::uniform;
    throw ConfigError("unknown weight mode: '" + s +
                      "' (expected full|similarity_only|performance_only|uniform)");
}

std::string to_string(WeightMode m) {
    switch (m) {
        case WeightMode::full: return "full";
        case WeightMode::similarity_only: return "similarity_only";
        case WeightMode::performance_only: return "performance_only";
        case WeightMode::uniform: return "uniform";
    }
    return "full";
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': cannot parse '" + v + "' as a number");
    }
}

uint64_t parse_u64(const std::string& key, const std::string& v) {
    uint64_t out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size())
        throw ConfigError("config key '" + key + "': cannot parse '" + v + "' as a non-negative integer");
    return out;
}

int parse_int(const std::string& key, const std::string& v) {
    int out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size())
        throw ConfigError("config key '" + key + "': cannot parse '" + v + "' as an integer");
    return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("config key '" + key + "': expected true/false, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::string cur;
    std::stringstream ss(v);
    while (std::getline(ss, cur, ',')) {
        cur = trim(cur);
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& v) {
    std::vector<int> out;
    for (const std::string& s : split_list(v)) out.push_back(parse_int(key, s));
    if (out.empty()) throw ConfigError("config key '" + key + "': empty list");
    return out;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt(const std::vector<int>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(v[i]);
    }
    return out;
}

}  // namespace

void TrainConfig::set(const std::string& key, const std::string& value) {
    if (key == "suite.layouts") {
        layouts.clear();
        for (const std::string& s : split_list(value)) layouts.emplace_back(s);
    } else if (key == "suite.holdout") {
        holdout = value;
    } else if (key == "suite.step_limit") {
        step_limit = parse_int(key, value);
    } else if (key == "run.total_steps") {
        total_steps = parse_u64(key, value);
    } else if (key == "run.seed") {
        seed = parse_u64(key, value);
    } else if (key == "run.log_every") {
        log_every = parse_u64(key, value);
    } else if (key == "run.eval_episodes") {
        eval_episodes = parse_int(key, value);
    } else if (key == "run.parallel_rollouts") {
        parallel_rollouts = parse_bool(key, value);
    } else if (key == "policy.gamma") {
        gamma = parse_double(key, value);
    } else if (key == "policy.lambda") {
        lambda = parse_double(key, value);
    } else if (key == "policy.batch") {
        policy_batch = parse_int(key, value);
    } else if (key == "policy.burn_in") {
        policy_burn_in = parse_u64(key, value);
    } else if (key == "policy.buffer_capacity") {
        buffer_capacity = parse_u64(key, value);
    } else if (key == "policy.lr") {
        policy_lr = parse_double(key, value);
    } else if (key == "policy.tau") {
        policy_tau = parse_double(key, value);
    } else if (key == "policy.eps_start") {
        eps_start = parse_double(key, value);
    } else if (key == "policy.eps_end") {
        eps_end = parse_double(key, value);
    } else if (key == "policy.eps_decay_fraction") {
        eps_decay_fraction = parse_double(key, value);
    } else if (key == "policy.hidden") {
        policy_hidden = parse_int_list(key, value);
    } else if (key == "reward_agent.r_min") {
        r_min = parse_double(key, value);
    } else if (key == "reward_agent.r_max") {
        r_max = parse_double(key, value);
    } else if (key == "reward_agent.batch") {
        cra_batch = parse_int(key, value);
    } else if (key == "reward_agent.lr_actor") {
        cra_lr_actor = parse_double(key, value);
    } else if (key == "reward_agent.lr_critic") {
        cra_lr_critic = parse_double(key, value);
    } else if (key == "reward_agent.actor_update_every") {
        cra_actor_update_every = parse_int(key, value);
    } else if (key == "reward_agent.tau") {
        cra_tau = parse_double(key, value);
    } else if (key == "reward_agent.burn_in") {
        cra_burn_in = parse_u64(key, value);
    } else if (key == "reward_agent.update_period") {
        cra_update_period = parse_u64(key, value);
    } else if (key == "reward_agent.hidden") {
        cra_hidden = parse_int_list(key, value);
    } else if (key == "reward_agent.optimism") {
        cra_optimism = parse_double(key, value);
    } else if (key == "sync.alpha") {
        alpha = parse_double(key, value);
    } else if (key == "sync.window") {
        window = parse_int(key, value);
    } else if (key == "sync.floor_eps") {
        floor_eps = parse_double(key, value);
    } else if (key == "sync.weight_mode") {
        weight_mode = weight_mode_from_string(value);
    } else {
        throw ConfigError("unknown config key: '" + key + "'");
    }
}

TrainConfig TrainConfig::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open config file: " + file.string());
    TrainConfig cfg;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ConfigError(file.string() + ":" + std::to_string(lineno) +
                                  ": unterminated section header");
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(file.string() + ":" + std::to_string(lineno) +
                              ": expected 'key = value'");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (section.empty())
            throw ConfigError(file.string() + ":" + std::to_string(lineno) +
                              ": key outside any [section]");
        cfg.set(section + "." + key, value);
    }
    // Layout paths are relative to the config file, not the working dir.
    std::filesystem::path base = file.parent_path();
    for (auto& p : cfg.layouts)
        if (p.is_relative()) p = base / p;
    if (!cfg.holdout.empty() && cfg.holdout.is_relative()) cfg.holdout = base / cfg.holdout;
    cfg.validate();
    return cfg;
}

void TrainConfig::validate() const {
    if (layouts.empty()) throw ConfigError("config needs at least one suite layout");
    if (step_limit < 1) throw ConfigError("step_limit must be positive");
    if (total_steps < 1) throw ConfigError("total_steps must be positive");
    if (log_every < 1) throw ConfigError("log_every must be positive");
    if (eval_episodes < 1) throw ConfigError("eval_episodes must be positive");
    if (!(lambda > 0.0 && lambda <= 1.0)) throw ConfigError("policy.lambda must be in (0, 1]");
    if (gamma <= 0.0 || gamma > 1.0) throw ConfigError("policy.gamma must be in (0, 1]");
    if (policy_batch < 1 || cra_batch < 1) throw ConfigError("batch sizes must be positive");
    if (buffer_capacity < 1) throw ConfigError("buffer_capacity must be positive");
    if (policy_lr <= 0 || cra_lr_actor <= 0 || cra_lr_critic <= 0)
        throw ConfigError("learning rates must be positive");
    if (policy_tau <= 0 || policy_tau > 1 || cra_tau <= 0 || cra_tau > 1)
        throw ConfigError("tau must be in (0, 1]");
    if (eps_start < 0 || eps_start > 1 || eps_end < 0 || eps_end > 1)
        throw ConfigError("epsilon bounds must be in [0, 1]");
    if (eps_decay_fraction <= 0 || eps_decay_fraction > 1)
        throw ConfigError("eps_decay_fraction must be in (0, 1]");
    if (!(r_min < r_max)) throw ConfigError("reward_agent needs r_min < r_max");
    if (!std::isfinite(cra_optimism) || std::abs(cra_optimism) > 10.0)
        throw ConfigError("reward_agent.optimism must be finite and within [-10, 10]");
    if (cra_actor_update_every < 1) throw ConfigError("actor_update_every must be >= 1");
    if (cra_update_period < 1) throw ConfigError("update_period must be >= 1");
    if (alpha < 0 || alpha > 1) throw ConfigError("sync.alpha must be in [0, 1]");
    if (window < 1) throw ConfigError("sync.window must be positive");
    if (floor_eps <= 0) throw ConfigError("sync.floor_eps must be positive");
    for (int h : policy_hidden)
        if (h < 1) throw ConfigError("policy.hidden widths must be positive");
    for (int h : cra_hidden)
        if (h < 1) throw ConfigError("reward_agent.hidden widths must be positive");
}

std::string TrainConfig::resolved() const {
    std::ostringstream out;
    out << "[suite]\n";
    out << "layouts = ";
    for (size_t i = 0; i < layouts.size(); ++i) {
        if (i) out << ", ";
        out << layouts[i].string();
    }
    out << "\n";
    if (!holdout.empty()) out << "holdout = " << holdout.string() << "\n";
    out << "step_limit = " << step_limit << "\n\n";
    out << "[run]\n";
    out << "total_steps = " << total_steps << "\n";
    out << "seed = " << seed << "\n";
    out << "log_every = " << log_every << "\n";
    out << "eval_episodes = " << eval_episodes << "\n";
    out << "parallel_rollouts = " << (parallel_rollouts ? "true" : "false") << "\n\n";
    out << "[policy]\n";
    out << "gamma = " << fmt(gamma) << "\n";
    out << "lambda = " << fmt(lambda) << "\n";
    out << "batch = " << policy_batch << "\n";
    out << "burn_in = " << policy_burn_in << "\n";
    out << "buffer_capacity = " << buffer_capacity << "\n";
    out << "lr = " << fmt(policy_lr) << "\n";
    out << "tau = " << fmt(policy_tau) << "\n";
    out << "eps_start = " << fmt(eps_start) << "\n";
    out << "eps_end = " << fmt(eps_end) << "\n";
    out << "eps_decay_fraction = " << fmt(eps_decay_fraction) << "\n";
    out << "hidden = " << fmt(policy_hidden) << "\n\n";
    out << "[reward_agent]\n";
    out << "r_min = " << fmt(r_min) << "\n";
    out << "r_max = " << fmt(r_max) << "\n";
    out << "batch = " << cra_batch << "\n";
    out << "lr_actor = " << fmt(cra_lr_actor) << "\n";
    out << "lr_critic = " << fmt(cra_lr_critic) << "\n";
    out << "actor_update_every = " << cra_actor_update_every << "\n";
    out << "tau = " << fmt(cra_tau) << "\n";
    out << "burn_in = " << cra_burn_in << "\n";
    out << "update_period = " << cra_update_period << "\n";
    out << "optimism = " << fmt(cra_optimism) << "\n";
    out << "hidden = " << fmt(cra_hidden) << "\n\n";
    out << "[sync]\n";
    out << "alpha = " << fmt(alpha) << "\n";
    out << "window = " << window << "\n";
    out << "floor_eps = " << fmt(floor_eps) << "\n";
    out << "weight_mode = " << to_string(weight_mode) << "\n";
    return out.str();
}

}  // namespace cenra
