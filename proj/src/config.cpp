#include "kedmd/errors.hpp"
#include "kedmd/harness.hpp"

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

namespace kedmd {

SystemKind parse_system_kind(const std::string& name) {
    if (name == "linear") return SystemKind::Linear;
    if (name == "sir") return SystemKind::SIR;
    if (name == "multiplicative") return SystemKind::Multiplicative;
    if (name == "identity") return SystemKind::Identity;
    throw InputError(fmt::format("unknown system '{}' (expected linear, sir, multiplicative or identity)", name));
}

std::string to_string(SystemKind kind) {
    switch (kind) {
        case SystemKind::Linear: return "linear";
        case SystemKind::SIR: return "sir";
        case SystemKind::Multiplicative: return "multiplicative";
        case SystemKind::Identity: return "identity";
    }
    return "?";
}

std::unique_ptr<StochasticSystem> SystemSpec::build() const {
    switch (kind) {
        case SystemKind::Linear: return std::make_unique<LinearSystem>(alpha, sigma);
        case SystemKind::SIR: return std::make_unique<SIRSystem>(beta, gamma, sigma);
        case SystemKind::Multiplicative: return std::make_unique<MultiplicativeNoiseSystem>();
        case SystemKind::Identity: return std::make_unique<IdentitySystem>(3);
    }
    throw InputError("unknown system kind");
}

TrajectoryConfig ExperimentConfig::trajectory() const {
    return TrajectoryConfig{x0, horizon, n_realizations, n_zeta};
}

double ExperimentConfig::ridge_for(std::int64_t n) const {
    return ridge ? *ridge : default_ridge(static_cast<Eigen::Index>(n));
}

void ExperimentConfig::validate() const {
    (void)kernel();
    trajectory().validate();
    if (n_sweep.empty()) throw InputError("n_sweep must not be empty");
    for (auto n : n_sweep) {
        if (n < 1) throw InputError(fmt::format("n_sweep entries must be >= 1, got {}", n));
    }
    if (n_repeats < 1) throw InputError(fmt::format("n_repeats must be >= 1, got {}", n_repeats));
    if (ridge && !(*ridge >= 0.0)) throw InputError(fmt::format("ridge must be nonnegative, got {}", *ridge));
    if (!(delta > 0.0 && delta <= 2.0)) throw InputError(fmt::format("delta must lie in (0, 2], got {}", delta));
    if (x0.size() != system.build()->dim()) {
        throw InputError(fmt::format("x0 has {} entries, {} system has dimension {}", x0.size(),
                                     to_string(system.kind), system.build()->dim()));
    }
}

ExperimentConfig default_config(SystemKind kind) {
    ExperimentConfig cfg;
    cfg.system.kind = kind;
    switch (kind) {
        case SystemKind::Linear:
            break;
        case SystemKind::SIR:
            cfg.system.sigma = 0.01;
            cfg.ell = 1.0;
            cfg.x0 = Eigen::Vector3d(0.9, 0.1, 0.0);
            cfg.horizon = 20;
            cfg.delta = 0.1;
            break;
        case SystemKind::Multiplicative:
            cfg.system.sigma = 0.0;
            cfg.ell = 1.0;
            cfg.x0 = Eigen::VectorXd::Constant(1, 0.5);
            cfg.horizon = 10;
            cfg.delta = 0.1;
            break;
        case SystemKind::Identity:
            cfg.system.sigma = 0.0;
            cfg.ell = 1.0;
            cfg.x0 = Eigen::Vector3d(0.5, 0.5, 0.5);
            cfg.horizon = 20;
            cfg.delta = 0.1;
            break;
    }
    return cfg;
}

namespace {

template <typename T>
T scalar(const YAML::Node& node, const std::string& key) {
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        throw InputError(fmt::format("config key '{}' has an invalid value", key));
    }
}

template <typename T>
std::vector<T> sequence(const YAML::Node& node, const std::string& key) {
    if (!node.IsSequence()) throw InputError(fmt::format("config key '{}' must be a list", key));
    std::vector<T> out;
    for (const auto& item : node) out.push_back(scalar<T>(item, key));
    return out;
}

}  // namespace

ExperimentConfig parse_config(const std::string& yaml_text) {
    YAML::Node root;
    try {
        root = YAML::Load(yaml_text);
    } catch (const YAML::Exception& e) {
        throw InputError(fmt::format("config is not valid YAML: {}", e.what()));
    }
    if (root.IsNull()) return default_config(SystemKind::Linear);
    if (!root.IsMap()) throw InputError("config must be a flat key-value map");

    const SystemKind kind =
        root["system"] ? parse_system_kind(scalar<std::string>(root["system"], "system")) : SystemKind::Linear;
    ExperimentConfig cfg = default_config(kind);

    static const std::set<std::string> known{"system", "alpha", "beta", "gamma", "sigma", "nu", "ell",
                                             "x0", "horizon", "n_sweep", "n_repeats", "n_realizations",
                                             "n_zeta", "ridge", "seed", "delta", "c1", "metric"};
    for (const auto& kv : root) {
        const auto key = kv.first.as<std::string>();
        if (!known.count(key)) throw InputError(fmt::format("unknown config key '{}'", key));
        const YAML::Node& v = kv.second;
        if (key == "alpha") cfg.system.alpha = scalar<double>(v, key);
        else if (key == "beta") cfg.system.beta = scalar<double>(v, key);
        else if (key == "gamma") cfg.system.gamma = scalar<double>(v, key);
        else if (key == "sigma") cfg.system.sigma = scalar<double>(v, key);
        else if (key == "nu") cfg.nu = scalar<double>(v, key);
        else if (key == "ell") cfg.ell = scalar<double>(v, key);
        else if (key == "x0") {
            const auto xs = sequence<double>(v, key);
            cfg.x0 = Eigen::Map<const Eigen::VectorXd>(xs.data(), static_cast<Eigen::Index>(xs.size()));
        } else if (key == "horizon") cfg.horizon = scalar<int>(v, key);
        else if (key == "n_sweep") cfg.n_sweep = sequence<std::int64_t>(v, key);
        else if (key == "n_repeats") cfg.n_repeats = scalar<int>(v, key);
        else if (key == "n_realizations") cfg.n_realizations = scalar<int>(v, key);
        else if (key == "n_zeta") cfg.n_zeta = scalar<int>(v, key);
        else if (key == "ridge") cfg.ridge = scalar<double>(v, key);
        else if (key == "seed") cfg.seed = scalar<std::uint64_t>(v, key);
        else if (key == "delta") cfg.delta = scalar<double>(v, key);
        else if (key == "c1") cfg.c1 = scalar<double>(v, key);
        else if (key == "metric") {
            const auto m = scalar<std::string>(v, key);
            if (m == "max") cfg.metric = ErrorMetric::MaxOverTime;
            else if (m == "mean") cfg.metric = ErrorMetric::TimeAverage;
            else throw InputError(fmt::format("metric must be 'max' or 'mean', got '{}'", m));
        }
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(fmt::format("cannot open config file '{}'", path.string()));
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

}  // namespace kedmd
