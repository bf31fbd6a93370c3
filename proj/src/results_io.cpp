#include "kedmd/errors.hpp"
#include "kedmd/harness.hpp"

#include <Eigen/Core>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace kedmd {

namespace {

std::string num(double v) { return fmt::format("{}", v); }

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
    out << contents;
    out.close();
    if (!out) throw IoError(fmt::format("failed writing '{}'", path.string()));
}

}  // namespace

void write_errors_csv(std::ostream& os, const std::vector<ErrorRow>& rows) {
    os << "N,repeat,error\n";
    for (const auto& r : rows) os << r.n << ',' << r.repeat << ',' << num(r.error) << '\n';
}

void write_fit_csv(std::ostream& os, const SweepResult& result) {
    os << "N,mean_error,std_error,bound,A,B,delta\n";
    const std::string a = result.fit ? num(result.fit->A) : "nan";
    const std::string b = result.fit ? num(result.fit->B) : "nan";
    for (const auto& p : result.curve) {
        os << p.n << ',' << num(p.mean_error) << ',' << num(p.std_error) << ',' << num(p.bound) << ',' << a << ','
           << b << ',' << num(result.config.delta) << '\n';
    }
}

std::string manifest_json(const SweepResult& result) {
    const ExperimentConfig& c = result.config;
    nlohmann::ordered_json j;
    j["kedmd_version"] = kVersion;
    j["eigen_version"] =
        fmt::format("{}.{}.{}", EIGEN_WORLD_VERSION, EIGEN_MAJOR_VERSION, EIGEN_MINOR_VERSION);
    j["seed"] = c.seed;
    nlohmann::ordered_json cfg;
    cfg["system"] = to_string(c.system.kind);
    cfg["alpha"] = c.system.alpha;
    cfg["beta"] = c.system.beta;
    cfg["gamma"] = c.system.gamma;
    cfg["sigma"] = c.system.sigma;
    cfg["nu"] = c.nu;
    cfg["ell"] = c.ell;
    cfg["x0"] = std::vector<double>(c.x0.data(), c.x0.data() + c.x0.size());
    cfg["horizon"] = c.horizon;
    cfg["n_sweep"] = c.n_sweep;
    cfg["n_repeats"] = c.n_repeats;
    cfg["n_realizations"] = c.n_realizations;
    cfg["n_zeta"] = c.n_zeta;
    if (c.ridge) cfg["ridge"] = *c.ridge;
    else cfg["ridge"] = "1e-10*N";
    cfg["delta"] = c.delta;
    cfg["c1"] = c.c1;
    cfg["metric"] = c.metric == ErrorMetric::MaxOverTime ? "max" : "mean";
    j["config"] = cfg;
    if (result.fit) j["fit"] = {{"A", result.fit->A}, {"B", result.fit->B}};
    return j.dump(2) + "\n";
}

void emit_results(const SweepResult& result, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError(fmt::format("cannot create output directory '{}': {}", dir.string(), ec.message()));

    std::ostringstream errors, fit;
    write_errors_csv(errors, result.errors);
    write_fit_csv(fit, result);
    write_file(dir / "errors.csv", errors.str());
    write_file(dir / "fit.csv", fit.str());
    write_file(dir / "meta.json", manifest_json(result));
}

std::vector<ErrorRow> read_errors_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw InputError("errors.csv is empty (missing header)");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "N,repeat,error") throw InputError(fmt::format("unexpected errors.csv header '{}'", line));
    std::vector<ErrorRow> rows;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string n, repeat, error;
        if (!std::getline(fields, n, ',') || !std::getline(fields, repeat, ',') || !std::getline(fields, error)) {
            throw InputError(fmt::format("errors.csv line {}: expected 3 fields", lineno));
        }
        try {
            std::size_t used = 0;
            ErrorRow row;
            row.n = std::stoll(n, &used);
            if (used != n.size()) throw std::invalid_argument(n);
            row.repeat = std::stoi(repeat, &used);
            if (used != repeat.size()) throw std::invalid_argument(repeat);
            row.error = std::stod(error, &used);
            if (used != error.size()) throw std::invalid_argument(error);
            rows.push_back(row);
        } catch (const std::logic_error&) {
            throw InputError(fmt::format("errors.csv line {}: malformed field in '{}'", lineno, line));
        }
    }
    return rows;
}

}  // namespace kedmd
