#include "btops/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace btops {

const std::vector<std::string> kExperiments = {
    "density",     "gram-check", "trace-check", "approx",
    "convergence", "spectrum",   "dual-path"};

bool known_experiment(const std::string& name) {
    return std::find(kExperiments.begin(), kExperiments.end(), name) !=
           kExperiments.end();
}

void parse_grid_spec(const std::string& spec, int& rows, int& cols) {
    const auto x = spec.find('x');
    if (x == std::string::npos || x == 0 || x + 1 >= spec.size())
        throw ValidationError("grid spec must look like '64x128'");
    try {
        rows = std::stoi(spec.substr(0, x));
        cols = std::stoi(spec.substr(x + 1));
    } catch (const std::exception&) {
        throw ValidationError("grid spec must look like '64x128'");
    }
    if (rows < 2 || cols < 1)
        throw ValidationError("grid spec needs rows >= 2 and cols >= 1");
}

namespace {

using nlohmann::json;

void collect(std::vector<std::string>& problems, const std::string& msg) {
    problems.push_back(msg);
}

Manifest from_json(const json& j) {
    std::vector<std::string> problems;
    Manifest m;

    if (j.contains("experiment")) {
        if (!j["experiment"].is_string()) {
            collect(problems, "experiment must be a string");
        } else {
            m.experiment = j["experiment"].get<std::string>();
            if (!known_experiment(m.experiment))
                collect(problems, "unknown experiment '" + m.experiment + "'");
        }
    }

    if (!j.contains("geometry") || !j["geometry"].is_object()) {
        collect(problems, "missing geometry object");
    } else {
        const auto& g = j["geometry"];
        if (!g.contains("k") || !g["k"].is_number_integer()) {
            collect(problems, "geometry.k must be an integer");
        } else {
            m.k = g["k"].get<int>();
            if (m.k < 1) collect(problems, "geometry.k must be >= 1");
        }
        if (g.contains("psi")) {
            if (!g["psi"].is_array()) {
                collect(problems, "geometry.psi must be an array of {l,m,c}");
            } else {
                for (const auto& t : g["psi"]) {
                    if (!t.is_object() || !t.contains("l") || !t.contains("m") ||
                        !t.contains("c")) {
                        collect(problems, "geometry.psi entries need l, m, c");
                        continue;
                    }
                    PerturbationTerm term;
                    term.l = t["l"].get<int>();
                    term.m = t["m"].get<int>();
                    term.c = t["c"].get<double>();
                    if (term.l < 1 || term.l > 4)
                        collect(problems, "geometry.psi degree l must be in 1..4");
                    else if (std::abs(term.m) > term.l)
                        collect(problems, "geometry.psi order |m| must be <= l");
                    else
                        m.psi.push_back(term);
                }
            }
        }
    }

    if (!j.contains("N_list") || !j["N_list"].is_array() || j["N_list"].empty()) {
        collect(problems, "N_list must be a nonempty array");
    } else {
        int prev = 0;
        for (const auto& v : j["N_list"]) {
            if (!v.is_number_integer()) {
                collect(problems, "N_list entries must be integers");
                break;
            }
            const int n = v.get<int>();
            if (n < 1) {
                collect(problems, "N_list entries must be >= 1");
                break;
            }
            if (n <= prev) {
                collect(problems, "N_list must be strictly increasing");
                break;
            }
            prev = n;
            m.N_list.push_back(n);
        }
    }

    if (j.contains("f")) {
        if (!j["f"].is_object()) {
            collect(problems, "f must map monomial keys to coefficients");
        } else {
            std::map<std::string, double> poly;
            for (const auto& [key, val] : j["f"].items()) {
                if (!val.is_number()) {
                    collect(problems, "f coefficients must be numbers");
                    break;
                }
                poly[key] = val.get<double>();
            }
            try {
                m.f = TestFunction::parse(poly);
            } catch (const ValidationError& e) {
                collect(problems, e.what());
            }
        }
    }

    if (j.contains("grid")) {
        if (!j["grid"].is_string()) {
            collect(problems, "grid must be a string like '64x128'");
        } else {
            try {
                parse_grid_spec(j["grid"].get<std::string>(), m.grid_rows,
                                m.grid_cols);
            } catch (const ValidationError& e) {
                collect(problems, e.what());
            }
        }
    }

    if (j.contains("out")) {
        if (!j["out"].is_string())
            collect(problems, "out must be a string path");
        else
            m.out_dir = j["out"].get<std::string>();
    }

    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
            collect(problems, "seed must be a nonnegative integer");
        else
            m.seed = j["seed"].get<std::uint64_t>();
    }

    if (!problems.empty()) {
        std::ostringstream msg;
        for (std::size_t i = 0; i < problems.size(); ++i) {
            if (i) msg << '\n';
            msg << problems[i];
        }
        throw ValidationError(msg.str());
    }
    return m;
}

}  // namespace

Manifest parse_manifest_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("manifest is not valid JSON: ") +
                              e.what());
    }
    return from_json(j);
}

Manifest parse_manifest_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open manifest '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_manifest_text(buf.str());
}

}  // namespace btops
