#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "btops/geometry.hpp"
#include "btops/test_function.hpp"

namespace btops {

/// Parsed experiment manifest. See docs/manifest.schema.json for the file
/// format and docs/reports.md for the emitted CSV columns.
struct Manifest {
    std::string experiment;
    int k = 2;
    std::vector<PerturbationTerm> psi;
    std::vector<int> N_list;
    TestFunction f = TestFunction::constant(1.0);
    int grid_rows = 64;
    int grid_cols = 128;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
};

extern const std::vector<std::string> kExperiments;

bool known_experiment(const std::string& name);

/// Parses and validates; throws ValidationError whose message carries one
/// diagnostic line per problem.
Manifest parse_manifest_file(const std::string& path);
Manifest parse_manifest_text(const std::string& text);

/// "64x128" -> rows, cols.
void parse_grid_spec(const std::string& spec, int& rows, int& cols);

}  // namespace btops
