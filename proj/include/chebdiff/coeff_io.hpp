#pragma once

#include <filesystem>
#include <iosfwd>

#include "chebdiff/coeff_grid.hpp"

namespace chebdiff {

// CSV: header `k,j,coeff`, then one `k,j,value` line per entry. Values are
// written with 17 significant digits so that a write/read cycle is exact.
// An empty file (or header only) is the zero grid.
CoeffGrid read_coeff_csv(std::istream& in);
void write_coeff_csv(std::ostream& out, const CoeffGrid& grid);

// JSON: {"max_k": int, "max_j": int, "entries": [[k, j, value], ...]}
CoeffGrid read_coeff_json(std::istream& in);
void write_coeff_json(std::ostream& out, const CoeffGrid& grid);

// Dispatch on extension: `.json` is JSON, anything else is CSV.
CoeffGrid load_coeffs(const std::filesystem::path& path);
void save_coeffs(const std::filesystem::path& path, const CoeffGrid& grid);

}  // namespace chebdiff
