#pragma once

#include <string>

#include "silevy/config.hpp"

namespace silevy {

void write_text_file(const std::string& path, const std::string& content);

// Path artifacts for one replication under <dir>:
//   path_<idx>.header.json   mesh level, domain, triplet, eps, seed, integrand
//   path_<idx>.jumps.jsonl   one {"t":[...],"J":...} per jump
//   path_<idx>.cells.csv     flat array of per-cell Gaussian increments
// Y paths add f-weighted jump and cell files.
void export_path(const std::string& dir, std::size_t index, const ExperimentConfig& cfg,
                 const SamplePath& path, const SamplePathY* y);

std::string jumps_jsonl(const JumpList& jumps, const Domain& domain);
std::string cells_csv(std::span<const double> values);

}  // namespace silevy
