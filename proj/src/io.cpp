#include "silevy/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace silevy {

namespace {

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::string jumps_jsonl(const JumpList& jumps, const Domain& domain) {
  std::string out;
  const std::size_t count = jumps.count();
  out.reserve(count * 48);
  for (std::size_t i = 0; i < count; ++i) {
    out += "{\"t\":[";
    if (jumps.tree) {
      out += std::to_string(jumps.node[i]);
    } else {
      for (int k = 0; k < jumps.dim; ++k) {
        if (k) out += ',';
        out += number(jumps.coord[k][i]);
      }
    }
    out += "],\"J\":";
    out += number(jumps.size[i]);
    out += "}\n";
  }
  (void)domain;
  return out;
}

std::string cells_csv(std::span<const double> values) {
  std::string out;
  out.reserve(values.size() * 20 + 16);
  out += "value\n";
  for (double v : values) {
    out += number(v);
    out += '\n';
  }
  return out;
}

void export_path(const std::string& dir, std::size_t index, const ExperimentConfig& cfg,
                 const SamplePath& path, const SamplePathY* y) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  char stem[32];
  std::snprintf(stem, sizeof(stem), "path_%04zu", index);
  const std::string base = dir + "/" + stem;

  nlohmann::json header;
  header["mesh_level"] = path.n;
  header["eps"] = path.eps;
  header["seed"] = path.seed;
  header["stream"] = path.stream;
  header["compensator_rate"] = path.compensator_rate;
  header["jump_count"] = path.jumps.count();
  header["config"] = cfg.echo;
  write_text_file(base + ".header.json", header.dump(2) + "\n");
  write_text_file(base + ".jumps.jsonl", jumps_jsonl(path.jumps, cfg.space.domain));
  if (!path.gauss.empty()) write_text_file(base + ".cells.csv", cells_csv(path.gauss));

  if (y != nullptr) {
    write_text_file(base + ".y.jumps.jsonl", jumps_jsonl(y->jumps, cfg.space.domain));
    write_text_file(base + ".y.cells.csv", cells_csv(y->cell_total));
  }
}

}  // namespace silevy
