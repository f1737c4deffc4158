#include "threshwet/output.hpp"

#include <cstdio>
#include <fstream>

namespace threshwet {

std::string trace_csv(const std::vector<StepRecord>& records) {
  std::string out = "iter,dt,energy,delta,sym_diff,volume\n";
  for (const StepRecord& r : records) {
    out += std::to_string(r.iter) + ',' + format_number(r.dt) + ',' + format_number(r.energy) + ',' +
           format_number(r.delta) + ',' + format_number(r.sym_diff) + ',' + format_number(r.volume) + '\n';
  }
  return out;
}

std::string hysteresis_csv(const std::vector<HysteresisRecord>& records) {
  std::string out = "step,volume,left_x,right_x,left_angle,right_angle,energy\n";
  for (const HysteresisRecord& r : records) {
    out += std::to_string(r.step) + ',' + format_number(r.volume) + ',' + format_number(r.contact.left_x) + ',' +
           format_number(r.contact.right_x) + ',' + format_number(r.contact.left_angle) + ',' +
           format_number(r.contact.right_angle) + ',' + format_number(r.energy) + '\n';
  }
  return out;
}

std::string pgm_bytes(const PhasePartition& p) {
  const GridSpec& g = p.grid();
  std::string out = "P5\n" + std::to_string(g.nx) + ' ' + std::to_string(g.ny) + "\n255\n";
  const IndicatorField solid = p.solid_union();
  for (int j = g.ny - 1; j >= 0; --j) {
    for (int i = 0; i < g.nx; ++i) {
      unsigned char v = 128;
      if (p.liquid(i, j)) v = 0;
      else if (solid(i, j)) v = 255;
      out += static_cast<char>(v);
    }
  }
  return out;
}

std::string snapshot_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "state_%04d.pgm", index);
  return buf;
}

std::string meta_text(const RunConfig& config, const std::vector<std::pair<std::string, std::string>>& derived) {
  std::string out;
  for (const auto& [k, v] : config.entries) out += k + " = " + v + '\n';
  for (const auto& [k, v] : derived) out += k + " = " + v + '\n';
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw OutputError("cannot open for writing: " + path.string());
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  f.close();
  if (!f) throw OutputError("write failed: " + path.string());
}

}  // namespace threshwet
