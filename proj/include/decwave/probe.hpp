#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <vector>

#include "decwave/error.hpp"
#include "decwave/format.hpp"

namespace decwave {

/// Pressure at every probe vertex after one step.
struct ProbeRecord {
  std::size_t step = 0;
  double time = 0.0;
  std::vector<double> values;
};

/// CSV with header `step,time,p_0,...`; numbers are written in shortest round-trip form.
inline void write_probe(const std::vector<ProbeRecord>& records, std::size_t probe_count, std::ostream& out) {
  out << "step,time";
  for (std::size_t i = 0; i < probe_count; ++i) out << ",p_" << i;
  out << '\n';
  std::size_t last_step = 0;
  for (std::size_t r = 0; r < records.size(); ++r) {
    const ProbeRecord& rec = records[r];
    if (rec.values.size() != probe_count) throw Error("probe record width does not match probe count");
    if (r > 0 && rec.step <= last_step) throw Error("probe records must have increasing step indices");
    last_step = rec.step;
    out << rec.step << ',' << format_shortest(rec.time);
    for (double v : rec.values) out << ',' << format_shortest(v);
    out << '\n';
  }
}

inline void write_probe(const std::vector<ProbeRecord>& records, std::size_t probe_count,
                        const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_probe(records, probe_count, out);
  out.flush();
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace decwave
