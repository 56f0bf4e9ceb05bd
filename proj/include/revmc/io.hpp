#ifndef REVMC_IO_HPP
#define REVMC_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace revmc {

// Raw trajectory ingestion. Formats:
//   "lines"  one state label per line, blank lines skipped
//   "csv"    header row with a "state" column
//   "auto"   csv when the first line looks like a csv header, else lines
std::vector<std::string> ingest(const std::string& path,
                                const std::string& format = "auto");

struct IngestStats {
  std::size_t n_states = 0;
  std::size_t n_transitions = 0;
  std::size_t distinct = 0;
  std::size_t singletons = 0;  // labels appearing exactly once
};

IngestStats ingest_stats(const std::vector<std::string>& labels);

std::string read_file(const std::string& path);

// FNV-1a, 64 bit; content fingerprint for output manifests.
std::uint64_t fnv1a(const std::string& bytes);
std::string content_hash(const std::string& path);

}  // namespace revmc

#endif
