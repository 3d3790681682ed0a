#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "harmsum/tree_search.hpp"

namespace harmsum {

inline constexpr std::string_view kToolVersion = "1.0.0";

/// Provenance attached to every output file. The digest covers the payload only,
/// so identical reruns agree on it while timestamp and duration differ.
struct RunManifest {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  nlohmann::json config = nlohmann::json::object();
  std::string tool_version{kToolVersion};
  std::string timestamp;
  double wall_seconds = 0.0;
  std::string output_digest;
};

nlohmann::json to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& j);

/// UTC time in ISO 8601.
std::string utc_timestamp();
std::string sha256_hex(std::string_view data);

nlohmann::json to_json(const SearchConfig& c);

/// Stable keys p, y, status, count, m_p, level_profile, elements, precision_used,
/// plus base, nodes_expanded and the stored residues.
nlohmann::json to_json(const SearchResult& r);
/// Throws std::invalid_argument on malformed input.
SearchResult search_result_from_json(const nlohmann::json& j);

/// The payload with the manifest embedded under "manifest"; fills manifest.output_digest.
nlohmann::json with_manifest(nlohmann::json payload, RunManifest& manifest);

/// Dense grid of |J_p(y)|: header `y\p,<primes>`, empty cells where no value exists.
using GridCells = std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t>;  // (p, y) -> count
std::string grid_to_csv(const GridCells& cells, const std::vector<std::uint32_t>& primes);
GridCells grid_from_csv(std::string_view text);

void write_text_file(const std::string& path, std::string_view text);
std::string read_text_file(const std::string& path);

}  // namespace harmsum
