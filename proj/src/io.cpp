#include "harmsum/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace harmsum {

using nlohmann::json;

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return out.str();
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

json to_json(const RunManifest& m) {
  return {{"command", m.command},       {"parameters", m.parameters},       {"config", m.config},
          {"tool_version", m.tool_version}, {"timestamp", m.timestamp}, {"wall_seconds", m.wall_seconds},
          {"output_digest", m.output_digest}};
}

RunManifest manifest_from_json(const json& j) {
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.parameters = j.at("parameters");
  m.config = j.at("config");
  m.tool_version = j.at("tool_version").get<std::string>();
  m.timestamp = j.at("timestamp").get<std::string>();
  m.wall_seconds = j.at("wall_seconds").get<double>();
  m.output_digest = j.at("output_digest").get<std::string>();
  return m;
}

json to_json(const SearchConfig& c) {
  return {{"initial_precision", c.initial_precision},
          {"max_precision", c.max_precision},
          {"max_nodes", c.max_nodes},
          {"max_elements", c.max_elements}};
}

json to_json(const SearchResult& r) {
  json elements = json::array();
  json residues = json::array();
  for (std::size_t i = 0; i < r.elements.size(); ++i) {
    elements.push_back(to_decimal(r.elements[i]));
    residues.push_back({{"value", r.residues[i].residue().get_str()}, {"precision", r.residues[i].precision()}});
  }
  return {{"p", r.p},
          {"y", r.y.get_str()},
          {"base", r.base.get_str()},
          {"status", to_string(r.status)},
          {"count", r.elements.size()},
          {"m_p", r.m_p},
          {"level_profile", r.level_profile},
          {"elements", elements},
          {"residues", residues},
          {"precision_used", r.precision_used},
          {"nodes_expanded", r.nodes_expanded}};
}

SearchResult search_result_from_json(const json& j) {
  try {
    SearchResult r;
    r.p = j.at("p").get<std::uint32_t>();
    r.y = mpz_class(j.at("y").get<std::string>());
    r.base = mpz_class(j.value("base", j.at("y").get<std::string>()));
    r.status = parse_status(j.at("status").get<std::string>());
    r.m_p = j.at("m_p").get<std::uint64_t>();
    r.level_profile = j.at("level_profile").get<std::vector<std::uint64_t>>();
    r.precision_used = j.at("precision_used").get<int>();
    r.nodes_expanded = j.value("nodes_expanded", std::uint64_t{0});
    for (const auto& e : j.at("elements")) r.elements.push_back(from_decimal(e.get<std::string>()));
    if (j.contains("residues")) {
      for (const auto& v : j.at("residues")) {
        r.residues.emplace_back(r.p, v.at("precision").get<int>(), mpz_class(v.at("value").get<std::string>()));
      }
    } else {
      for (std::size_t i = 0; i < r.elements.size(); ++i) r.residues.emplace_back(r.p, 1, 0L);
    }
    if (r.residues.size() != r.elements.size() || j.at("count").get<std::size_t>() != r.elements.size()) {
      throw std::invalid_argument("element, residue and count fields disagree");
    }
    return r;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed search result: ") + e.what());
  }
}

json with_manifest(json payload, RunManifest& manifest) {
  payload.erase("manifest");
  manifest.output_digest = sha256_hex(payload.dump());
  payload["manifest"] = to_json(manifest);
  return payload;
}

std::string grid_to_csv(const GridCells& cells, const std::vector<std::uint32_t>& primes) {
  std::uint32_t max_y = 0;
  for (const auto& [key, count] : cells) max_y = std::max(max_y, key.second);
  std::ostringstream out;
  out << "y\\p";
  for (auto p : primes) out << ',' << p;
  out << '\n';
  for (std::uint32_t y = 1; y <= max_y; ++y) {
    out << y;
    for (auto p : primes) {
      out << ',';
      const auto it = cells.find({p, y});
      if (it != cells.end()) out << it->second;
    }
    out << '\n';
  }
  return out.str();
}

GridCells grid_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line.rfind("y\\p", 0) != 0) throw std::invalid_argument("grid CSV lacks its header");
  std::vector<std::uint32_t> primes;
  {
    std::istringstream header(line);
    std::string cell;
    std::getline(header, cell, ',');
    while (std::getline(header, cell, ',')) primes.push_back(static_cast<std::uint32_t>(std::stoul(cell)));
  }
  GridCells cells;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string cell;
    std::istringstream row(line);
    while (std::getline(row, cell, ',')) fields.push_back(cell);
    while (fields.size() < primes.size() + 1) fields.emplace_back();
    if (fields.size() != primes.size() + 1) throw std::invalid_argument("grid row has too many cells: " + line);
    const auto y = static_cast<std::uint32_t>(std::stoul(fields[0]));
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (!fields[i + 1].empty()) cells[{primes[i], y}] = std::stoull(fields[i + 1]);
    }
  }
  return cells;
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace harmsum
