#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace rwre {

using ojson = nlohmann::ordered_json;

// FNV-1a 64 over the canonical serialization; stable field order makes the
// hash reproducible.
std::string config_hash(const ojson& config);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// One CSV row with %.17g floats; stable byte-for-byte across reruns.
std::string csv_row(const std::vector<std::string>& cells);
std::string format_double(double v);

// Common artifact envelope: schema/code versions, config hash, seeds. Wall
// clock never goes here (artifacts must be byte-identical across reruns);
// timing lives in the run_meta sidecar.
ojson artifact_header(const ojson& config, const std::string& subcommand);

}  // namespace rwre
