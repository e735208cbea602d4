#pragma once

// Flat `key = value` configuration files. Blank lines and lines starting
// with '#' are ignored; keys are the long CLI flag names without dashes.

#include <map>
#include <string>

namespace oco {

using ConfigMap = std::map<std::string, std::string>;

/// Throws IoError when the file cannot be read and InvalidArgument on a
/// malformed line or a repeated key.
ConfigMap parse_config_file(const std::string& path);
ConfigMap parse_config_text(const std::string& text);

}  // namespace oco
