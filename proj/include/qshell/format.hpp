#pragma once

#include <string>

namespace qshell {

enum class OutputFormat { Markdown, Csv, Json };

// "markdown" | "csv" | "json"; anything else throws std::invalid_argument.
OutputFormat parse_format(const std::string& name);
std::string format_name(OutputFormat format);

// Fixed 3-decimal rendering, half away from zero; infinity renders as "inf".
std::string fmt3(double value);

}  // namespace qshell
