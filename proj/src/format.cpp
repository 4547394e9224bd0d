#include "qshell/format.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qshell {

OutputFormat parse_format(const std::string& name) {
    if (name == "markdown") return OutputFormat::Markdown;
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    throw std::invalid_argument("unknown format: " + name);
}

std::string format_name(OutputFormat format) {
    switch (format) {
        case OutputFormat::Markdown: return "markdown";
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Json: return "json";
    }
    throw std::invalid_argument("unknown format enum value");
}

std::string fmt3(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    const double rounded = std::round(value * 1000.0) / 1000.0;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", rounded);
    return buf;
}

}  // namespace qshell
