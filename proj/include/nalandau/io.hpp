#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

// Deterministic CSV/JSON emission: fixed 15-significant-digit formatting,
// '.' decimal point, no timestamps, mandatory header row.
namespace nalandau::io {

inline constexpr const char* version = "0.1.0";

// %.15g
std::string format_number(double v);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream& out, const Table& t);

using KeyValues = std::vector<std::pair<std::string, std::string>>;
using NamedArrays = std::vector<std::pair<std::string, std::vector<double>>>;

// {"provenance": {... , "version"}, "columns": [...], "rows": [[...]], extras}
void write_json(std::ostream& out, const Table& t, const KeyValues& provenance,
                const NamedArrays& extra_arrays = {});

// {"error": {"kind": ..., "message": ...}, "version": ...}
void write_error_json(std::ostream& out, const std::string& kind,
                      const std::string& message);

} // namespace nalandau::io
