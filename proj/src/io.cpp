#include "nalandau/io.hpp"

#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace nalandau::io {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

void write_csv(std::ostream& out, const Table& t) {
    for (size_t j = 0; j < t.header.size(); j++) {
        if (j) out << ',';
        out << t.header[j];
    }
    out << '\n';
    for (const auto& row : t.rows) {
        for (size_t j = 0; j < row.size(); j++) {
            if (j) out << ',';
            out << row[j];
        }
        out << '\n';
    }
}

void write_json(std::ostream& out, const Table& t, const KeyValues& provenance,
                const NamedArrays& extra_arrays) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json prov;
    for (const auto& [k, v] : provenance) prov[k] = v;
    prov["version"] = version;
    j["provenance"] = prov;
    j["columns"] = t.header;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) rows.push_back(row);
    j["rows"] = rows;
    for (const auto& [name, values] : extra_arrays) j[name] = values;
    out << j.dump(2) << '\n';
}

void write_error_json(std::ostream& out, const std::string& kind,
                      const std::string& message) {
    nlohmann::ordered_json j;
    j["error"] = {{"kind", kind}, {"message", message}};
    j["version"] = version;
    out << j.dump(2) << '\n';
}

} // namespace nalandau::io
