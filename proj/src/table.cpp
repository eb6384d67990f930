#include "wva/table.hpp"

#include <charconv>

#include <json.hpp>

namespace wva {

std::string format_double(double v) {
    char buf[64];
    const auto res =
        std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string format_double_compact(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const std::vector<TableRow>& rows) {
    os << "x,value,variant,stderr\n";
    for (const TableRow& r : rows) {
        os << format_double(r.x) << ',' << format_double(r.value) << ','
           << r.variant << ',';
        if (r.stderr_value) os << format_double(*r.stderr_value);
        os << '\n';
    }
}

void write_json(std::ostream& os, const std::vector<TableRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const TableRow& r : rows) {
        nlohmann::json obj;
        obj["x"] = r.x;
        obj["value"] = r.value;
        obj["variant"] = r.variant;
        if (r.stderr_value) {
            obj["stderr"] = *r.stderr_value;
        } else {
            obj["stderr"] = nullptr;
        }
        arr.push_back(obj);
    }
    os << arr.dump(2) << '\n';
}

} // namespace wva
