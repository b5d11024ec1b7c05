#include "passcov/record_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "passcov/errors.hpp"

namespace passcov {

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    return out;
}

std::string value_csv(const FieldValue& v) {
    if (std::holds_alternative<double>(v)) return format_double(std::get<double>(v));
    if (std::holds_alternative<std::int64_t>(v))
        return std::to_string(std::get<std::int64_t>(v));
    if (std::holds_alternative<bool>(v)) return std::get<bool>(v) ? "true" : "false";
    return csv_escape(std::get<std::string>(v));
}

std::string value_json(const FieldValue& v) {
    if (std::holds_alternative<double>(v)) {
        const double d = std::get<double>(v);
        // JSON has no literal for non-finite numbers.
        if (!std::isfinite(d)) return "null";
        return format_double(d);
    }
    if (std::holds_alternative<std::int64_t>(v))
        return std::to_string(std::get<std::int64_t>(v));
    if (std::holds_alternative<bool>(v)) return std::get<bool>(v) ? "true" : "false";
    return "\"" + json_escape(std::get<std::string>(v)) + "\"";
}

void check_shape(const std::vector<Record>& records) {
    if (records.empty()) return;
    const Record& head = records.front();
    for (const Record& r : records) {
        if (r.fields.size() != head.fields.size())
            throw LengthMismatch("write_records: rows differ in field count");
        for (std::size_t i = 0; i < r.fields.size(); ++i)
            if (r.fields[i].first != head.fields[i].first)
                throw LengthMismatch("write_records: rows differ in field names");
    }
}

} // namespace

OutFormat parse_format(const std::string& s) {
    if (s == "csv") return OutFormat::Csv;
    if (s == "jsonl") return OutFormat::Jsonl;
    throw SelectorInvalid("unknown output format '" + s + "' (want csv or jsonl)");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_records(std::ostream& os, const std::vector<Record>& records,
                   OutFormat format) {
    check_shape(records);
    if (format == OutFormat::Csv) {
        if (!records.empty()) {
            const Record& head = records.front();
            for (std::size_t i = 0; i < head.fields.size(); ++i) {
                if (i) os << ',';
                os << csv_escape(head.fields[i].first);
            }
            os << '\n';
        }
        for (const Record& r : records) {
            for (std::size_t i = 0; i < r.fields.size(); ++i) {
                if (i) os << ',';
                os << value_csv(r.fields[i].second);
            }
            os << '\n';
        }
    } else {
        for (const Record& r : records) {
            os << '{';
            for (std::size_t i = 0; i < r.fields.size(); ++i) {
                if (i) os << ',';
                os << '"' << json_escape(r.fields[i].first)
                   << "\":" << value_json(r.fields[i].second);
            }
            os << "}\n";
        }
    }
}

void write_records_file(const std::string& path, const std::vector<Record>& records,
                        OutFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + path);
    write_records(out, records, format);
}

} // namespace passcov
