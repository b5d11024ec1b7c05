#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace passcov {

// Flat, ordered output rows. Doubles are rendered with %.17g so a rerun
// with the same seed produces byte-identical files.
using FieldValue = std::variant<double, std::int64_t, std::string, bool>;

struct Record {
    std::vector<std::pair<std::string, FieldValue>> fields;

    void put(std::string name, double v) { fields.emplace_back(std::move(name), v); }
    void put(std::string name, std::int64_t v) { fields.emplace_back(std::move(name), v); }
    void put(std::string name, int v) {
        fields.emplace_back(std::move(name), static_cast<std::int64_t>(v));
    }
    void put(std::string name, std::string v) {
        fields.emplace_back(std::move(name), std::move(v));
    }
    void put(std::string name, const char* v) {
        fields.emplace_back(std::move(name), std::string(v));
    }
    void put(std::string name, bool v) { fields.emplace_back(std::move(name), v); }
};

enum class OutFormat { Csv, Jsonl };

// "csv" or "jsonl".
OutFormat parse_format(const std::string& s);

std::string format_double(double v);

// All records must share the first record's field names in order; CSV gets
// a single header row, JSONL one object per line.
void write_records(std::ostream& os, const std::vector<Record>& records,
                   OutFormat format);
void write_records_file(const std::string& path, const std::vector<Record>& records,
                        OutFormat format);

} // namespace passcov
