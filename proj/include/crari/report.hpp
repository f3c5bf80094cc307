#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace crari {

/// INI-style text report: ordered sections of `key = value` lines. No timestamps,
/// so identical inputs give identical bytes.
class Report {
public:
    void section(std::string name);
    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, const char* value) { add(key, std::string(value)); }
    void add(const std::string& key, double value);
    void add(const std::string& key, std::size_t value);
    void add(const std::string& key, int value);
    void add(const std::string& key, bool value);
    void add(const std::string& key, std::span<const double> values);
    void add(const std::string& key, std::span<const std::size_t> values);

    void write(std::ostream& out) const;
    [[nodiscard]] std::string str() const;

private:
    struct Section {
        std::string name;
        std::vector<std::pair<std::string, std::string>> entries;
    };
    std::vector<Section> sections_;
};

/// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite values.
[[nodiscard]] std::string format_number(double value);

}  // namespace crari
