#include "crari/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace crari {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return {buf, res.ptr};
}

void Report::section(std::string name) { sections_.push_back({std::move(name), {}}); }

void Report::add(const std::string& key, const std::string& value) {
    if (sections_.empty()) section("report");
    sections_.back().entries.emplace_back(key, value);
}

void Report::add(const std::string& key, double value) { add(key, format_number(value)); }
void Report::add(const std::string& key, std::size_t value) { add(key, std::to_string(value)); }
void Report::add(const std::string& key, int value) { add(key, std::to_string(value)); }
void Report::add(const std::string& key, bool value) { add(key, std::string(value ? "true" : "false")); }

void Report::add(const std::string& key, std::span<const double> values) {
    std::string s;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k) s += ',';
        s += format_number(values[k]);
    }
    add(key, s);
}

void Report::add(const std::string& key, std::span<const std::size_t> values) {
    std::string s;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k) s += ',';
        s += std::to_string(values[k]);
    }
    add(key, s);
}

void Report::write(std::ostream& out) const {
    bool first = true;
    for (const auto& sec : sections_) {
        if (!first) out << '\n';
        first = false;
        out << '[' << sec.name << "]\n";
        for (const auto& [k, v] : sec.entries) out << k << " = " << v << '\n';
    }
}

std::string Report::str() const {
    std::ostringstream os;
    write(os);
    return os.str();
}

}  // namespace crari
