#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace gkcs {

struct VerificationEntry {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    // Informational entries are reported but never fail a report.
    bool informational = false;
    std::string note;
};

class VerificationReport {
public:
    VerificationReport() = default;
    explicit VerificationReport(std::string title) : title_(std::move(title)) {}

    const VerificationEntry& check(std::string name, double residual, double tolerance, std::string note = {}) {
        const bool ok = std::isfinite(residual) && residual <= tolerance;
        entries_.push_back({std::move(name), residual, tolerance, ok, false, std::move(note)});
        return entries_.back();
    }

    const VerificationEntry& inform(std::string name, double value, std::string note = {}) {
        entries_.push_back({std::move(name), value, 0.0, true, true, std::move(note)});
        return entries_.back();
    }

    void merge(const VerificationReport& other) {
        for (const auto& e : other.entries_) {
            entries_.push_back(e);
            if (!other.title_.empty()) entries_.back().name = other.title_ + "/" + e.name;
        }
    }

    bool all_passed() const {
        for (const auto& e : entries_)
            if (!e.informational && !e.passed) return false;
        return true;
    }

    const std::string& title() const noexcept { return title_; }
    const std::vector<VerificationEntry>& entries() const noexcept { return entries_; }

private:
    std::string title_;
    std::vector<VerificationEntry> entries_;
};

}  // namespace gkcs
