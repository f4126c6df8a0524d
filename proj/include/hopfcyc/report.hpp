#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace hopfcyc {

struct Violation {
    std::string check;    // e.g. "associativity"
    std::string witness;  // basis elements / levels involved, plus the offending value
};

// Outcome of an axiom suite. Violations are collected, never thrown.
class CheckReport {
public:
    explicit CheckReport(std::string subject = {}) : subject_(std::move(subject)) {}

    void fail(std::string check, std::string witness);
    void count(std::size_t n = 1) { checked_ += n; }
    void merge(const CheckReport& other);

    bool passed() const { return total_failures_ == 0; }
    const std::string& subject() const { return subject_; }
    const std::vector<Violation>& violations() const { return violations_; }
    std::size_t checked() const { return checked_; }
    std::size_t failures() const { return total_failures_; }
    bool has_failure(const std::string& check) const;

    std::string summary() const;

    static constexpr std::size_t kMaxRecordedPerCheck = 3;

private:
    std::string subject_;
    std::vector<Violation> violations_;
    std::size_t checked_ = 0;
    std::size_t total_failures_ = 0;
};

}  // namespace hopfcyc
