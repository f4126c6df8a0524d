#include "hopfcyc/report.hpp"

#include <algorithm>
#include <sstream>

namespace hopfcyc {

void CheckReport::fail(std::string check, std::string witness)
{
    ++total_failures_;
    auto same = std::count_if(violations_.begin(), violations_.end(),
                              [&](const Violation& v) { return v.check == check; });
    if (static_cast<std::size_t>(same) < kMaxRecordedPerCheck)
        violations_.push_back({std::move(check), std::move(witness)});
}

void CheckReport::merge(const CheckReport& other)
{
    checked_ += other.checked_;
    total_failures_ += other.total_failures_;
    for (const auto& v : other.violations_)
        violations_.push_back(v);
}

bool CheckReport::has_failure(const std::string& check) const
{
    return std::any_of(violations_.begin(), violations_.end(), [&](const Violation& v) { return v.check == check; });
}

std::string CheckReport::summary() const
{
    std::ostringstream os;
    os << subject_ << ": " << (passed() ? "pass" : "FAIL") << " (" << checked_ << " checks";
    if (!passed())
        os << ", " << total_failures_ << " violations";
    os << ")";
    for (const auto& v : violations_)
        os << "\n  " << v.check << ": " << v.witness;
    return os.str();
}

}  // namespace hopfcyc
