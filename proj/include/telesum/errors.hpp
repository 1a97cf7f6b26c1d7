#pragma once

#include <stdexcept>
#include <string>

namespace telesum {

// Raised when an iterative numeric scheme (series, quadrature, inversion)
// fails to reach its tolerance within its budget.  Carries the achieved
// accuracy in the message; callers must never see a silently wrong value.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Series truncated by the term cap before meeting the relative tolerance.
class truncation_error : public numeric_error {
public:
    explicit truncation_error(const std::string& msg) : numeric_error(msg) {}
};

} // namespace telesum
