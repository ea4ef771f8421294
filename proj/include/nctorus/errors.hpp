#pragma once

#include <stdexcept>
#include <string>

namespace nctorus {

/// Thrown when a quantity that must vanish analytically (an imaginary
/// residue, a unitarity defect) exceeds its tolerance at runtime.
class consistency_error : public std::runtime_error {
public:
    explicit consistency_error(const std::string& msg) : std::runtime_error(msg) {}
};

class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace nctorus
