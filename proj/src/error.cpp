#include "fracspec/error.hpp"

namespace fracspec {

SingularSystemError::SingularSystemError(std::size_t pivot, const std::string& what)
    : NumericalError(what + " (pivot " + std::to_string(pivot) + ")"), pivot_(pivot) {}

}  // namespace fracspec
