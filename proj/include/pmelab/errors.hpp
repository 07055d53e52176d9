#pragma once

#include <stdexcept>
#include <string>

namespace pmelab {

/* Exit-code contract used by the CLI:
 *   0  success
 *   2  validation / domain errors (std::domain_error, std::invalid_argument)
 *   3  numerical failures (numerical_error)
 *   4  I/O failures (io_error)
 */

class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitIo = 4;

}  // namespace pmelab
