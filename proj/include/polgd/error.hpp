#pragma once

#include <stdexcept>
#include <string>

namespace polgd {

// Single exception type for every library failure. The message is meant for
// end users and names the offending input where there is one.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace polgd
