#pragma once

#include <stdexcept>
#include <string>

namespace loewner {

//! Raised for invalid inputs and unmet preconditions across the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace loewner
