#ifndef UOP_ERROR_HPP
#define UOP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace uop {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace uop

#endif
