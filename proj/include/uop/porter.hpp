#ifndef UOP_PORTER_HPP
#define UOP_PORTER_HPP

#include <string>
#include <string_view>

namespace uop {

// Porter stemming algorithm (classic variant, including the standard
// bli/logi rule revisions). Input must be lowercase alphabetic; words of
// length <= 2 are returned unchanged.
std::string porter_stem(std::string_view word);

} // namespace uop

#endif
