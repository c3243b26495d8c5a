#ifndef FLUCTANA_VERSION_HPP
#define FLUCTANA_VERSION_HPP

namespace fluctana {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fluctana

#endif  // FLUCTANA_VERSION_HPP
