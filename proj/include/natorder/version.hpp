#ifndef NATORDER_VERSION_HPP
#define NATORDER_VERSION_HPP

namespace natorder {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
