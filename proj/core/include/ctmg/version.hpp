//
// Copyright (c) 2026 The ctmg authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CTMG_VERSION_HPP
#define CTMG_VERSION_HPP

#include <string_view>

namespace ctmg {

inline constexpr std::string_view kVersion = "1.0.0";
inline constexpr std::string_view kLibraryId = "ctmg 1.0.0";

}  // namespace ctmg

#endif  // CTMG_VERSION_HPP
