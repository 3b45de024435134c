// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#pragma once

namespace rmt {

inline constexpr const char* version_string = "0.1.0";

} // namespace rmt
