// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#pragma once

namespace rmt {

/// Ai(x) and Ai'(x) on |x| <= 30, accurate to better than 1e-12 absolute.
/// The Maclaurin series is accumulated in extended precision for |x| <= 8;
/// beyond that the Poincaré expansions take over (exponential form for
/// x > 8, oscillatory form for x < -8, truncated at the smallest term).
/// Throws std::domain_error outside the supported range.
double airy_ai(double x);
double airy_ai_prime(double x);

} // namespace rmt
