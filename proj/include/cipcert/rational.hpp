// Copyright 2026 The cipcert Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "cipcert/types.hpp"

namespace cipcert {

using Rat = mpq_class;
using RatVec = std::vector<Rat>;

inline Rat to_rat(Int v) { return Rat(static_cast<long>(v)); }

// Accepts "p" or "p/q" with integer p, q and q != 0; result is canonical.
Rat parse_rational(const std::string& text);

// Canonical form: "p" when the denominator is 1, else "p/q" with q > 0.
std::string rat_to_string(const Rat& r);

// Exact ceiling; throws if the result does not fit in Int.
Int rat_ceil(const Rat& r);

}  // namespace cipcert
