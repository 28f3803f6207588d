#pragma once

#include "doctest.h"

// doctest::Approx adds epsilon * 1.0 of absolute slack, which swallows
// quantities like 1e-5 m/s. Tolerances in these tests are relative only.
inline doctest::Approx Approx(double value) { return doctest::Approx(value).scale(0.0); }
