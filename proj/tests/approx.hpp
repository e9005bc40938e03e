#pragma once

#include "doctest.h"

// Relative-only comparison; doctest's default also allows an absolute margin of epsilon.
inline doctest::Approx approx(double value) { return doctest::Approx(value).scale(0.0); }
