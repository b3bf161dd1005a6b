#pragma once

// The built-in (function text, degree) pairs every acceptance check runs
// over: five transcendental functions and the monic power x^{n+1}, each for
// n in 1..8.

#include <string>
#include <vector>

namespace saturex {

struct Fixture {
    std::string text;
    int n = 0;
};

// The five non-polynomial targets crossed with n in 1..8 (40 pairs).
std::vector<Fixture> transcendental_fixtures();

// x^{n+1} for n in 1..8 (8 pairs), where the ratio saturates exactly.
std::vector<Fixture> monic_fixtures();

// Transcendental then monic, 48 pairs in a fixed order.
std::vector<Fixture> builtin_fixtures();

} // namespace saturex
