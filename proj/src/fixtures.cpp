#include "saturex/fixtures.hpp"

namespace saturex {

namespace {

const char* const kTranscendental[] = {"exp(x)", "sin(x)", "cos(x)", "exp(x) + x^3", "sin(2*x)"};

} // namespace

std::vector<Fixture> transcendental_fixtures() {
    std::vector<Fixture> out;
    out.reserve(40);
    for (const char* text : kTranscendental)
        for (int n = 1; n <= 8; ++n) out.push_back({text, n});
    return out;
}

std::vector<Fixture> monic_fixtures() {
    std::vector<Fixture> out;
    out.reserve(8);
    for (int n = 1; n <= 8; ++n) out.push_back({"x^" + std::to_string(n + 1), n});
    return out;
}

std::vector<Fixture> builtin_fixtures() {
    std::vector<Fixture> out = transcendental_fixtures();
    std::vector<Fixture> monic = monic_fixtures();
    out.insert(out.end(), monic.begin(), monic.end());
    return out;
}

} // namespace saturex
