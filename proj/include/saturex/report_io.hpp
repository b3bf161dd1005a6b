#pragma once

// Deterministic JSON emission for every command output (insertion-ordered
// keys, 17-significant-digit floats, byte-identical across identical runs),
// matching parsers for round-trip checks, and the golden oracle file.

#include "saturex/fixtures.hpp"
#include "saturex/jets.hpp"
#include "saturex/remez.hpp"
#include "saturex/saturation.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace saturex {

// %.17g textual form, which round-trips doubles exactly through strtod.
std::string format_double(double v);

// Minimal streaming JSON writer; keys appear in insertion order.
class JsonStream {
  public:
    JsonStream& begin_object();
    JsonStream& end_object();
    JsonStream& begin_array();
    JsonStream& end_array();
    JsonStream& key(std::string_view k);
    JsonStream& value(double v);
    JsonStream& value(int v);
    JsonStream& value(std::int64_t v);
    JsonStream& value(bool v);
    JsonStream& value(std::string_view s);
    // String literals would otherwise convert to bool, not string_view.
    JsonStream& value(const char* s) { return value(std::string_view(s)); }
    const std::string& str() const { return out_; }

  private:
    void separate();
    std::string out_;
    std::vector<bool> has_items_;
    bool pending_key_ = false;
};

struct ApproxOutput {
    std::string function;
    int n = 0;
    RemezResult result;
    EquioscillationCertificate certificate;
};

struct VerdictOutput {
    std::string function;
    SaturationReport report;
};

struct BoundsOutput {
    std::string function;
    int n = 0;
    DerivativeRange seminorm;
    double upper = 0.0;
    double lower = 0.0;
};

struct Prop2Output {
    std::string function;
    Prop2Report report;
};

struct LemmaOutput {
    std::uint64_t seed = 0;
    LemmaSuiteReport report;
};

std::string to_json(const ApproxOutput& out);
std::string to_json(const VerdictOutput& out);
std::string to_json(const BoundsOutput& out);
std::string to_json(const Prop2Output& out);
std::string to_json(const LemmaOutput& out);

ApproxOutput parse_approx_output(const std::string& json_text);
VerdictOutput parse_verdict_output(const std::string& json_text);
BoundsOutput parse_bounds_output(const std::string& json_text);
Prop2Output parse_prop2_output(const std::string& json_text);
LemmaOutput parse_lemma_output(const std::string& json_text);

// Golden values produced by the grid-restricted oracle: for each fixture the
// discrete minimax level, the implied ratio, and the certified strictness
// gap delta = 0.9 * (1 - ratio_grid) that the continuous ratio must beat.
struct OracleRecord {
    std::string function;
    int n = 0;
    double lambda_grid = 0.0;
    double ratio_grid = 0.0;
    double delta = 0.0;
};

struct OracleFile {
    int grid_size = 0;
    std::vector<OracleRecord> records;
};

std::string to_json(const OracleFile& file);
OracleFile parse_oracle_file(const std::string& json_text);

OracleFile regenerate_oracle(const std::vector<Fixture>& fixtures, int grid_size);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view contents);

} // namespace saturex
