#include "saturex/report_io.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace saturex {

namespace {

using nlohmann::json;

void append_escaped(std::string& out, std::string_view s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

void write_seminorm(JsonStream& js, const DerivativeRange& sem) {
    js.begin_object();
    js.key("order").value(sem.order);
    js.key("min_abs").value(sem.min_abs);
    js.key("sup").value(sem.sup);
    js.key("argmin").value(sem.argmin);
    js.key("argmax").value(sem.argmax);
    js.key("estimated").value(sem.estimated);
    js.end_object();
}

void write_points(JsonStream& js, const std::vector<double>& pts) {
    js.begin_array();
    for (double p : pts) js.value(p);
    js.end_array();
}

DerivativeRange read_seminorm(const json& j) {
    DerivativeRange sem;
    sem.order = j.at("order").get<int>();
    sem.min_abs = j.at("min_abs").get<double>();
    sem.sup = j.at("sup").get<double>();
    sem.argmin = j.at("argmin").get<double>();
    sem.argmax = j.at("argmax").get<double>();
    sem.estimated = j.at("estimated").get<bool>();
    return sem;
}

Verdict verdict_from_name(const std::string& name) {
    if (name == "saturating") return Verdict::saturating;
    if (name == "strict") return Verdict::strict;
    if (name == "degenerate") return Verdict::degenerate;
    throw std::runtime_error("unknown verdict name: " + name);
}

} // namespace

std::string format_double(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void JsonStream::separate() {
    if (pending_key_) {
        pending_key_ = false;
        return;
    }
    if (!has_items_.empty()) {
        if (has_items_.back()) out_ += ',';
        has_items_.back() = true;
    }
}

JsonStream& JsonStream::begin_object() {
    separate();
    out_ += '{';
    has_items_.push_back(false);
    return *this;
}

JsonStream& JsonStream::end_object() {
    has_items_.pop_back();
    out_ += '}';
    return *this;
}

JsonStream& JsonStream::begin_array() {
    separate();
    out_ += '[';
    has_items_.push_back(false);
    return *this;
}

JsonStream& JsonStream::end_array() {
    has_items_.pop_back();
    out_ += ']';
    return *this;
}

JsonStream& JsonStream::key(std::string_view k) {
    separate();
    append_escaped(out_, k);
    out_ += ':';
    pending_key_ = true;
    return *this;
}

JsonStream& JsonStream::value(double v) {
    separate();
    out_ += format_double(v);
    return *this;
}

JsonStream& JsonStream::value(int v) { return value(static_cast<std::int64_t>(v)); }

JsonStream& JsonStream::value(std::int64_t v) {
    separate();
    out_ += std::to_string(v);
    return *this;
}

JsonStream& JsonStream::value(bool v) {
    separate();
    out_ += v ? "true" : "false";
    return *this;
}

JsonStream& JsonStream::value(std::string_view s) {
    separate();
    append_escaped(out_, s);
    return *this;
}

std::string to_json(const ApproxOutput& out) {
    JsonStream js;
    js.begin_object();
    js.key("command").value("approx");
    js.key("function").value(out.function);
    js.key("n").value(out.n);
    js.key("converged").value(out.result.converged);
    js.key("degenerate").value(out.result.degenerate);
    js.key("iterations").value(out.result.iterations);
    js.key("levelled_error").value(out.result.levelled_error);
    js.key("sign").value(out.result.sign);
    js.key("poly");
    js.begin_object();
    js.key("basis").value("chebyshev");
    js.key("coefficients");
    write_points(js, out.result.poly.coeffs());
    js.end_object();
    js.key("reference");
    write_points(js, out.result.reference.points);
    js.key("certificate");
    js.begin_object();
    js.key("points");
    write_points(js, out.certificate.points.points);
    js.key("sign").value(out.certificate.sign);
    js.key("sup_norm").value(out.certificate.sup_norm);
    js.key("max_deviation").value(out.certificate.max_deviation);
    js.key("degenerate").value(out.certificate.degenerate);
    js.end_object();
    js.key("trace");
    js.begin_array();
    for (const IterationStats& it : out.result.trace) {
        js.begin_object();
        js.key("lambda").value(it.lambda);
        js.key("sup_norm").value(it.sup_norm);
        js.key("min_ref_abs_residual").value(it.min_ref_abs_residual);
        js.end_object();
    }
    js.end_array();
    js.end_object();
    return js.str();
}

std::string to_json(const VerdictOutput& out) {
    JsonStream js;
    js.begin_object();
    js.key("command").value("verdict");
    js.key("function").value(out.function);
    js.key("n").value(out.report.n);
    js.key("E_n").value(out.report.e_n);
    js.key("upper").value(out.report.upper);
    js.key("lower").value(out.report.lower);
    js.key("ratio").value(out.report.ratio);
    js.key("verdict").value(verdict_name(out.report.verdict));
    js.key("tolerance").value(out.report.tolerance);
    js.key("seminorm");
    write_seminorm(js, out.report.seminorm);
    js.end_object();
    return js.str();
}

std::string to_json(const BoundsOutput& out) {
    JsonStream js;
    js.begin_object();
    js.key("command").value("bounds");
    js.key("function").value(out.function);
    js.key("n").value(out.n);
    js.key("seminorm");
    write_seminorm(js, out.seminorm);
    js.key("upper").value(out.upper);
    js.key("lower").value(out.lower);
    js.end_object();
    return js.str();
}

std::string to_json(const Prop2Output& out) {
    JsonStream js;
    js.begin_object();
    js.key("command").value("prop2");
    js.key("function").value(out.function);
    js.key("n").value(out.report.n);
    js.key("requested").value(out.report.requested);
    js.key("checked").value(out.report.checked);
    js.key("lo").value(out.report.lo);
    js.key("hi").value(out.report.hi);
    js.key("slack").value(out.report.slack);
    js.key("worst_violation").value(out.report.worst_violation);
    js.end_object();
    return js.str();
}

std::string to_json(const LemmaOutput& out) {
    JsonStream js;
    js.begin_object();
    js.key("command").value("lemmas");
    js.key("seed").value(static_cast<std::int64_t>(out.seed));
    js.key("lemma1");
    js.begin_object();
    js.key("instances").value(out.report.lemma1_instances);
    js.key("failures").value(out.report.lemma1_failures);
    js.end_object();
    js.key("lemma2");
    js.begin_object();
    js.key("instances").value(out.report.lemma2_instances);
    js.key("perturbations").value(out.report.lemma2_perturbations);
    js.key("failures").value(out.report.lemma2_failures);
    js.key("worst_deficit").value(out.report.lemma2_worst_deficit);
    js.end_object();
    js.end_object();
    return js.str();
}

ApproxOutput parse_approx_output(const std::string& json_text) {
    const json j = json::parse(json_text);
    ApproxOutput out;
    out.function = j.at("function").get<std::string>();
    out.n = j.at("n").get<int>();
    out.result.converged = j.at("converged").get<bool>();
    out.result.degenerate = j.at("degenerate").get<bool>();
    out.result.iterations = j.at("iterations").get<int>();
    out.result.levelled_error = j.at("levelled_error").get<double>();
    out.result.sign = j.at("sign").get<int>();
    out.result.poly = ChebSeries(j.at("poly").at("coefficients").get<std::vector<double>>());
    out.result.reference.points = j.at("reference").get<std::vector<double>>();
    const json& cert = j.at("certificate");
    out.certificate.points.points = cert.at("points").get<std::vector<double>>();
    out.certificate.sign = cert.at("sign").get<int>();
    out.certificate.sup_norm = cert.at("sup_norm").get<double>();
    out.certificate.max_deviation = cert.at("max_deviation").get<double>();
    out.certificate.degenerate = cert.at("degenerate").get<bool>();
    for (const json& it : j.at("trace")) {
        IterationStats stats;
        stats.lambda = it.at("lambda").get<double>();
        stats.sup_norm = it.at("sup_norm").get<double>();
        stats.min_ref_abs_residual = it.at("min_ref_abs_residual").get<double>();
        out.result.trace.push_back(stats);
    }
    return out;
}

VerdictOutput parse_verdict_output(const std::string& json_text) {
    const json j = json::parse(json_text);
    VerdictOutput out;
    out.function = j.at("function").get<std::string>();
    out.report.n = j.at("n").get<int>();
    out.report.e_n = j.at("E_n").get<double>();
    out.report.upper = j.at("upper").get<double>();
    out.report.lower = j.at("lower").get<double>();
    out.report.ratio = j.at("ratio").get<double>();
    out.report.verdict = verdict_from_name(j.at("verdict").get<std::string>());
    out.report.tolerance = j.at("tolerance").get<double>();
    out.report.seminorm = read_seminorm(j.at("seminorm"));
    return out;
}

BoundsOutput parse_bounds_output(const std::string& json_text) {
    const json j = json::parse(json_text);
    BoundsOutput out;
    out.function = j.at("function").get<std::string>();
    out.n = j.at("n").get<int>();
    out.seminorm = read_seminorm(j.at("seminorm"));
    out.upper = j.at("upper").get<double>();
    out.lower = j.at("lower").get<double>();
    return out;
}

Prop2Output parse_prop2_output(const std::string& json_text) {
    const json j = json::parse(json_text);
    Prop2Output out;
    out.function = j.at("function").get<std::string>();
    out.report.n = j.at("n").get<int>();
    out.report.requested = j.at("requested").get<int>();
    out.report.checked = j.at("checked").get<int>();
    out.report.lo = j.at("lo").get<double>();
    out.report.hi = j.at("hi").get<double>();
    out.report.slack = j.at("slack").get<double>();
    out.report.worst_violation = j.at("worst_violation").get<double>();
    return out;
}

LemmaOutput parse_lemma_output(const std::string& json_text) {
    const json j = json::parse(json_text);
    LemmaOutput out;
    out.seed = j.at("seed").get<std::uint64_t>();
    out.report.lemma1_instances = j.at("lemma1").at("instances").get<int>();
    out.report.lemma1_failures = j.at("lemma1").at("failures").get<int>();
    out.report.lemma2_instances = j.at("lemma2").at("instances").get<int>();
    out.report.lemma2_perturbations = j.at("lemma2").at("perturbations").get<int>();
    out.report.lemma2_failures = j.at("lemma2").at("failures").get<int>();
    out.report.lemma2_worst_deficit = j.at("lemma2").at("worst_deficit").get<double>();
    return out;
}

std::string to_json(const OracleFile& file) {
    JsonStream js;
    js.begin_object();
    js.key("grid_size").value(file.grid_size);
    js.key("records");
    js.begin_array();
    for (const OracleRecord& rec : file.records) {
        js.begin_object();
        js.key("function").value(rec.function);
        js.key("n").value(rec.n);
        js.key("lambda_grid").value(rec.lambda_grid);
        js.key("ratio_grid").value(rec.ratio_grid);
        js.key("delta").value(rec.delta);
        js.end_object();
    }
    js.end_array();
    js.end_object();
    return js.str();
}

OracleFile parse_oracle_file(const std::string& json_text) {
    const json j = json::parse(json_text);
    OracleFile file;
    file.grid_size = j.at("grid_size").get<int>();
    for (const json& r : j.at("records")) {
        OracleRecord rec;
        rec.function = r.at("function").get<std::string>();
        rec.n = r.at("n").get<int>();
        rec.lambda_grid = r.at("lambda_grid").get<double>();
        rec.ratio_grid = r.at("ratio_grid").get<double>();
        rec.delta = r.at("delta").get<double>();
        file.records.push_back(std::move(rec));
    }
    return file;
}

OracleFile regenerate_oracle(const std::vector<Fixture>& fixtures, int grid_size) {
    OracleFile file;
    file.grid_size = grid_size;
    for (const Fixture& fx : fixtures) {
        const ExprAst f = parse(fx.text);
        const GridMinimax oracle = grid_lp_minimax_oracle(f, fx.n, grid_size);
        const DerivativeRange sem = derivative_range(f, fx.n + 1, 1024);
        const std::optional<double> ratio = saturation_ratio(oracle.lambda, sem, fx.n);

        OracleRecord rec;
        rec.function = fx.text;
        rec.n = fx.n;
        rec.lambda_grid = oracle.lambda;
        rec.ratio_grid = ratio.value_or(0.0);
        rec.delta = 0.9 * (1.0 - rec.ratio_grid);
        file.records.push_back(std::move(rec));
    }
    return file;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    out << contents;
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace saturex
