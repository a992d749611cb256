#include "qcomp/pulse_format.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <vector>

namespace qcomp {

namespace {

double parse_number(const std::string& text, std::size_t line, const std::string& key) {
    double v = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
        throw PulseParseError(line, "invalid number '" + text + "' for " + key);
    }
    return v;
}

std::size_t parse_qubit(const std::string& text, std::size_t line) {
    std::size_t q = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, q);
    if (ec != std::errc() || ptr != end || q == 0) {
        throw PulseParseError(line, "invalid qubit '" + text + "' (qubits are numbered from 1)");
    }
    return q - 1;
}

std::map<std::string, std::string> parse_fields(const std::vector<std::string>& tokens, std::size_t line,
                                                const std::vector<std::string>& required) {
    std::map<std::string, std::string> fields;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        const auto eq = tokens[i].find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == tokens[i].size()) {
            throw PulseParseError(line, "expected key=value, got '" + tokens[i] + "'");
        }
        const std::string key = tokens[i].substr(0, eq);
        if (std::find(required.begin(), required.end(), key) == required.end()) {
            throw PulseParseError(line, "unknown field '" + key + "' for " + tokens[0]);
        }
        if (!fields.emplace(key, tokens[i].substr(eq + 1)).second) {
            throw PulseParseError(line, "duplicate field '" + key + "'");
        }
    }
    for (const auto& key : required) {
        if (!fields.count(key)) throw PulseParseError(line, tokens[0] + " is missing field '" + key + "'");
    }
    return fields;
}

}  // namespace

PulseParseError::PulseParseError(std::size_t line, const std::string& what)
    : std::invalid_argument("pulse line " + std::to_string(line) + ": " + what), line_(line) {}

PulseSequence parse_pulse_sequence(std::istream& in, const std::string& label) {
    PulseSequence seq;
    seq.label = label;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream ss(raw);
        std::vector<std::string> tokens;
        for (std::string t; ss >> t;) tokens.push_back(t);
        if (tokens.empty()) continue;
        const std::string& kind = tokens[0];
        if (kind == "RF") {
            auto f = parse_fields(tokens, line, {"q", "flip", "phase"});
            seq.events.push_back(RFPulse{parse_qubit(f["q"], line), parse_number(f["flip"], line, "flip"),
                                         parse_number(f["phase"], line, "phase")});
        } else if (kind == "J") {
            auto f = parse_fields(tokens, line, {"theta"});
            const double theta = parse_number(f["theta"], line, "theta");
            if (theta < 0.0) throw PulseParseError(line, "J theta must be >= 0 (use PISANDWICH)");
            seq.events.push_back(JEvolution{theta});
        } else if (kind == "GRAD") {
            parse_fields(tokens, line, {});
            seq.events.push_back(GradientPulse{});
        } else if (kind == "PISANDWICH") {
            auto f = parse_fields(tokens, line, {"q", "theta"});
            const double theta = parse_number(f["theta"], line, "theta");
            if (theta < 0.0) throw PulseParseError(line, "PISANDWICH theta must be >= 0");
            seq.events.push_back(PiSandwich{parse_qubit(f["q"], line), theta});
        } else {
            throw PulseParseError(line, "unknown event '" + kind + "'");
        }
    }
    return seq;
}

PulseSequence parse_pulse_sequence_text(const std::string& text, const std::string& label) {
    std::istringstream in(text);
    return parse_pulse_sequence(in, label);
}

PulseSequence load_pulse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open pulse file '" + path + "'");
    return parse_pulse_sequence(in, path);
}

void write_pulse_sequence(std::ostream& out, const PulseSequence& seq) {
    std::ostringstream buf;
    buf << std::setprecision(17);
    for (const auto& e : seq.events) {
        if (const auto* p = std::get_if<RFPulse>(&e)) {
            buf << "RF q=" << p->qubit + 1 << " flip=" << p->flip << " phase=" << p->phase << '\n';
        } else if (const auto* j = std::get_if<JEvolution>(&e)) {
            buf << "J theta=" << j->theta << '\n';
        } else if (std::holds_alternative<GradientPulse>(e)) {
            buf << "GRAD\n";
        } else if (const auto* s = std::get_if<PiSandwich>(&e)) {
            buf << "PISANDWICH q=" << s->qubit + 1 << " theta=" << s->theta << '\n';
        }
    }
    out << buf.str();
}

std::string format_pulse_sequence(const PulseSequence& seq) {
    std::ostringstream out;
    write_pulse_sequence(out, seq);
    return out.str();
}

}  // namespace qcomp
