#pragma once

// Text format for pulse sequences, one event per line:
//   RF q=<k> flip=<rad> phase=<rad>
//   J theta=<rad>
//   GRAD
//   PISANDWICH q=<k> theta=<rad>
// Qubits are 1-based. Blank lines and text after '#' are ignored.

#include "qcomp/nmr.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace qcomp {

class PulseParseError : public std::invalid_argument {
public:
    PulseParseError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

PulseSequence parse_pulse_sequence(std::istream& in, const std::string& label = "file");
PulseSequence parse_pulse_sequence_text(const std::string& text, const std::string& label = "text");
PulseSequence load_pulse_file(const std::string& path);

void write_pulse_sequence(std::ostream& out, const PulseSequence& seq);
std::string format_pulse_sequence(const PulseSequence& seq);

}  // namespace qcomp
