#include "qcomp/state_io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qcomp {

using nlohmann::json;

PureState parse_state_json(const std::string& text, bool normalize) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("state file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw std::invalid_argument("state file: top level must be an object");
    if (!doc.contains("n_qubits") || !doc["n_qubits"].is_number_integer()) {
        throw std::invalid_argument("state file: missing integer field 'n_qubits'");
    }
    const auto n = doc["n_qubits"].get<long long>();
    if (n < 1 || n > 20) throw std::invalid_argument("state file: n_qubits must be in [1, 20]");
    if (!doc.contains("amplitudes") || !doc["amplitudes"].is_array()) {
        throw std::invalid_argument("state file: missing array field 'amplitudes'");
    }
    const auto& amps = doc["amplitudes"];
    const std::size_t dim = std::size_t{1} << n;
    if (amps.size() != dim) {
        throw std::invalid_argument("state file: expected " + std::to_string(dim) + " amplitudes, got " +
                                    std::to_string(amps.size()));
    }
    Vector v(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
        const auto& a = amps[i];
        if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
            throw std::invalid_argument("state file: amplitude " + std::to_string(i) + " must be a [re, im] pair");
        }
        const double re = a[0].get<double>();
        const double im = a[1].get<double>();
        if (!std::isfinite(re) || !std::isfinite(im)) {
            throw std::invalid_argument("state file: amplitude " + std::to_string(i) + " is not finite");
        }
        v(static_cast<Eigen::Index>(i)) = Complex(re, im);
    }
    const auto nq = static_cast<std::size_t>(n);
    return normalize ? PureState::normalized(nq, std::move(v)) : PureState(nq, std::move(v));
}

PureState load_state_file(const std::string& path, bool normalize) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open state file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_state_json(buf.str(), normalize);
}

std::string state_to_json(const PureState& state) {
    json doc;
    doc["n_qubits"] = state.n_qubits();
    json amps = json::array();
    for (std::size_t i = 0; i < state.dimension(); ++i) amps.push_back({state[i].real(), state[i].imag()});
    doc["amplitudes"] = amps;
    return doc.dump();
}

void save_state_file(const std::string& path, const PureState& state) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write state file '" + path + "'");
    out << state_to_json(state) << '\n';
}

}  // namespace qcomp
