#include "core/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "core/error.hpp"
#include "json.hpp"

namespace qmind::qsim {

namespace {

constexpr cplx kI{0.0, 1.0};

int arity_of(GateKind kind) {
    switch (kind) {
        case GateKind::X:
        case GateKind::H:
        case GateKind::Z:
        case GateKind::RX:
        case GateKind::RZ:
            return 1;
        case GateKind::CX:
        case GateKind::CZ:
            return 2;
        case GateKind::CCX:
            return 3;
        case GateKind::MCZ:
            return -1;  // any >= 1
    }
    return -1;
}

void check_op(const GateOp& op, int qubit_count) {
    const int want = arity_of(op.kind);
    if (want >= 0 && static_cast<int>(op.qubits.size()) != want)
        fail(errc::invalid_argument,
             std::string(kind_name(op.kind)) + " expects " + std::to_string(want) +
                 " qubit(s), got " + std::to_string(op.qubits.size()));
    if (op.kind == GateKind::MCZ && op.qubits.empty())
        fail(errc::invalid_argument, "MCZ needs at least one qubit");
    for (std::size_t i = 0; i < op.qubits.size(); ++i) {
        const int q = op.qubits[i];
        if (q < 0 || q >= qubit_count)
            fail(errc::invalid_argument,
                 "qubit index " + std::to_string(q) + " out of range for " +
                     std::to_string(qubit_count) + " qubit(s)");
        for (std::size_t j = i + 1; j < op.qubits.size(); ++j)
            if (op.qubits[j] == q)
                fail(errc::invalid_argument,
                     "duplicate qubit " + std::to_string(q) + " in " + kind_name(op.kind));
    }
}

void apply_single(StateVector& state, int q, cplx u00, cplx u01, cplx u10, cplx u11) {
    const std::size_t bit = std::size_t{1} << q;
    auto& a = state.amplitudes;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i & bit) continue;
        const cplx lo = a[i];
        const cplx hi = a[i | bit];
        a[i] = u00 * lo + u01 * hi;
        a[i | bit] = u10 * lo + u11 * hi;
    }
}

std::size_t mask_of(const std::vector<int>& qubits) {
    std::size_t m = 0;
    for (int q : qubits) m |= std::size_t{1} << q;
    return m;
}

double next_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

constexpr std::uint64_t kBlockShots = 4096;

}  // namespace

const char* kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::X: return "X";
        case GateKind::H: return "H";
        case GateKind::Z: return "Z";
        case GateKind::RX: return "RX";
        case GateKind::RZ: return "RZ";
        case GateKind::CX: return "CX";
        case GateKind::CZ: return "CZ";
        case GateKind::CCX: return "CCX";
        case GateKind::MCZ: return "MCZ";
    }
    return "?";
}

GateKind kind_from_name(const std::string& name) {
    static const std::map<std::string, GateKind> table = {
        {"X", GateKind::X},   {"H", GateKind::H},   {"Z", GateKind::Z},
        {"RX", GateKind::RX}, {"RZ", GateKind::RZ}, {"CX", GateKind::CX},
        {"CZ", GateKind::CZ}, {"CCX", GateKind::CCX}, {"MCZ", GateKind::MCZ},
    };
    auto it = table.find(name);
    if (it == table.end()) fail(errc::parse_error, "unknown gate kind '" + name + "'");
    return it->second;
}

bool kind_has_angle(GateKind kind) {
    return kind == GateKind::RX || kind == GateKind::RZ;
}

StateVector init_state(int qubit_count) {
    if (qubit_count < 1 || qubit_count > max_qubits)
        fail(errc::invalid_argument,
             "qubit count must be in [1, " + std::to_string(max_qubits) + "], got " +
                 std::to_string(qubit_count));
    StateVector s;
    s.qubit_count = qubit_count;
    s.amplitudes.assign(std::size_t{1} << qubit_count, cplx{0.0, 0.0});
    s.amplitudes[0] = 1.0;
    return s;
}

void apply_gate(StateVector& state, const GateOp& op) {
    check_op(op, state.qubit_count);
    auto& a = state.amplitudes;
    switch (op.kind) {
        case GateKind::X: {
            const std::size_t bit = std::size_t{1} << op.qubits[0];
            for (std::size_t i = 0; i < a.size(); ++i)
                if (!(i & bit)) std::swap(a[i], a[i | bit]);
            break;
        }
        case GateKind::H: {
            const double r = 1.0 / std::numbers::sqrt2;
            apply_single(state, op.qubits[0], r, r, r, -r);
            break;
        }
        case GateKind::Z: {
            const std::size_t bit = std::size_t{1} << op.qubits[0];
            for (std::size_t i = 0; i < a.size(); ++i)
                if (i & bit) a[i] = -a[i];
            break;
        }
        case GateKind::RX: {
            const double c = std::cos(op.angle / 2.0);
            const double s = std::sin(op.angle / 2.0);
            apply_single(state, op.qubits[0], c, -kI * s, -kI * s, c);
            break;
        }
        case GateKind::RZ: {
            const cplx lo = std::exp(-kI * (op.angle / 2.0));
            const cplx hi = std::exp(kI * (op.angle / 2.0));
            const std::size_t bit = std::size_t{1} << op.qubits[0];
            for (std::size_t i = 0; i < a.size(); ++i) a[i] *= (i & bit) ? hi : lo;
            break;
        }
        case GateKind::CX: {
            const std::size_t cbit = std::size_t{1} << op.qubits[0];
            const std::size_t tbit = std::size_t{1} << op.qubits[1];
            for (std::size_t i = 0; i < a.size(); ++i)
                if ((i & cbit) && !(i & tbit)) std::swap(a[i], a[i | tbit]);
            break;
        }
        case GateKind::CZ: {
            const std::size_t m = mask_of(op.qubits);
            for (std::size_t i = 0; i < a.size(); ++i)
                if ((i & m) == m) a[i] = -a[i];
            break;
        }
        case GateKind::CCX: {
            const std::size_t cmask =
                (std::size_t{1} << op.qubits[0]) | (std::size_t{1} << op.qubits[1]);
            const std::size_t tbit = std::size_t{1} << op.qubits[2];
            for (std::size_t i = 0; i < a.size(); ++i)
                if ((i & cmask) == cmask && !(i & tbit)) std::swap(a[i], a[i | tbit]);
            break;
        }
        case GateKind::MCZ: {
            const std::size_t m = mask_of(op.qubits);
            for (std::size_t i = 0; i < a.size(); ++i)
                if ((i & m) == m) a[i] = -a[i];
            break;
        }
    }
}

std::vector<double> probabilities(const StateVector& state) {
    std::vector<double> p(state.amplitudes.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(state.amplitudes[i]);
    return p;
}

double subsystem_zero_probability(const StateVector& state, const std::vector<int>& qubits) {
    for (int q : qubits)
        if (q < 0 || q >= state.qubit_count)
            fail(errc::invalid_argument, "qubit index " + std::to_string(q) + " out of range");
    const std::size_t m = mask_of(qubits);
    double p = 0.0;
    for (std::size_t i = 0; i < state.amplitudes.size(); ++i)
        if ((i & m) == 0) p += std::norm(state.amplitudes[i]);
    return p;
}

void validate(const Circuit& circuit) {
    if (circuit.qubit_count < 1 || circuit.qubit_count > max_qubits)
        fail(errc::invalid_argument,
             "circuit qubit count must be in [1, " + std::to_string(max_qubits) + "], got " +
                 std::to_string(circuit.qubit_count));
    if (circuit.classical_bit_count < 0)
        fail(errc::invalid_argument, "negative classical bit count");
    for (const auto& op : circuit.ops) check_op(op, circuit.qubit_count);
    std::vector<bool> written(static_cast<std::size_t>(std::max(circuit.classical_bit_count, 0)), false);
    for (const auto& [q, cb] : circuit.measurements) {
        if (q < 0 || q >= circuit.qubit_count)
            fail(errc::invalid_argument, "measured qubit " + std::to_string(q) + " out of range");
        if (cb < 0 || cb >= circuit.classical_bit_count)
            fail(errc::invalid_argument,
                 "classical bit " + std::to_string(cb) + " out of range for width " +
                     std::to_string(circuit.classical_bit_count));
        if (written[static_cast<std::size_t>(cb)])
            fail(errc::invalid_argument,
                 "classical bit " + std::to_string(cb) + " written more than once");
        written[static_cast<std::size_t>(cb)] = true;
    }
}

StateVector run_gates(const Circuit& circuit) {
    validate(circuit);
    StateVector state = init_state(circuit.qubit_count);
    for (const auto& op : circuit.ops) apply_gate(state, op);
    return state;
}

namespace {

std::string key_for(std::size_t basis_index, const Circuit& circuit) {
    std::string key(static_cast<std::size_t>(circuit.classical_bit_count), '0');
    for (const auto& [q, cb] : circuit.measurements)
        if (basis_index >> q & 1)
            key[key.size() - 1 - static_cast<std::size_t>(cb)] = '1';
    return key;
}

}  // namespace

std::map<std::string, double> measured_probabilities(const Circuit& circuit) {
    if (circuit.measurements.empty())
        fail(errc::invalid_argument, "circuit has no measurements");
    const StateVector state = run_gates(circuit);
    const std::vector<double> p = probabilities(state);
    std::map<std::string, double> dist;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] > 0.0) dist[key_for(i, circuit)] += p[i];
    return dist;
}

ShotHistogram run_circuit(const Circuit& circuit, std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) fail(errc::invalid_argument, "shots must be >= 1");
    if (circuit.measurements.empty())
        fail(errc::invalid_argument, "circuit has no measurements");
    const StateVector state = run_gates(circuit);
    const std::vector<double> p = probabilities(state);
    std::vector<double> cumulative(p.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        acc += p[i];
        cumulative[i] = acc;
    }

    ShotHistogram h;
    h.shots = shots;
    const std::uint64_t blocks = (shots + kBlockShots - 1) / kBlockShots;
    for (std::uint64_t b = 0; b < blocks; ++b) {
        std::mt19937_64 rng(mix64(seed + 0x9e3779b97f4a7c15ULL * (b + 1)));
        const std::uint64_t in_block = std::min(kBlockShots, shots - b * kBlockShots);
        for (std::uint64_t s = 0; s < in_block; ++s) {
            const double u = next_double(rng) * acc;
            auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
            std::size_t idx = static_cast<std::size_t>(it - cumulative.begin());
            if (idx >= p.size()) idx = p.size() - 1;
            ++h.counts[key_for(idx, circuit)];
        }
    }
    return h;
}

std::vector<cplx> circuit_unitary(const Circuit& circuit) {
    if (circuit.qubit_count > max_unitary_qubits)
        fail(errc::invalid_argument,
             "unitary construction limited to " + std::to_string(max_unitary_qubits) + " qubits");
    validate(circuit);
    const std::size_t dim = std::size_t{1} << circuit.qubit_count;
    std::vector<cplx> u(dim * dim, cplx{0.0, 0.0});
    StateVector col;
    col.qubit_count = circuit.qubit_count;
    for (std::size_t j = 0; j < dim; ++j) {
        col.amplitudes.assign(dim, cplx{0.0, 0.0});
        col.amplitudes[j] = 1.0;
        for (const auto& op : circuit.ops) apply_gate(col, op);
        for (std::size_t i = 0; i < dim; ++i) u[i * dim + j] = col.amplitudes[i];
    }
    return u;
}

int histogram_bit_count(const ShotHistogram& h) {
    if (h.counts.empty()) fail(errc::invalid_argument, "empty histogram");
    return static_cast<int>(h.counts.begin()->first.size());
}

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

// ---- serialization ---------------------------------------------------------

using nlohmann::json;

std::string circuit_to_json(const Circuit& circuit) {
    json ops = json::array();
    for (const auto& op : circuit.ops) {
        json o;
        o["kind"] = kind_name(op.kind);
        o["qubits"] = op.qubits;
        if (kind_has_angle(op.kind)) o["angle"] = op.angle;
        ops.push_back(std::move(o));
    }
    json meas = json::array();
    for (const auto& [q, cb] : circuit.measurements) meas.push_back({q, cb});
    json doc;
    doc["qubit_count"] = circuit.qubit_count;
    doc["classical_bit_count"] = circuit.classical_bit_count;
    doc["ops"] = std::move(ops);
    doc["measurements"] = std::move(meas);
    return doc.dump(2) + "\n";
}

Circuit circuit_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        fail(errc::parse_error, std::string("bad circuit JSON: ") + e.what());
    }
    try {
        Circuit c;
        c.qubit_count = doc.at("qubit_count").get<int>();
        c.classical_bit_count = doc.value("classical_bit_count", 0);
        for (const auto& o : doc.at("ops")) {
            GateOp op;
            op.kind = kind_from_name(o.at("kind").get<std::string>());
            op.qubits = o.at("qubits").get<std::vector<int>>();
            if (kind_has_angle(op.kind))
                op.angle = o.at("angle").get<double>();
            else if (o.contains("angle") && o.at("angle").get<double>() != 0.0)
                fail(errc::parse_error,
                     std::string("gate ") + kind_name(op.kind) + " takes no angle");
            c.ops.push_back(std::move(op));
        }
        if (doc.contains("measurements"))
            for (const auto& m : doc.at("measurements"))
                c.measurements.emplace_back(m.at(0).get<int>(), m.at(1).get<int>());
        validate(c);
        return c;
    } catch (const json::exception& e) {
        fail(errc::parse_error, std::string("bad circuit JSON: ") + e.what());
    }
}

std::string histogram_to_json(const ShotHistogram& h) {
    json doc;
    doc["counts"] = json::object();
    for (const auto& [key, n] : h.counts) doc["counts"][key] = n;
    doc["shots"] = h.shots;
    return doc.dump(2) + "\n";
}

ShotHistogram histogram_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        fail(errc::parse_error, std::string("bad histogram JSON: ") + e.what());
    }
    try {
        ShotHistogram h;
        h.shots = doc.at("shots").get<std::uint64_t>();
        std::uint64_t total = 0;
        std::size_t width = 0;
        for (const auto& [key, value] : doc.at("counts").items()) {
            for (char ch : key)
                if (ch != '0' && ch != '1')
                    fail(errc::parse_error, "histogram key '" + key + "' is not a bitstring");
            if (width == 0)
                width = key.size();
            else if (key.size() != width)
                fail(errc::parse_error, "histogram keys differ in width");
            const std::uint64_t n = value.get<std::uint64_t>();
            h.counts[key] = n;
            total += n;
        }
        if (h.counts.empty()) fail(errc::parse_error, "histogram has no counts");
        if (total != h.shots)
            fail(errc::parse_error, "histogram counts sum to " + std::to_string(total) +
                                        ", shots field says " + std::to_string(h.shots));
        return h;
    } catch (const json::exception& e) {
        fail(errc::parse_error, std::string("bad histogram JSON: ") + e.what());
    }
}

std::string histogram_to_csv(const ShotHistogram& h) {
    const int bits = histogram_bit_count(h);
    std::ostringstream out;
    out << "outcome,count\n";
    for (std::uint64_t value = 0; value < (std::uint64_t{1} << bits); ++value) {
        std::string key(static_cast<std::size_t>(bits), '0');
        for (int b = 0; b < bits; ++b)
            if (value >> b & 1) key[key.size() - 1 - static_cast<std::size_t>(b)] = '1';
        auto it = h.counts.find(key);
        out << value << ',' << (it == h.counts.end() ? 0 : it->second) << '\n';
    }
    return out.str();
}

}  // namespace qmind::qsim
