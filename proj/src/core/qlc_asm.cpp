#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include "core/error.hpp"
#include "core/qlc.hpp"

namespace qmind::qlc {

using qsim::Circuit;
using qsim::GateKind;
using qsim::GateOp;

namespace {
constexpr double pi = std::numbers::pi;
}

std::string format_angle(double radians) {
    const double r = radians / pi;
    for (int den = 1; den <= 16; ++den) {
        const double scaled = r * den;
        const double rounded = std::round(scaled);
        if (std::abs(scaled - rounded) > 1e-12 || std::abs(rounded) > 64.0) continue;
        int num = static_cast<int>(rounded);
        if (num == 0) return "0";
        const int g = std::gcd(std::abs(num), den);
        num /= g;
        const int d = den / g;
        std::string out = num < 0 ? "-" : "";
        if (std::abs(num) != 1) out += std::to_string(std::abs(num)) + "*";
        out += "pi";
        if (d != 1) out += "/" + std::to_string(d);
        return out;
    }
    std::ostringstream out;
    out.precision(15);
    out << radians;
    return out.str();
}

// ---- Quil ------------------------------------------------------------------

std::string emit_quil(const Circuit& circuit) {
    qsim::validate(circuit);
    std::ostringstream out;
    if (circuit.classical_bit_count > 0)
        out << "DECLARE ro BIT[" << circuit.classical_bit_count << "]\n";
    for (const auto& op : circuit.ops) {
        switch (op.kind) {
            case GateKind::X:
            case GateKind::H:
            case GateKind::Z:
                out << qsim::kind_name(op.kind) << ' ' << op.qubits[0] << '\n';
                break;
            case GateKind::RX:
            case GateKind::RZ:
                out << qsim::kind_name(op.kind) << '(' << format_angle(op.angle) << ") "
                    << op.qubits[0] << '\n';
                break;
            case GateKind::CX:
                out << "CNOT " << op.qubits[0] << ' ' << op.qubits[1] << '\n';
                break;
            case GateKind::CZ:
                out << "CZ " << op.qubits[0] << ' ' << op.qubits[1] << '\n';
                break;
            case GateKind::CCX:
                out << "CCNOT " << op.qubits[0] << ' ' << op.qubits[1] << ' ' << op.qubits[2]
                    << '\n';
                break;
            case GateKind::MCZ: {
                if (op.qubits.size() == 1) {
                    out << "Z " << op.qubits[0] << '\n';
                    break;
                }
                if (op.qubits.size() == 2) {
                    out << "CZ " << op.qubits[0] << ' ' << op.qubits[1] << '\n';
                    break;
                }
                for (std::size_t i = 1; i < op.qubits.size(); ++i) out << "CONTROLLED ";
                out << 'Z';
                for (int q : op.qubits) out << ' ' << q;
                out << '\n';
                break;
            }
        }
    }
    for (const auto& [q, cb] : circuit.measurements)
        out << "MEASURE " << q << " ro[" << cb << "]\n";
    return out.str();
}

namespace {

struct QuilParser {
    Circuit circuit;
    std::string register_name;
    int declared_bits = -1;
    int max_qubit = -1;
    int max_cbit = -1;
    std::set<int> measured;
    int line_no = 0;

    [[noreturn]] void err(const std::string& what) const {
        fail(errc::parse_error, "line " + std::to_string(line_no) + ": " + what);
    }

    int parse_qubit(const std::string& tok) {
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            err("bad qubit index '" + tok + "'");
        const int q = std::stoi(tok);
        max_qubit = std::max(max_qubit, q);
        return q;
    }

    double parse_angle(const std::string& text) {
        std::string s = text;
        double sign = 1.0;
        if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
            if (s[0] == '-') sign = -1.0;
            s.erase(0, 1);
        }
        double value;
        std::size_t star = s.find('*');
        std::string pi_part = s;
        double factor = 1.0;
        if (star != std::string::npos) {
            const std::string num = s.substr(0, star);
            char* end = nullptr;
            factor = std::strtod(num.c_str(), &end);
            if (end != num.c_str() + num.size() || num.empty()) err("bad angle '" + text + "'");
            pi_part = s.substr(star + 1);
        }
        if (pi_part == "pi") {
            value = factor * pi;
        } else if (pi_part.rfind("pi/", 0) == 0) {
            const std::string den = pi_part.substr(3);
            char* end = nullptr;
            const double d = std::strtod(den.c_str(), &end);
            if (end != den.c_str() + den.size() || den.empty() || d == 0.0)
                err("bad angle '" + text + "'");
            value = factor * pi / d;
        } else if (star == std::string::npos) {
            char* end = nullptr;
            value = std::strtod(s.c_str(), &end);
            if (end != s.c_str() + s.size() || s.empty()) err("bad angle '" + text + "'");
        } else {
            err("bad angle '" + text + "'");
        }
        return sign * value;
    }

    void check_unmeasured(const GateOp& op) {
        for (int q : op.qubits)
            if (measured.contains(q))
                err("gate on qubit " + std::to_string(q) + " after its measurement");
    }

    void add(GateOp op) {
        check_unmeasured(op);
        circuit.ops.push_back(std::move(op));
    }

    void handle_declare(const std::vector<std::string>& tok) {
        if (tok.size() != 3) err("DECLARE takes a name and BIT[n]");
        if (declared_bits >= 0) err("duplicate DECLARE");
        const std::string& spec = tok[2];
        if (spec.rfind("BIT[", 0) != 0 || spec.back() != ']') err("expected BIT[n]");
        const std::string n = spec.substr(4, spec.size() - 5);
        if (n.empty() || n.find_first_not_of("0123456789") != std::string::npos)
            err("bad register size '" + n + "'");
        register_name = tok[1];
        declared_bits = std::stoi(n);
    }

    void handle_measure(const std::vector<std::string>& tok) {
        if (tok.size() != 3) err("MEASURE takes a qubit and a target bit");
        const int q = parse_qubit(tok[1]);
        if (measured.contains(q)) err("qubit " + std::to_string(q) + " measured twice");
        const std::string& target = tok[2];
        const std::size_t bracket = target.find('[');
        if (bracket == std::string::npos || target.back() != ']')
            err("expected <name>[<bit>], got '" + target + "'");
        const std::string name = target.substr(0, bracket);
        const std::string idx = target.substr(bracket + 1, target.size() - bracket - 2);
        const std::string& expect = declared_bits >= 0 ? register_name : "ro";
        if (name != expect) err("unknown register '" + name + "'");
        if (idx.empty() || idx.find_first_not_of("0123456789") != std::string::npos)
            err("bad bit index '" + idx + "'");
        const int cb = std::stoi(idx);
        if (declared_bits >= 0 && cb >= declared_bits)
            err("bit " + std::to_string(cb) + " outside " + name + "[" +
                std::to_string(declared_bits) + "]");
        measured.insert(q);
        max_cbit = std::max(max_cbit, cb);
        circuit.measurements.emplace_back(q, cb);
    }

    void handle_line(const std::vector<std::string>& tok) {
        const std::string& head = tok[0];
        auto qubits_from = [&](std::size_t first, std::size_t count) {
            if (tok.size() != first + count)
                err(head + " takes " + std::to_string(count) + " qubit(s)");
            std::vector<int> q;
            for (std::size_t i = 0; i < count; ++i) q.push_back(parse_qubit(tok[first + i]));
            return q;
        };
        if (head == "DECLARE") {
            handle_declare(tok);
        } else if (head == "HALT") {
            if (tok.size() != 1) err("HALT takes no arguments");
        } else if (head == "MEASURE") {
            handle_measure(tok);
        } else if (head == "H" || head == "X" || head == "Z") {
            add({qsim::kind_from_name(head), qubits_from(1, 1), 0.0});
        } else if (head == "CZ") {
            auto q = qubits_from(1, 2);
            add(GateOp::cz(q[0], q[1]));
        } else if (head == "CNOT") {
            auto q = qubits_from(1, 2);
            add(GateOp::cx(q[0], q[1]));
        } else if (head == "CCNOT") {
            auto q = qubits_from(1, 3);
            add(GateOp::ccx(q[0], q[1], q[2]));
        } else if (head.rfind("RX(", 0) == 0 || head.rfind("RZ(", 0) == 0) {
            if (head.back() != ')') err("unterminated angle in '" + head + "'");
            const double angle = parse_angle(head.substr(3, head.size() - 4));
            if (tok.size() != 2) err(head.substr(0, 2) + " takes 1 qubit");
            const int q = parse_qubit(tok[1]);
            add(head[1] == 'X' ? GateOp::rx(q, angle) : GateOp::rz(q, angle));
        } else if (head == "CONTROLLED") {
            std::size_t i = 1;
            while (i < tok.size() && tok[i] == "CONTROLLED") ++i;
            if (i >= tok.size() || tok[i] != "Z") err("only CONTROLLED...Z is supported");
            const std::size_t controls = i;
            std::vector<int> q;
            for (std::size_t j = i + 1; j < tok.size(); ++j) q.push_back(parse_qubit(tok[j]));
            if (q.size() != controls + 1)
                err("CONTROLLED^" + std::to_string(controls) + " Z takes " +
                    std::to_string(controls + 1) + " qubits");
            add(GateOp::mcz(q));
        } else {
            err("unknown instruction '" + head + "'");
        }
    }
};

}  // namespace

Circuit parse_quil(const std::string& text) {
    QuilParser p;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        ++p.line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream split(line);
        std::vector<std::string> tok;
        std::string t;
        while (split >> t) tok.push_back(t);
        if (tok.empty()) continue;
        p.handle_line(tok);
    }
    if (p.max_qubit < 0 && p.circuit.measurements.empty())
        fail(errc::parse_error, "empty program");
    p.circuit.qubit_count = std::max(p.max_qubit + 1, 1);
    p.circuit.classical_bit_count = p.declared_bits >= 0 ? p.declared_bits : p.max_cbit + 1;
    qsim::validate(p.circuit);
    return p.circuit;
}

// ---- OpenQASM --------------------------------------------------------------

std::string emit_openqasm(const Circuit& circuit) {
    qsim::validate(circuit);
    std::ostringstream out;
    out << "qreg q[" << circuit.qubit_count << "];\n";
    if (circuit.classical_bit_count > 0)
        out << "creg c[" << circuit.classical_bit_count << "];\n";
    auto one = [&](const char* name, int q) { out << name << " q[" << q << "];\n"; };
    auto two = [&](const char* name, int a, int b) {
        out << name << " q[" << a << "],q[" << b << "];\n";
    };
    for (const auto& op : circuit.ops) {
        switch (op.kind) {
            case GateKind::H:
                one("h", op.qubits[0]);
                break;
            case GateKind::X:
                one("x", op.qubits[0]);
                break;
            case GateKind::Z:
                one("z", op.qubits[0]);
                break;
            case GateKind::CZ:
                two("cz", op.qubits[0], op.qubits[1]);
                break;
            case GateKind::CCX:
                out << "ccx q[" << op.qubits[0] << "],q[" << op.qubits[1] << "],q["
                    << op.qubits[2] << "];\n";
                break;
            case GateKind::MCZ: {
                if (op.qubits.size() == 1) {
                    one("z", op.qubits[0]);
                } else if (op.qubits.size() == 2) {
                    two("cz", op.qubits[0], op.qubits[1]);
                } else if (op.qubits.size() == 3) {
                    const int t = op.qubits[2];
                    one("h", t);
                    out << "ccx q[" << op.qubits[0] << "],q[" << op.qubits[1] << "],q[" << t
                        << "];\n";
                    one("h", t);
                } else {
                    fail(errc::unsupported, "no OpenQASM lowering for Z with " +
                                                std::to_string(op.qubits.size() - 1) +
                                                " controls");
                }
                break;
            }
            case GateKind::CX:
            case GateKind::RX:
            case GateKind::RZ:
                fail(errc::unsupported,
                     std::string("gate ") + qsim::kind_name(op.kind) +
                         " outside the OpenQASM subset");
        }
    }
    for (const auto& [q, cb] : circuit.measurements)
        out << "measure q[" << q << "] -> c[" << cb << "];\n";
    return out.str();
}

}  // namespace qmind::qlc
