#include "core/qlc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "core/error.hpp"

namespace qmind::qlc {

using qsim::Circuit;
using qsim::GateKind;
using qsim::GateOp;

namespace {
constexpr double pi = std::numbers::pi;
constexpr int n_vars = 3;
constexpr int total_qubits = 6;
}  // namespace

int variable_qubit(char variable) {
    if (variable < 'A' || variable > 'C')
        fail(errc::invalid_argument, "no qubit for variable '" + std::string(1, variable) + "'");
    return variable - 'A';
}

int clause_ancilla(int clause_index) {
    if (clause_index < 0 || clause_index >= n_vars)
        fail(errc::invalid_argument, "clause index " + std::to_string(clause_index) + " out of range");
    return n_vars + clause_index;
}

std::vector<GateOp> compile_clause(const boolexpr::Clause& clause, int ancilla) {
    const int a = variable_qubit(clause.first.variable);
    const int b = variable_qubit(clause.second.variable);
    if (a == b) fail(errc::invalid_argument, "clause literals share a variable");
    if (ancilla == a || ancilla == b)
        fail(errc::invalid_argument, "ancilla collides with a literal qubit");

    std::vector<GateOp> ops;
    auto invert_positives = [&] {
        if (!clause.first.negated) ops.push_back(GateOp::x(a));
        if (!clause.second.negated) ops.push_back(GateOp::x(b));
    };
    invert_positives();
    ops.push_back(GateOp::ccx(a, b, ancilla));
    invert_positives();
    ops.push_back(GateOp::x(ancilla));
    return ops;
}

std::vector<GateOp> compile_oracle(const boolexpr::Cnf3Expression& expr) {
    std::vector<GateOp> compute;
    for (int i = 0; i < n_vars; ++i) {
        auto block = compile_clause(expr.clauses[static_cast<std::size_t>(i)], clause_ancilla(i));
        compute.insert(compute.end(), block.begin(), block.end());
    }
    std::vector<GateOp> ops = compute;
    ops.push_back(GateOp::mcz({clause_ancilla(0), clause_ancilla(1), clause_ancilla(2)}));
    ops.insert(ops.end(), compute.rbegin(), compute.rend());
    return ops;
}

std::vector<GateOp> diffusion(int n) {
    if (n < 2) fail(errc::invalid_argument, "diffusion needs at least 2 qubits");
    std::vector<GateOp> ops;
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) {
        all[static_cast<std::size_t>(q)] = q;
        ops.push_back(GateOp::h(q));
    }
    for (int q = 0; q < n; ++q) ops.push_back(GateOp::x(q));
    ops.push_back(GateOp::mcz(all));
    for (int q = 0; q < n; ++q) ops.push_back(GateOp::x(q));
    for (int q = 0; q < n; ++q) ops.push_back(GateOp::h(q));
    return ops;
}

CompiledCircuit compile_grover(const boolexpr::Cnf3Expression& expr, int iterations) {
    if (iterations < 1) fail(errc::invalid_argument, "iteration count must be >= 1");
    CompiledCircuit out;
    out.expression = expr;
    out.iterations = iterations;
    Circuit& c = out.circuit;
    c.qubit_count = total_qubits;
    c.classical_bit_count = n_vars;
    for (int q = 0; q < n_vars; ++q) c.ops.push_back(GateOp::h(q));
    const std::vector<GateOp> oracle = compile_oracle(expr);
    const std::vector<GateOp> diff = diffusion(n_vars);
    for (int i = 0; i < iterations; ++i) {
        c.ops.insert(c.ops.end(), oracle.begin(), oracle.end());
        c.ops.insert(c.ops.end(), diff.begin(), diff.end());
    }
    for (int q = 0; q < n_vars; ++q) c.measurements.emplace_back(q, q);
    qsim::validate(c);
    return out;
}

GroverSuccess grover_success(std::uint64_t space, std::uint64_t marked, int iterations) {
    if (space < 1) fail(errc::invalid_argument, "search space must be nonempty");
    if (marked > space)
        fail(errc::invalid_argument, "marked count exceeds search space");
    if (iterations < 0) fail(errc::invalid_argument, "negative iteration count");
    const double ratio = static_cast<double>(marked) / static_cast<double>(space);
    if (marked == 0 || marked == space) return {ratio, true};
    const double theta = std::asin(std::sqrt(ratio));
    const double s = std::sin((2.0 * iterations + 1.0) * theta);
    return {s * s, false};
}

// ---- transpilation ---------------------------------------------------------

namespace {

void native_h(std::vector<GateOp>& out, int q) {
    out.push_back(GateOp::rz(q, pi / 2));
    out.push_back(GateOp::rx(q, pi / 2));
    out.push_back(GateOp::rz(q, pi / 2));
}

void native_cx(std::vector<GateOp>& out, int control, int target) {
    native_h(out, target);
    out.push_back(GateOp::cz(control, target));
    native_h(out, target);
}

// Phase polynomial over the qubit parities: RZ on each subset's parity with
// angle ±π/2^(m-1) makes every all-ones basis state pick up −1 and nothing else.
void native_mcz(std::vector<GateOp>& out, const std::vector<int>& qubits) {
    const int m = static_cast<int>(qubits.size());
    if (m == 1) {
        out.push_back(GateOp::rz(qubits[0], pi));
        return;
    }
    if (m == 2) {
        out.push_back(GateOp::cz(qubits[0], qubits[1]));
        return;
    }
    const double unit = pi / static_cast<double>(1 << (m - 1));
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
        std::vector<int> subset;
        for (int i = 0; i < m; ++i)
            if (mask >> i & 1) subset.push_back(qubits[static_cast<std::size_t>(i)]);
        const int last = subset.back();
        for (std::size_t i = 0; i + 1 < subset.size(); ++i) native_cx(out, subset[i], last);
        const double sign = subset.size() % 2 == 1 ? 1.0 : -1.0;
        out.push_back(GateOp::rz(last, sign * unit));
        for (std::size_t i = subset.size() - 1; i-- > 0;) native_cx(out, subset[i], last);
    }
}

}  // namespace

Circuit transpile(const Circuit& circuit) {
    qsim::validate(circuit);
    Circuit out;
    out.qubit_count = circuit.qubit_count;
    out.classical_bit_count = circuit.classical_bit_count;
    out.measurements = circuit.measurements;
    for (const auto& op : circuit.ops) {
        switch (op.kind) {
            case GateKind::RX:
            case GateKind::RZ:
            case GateKind::CZ:
                out.ops.push_back(op);
                break;
            case GateKind::X:
                out.ops.push_back(GateOp::rx(op.qubits[0], pi));
                break;
            case GateKind::Z:
                out.ops.push_back(GateOp::rz(op.qubits[0], pi));
                break;
            case GateKind::H:
                native_h(out.ops, op.qubits[0]);
                break;
            case GateKind::CX:
                native_cx(out.ops, op.qubits[0], op.qubits[1]);
                break;
            case GateKind::CCX:
                native_h(out.ops, op.qubits[2]);
                native_mcz(out.ops, {op.qubits[0], op.qubits[1], op.qubits[2]});
                native_h(out.ops, op.qubits[2]);
                break;
            case GateKind::MCZ:
                native_mcz(out.ops, op.qubits);
                break;
        }
    }
    return out;
}

// ---- peephole cancellation -------------------------------------------------

namespace {

bool self_inverse(GateKind kind) {
    switch (kind) {
        case GateKind::X:
        case GateKind::H:
        case GateKind::Z:
        case GateKind::CX:
        case GateKind::CZ:
        case GateKind::CCX:
        case GateKind::MCZ:
            return true;
        case GateKind::RX:
        case GateKind::RZ:
            return false;
    }
    return false;
}

// Qubit list with order-insensitive positions normalized, for pair matching.
std::vector<int> canonical_qubits(const GateOp& op) {
    std::vector<int> q = op.qubits;
    if (op.kind == GateKind::CZ || op.kind == GateKind::MCZ) {
        std::sort(q.begin(), q.end());
    } else if (op.kind == GateKind::CCX) {
        if (q[0] > q[1]) std::swap(q[0], q[1]);
    }
    return q;
}

bool cancels(const GateOp& a, const GateOp& b) {
    return a.kind == b.kind && self_inverse(a.kind) && canonical_qubits(a) == canonical_qubits(b);
}

bool share_qubit(const GateOp& a, const GateOp& b) {
    for (int q : a.qubits)
        for (int r : b.qubits)
            if (q == r) return true;
    return false;
}

}  // namespace

Circuit peephole_cancel(const Circuit& circuit) {
    Circuit out = circuit;
    auto& ops = out.ops;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < ops.size() && !changed; ++i) {
            if (!self_inverse(ops[i].kind)) continue;
            for (std::size_t j = i + 1; j < ops.size(); ++j) {
                if (!share_qubit(ops[i], ops[j])) continue;
                if (cancels(ops[i], ops[j])) {
                    ops.erase(ops.begin() + static_cast<std::ptrdiff_t>(j));
                    ops.erase(ops.begin() + static_cast<std::ptrdiff_t>(i));
                    changed = true;
                }
                break;
            }
        }
    }
    return out;
}

int gate_count(const Circuit& circuit) {
    return static_cast<int>(circuit.ops.size());
}

}  // namespace qmind::qlc
