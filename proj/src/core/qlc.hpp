#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/boolexpr.hpp"
#include "core/qsim.hpp"

namespace qmind::qlc {

// Fixed layout: variables A,B,C on q0..q2, one ancilla per clause on q3..q5.
int variable_qubit(char variable);
int clause_ancilla(int clause_index);  // 0-based

struct CompiledCircuit {
    qsim::Circuit circuit;  // 6 qubits, 3 classical bits
    boolexpr::Cnf3Expression expression;
    int iterations = 1;
};

// Clause value computed into |0⟩ ancilla by De Morgan: X the positive-literal
// qubits, CCX into the ancilla, undo, X the ancilla.
std::vector<qsim::GateOp> compile_clause(const boolexpr::Clause& clause, int ancilla);

// Three clause blocks, MCZ over the ancillas, then the blocks replayed in
// exact reverse order so the ancillas return to |0⟩.
std::vector<qsim::GateOp> compile_oracle(const boolexpr::Cnf3Expression& expr);

// Inversion about the mean over qubits 0..n_vars-1.
std::vector<qsim::GateOp> diffusion(int n_vars);

// H layer, then iterations × (oracle; diffusion), then measure q0..q2.
CompiledCircuit compile_grover(const boolexpr::Cnf3Expression& expr, int iterations);

struct GroverSuccess {
    double probability = 0.0;
    bool degenerate = false;  // marked count 0 or the whole space: no amplification
};

// sin²((2k+1)·asin(√(marked/space))) for 1 ≤ marked < space.
GroverSuccess grover_success(std::uint64_t space, std::uint64_t marked, int iterations);

// Rewrite onto the native set {RX, RZ, CZ}; unitary preserved up to global phase.
qsim::Circuit transpile(const qsim::Circuit& circuit);

// Remove self-inverse gate pairs separated only by gates on disjoint qubits.
qsim::Circuit peephole_cancel(const qsim::Circuit& circuit);

int gate_count(const qsim::Circuit& circuit);

// Quil subset: DECLARE ro BIT[n], H/X/Z q, RX(a)/RZ(a) q, CZ, CNOT, CCNOT,
// CONTROLLED^(m-1) Z, MEASURE q ro[i], HALT, # comments.
std::string emit_quil(const qsim::Circuit& circuit);
qsim::Circuit parse_quil(const std::string& text);

// OpenQASM subset: qreg/creg header, h/x/z/cz/ccx, measure.
std::string emit_openqasm(const qsim::Circuit& circuit);

// "pi", "pi/2", "-3*pi/4", … when the angle is a small rational multiple of
// pi; otherwise a 15-significant-digit decimal.
std::string format_angle(double radians);

}  // namespace qmind::qlc
