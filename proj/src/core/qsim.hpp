#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qmind::qsim {

using cplx = std::complex<double>;

constexpr int max_qubits = 20;
constexpr int max_unitary_qubits = 10;

enum class GateKind { X, H, Z, RX, RZ, CX, CZ, CCX, MCZ };

const char* kind_name(GateKind kind);
GateKind kind_from_name(const std::string& name);
bool kind_has_angle(GateKind kind);

// Qubit order: controls first, target last (CX, CCX). CZ and MCZ are
// symmetric basis-phase gates; their qubit order carries no meaning.
struct GateOp {
    GateKind kind = GateKind::X;
    std::vector<int> qubits;
    double angle = 0.0;

    static GateOp x(int q) { return {GateKind::X, {q}, 0.0}; }
    static GateOp h(int q) { return {GateKind::H, {q}, 0.0}; }
    static GateOp z(int q) { return {GateKind::Z, {q}, 0.0}; }
    static GateOp rx(int q, double theta) { return {GateKind::RX, {q}, theta}; }
    static GateOp rz(int q, double theta) { return {GateKind::RZ, {q}, theta}; }
    static GateOp cx(int control, int target) { return {GateKind::CX, {control, target}, 0.0}; }
    static GateOp cz(int a, int b) { return {GateKind::CZ, {a, b}, 0.0}; }
    static GateOp ccx(int c1, int c2, int target) { return {GateKind::CCX, {c1, c2, target}, 0.0}; }
    static GateOp mcz(std::vector<int> qs) { return {GateKind::MCZ, std::move(qs), 0.0}; }

    friend bool operator==(const GateOp&, const GateOp&) = default;
};

struct Circuit {
    int qubit_count = 0;
    int classical_bit_count = 0;
    std::vector<GateOp> ops;
    std::vector<std::pair<int, int>> measurements;  // (qubit, classical bit)

    friend bool operator==(const Circuit&, const Circuit&) = default;
};

// Basis index bit b is qubit b: index 5 = 0b101 is the state |q2 q1 q0> = |101>.
struct StateVector {
    int qubit_count = 0;
    std::vector<cplx> amplitudes;
};

// Keys are classical bitstrings with bit 0 rightmost ("101" means ro[2]=1,
// ro[1]=0, ro[0]=1); all keys share the circuit's classical width.
struct ShotHistogram {
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t shots = 0;
};

StateVector init_state(int qubit_count);
void apply_gate(StateVector& state, const GateOp& op);
std::vector<double> probabilities(const StateVector& state);
double subsystem_zero_probability(const StateVector& state, const std::vector<int>& qubits);

void validate(const Circuit& circuit);

// Applies all gate ops to the ground state; measurements are not consumed.
StateVector run_gates(const Circuit& circuit);

// Exact joint distribution of the classical register, keyed like ShotHistogram.
std::map<std::string, double> measured_probabilities(const Circuit& circuit);

ShotHistogram run_circuit(const Circuit& circuit, std::uint64_t shots, std::uint64_t seed);

// Dense row-major 2^n x 2^n matrix; measurements ignored. n <= 10.
std::vector<cplx> circuit_unitary(const Circuit& circuit);

int histogram_bit_count(const ShotHistogram& h);

std::string circuit_to_json(const Circuit& circuit);
Circuit circuit_from_json(const std::string& text);
std::string histogram_to_json(const ShotHistogram& h);
ShotHistogram histogram_from_json(const std::string& text);
std::string histogram_to_csv(const ShotHistogram& h);

// splitmix64 finalizer; the deterministic seed-derivation primitive shared by
// sampling blocks and the synthetic-signal generator.
std::uint64_t mix64(std::uint64_t x);

}  // namespace qmind::qsim
