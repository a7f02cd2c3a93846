// Release gate: every check below must hold before a build ships. Each
// criterion prints exactly one PASS/FAIL line; the exit status is the number
// of failed criteria.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "core/boolexpr.hpp"
#include "core/eeg.hpp"
#include "core/error.hpp"
#include "core/pipeline.hpp"
#include "core/qlc.hpp"
#include "core/qsim.hpp"
#include "core/sonify.hpp"

using namespace qmind;
using qsim::Circuit;
using qsim::GateKind;
using qsim::GateOp;
using qsim::cplx;

namespace {

constexpr double pi = std::numbers::pi;
namespace fs = std::filesystem;

std::string data_file(const std::string& name) {
    const std::string path = std::string(QMIND_TEST_DATA_DIR) + "/" + name;
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) fail(errc::io_error, "missing test data file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string key_of(int index) {
    return {char('0' + ((index >> 2) & 1)), char('0' + ((index >> 1) & 1)),
            char('0' + (index & 1))};
}

double prob_of(const std::map<std::string, double>& dist, const std::string& key) {
    const auto it = dist.find(key);
    return it == dist.end() ? 0.0 : it->second;
}

double tvd(const std::map<std::string, double>& a, const std::map<std::string, double>& b) {
    std::set<std::string> keys;
    for (const auto& [k, v] : a) keys.insert(k);
    for (const auto& [k, v] : b) keys.insert(k);
    double d = 0.0;
    for (const auto& k : keys) d += std::abs(prob_of(a, k) - prob_of(b, k));
    return d / 2.0;
}

std::set<int> satisfying_indices(const boolexpr::ExprPtr& expr) {
    std::set<int> out;
    for (int i = 0; i < 8; ++i) {
        const boolexpr::Assignment a = {
            {"A", (i & 1) != 0}, {"B", (i & 2) != 0}, {"C", (i & 4) != 0}};
        if (boolexpr::evaluate(expr, a)) out.insert(i);
    }
    return out;
}

bool phase_equal(const std::vector<cplx>& u, const std::vector<cplx>& v, double tol) {
    if (u.size() != v.size()) return false;
    cplx phase = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (std::abs(u[i]) > 1e-8) {
            phase = v[i] / u[i];
            break;
        }
    }
    if (std::abs(std::abs(phase) - 1.0) > tol) return false;
    for (std::size_t i = 0; i < u.size(); ++i)
        if (std::abs(phase * u[i] - v[i]) > tol) return false;
    return true;
}

// Distribution check for a one-iteration search over n=8 with m satisfying
// rows: satisfying outcomes share the closed-form success probability, the
// rest share the remainder.
std::string check_search_distribution(const std::string& text, const std::string& expr_text,
                                      double tol) {
    const auto expr = boolexpr::parse(expr_text);
    const std::set<int> marked = satisfying_indices(expr);
    const auto dist = qsim::measured_probabilities(qlc::parse_quil(text));
    const auto success = qlc::grover_success(8, marked.size(), 1);
    std::ostringstream problems;
    for (int i = 0; i < 8; ++i) {
        const bool hit = marked.count(i) != 0;
        const double want = hit ? success.probability / static_cast<double>(marked.size())
                                : (1.0 - success.probability) / (8.0 - marked.size());
        const double got = prob_of(dist, key_of(i));
        if (std::abs(got - want) > tol)
            problems << " p(" << key_of(i) << ")=" << got << " want " << want << ";";
    }
    return problems.str();
}

boolexpr::Cnf3Expression demo_expr() {
    return boolexpr::to_cnf3(boolexpr::parse("(A | B) & (~B | ~C) & (A | C)"));
}

eeg::EegRecording tone_recording(const std::vector<std::tuple<std::string, double, double>>& tones,
                                 double duration) {
    eeg::SynthSpec spec;
    spec.noise = 0.05;
    spec.seed = 17;
    for (const auto& label : {"Fp1", "T3", "O1", "Fz", "Cz", "Oz", "Fp2", "T4", "O2"}) {
        eeg::ChannelSpec ch;
        ch.label = label;
        for (const auto& [l, f, a] : tones)
            if (l == label) ch.tones.emplace_back(f, a);
        spec.channels.push_back(std::move(ch));
    }
    return eeg::synth_eeg(spec, duration, 250.0);
}

struct Criterion {
    std::string label;
    std::function<std::string()> run;  // empty string = pass
};

}  // namespace

int main() {
    std::vector<Criterion> criteria;

    criteria.push_back({"controlled gate truth tables", [] {
        const auto t0 = std::chrono::steady_clock::now();
        std::ostringstream problems;

        const std::vector<std::pair<int, int>> cx_rows = {{0, 0}, {1, 3}, {2, 2}, {3, 1}};
        for (const auto& [in, out] : cx_rows) {
            qsim::StateVector s = qsim::init_state(2);
            s.amplitudes[0] = 0.0;
            s.amplitudes[in] = 1.0;
            qsim::apply_gate(s, GateOp::cx(0, 1));
            if (s.amplitudes[out] != cplx{1.0})
                problems << " CX maps " << in << " off " << out << ";";
        }
        for (int in = 0; in < 8; ++in) {
            const int out = (in & 3) == 3 ? in ^ 4 : in;
            qsim::StateVector s = qsim::init_state(3);
            s.amplitudes[0] = 0.0;
            s.amplitudes[in] = 1.0;
            qsim::apply_gate(s, GateOp::ccx(0, 1, 2));
            if (s.amplitudes[out] != cplx{1.0})
                problems << " CCX maps " << in << " off " << out << ";";
        }

        const double elapsed = std::chrono::duration<double>(
            std::chrono::steady_clock::now() - t0).count();
        if (elapsed >= 1.0) problems << " took " << elapsed << " s (limit 1);";
        return problems.str();
    }});

    criteria.push_back({"amplitude-squared readout", [] {
        qsim::StateVector s = qsim::init_state(1);
        s.amplitudes[0] = 0.5;
        s.amplitudes[1] = std::sqrt(3.0) / 2.0;
        const auto p = qsim::probabilities(s);
        std::ostringstream problems;
        if (std::abs(p[0] - 0.25) > 1e-15) problems << " p0=" << p[0] << ";";
        if (std::abs(p[1] - 0.75) > 1e-15) problems << " p1=" << p[1] << ";";
        return problems.str();
    }});

    criteria.push_back({"one-iteration search distribution", [] {
        const auto t0 = std::chrono::steady_clock::now();
        const auto compiled = qlc::compile_grover(demo_expr(), 1);
        const auto dist = qsim::measured_probabilities(compiled.circuit);
        std::ostringstream problems;
        double marked_min = 1.0, outlier_max = 0.0;
        for (int i = 0; i < 8; ++i) {
            const bool hit = i == 1 || i == 3 || i == 5;
            const double want = hit ? 9.0 / 32.0 : 1.0 / 32.0;
            const double got = prob_of(dist, key_of(i));
            if (std::abs(got - want) > 1e-9)
                problems << " p(" << key_of(i) << ")=" << got << ";";
            if (hit)
                marked_min = std::min(marked_min, got);
            else
                outlier_max = std::max(outlier_max, got);
        }
        if (std::abs(outlier_max / marked_min - 1.0 / 9.0) > 1e-9)
            problems << " outlier/marked ratio " << outlier_max / marked_min << ";";

        const auto shots = qsim::run_circuit(compiled.circuit, 5000, 0);
        for (int i = 0; i < 8; ++i) {
            const double p = (i == 1 || i == 3 || i == 5) ? 9.0 / 32.0 : 1.0 / 32.0;
            const double n = shots.counts.count(key_of(i))
                                 ? static_cast<double>(shots.counts.at(key_of(i)))
                                 : 0.0;
            const double sigma = std::sqrt(5000.0 * p * (1.0 - p));
            if (std::abs(n - 5000.0 * p) > 4.0 * sigma)
                problems << " count(" << key_of(i) << ")=" << n << " outside 4 sigma;";
        }
        const double elapsed = std::chrono::duration<double>(
            std::chrono::steady_clock::now() - t0).count();
        if (elapsed >= 1.0) problems << " took " << elapsed << " s (limit 1);";
        return problems.str();
    }});

    criteria.push_back({"iteration count scaling", [] {
        std::ostringstream problems;
        const auto cnf = demo_expr();
        for (int k = 1; k <= 3; ++k) {
            const auto dist = qsim::measured_probabilities(qlc::compile_grover(cnf, k).circuit);
            double marked = 0.0;
            for (int i : {1, 3, 5}) marked += prob_of(dist, key_of(i));
            const double closed = qlc::grover_success(8, 3, k).probability;
            if (std::abs(marked - closed) > 1e-9)
                problems << " k=" << k << " sim " << marked << " vs closed form " << closed << ";";
            if (k == 2 && marked > 0.03) problems << " k=2 success " << marked << " > 0.03;";
            if (k == 3) {
                if (marked < 0.99) problems << " k=3 success " << marked << " < 0.99;";
                for (int i : {0, 2, 4, 6, 7})
                    if (prob_of(dist, key_of(i)) > 0.002)
                        problems << " k=3 outlier p(" << key_of(i)
                                 << ")=" << prob_of(dist, key_of(i)) << " > 0.002;";
            }
        }
        return problems.str();
    }});

    criteria.push_back({"single-clause program sampling", [] {
        const Circuit c = qlc::parse_quil(data_file("or_clause.quil"));
        const auto hist = qsim::run_circuit(c, 2048, 0);
        std::ostringstream problems;
        const std::set<std::string> support = {"000", "101", "110", "111"};
        for (const auto& [key, n] : hist.counts)
            if (!support.count(key)) problems << " impossible outcome " << key << ";";
        const double sigma = std::sqrt(2048.0 * 0.25 * 0.75);
        for (const auto& key : support) {
            const double n = hist.counts.count(key)
                                 ? static_cast<double>(hist.counts.at(key))
                                 : 0.0;
            if (std::abs(n - 512.0) > 4.0 * sigma)
                problems << " count(" << key << ")=" << n << " outside 4 sigma of 512;";
        }
        return problems.str();
    }});

    criteria.push_back({"native program equivalence", [] {
        const Circuit native = qlc::parse_quil(data_file("or_clause_native.quil"));
        const Circuit plain = qlc::parse_quil(data_file("or_clause.quil"));
        std::ostringstream problems;
        const double d = tvd(qsim::measured_probabilities(native),
                             qsim::measured_probabilities(plain));
        if (d > 1e-6) problems << " total variation " << d << " > 1e-6;";
        const int gates = qlc::gate_count(native);
        if (gates != 35) problems << " native gate count " << gates << " (expected 35);";
        return problems.str();
    }});

    criteria.push_back({"worked example distributions", [] {
        std::ostringstream problems;
        // Four satisfying rows of eight: amplification is a no-op, uniform output.
        const auto d1 = qsim::measured_probabilities(qlc::parse_quil(data_file("example1.quil")));
        for (int i = 0; i < 8; ++i)
            if (std::abs(prob_of(d1, key_of(i)) - 0.125) > 1e-9)
                problems << " example1 p(" << key_of(i) << ")=" << prob_of(d1, key_of(i)) << ";";
        const auto sat1 = satisfying_indices(boolexpr::parse("(~C | B) & (C | A) & (~C | B)"));
        if (sat1 != std::set<int>{1, 3, 6, 7}) problems << " example1 satisfying set mismatch;";

        const std::string p2 = check_search_distribution(
            data_file("example2.quil"), "(B | A) & (C | A) & (~A | ~C)", 1e-9);
        if (!p2.empty()) problems << " example2:" << p2;
        const auto sat2 = satisfying_indices(boolexpr::parse("(B | A) & (C | A) & (~A | ~C)"));
        if (sat2 != std::set<int>{1, 3, 6}) problems << " example2 satisfying set mismatch;";

        const std::string p3 = check_search_distribution(
            data_file("example3.quil"), "(~C | A) & (C | A) & (~B | ~A)", 1e-9);
        if (!p3.empty()) problems << " example3:" << p3;
        const auto sat3 = satisfying_indices(boolexpr::parse("(~C | A) & (C | A) & (~B | ~A)"));
        if (sat3 != std::set<int>{1, 5}) problems << " example3 satisfying set mismatch;";

        const std::string p4 = check_search_distribution(
            data_file("example4.quil"), "(A | B) & (B | A) & (B | C)", 1e-9);
        if (!p4.empty()) problems << " example4:" << p4;
        const auto sat4 = satisfying_indices(boolexpr::parse("(A | B) & (B | A) & (B | C)"));
        if (sat4 != std::set<int>{2, 3, 5, 6, 7}) problems << " example4 satisfying set mismatch;";
        return problems.str();
    }});

    criteria.push_back({"qasm translation", [] {
        std::ostringstream problems;
        const Circuit c = qlc::parse_quil(data_file("or_clause.quil"));
        if (qlc::emit_openqasm(c) != data_file("or_clause.qasm"))
            problems << " single-clause translation differs from reference;";

        // Clause AND literal: (A | B) & C on four qubits, one flag ancilla.
        Circuit mixed;
        mixed.qubit_count = 4;
        mixed.classical_bit_count = 3;
        for (int q = 0; q < 3; ++q) mixed.ops.push_back(GateOp::h(q));
        const std::vector<GateOp> clause = {GateOp::x(0), GateOp::x(1), GateOp::ccx(0, 1, 3),
                                            GateOp::x(0), GateOp::x(1), GateOp::x(3)};
        mixed.ops.insert(mixed.ops.end(), clause.begin(), clause.end());
        mixed.ops.push_back(GateOp::cz(3, 2));
        for (auto it = clause.rbegin(); it != clause.rend(); ++it) mixed.ops.push_back(*it);
        const auto diff = qlc::diffusion(3);
        mixed.ops.insert(mixed.ops.end(), diff.begin(), diff.end());
        for (int q = 0; q < 3; ++q) mixed.measurements.emplace_back(q, q);

        const auto dist = qsim::measured_probabilities(mixed);
        for (int i = 0; i < 8; ++i) {
            const double want = (i == 5 || i == 6 || i == 7) ? 9.0 / 32.0 : 1.0 / 32.0;
            if (std::abs(prob_of(dist, key_of(i)) - want) > 1e-9)
                problems << " mixed-form p(" << key_of(i) << ")=" << prob_of(dist, key_of(i))
                         << ";";
        }
        try {
            const std::string qasm = qlc::emit_openqasm(mixed);
            if (qasm.find("cz q[3],q[2];") == std::string::npos)
                problems << " mixed-form translation lacks its cz line;";
        } catch (const error& e) {
            problems << " mixed-form translation failed: " << e.what() << ";";
        }
        return problems.str();
    }});

    criteria.push_back({"oracle soundness over random expressions", [] {
        const auto t0 = std::chrono::steady_clock::now();
        std::ostringstream problems;
        std::mt19937_64 rng(2024);
        int checked = 0;
        for (int rep = 0; rep < 500 && problems.str().empty(); ++rep) {
            boolexpr::Cnf3Expression cnf;
            for (auto& clause : cnf.clauses) {
                const char vars[] = {'A', 'B', 'C'};
                const int a = static_cast<int>(rng() % 3);
                int b = static_cast<int>(rng() % 3);
                while (b == a) b = static_cast<int>(rng() % 3);
                clause.first = {vars[a], rng() % 2 == 0};
                clause.second = {vars[b], rng() % 2 == 0};
            }
            Circuit c;
            c.qubit_count = 6;
            for (int q = 0; q < 3; ++q) c.ops.push_back(GateOp::h(q));
            const auto oracle = qlc::compile_oracle(cnf);
            c.ops.insert(c.ops.end(), oracle.begin(), oracle.end());
            const auto state = qsim::run_gates(c);

            const auto marked = satisfying_indices(boolexpr::cnf3_to_expression(cnf));
            const double amp = 1.0 / std::sqrt(8.0);
            for (int i = 0; i < 8; ++i) {
                const double want = marked.count(i) ? -amp : amp;
                if (std::abs(state.amplitudes[i] - want) > 1e-9) {
                    problems << " " << boolexpr::format_cnf3(cnf) << ": amplitude " << i
                             << " not phase-marked;";
                    break;
                }
            }
            if (std::abs(qsim::subsystem_zero_probability(state, {3, 4, 5}) - 1.0) > 1e-9)
                problems << " " << boolexpr::format_cnf3(cnf) << ": ancillas entangled;";
            ++checked;
        }
        const double elapsed = std::chrono::duration<double>(
            std::chrono::steady_clock::now() - t0).count();
        if (checked != 500) problems << " only " << checked << " of 500 expressions checked;";
        if (elapsed >= 30.0) problems << " took " << elapsed << " s (limit 30);";
        return problems.str();
    }});

    criteria.push_back({"transpiler unitary fidelity", [] {
        std::ostringstream problems;
        std::mt19937_64 rng(3030);
        for (int rep = 0; rep < 100 && problems.str().empty(); ++rep) {
            const int n = 2 + static_cast<int>(rng() % 3);
            Circuit c;
            c.qubit_count = n;
            for (int step = 0; step < 15; ++step) {
                const int q = static_cast<int>(rng() % n);
                int q2 = static_cast<int>(rng() % n);
                while (q2 == q) q2 = static_cast<int>(rng() % n);
                const double angle = pi * (static_cast<double>(rng() % 256) - 128.0) / 64.0;
                switch (rng() % 9) {
                    case 0: c.ops.push_back(GateOp::x(q)); break;
                    case 1: c.ops.push_back(GateOp::h(q)); break;
                    case 2: c.ops.push_back(GateOp::z(q)); break;
                    case 3: c.ops.push_back(GateOp::rx(q, angle)); break;
                    case 4: c.ops.push_back(GateOp::rz(q, angle)); break;
                    case 5: c.ops.push_back(GateOp::cx(q, q2)); break;
                    case 6: c.ops.push_back(GateOp::cz(q, q2)); break;
                    case 7:
                        if (n >= 3) {
                            int q3 = static_cast<int>(rng() % n);
                            while (q3 == q || q3 == q2) q3 = static_cast<int>(rng() % n);
                            c.ops.push_back(GateOp::ccx(q, q2, q3));
                        }
                        break;
                    default: {
                        std::vector<int> qs;
                        const int arity = 1 + static_cast<int>(rng() % n);
                        for (int i = 0; i < n && static_cast<int>(qs.size()) < arity; ++i)
                            qs.push_back(i);
                        c.ops.push_back(GateOp::mcz(qs));
                        break;
                    }
                }
            }
            const auto u = qsim::circuit_unitary(c);
            if (!phase_equal(u, qsim::circuit_unitary(qlc::transpile(c)), 1e-9))
                problems << " transpile broke circuit " << rep << ";";
            if (!phase_equal(u, qsim::circuit_unitary(qlc::peephole_cancel(c)), 1e-9))
                problems << " peephole broke circuit " << rep << ";";
        }
        return problems.str();
    }});

    criteria.push_back({"recording analysis reproduction", [] {
        std::ostringstream problems;
        const auto first = eeg::build_expression(
            tone_recording({{"O1", 13.1649, 10.0}, {"T3", 24.7721, 8.0}, {"Fp1", 6.0, 2.0},
                            {"Oz", 31.1541, 10.0}, {"Fz", 31.5992, 8.0}, {"Cz", 6.5, 2.0},
                            {"O2", 8.22338, 10.0}, {"T4", 27.0611, 8.0}, {"Fp2", 5.5, 2.0}},
                           2.0),
            0.5, 1.0);
        if (boolexpr::format_cnf3(first.expression) != "(~C | B) & (C | A) & (~C | B)")
            problems << " first recording gave " << boolexpr::format_cnf3(first.expression) << ";";

        const auto second = eeg::build_expression(
            tone_recording({{"Fp1", 15.0409, 10.0}, {"T3", 18.6357, 8.0}, {"O1", 5.0, 2.0},
                            {"Cz", 30.1681, 10.0}, {"Fz", 32.1824, 8.0}, {"Oz", 6.0, 2.0},
                            {"T4", 18.4086, 10.0}, {"O2", 19.1024, 8.0}, {"Fp2", 7.0, 2.0}},
                           2.0),
            0.5, 1.0);
        if (boolexpr::format_cnf3(second.expression) != "(A | B) & (B | A) & (B | C)")
            problems << " second recording gave " << boolexpr::format_cnf3(second.expression)
                     << ";";

        const auto beta_rec = tone_recording(
            {{"Fp1", 33.18, 10.0}, {"O1", 23.61, 8.0}, {"T3", 5.0, 2.0}}, 1.0);
        const auto beta_clause = eeg::build_clause(beta_rec, 0.0, 1.0, 0).first;
        if (!(beta_clause.first == boolexpr::Literal{'A', false} &&
              beta_clause.second == boolexpr::Literal{'C', false}))
            problems << " beta-band clause is not (A | C);";

        const auto alpha_rec = tone_recording(
            {{"Fp1", 10.36, 10.0}, {"O1", 23.61, 8.0}, {"T3", 5.0, 2.0}}, 1.0);
        const auto alpha_clause = eeg::build_clause(alpha_rec, 0.0, 1.0, 0).first;
        if (!(alpha_clause.first == boolexpr::Literal{'A', true} &&
              alpha_clause.second == boolexpr::Literal{'C', false}))
            problems << " alpha-band clause is not (~A | C);";
        return problems.str();
    }});

    criteria.push_back({"histogram sonification fidelity", [] {
        std::ostringstream problems;
        const auto compiled = qlc::compile_grover(demo_expr(), 1);
        const auto hist = qsim::run_circuit(compiled.circuit, 5000, 0);

        const auto bank = sonify::histogram_to_bank(hist, sonify::default_frequencies());
        const auto audio = sonify::synthesize(bank, {5.0, 44100.0});
        const auto bytes = sonify::wav_bytes(audio);

        std::uint64_t max_count = 0;
        for (const auto& [key, n] : hist.counts) max_count = std::max(max_count, n);
        const auto partials = sonify::measure_partials(audio, sonify::default_frequencies());
        for (int i = 0; i < 8; ++i) {
            const auto it = hist.counts.find(key_of(i));
            const double want =
                it == hist.counts.end()
                    ? 0.0
                    : static_cast<double>(it->second) / static_cast<double>(max_count);
            if (want == 0.0) continue;
            if (std::abs(partials[i] / want - 1.0) > 0.05)
                problems << " partial " << i << " ratio " << partials[i] << " vs count ratio "
                         << want << ";";
        }

        const auto le32 = [&](std::size_t at) {
            return bytes[at] | (bytes[at + 1] << 8) | (bytes[at + 2] << 16)
                 | (static_cast<std::uint32_t>(bytes[at + 3]) << 24);
        };
        const auto le16 = [&](std::size_t at) { return bytes[at] | (bytes[at + 1] << 8); };
        const std::uint32_t data_bytes = 5 * 44100 * 2;
        bool header_ok = bytes.size() == 44 + data_bytes;
        header_ok = header_ok && std::string(bytes.begin(), bytes.begin() + 4) == "RIFF";
        header_ok = header_ok && le32(4) == 36 + data_bytes;
        header_ok = header_ok && std::string(bytes.begin() + 8, bytes.begin() + 16) == "WAVEfmt ";
        header_ok = header_ok && le32(16) == 16 && le16(20) == 1 && le16(22) == 1;
        header_ok = header_ok && le32(24) == 44100 && le32(28) == 88200;
        header_ok = header_ok && le16(32) == 2 && le16(34) == 16;
        header_ok = header_ok && std::string(bytes.begin() + 36, bytes.begin() + 40) == "data";
        header_ok = header_ok && le32(40) == data_bytes;
        if (!header_ok) problems << " header layout wrong;";

        const auto sample_at = [&](std::size_t index) {
            return static_cast<std::int16_t>(bytes[44 + 2 * index] |
                                             (bytes[44 + 2 * index + 1] << 8));
        };
        if (sample_at(0) != 0) problems << " first sample " << sample_at(0) << ";";
        if (sample_at(5 * 44100 - 1) != 0)
            problems << " last sample " << sample_at(5 * 44100 - 1) << ";";
        return problems.str();
    }});

    criteria.push_back({"session determinism", [] {
        const auto t0 = std::chrono::steady_clock::now();
        std::ostringstream problems;
        const auto rec = tone_recording({{"Fp1", 20.0, 10.0}, {"T3", 25.0, 8.0}, {"O1", 5.0, 2.0},
                                         {"Cz", 10.0, 10.0}, {"Oz", 12.0, 8.0}, {"Fz", 5.5, 2.0},
                                         {"Fp2", 18.0, 10.0}, {"O2", 22.0, 8.0}, {"T4", 6.0, 2.0}},
                                        10.0);
        pipeline::SessionConfig cfg;
        const fs::path base = fs::temp_directory_path() / "qmind_acceptance_session";
        fs::remove_all(base);

        const auto slurp = [](const fs::path& p) {
            std::ifstream in(p, std::ios::binary);
            return std::string(std::istreambuf_iterator<char>(in),
                               std::istreambuf_iterator<char>());
        };

        cfg.output_dir = (base / "a").string();
        const auto first = pipeline::run_session(rec, cfg);
        cfg.output_dir = (base / "b").string();
        const auto second = pipeline::run_session(rec, cfg);

        if (first.lapses.size() != 10)
            problems << " expected 10 lapses, got " << first.lapses.size() << ";";
        std::vector<std::string> rels;
        for (const auto& lapse : first.lapses)
            for (const auto& rel : lapse.files) rels.push_back(rel);
        rels.push_back(first.session_wav);
        rels.push_back(first.summary);
        for (const auto& rel : rels) {
            const auto a = slurp(base / "a" / rel);
            const auto b = slurp(base / "b" / rel);
            if (a.empty()) problems << " empty artifact " << rel << ";";
            if (a != b) problems << " artifact " << rel << " differs between runs;";
        }
        fs::remove_all(base);

        const double elapsed = std::chrono::duration<double>(
            std::chrono::steady_clock::now() - t0).count();
        if (elapsed >= 30.0) problems << " took " << elapsed << " s (limit 30);";
        return problems.str();
    }});

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        try {
            detail = criteria[i].run();
        } catch (const std::exception& e) {
            detail = std::string(" exception: ") + e.what();
        }
        if (detail.empty()) {
            std::cout << "PASS: " << i + 1 << " " << criteria[i].label << "\n";
        } else {
            ++failures;
            std::cout << "FAIL: " << i + 1 << " " << criteria[i].label << " --" << detail << "\n";
        }
    }
    std::cout << (failures == 0 ? "all criteria passed"
                                : std::to_string(failures) + " criteria failed")
              << "\n";
    return failures;
}
