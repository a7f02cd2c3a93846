#include "qmind/qmind.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "core/boolexpr.hpp"
#include "core/eeg.hpp"
#include "core/error.hpp"
#include "core/pipeline.hpp"
#include "core/qlc.hpp"
#include "core/qsim.hpp"
#include "core/sonify.hpp"
#include "json.hpp"

struct qm_expression {
    qmind::boolexpr::ExprPtr value;
};
struct qm_circuit {
    qmind::qsim::Circuit value;
};
struct qm_histogram {
    qmind::qsim::ShotHistogram value;
};
struct qm_recording {
    qmind::eeg::EegRecording value;
};

namespace {

thread_local std::string g_last_error;

qm_status map_code(qmind::errc code) {
    switch (code) {
        case qmind::errc::invalid_argument: return QM_ERROR_INVALID_ARGUMENT;
        case qmind::errc::parse_error: return QM_ERROR_PARSE;
        case qmind::errc::io_error: return QM_ERROR_IO;
        case qmind::errc::unsupported: return QM_ERROR_UNSUPPORTED;
    }
    return QM_ERROR_INTERNAL;
}

template <typename F>
qm_status guarded(F&& body) noexcept {
    try {
        body();
        return QM_OK;
    } catch (const qmind::error& e) {
        g_last_error = e.what();
        return map_code(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return QM_ERROR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return QM_ERROR_INTERNAL;
    }
}

qm_status bad_argument(const char* what) noexcept {
    g_last_error = what;
    return QM_ERROR_INVALID_ARGUMENT;
}

char* copy_string(const std::string& text) {
    char* out = static_cast<char*>(std::malloc(text.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

}  // namespace

extern "C" {

const char* qm_version(void) { return "0.1.0"; }

const char* qm_last_error(void) { return g_last_error.c_str(); }

void qm_string_free(char* text) { std::free(text); }

/* ---- expressions ---- */

qm_status qm_expression_parse(const char* text, qm_expression** out) {
    if (!text || !out) return bad_argument("null argument to qm_expression_parse");
    return guarded([&] { *out = new qm_expression{qmind::boolexpr::parse(text)}; });
}

qm_status qm_expression_format(const qm_expression* expr, char** out) {
    if (!expr || !out) return bad_argument("null argument to qm_expression_format");
    return guarded([&] { *out = copy_string(qmind::boolexpr::format(expr->value)); });
}

qm_status qm_expression_satisfying(const qm_expression* expr, char** json_out) {
    if (!expr || !json_out) return bad_argument("null argument to qm_expression_satisfying");
    return guarded([&] {
        const auto vars = qmind::boolexpr::variable_names(expr->value);
        const auto sat = qmind::boolexpr::satisfying_assignments(expr->value, vars);
        nlohmann::json doc;
        doc["variables"] = vars;
        doc["satisfying"] = sat;
        *json_out = copy_string(doc.dump(2) + "\n");
    });
}

void qm_expression_free(qm_expression* expr) { delete expr; }

/* ---- compilation ---- */

qm_status qm_compile(const qm_expression* expr, int iterations, qm_circuit** out) {
    if (!expr || !out) return bad_argument("null argument to qm_compile");
    return guarded([&] {
        const auto cnf = qmind::boolexpr::to_cnf3(expr->value);
        *out = new qm_circuit{qmind::qlc::compile_grover(cnf, iterations).circuit};
    });
}

qm_status qm_circuit_transpile(const qm_circuit* circuit, qm_circuit** out) {
    if (!circuit || !out) return bad_argument("null argument to qm_circuit_transpile");
    return guarded([&] { *out = new qm_circuit{qmind::qlc::transpile(circuit->value)}; });
}

qm_status qm_circuit_peephole(const qm_circuit* circuit, qm_circuit** out) {
    if (!circuit || !out) return bad_argument("null argument to qm_circuit_peephole");
    return guarded([&] { *out = new qm_circuit{qmind::qlc::peephole_cancel(circuit->value)}; });
}

qm_status qm_circuit_from_json(const char* text, qm_circuit** out) {
    if (!text || !out) return bad_argument("null argument to qm_circuit_from_json");
    return guarded([&] { *out = new qm_circuit{qmind::qsim::circuit_from_json(text)}; });
}

qm_status qm_circuit_to_json(const qm_circuit* circuit, char** out) {
    if (!circuit || !out) return bad_argument("null argument to qm_circuit_to_json");
    return guarded([&] { *out = copy_string(qmind::qsim::circuit_to_json(circuit->value)); });
}

qm_status qm_circuit_from_quil(const char* text, qm_circuit** out) {
    if (!text || !out) return bad_argument("null argument to qm_circuit_from_quil");
    return guarded([&] { *out = new qm_circuit{qmind::qlc::parse_quil(text)}; });
}

qm_status qm_circuit_to_quil(const qm_circuit* circuit, char** out) {
    if (!circuit || !out) return bad_argument("null argument to qm_circuit_to_quil");
    return guarded([&] { *out = copy_string(qmind::qlc::emit_quil(circuit->value)); });
}

qm_status qm_circuit_to_openqasm(const qm_circuit* circuit, char** out) {
    if (!circuit || !out) return bad_argument("null argument to qm_circuit_to_openqasm");
    return guarded([&] { *out = copy_string(qmind::qlc::emit_openqasm(circuit->value)); });
}

int qm_circuit_qubit_count(const qm_circuit* circuit) {
    return circuit ? circuit->value.qubit_count : -1;
}

int qm_circuit_gate_count(const qm_circuit* circuit) {
    return circuit ? qmind::qlc::gate_count(circuit->value) : -1;
}

void qm_circuit_free(qm_circuit* circuit) { delete circuit; }

/* ---- simulation ---- */

qm_status qm_circuit_run(const qm_circuit* circuit, uint64_t shots, uint64_t seed,
                         qm_histogram** out) {
    if (!circuit || !out) return bad_argument("null argument to qm_circuit_run");
    return guarded([&] {
        *out = new qm_histogram{qmind::qsim::run_circuit(circuit->value, shots, seed)};
    });
}

qm_status qm_circuit_probabilities(const qm_circuit* circuit, char** json_out) {
    if (!circuit || !json_out) return bad_argument("null argument to qm_circuit_probabilities");
    return guarded([&] {
        nlohmann::json doc = nlohmann::json::object();
        for (const auto& [key, p] : qmind::qsim::measured_probabilities(circuit->value))
            doc[key] = p;
        *json_out = copy_string(doc.dump(2) + "\n");
    });
}

qm_status qm_histogram_from_json(const char* text, qm_histogram** out) {
    if (!text || !out) return bad_argument("null argument to qm_histogram_from_json");
    return guarded([&] { *out = new qm_histogram{qmind::qsim::histogram_from_json(text)}; });
}

qm_status qm_histogram_to_json(const qm_histogram* histogram, char** out) {
    if (!histogram || !out) return bad_argument("null argument to qm_histogram_to_json");
    return guarded([&] { *out = copy_string(qmind::qsim::histogram_to_json(histogram->value)); });
}

qm_status qm_histogram_to_csv(const qm_histogram* histogram, char** out) {
    if (!histogram || !out) return bad_argument("null argument to qm_histogram_to_csv");
    return guarded([&] { *out = copy_string(qmind::qsim::histogram_to_csv(histogram->value)); });
}

void qm_histogram_free(qm_histogram* histogram) { delete histogram; }

/* ---- sonification ---- */

qm_status qm_histogram_to_wav(const qm_histogram* histogram, const double* frequencies,
                              size_t frequency_count, double duration, double sample_rate,
                              const char* path) {
    if (!histogram || !path) return bad_argument("null argument to qm_histogram_to_wav");
    if (!frequencies && frequency_count > 0)
        return bad_argument("null frequency array with nonzero count");
    return guarded([&] {
        const std::vector<double> freqs =
            frequencies ? std::vector<double>(frequencies, frequencies + frequency_count)
                        : qmind::sonify::default_frequencies();
        const auto bank = qmind::sonify::histogram_to_bank(histogram->value, freqs);
        const auto audio = qmind::sonify::synthesize(bank, {duration, sample_rate});
        qmind::sonify::write_wav(audio, path);
    });
}

/* ---- EEG ---- */

qm_status qm_recording_from_csv_file(const char* path, qm_recording** out) {
    if (!path || !out) return bad_argument("null argument to qm_recording_from_csv_file");
    return guarded([&] { *out = new qm_recording{qmind::eeg::read_csv(path)}; });
}

qm_status qm_recording_from_synth_json(const char* spec_json, double duration, double rate,
                                       qm_recording** out) {
    if (!spec_json || !out) return bad_argument("null argument to qm_recording_from_synth_json");
    return guarded([&] {
        const auto spec = qmind::eeg::synth_spec_from_json(spec_json);
        *out = new qm_recording{qmind::eeg::synth_eeg(spec, duration, rate)};
    });
}

qm_status qm_recording_to_csv(const qm_recording* recording, char** out) {
    if (!recording || !out) return bad_argument("null argument to qm_recording_to_csv");
    return guarded([&] { *out = copy_string(qmind::eeg::to_csv(recording->value)); });
}

qm_status qm_recording_analyze(const qm_recording* recording, double t_start, double window,
                               char** report_json, qm_expression** expression) {
    if (!recording) return bad_argument("null argument to qm_recording_analyze");
    return guarded([&] {
        const auto report = qmind::eeg::build_expression(recording->value, t_start, window);
        if (report_json) *report_json = copy_string(qmind::eeg::report_to_json(report));
        if (expression)
            *expression =
                new qm_expression{qmind::boolexpr::cnf3_to_expression(report.expression)};
    });
}

void qm_recording_free(qm_recording* recording) { delete recording; }

/* ---- pipeline ---- */

qm_status qm_run_session(const qm_recording* recording, const char* config_json,
                         char** summary_json) {
    if (!recording || !config_json) return bad_argument("null argument to qm_run_session");
    return guarded([&] {
        const auto config = qmind::pipeline::config_from_json(config_json);
        const auto result = qmind::pipeline::run_session(recording->value, config);
        if (summary_json)
            *summary_json = copy_string(qmind::pipeline::session_summary_json(result, config));
    });
}

}  // extern "C"
