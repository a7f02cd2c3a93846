/* qmind: EEG-to-quantum-circuit-to-sound toolkit, C interface.
 *
 * Conventions: every function that can fail returns qm_status; on failure
 * qm_last_error() describes the problem (thread-local). Strings returned
 * through char** are heap-allocated and must be released with
 * qm_string_free(); objects returned through handle pointers must be released
 * with their matching *_free(). Output parameters are untouched on failure.
 */
#ifndef QMIND_H
#define QMIND_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(QM_BUILDING_SHARED)
#define QM_API __declspec(dllexport)
#else
#define QM_API __declspec(dllimport)
#endif
#else
#define QM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qm_status {
    QM_OK = 0,
    QM_ERROR_INVALID_ARGUMENT = 1,
    QM_ERROR_PARSE = 2,
    QM_ERROR_IO = 3,
    QM_ERROR_UNSUPPORTED = 4,
    QM_ERROR_INTERNAL = 5
} qm_status;

typedef struct qm_expression qm_expression;
typedef struct qm_circuit qm_circuit;
typedef struct qm_histogram qm_histogram;
typedef struct qm_recording qm_recording;

QM_API const char* qm_version(void);
QM_API const char* qm_last_error(void);
QM_API void qm_string_free(char* text);

/* ---- Boolean expressions ---- */

/* Grammar: identifiers; ~ ! or U+00AC; & or U+2227; | or U+2228; parens. */
QM_API qm_status qm_expression_parse(const char* text, qm_expression** out);
QM_API qm_status qm_expression_format(const qm_expression* expr, char** out);
/* JSON {"variables": [...], "satisfying": ["001", ...]}; variables sorted,
 * first variable in the rightmost bit position. */
QM_API qm_status qm_expression_satisfying(const qm_expression* expr, char** json_out);
QM_API void qm_expression_free(qm_expression* expr);

/* ---- Compilation ---- */

/* expr must be the three-clause two-literal form over A, B, C. */
QM_API qm_status qm_compile(const qm_expression* expr, int iterations, qm_circuit** out);
QM_API qm_status qm_circuit_transpile(const qm_circuit* circuit, qm_circuit** out);
QM_API qm_status qm_circuit_peephole(const qm_circuit* circuit, qm_circuit** out);
QM_API qm_status qm_circuit_from_json(const char* text, qm_circuit** out);
QM_API qm_status qm_circuit_to_json(const qm_circuit* circuit, char** out);
QM_API qm_status qm_circuit_from_quil(const char* text, qm_circuit** out);
QM_API qm_status qm_circuit_to_quil(const qm_circuit* circuit, char** out);
QM_API qm_status qm_circuit_to_openqasm(const qm_circuit* circuit, char** out);
QM_API int qm_circuit_qubit_count(const qm_circuit* circuit);
QM_API int qm_circuit_gate_count(const qm_circuit* circuit);
QM_API void qm_circuit_free(qm_circuit* circuit);

/* ---- Simulation ---- */

QM_API qm_status qm_circuit_run(const qm_circuit* circuit, uint64_t shots, uint64_t seed,
                                qm_histogram** out);
/* Exact measured distribution as JSON {"<bits>": probability, ...}. */
QM_API qm_status qm_circuit_probabilities(const qm_circuit* circuit, char** json_out);
QM_API qm_status qm_histogram_from_json(const char* text, qm_histogram** out);
QM_API qm_status qm_histogram_to_json(const qm_histogram* histogram, char** out);
QM_API qm_status qm_histogram_to_csv(const qm_histogram* histogram, char** out);
QM_API void qm_histogram_free(qm_histogram* histogram);

/* ---- Sonification ---- */

/* frequencies may be NULL with frequency_count 0 to use the defaults
 * (55.0, 164.81, 329.63, 440.00, 554.37, 659.26, 783.99, 880.00 Hz). */
QM_API qm_status qm_histogram_to_wav(const qm_histogram* histogram, const double* frequencies,
                                     size_t frequency_count, double duration,
                                     double sample_rate, const char* path);

/* ---- EEG ---- */

QM_API qm_status qm_recording_from_csv_file(const char* path, qm_recording** out);
/* spec_json: {"channels": [{"label": ..., "tones": [[hz, uv], ...]}, ...],
 * "noise": uv, "seed": n}. */
QM_API qm_status qm_recording_from_synth_json(const char* spec_json, double duration,
                                              double rate, qm_recording** out);
QM_API qm_status qm_recording_to_csv(const qm_recording* recording, char** out);
/* Either output may be NULL when not wanted. */
QM_API qm_status qm_recording_analyze(const qm_recording* recording, double t_start,
                                      double window, char** report_json,
                                      qm_expression** expression);
QM_API void qm_recording_free(qm_recording* recording);

/* ---- Full pipeline ---- */

/* config_json keys: window, hop, k, shots, seed, oscillator_frequencies,
 * sound_duration, sample_rate, output_dir, continue_on_error. Unknown keys
 * are rejected. Writes per-lapse artifacts plus session.wav and summary.json;
 * returns the summary document. */
QM_API qm_status qm_run_session(const qm_recording* recording, const char* config_json,
                                char** summary_json);

#ifdef __cplusplus
}
#endif

#endif /* QMIND_H */
