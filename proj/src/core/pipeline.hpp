#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/eeg.hpp"
#include "core/qlc.hpp"
#include "core/qsim.hpp"

namespace qmind::pipeline {

struct SessionConfig {
    double window = 1.0;  // s
    double hop = 1.0;     // s; defaults to window when absent from the config
    int iterations = 1;
    std::uint64_t shots = 5000;
    std::uint64_t seed = 0;
    std::vector<double> oscillator_frequencies;  // empty = defaults
    double sound_duration = 5.0;  // s
    double sample_rate = 44100.0; // Hz, audio
    std::string output_dir;       // falls back to $QMIND_OUT_DIR
    bool continue_on_error = false;
};

SessionConfig config_from_json(const std::string& text);
std::string config_to_json(const SessionConfig& config);
void validate(const SessionConfig& config);

struct LapseResult {
    int index = 0;
    double t_start = 0.0;
    eeg::AnalysisReport report;
    qlc::CompiledCircuit compiled;
    qsim::ShotHistogram histogram;
    std::vector<std::string> files;  // relative to the output directory
    bool failed = false;
    std::string error;
};

struct SessionResult {
    std::string output_dir;
    std::vector<LapseResult> lapses;
    std::string session_wav;  // relative path
    std::string summary;      // relative path
};

// Per lapse i (seed + i): analyze the window, compile, sample, sonify; write
// report.json, circuit.json, circuit.quil, histogram.json, histogram.csv and
// sound.wav under lapse_XXX/, then the concatenated session.wav and a
// summary.json. Byte-identical across runs for fixed inputs.
SessionResult run_session(const eeg::EegRecording& recording, const SessionConfig& config);

std::string session_summary_json(const SessionResult& result, const SessionConfig& config);

}  // namespace qmind::pipeline
