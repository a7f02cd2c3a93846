#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/boolexpr.hpp"

namespace qmind::eeg {

inline constexpr double max_freq_hz = 40.0;
inline constexpr double min_sample_rate_hz = 80.0;
inline constexpr double min_window_s = 0.5;

struct EegRecording {
    std::vector<std::string> labels;
    double sample_rate = 0.0;                   // Hz
    std::vector<std::vector<double>> samples;   // per channel, microvolts

    std::size_t sample_count() const { return samples.empty() ? 0 : samples[0].size(); }
    int channel_index(const std::string& label) const;  // errors if absent
};

struct SpectralFrame {
    std::vector<double> frequencies;  // Hz, ascending, ceiling 40
    std::vector<double> power;
};

enum class Band { Delta, Theta, Alpha, Beta };

const char* band_name(Band band);

// Table-driven boundaries: delta <4, theta <8, alpha <15, beta <40.
// 40 Hz and above has no band.
std::optional<Band> band_of(double freq_hz);

// Clause rows: electrodes for columns A, B, C.
struct ClauseRow {
    std::array<std::string, 3> electrodes;
};
const std::array<ClauseRow, 3>& electrode_clause_map();

struct SelectedElectrode {
    std::string electrode;
    char variable = 'A';
    double frequency = 0.0;  // dominant bin center, Hz
    double rms = 0.0;        // selection metric over the window
    bool positive = false;   // literal polarity: frequency in [15, 40)
    bool out_of_band = false;
};

struct ClauseReport {
    std::array<SelectedElectrode, 2> selected;  // in rank order = literal order
};

struct AnalysisReport {
    double t_start = 0.0;
    double duration = 0.0;
    std::array<ClauseReport, 3> clauses;
    boolexpr::Cnf3Expression expression;
};

// Header "time,<label>,..."; uniform timestep within 1%; all nine mapped
// electrodes required.
EegRecording parse_csv(const std::string& text);
EegRecording read_csv(const std::string& path);
std::string to_csv(const EegRecording& recording);

// Hann-windowed direct DFT of [t_start, t_start+duration); one-sided bins up
// to 40 Hz, power |X_k|^2 / N.
SpectralFrame power_spectrum(const EegRecording& recording, const std::string& channel,
                             double t_start, double duration);

// Argmax bin center, DC excluded, ties to the lower frequency.
double dominant_frequency(const SpectralFrame& frame);

// Rank the row's three electrodes by RMS (ties by column order), keep the top
// two; literal polarity from each dominant frequency.
std::pair<boolexpr::Clause, ClauseReport> build_clause(const EegRecording& recording,
                                                       double t_start, double duration,
                                                       int clause_index);

AnalysisReport build_expression(const EegRecording& recording, double t_start, double duration);

std::string report_to_json(const AnalysisReport& report);

struct ChannelSpec {
    std::string label;
    std::vector<std::pair<double, double>> tones;  // (freq Hz, amplitude microvolts)
};

struct SynthSpec {
    std::vector<ChannelSpec> channels;
    double noise = 0.0;  // uniform amplitude, microvolts
    std::uint64_t seed = 0;
};

EegRecording synth_eeg(const SynthSpec& spec, double duration, double rate);
SynthSpec synth_spec_from_json(const std::string& text);

// One variable "<rhythm>.<electrode>" per rhythm/electrode pair: the prominent
// electrode positive, the rest negated; rhythm groups joined by AND (or OR).
boolexpr::ExprPtr encode_rhythm_snapshot(
    const std::vector<std::pair<std::string, std::string>>& prominent,
    const std::vector<std::string>& electrodes, bool disjoin_rhythms = false);

}  // namespace qmind::eeg
