#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/qsim.hpp"

namespace qmind::sonify {

// Oscillators 1-3 fixed by design (55.0, 164.81, 329.63 Hz); 4-8 continue an
// A-rooted series and are configurable.
const std::vector<double>& default_frequencies();

struct Oscillator {
    double frequency = 0.0;  // Hz
    double amplitude = 0.0;  // [0, 1]
};

struct OscillatorBank {
    std::vector<Oscillator> oscillators;  // index i <-> measurement outcome i
};

struct SoundSpec {
    double duration = 5.0;        // s
    double sample_rate = 44100.0; // Hz
};

struct AudioBuffer {
    double sample_rate = 44100.0;
    std::vector<double> samples;  // mono, [-1, 1]
};

// amplitude_i = count_i / shots; frequencies must cover all 2^bits outcomes.
OscillatorBank histogram_to_bank(const qsim::ShotHistogram& histogram,
                                 const std::vector<double>& frequencies);

// s(t) = hann(t) · g · Σ amp_i · sin(2π f_i t), g chosen so max|s| = 0.9
// (silence stays silence).
AudioBuffer synthesize(const OscillatorBank& bank, const SoundSpec& spec);

// RIFF/WAVE, PCM 16-bit signed little-endian, mono.
std::vector<std::uint8_t> wav_bytes(const AudioBuffer& buffer);
void write_wav(const AudioBuffer& buffer, const std::string& path);

// Hann-windowed projection magnitude at each frequency, normalized to the
// strongest partial.
std::vector<double> measure_partials(const AudioBuffer& buffer,
                                     const std::vector<double>& frequencies);

}  // namespace qmind::sonify
