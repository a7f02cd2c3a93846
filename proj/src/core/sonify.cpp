#include "core/sonify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "core/error.hpp"

namespace qmind::sonify {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double peak_target = 0.9;
constexpr double min_rate = 8000.0;

double hann(std::size_t n, std::size_t length) {
    if (length < 2) return 0.0;
    return 0.5 * (1.0 - std::cos(two_pi * static_cast<double>(n) /
                                 static_cast<double>(length - 1)));
}

}  // namespace

const std::vector<double>& default_frequencies() {
    static const std::vector<double> freqs = {55.0,   164.81, 329.63, 440.00,
                                              554.37, 659.26, 783.99, 880.00};
    return freqs;
}

OscillatorBank histogram_to_bank(const qsim::ShotHistogram& histogram,
                                 const std::vector<double>& frequencies) {
    if (histogram.shots < 1) fail(errc::invalid_argument, "histogram has zero shots");
    const int bits = qsim::histogram_bit_count(histogram);
    const std::size_t outcomes = std::size_t{1} << bits;
    if (frequencies.size() != outcomes)
        fail(errc::invalid_argument,
             std::to_string(outcomes) + " outcomes need " + std::to_string(outcomes) +
                 " oscillator frequencies, got " + std::to_string(frequencies.size()));

    OscillatorBank bank;
    bank.oscillators.resize(outcomes);
    for (std::size_t i = 0; i < outcomes; ++i) {
        bank.oscillators[i].frequency = frequencies[i];
        bank.oscillators[i].amplitude = 0.0;
    }
    for (const auto& [key, count] : histogram.counts) {
        std::size_t value = 0;
        for (char bit : key) value = value * 2 + (bit == '1' ? 1 : 0);
        bank.oscillators[value].amplitude =
            static_cast<double>(count) / static_cast<double>(histogram.shots);
    }
    return bank;
}

AudioBuffer synthesize(const OscillatorBank& bank, const SoundSpec& spec) {
    if (spec.duration <= 0.0) fail(errc::invalid_argument, "sound duration must be positive");
    if (spec.sample_rate < min_rate)
        fail(errc::invalid_argument,
             "sample rate must be at least " + std::to_string(min_rate) + " Hz");
    for (const auto& osc : bank.oscillators) {
        if (osc.frequency <= 0.0 || osc.frequency >= spec.sample_rate / 2.0)
            fail(errc::invalid_argument,
                 "oscillator at " + std::to_string(osc.frequency) + " Hz aliases at rate " +
                     std::to_string(spec.sample_rate));
        if (osc.amplitude < 0.0 || osc.amplitude > 1.0)
            fail(errc::invalid_argument, "oscillator amplitude outside [0, 1]");
    }

    AudioBuffer buffer;
    buffer.sample_rate = spec.sample_rate;
    const auto count = static_cast<std::size_t>(std::llround(spec.duration * spec.sample_rate));
    buffer.samples.resize(count);
    double peak = 0.0;
    for (std::size_t n = 0; n < count; ++n) {
        const double t = static_cast<double>(n) / spec.sample_rate;
        double sum = 0.0;
        for (const auto& osc : bank.oscillators)
            if (osc.amplitude > 0.0) sum += osc.amplitude * std::sin(two_pi * osc.frequency * t);
        buffer.samples[n] = hann(n, count) * sum;
        peak = std::max(peak, std::abs(buffer.samples[n]));
    }
    if (peak > 0.0) {
        const double gain = peak_target / peak;
        for (double& s : buffer.samples) s *= gain;
    }
    return buffer;
}

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i) & 0xff));
}

void put_tag(std::vector<std::uint8_t>& out, const char* tag) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(tag[i]));
}

}  // namespace

std::vector<std::uint8_t> wav_bytes(const AudioBuffer& buffer) {
    const auto rate = static_cast<std::uint32_t>(std::llround(buffer.sample_rate));
    const auto data_size = static_cast<std::uint32_t>(buffer.samples.size() * 2);
    std::vector<std::uint8_t> out;
    out.reserve(44 + data_size);
    put_tag(out, "RIFF");
    put_u32(out, 36 + data_size);
    put_tag(out, "WAVE");
    put_tag(out, "fmt ");
    put_u32(out, 16);
    put_u16(out, 1);  // PCM
    put_u16(out, 1);  // mono
    put_u32(out, rate);
    put_u32(out, rate * 2);  // byte rate
    put_u16(out, 2);         // block align
    put_u16(out, 16);        // bits per sample
    put_tag(out, "data");
    put_u32(out, data_size);
    for (double s : buffer.samples) {
        const long v = std::lround(std::clamp(s, -1.0, 1.0) * 32767.0);
        put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(
                         std::clamp(v, -32768L, 32767L))));
    }
    return out;
}

void write_wav(const AudioBuffer& buffer, const std::string& path) {
    const std::vector<std::uint8_t> bytes = wav_bytes(buffer);
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(errc::io_error, "cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) fail(errc::io_error, "write failed for '" + path + "'");
}

std::vector<double> measure_partials(const AudioBuffer& buffer,
                                     const std::vector<double>& frequencies) {
    const std::size_t count = buffer.samples.size();
    std::vector<double> magnitudes(frequencies.size(), 0.0);
    for (std::size_t i = 0; i < frequencies.size(); ++i) {
        double re = 0.0, im = 0.0;
        for (std::size_t n = 0; n < count; ++n) {
            const double phase =
                two_pi * frequencies[i] * static_cast<double>(n) / buffer.sample_rate;
            const double w = hann(n, count) * buffer.samples[n];
            re += w * std::cos(phase);
            im += w * std::sin(phase);
        }
        magnitudes[i] = std::hypot(re, im);
    }
    const double strongest = *std::max_element(magnitudes.begin(), magnitudes.end());
    if (strongest > 0.0)
        for (double& m : magnitudes) m /= strongest;
    return magnitudes;
}

}  // namespace qmind::sonify
