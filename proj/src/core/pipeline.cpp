#include "core/pipeline.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "core/error.hpp"
#include "core/sonify.hpp"
#include "json.hpp"

namespace qmind::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

SessionConfig config_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        fail(errc::parse_error, std::string("bad config JSON: ") + e.what());
    }
    SessionConfig config;
    bool hop_given = false;
    try {
        for (const auto& [key, value] : doc.items()) {
            if (key == "window")
                config.window = value.get<double>();
            else if (key == "hop") {
                config.hop = value.get<double>();
                hop_given = true;
            } else if (key == "k")
                config.iterations = value.get<int>();
            else if (key == "shots")
                config.shots = value.get<std::uint64_t>();
            else if (key == "seed")
                config.seed = value.get<std::uint64_t>();
            else if (key == "oscillator_frequencies")
                config.oscillator_frequencies = value.get<std::vector<double>>();
            else if (key == "sound_duration")
                config.sound_duration = value.get<double>();
            else if (key == "sample_rate")
                config.sample_rate = value.get<double>();
            else if (key == "output_dir")
                config.output_dir = value.get<std::string>();
            else if (key == "continue_on_error")
                config.continue_on_error = value.get<bool>();
            else
                fail(errc::parse_error, "unknown config key '" + key + "'");
        }
    } catch (const json::exception& e) {
        fail(errc::parse_error, std::string("bad config JSON: ") + e.what());
    }
    if (!hop_given) config.hop = config.window;
    validate(config);
    return config;
}

std::string config_to_json(const SessionConfig& config) {
    json doc;
    doc["window"] = config.window;
    doc["hop"] = config.hop;
    doc["k"] = config.iterations;
    doc["shots"] = config.shots;
    doc["seed"] = config.seed;
    doc["oscillator_frequencies"] = config.oscillator_frequencies.empty()
                                        ? sonify::default_frequencies()
                                        : config.oscillator_frequencies;
    doc["sound_duration"] = config.sound_duration;
    doc["sample_rate"] = config.sample_rate;
    doc["output_dir"] = config.output_dir;
    doc["continue_on_error"] = config.continue_on_error;
    return doc.dump(2) + "\n";
}

void validate(const SessionConfig& config) {
    if (config.window < eeg::min_window_s)
        fail(errc::invalid_argument, "window must be at least " +
                                         std::to_string(eeg::min_window_s) + " s");
    if (config.hop <= 0.0) fail(errc::invalid_argument, "hop must be positive");
    if (config.iterations < 1) fail(errc::invalid_argument, "k must be >= 1");
    if (config.shots < 1) fail(errc::invalid_argument, "shots must be >= 1");
    if (config.sound_duration <= 0.0)
        fail(errc::invalid_argument, "sound duration must be positive");
    if (!config.oscillator_frequencies.empty() && config.oscillator_frequencies.size() != 8)
        fail(errc::invalid_argument, "need 8 oscillator frequencies, got " +
                                         std::to_string(config.oscillator_frequencies.size()));
}

namespace {

std::string lapse_dir_name(int index) {
    std::ostringstream out;
    out << "lapse_" << std::setw(3) << std::setfill('0') << index;
    return out.str();
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(errc::io_error, "cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out) fail(errc::io_error, "write failed for '" + path.string() + "'");
}

std::string resolve_output_dir(const SessionConfig& config) {
    if (!config.output_dir.empty()) return config.output_dir;
    if (const char* env = std::getenv("QMIND_OUT_DIR"); env && *env) return env;
    fail(errc::invalid_argument,
         "no output directory: set output_dir in the config or QMIND_OUT_DIR");
}

}  // namespace

SessionResult run_session(const eeg::EegRecording& recording, const SessionConfig& config) {
    validate(config);
    const std::vector<double>& freqs = config.oscillator_frequencies.empty()
                                           ? sonify::default_frequencies()
                                           : config.oscillator_frequencies;
    const double duration =
        static_cast<double>(recording.sample_count()) / recording.sample_rate;
    if (config.window > duration + 1e-9)
        fail(errc::invalid_argument, "recording shorter than one window");

    SessionResult result;
    result.output_dir = resolve_output_dir(config);
    const fs::path root(result.output_dir);
    std::error_code ec;
    fs::create_directories(root, ec);
    if (ec) fail(errc::io_error, "cannot create '" + root.string() + "': " + ec.message());

    sonify::AudioBuffer session_audio;
    session_audio.sample_rate = config.sample_rate;

    for (int i = 0;; ++i) {
        const double t = static_cast<double>(i) * config.hop;
        if (t + config.window > duration + 1e-9) break;
        LapseResult lapse;
        lapse.index = i;
        lapse.t_start = t;
        try {
            lapse.report = eeg::build_expression(recording, t, config.window);
            lapse.compiled = qlc::compile_grover(lapse.report.expression, config.iterations);
            lapse.histogram = qsim::run_circuit(lapse.compiled.circuit, config.shots,
                                                config.seed + static_cast<std::uint64_t>(i));
            const sonify::OscillatorBank bank = sonify::histogram_to_bank(lapse.histogram, freqs);
            const sonify::AudioBuffer audio =
                sonify::synthesize(bank, {config.sound_duration, config.sample_rate});

            const std::string dir = lapse_dir_name(i);
            fs::create_directories(root / dir, ec);
            if (ec) fail(errc::io_error, "cannot create '" + (root / dir).string() + "'");
            auto emit = [&](const std::string& name, const std::string& text) {
                write_text(root / dir / name, text);
                lapse.files.push_back(dir + "/" + name);
            };
            emit("report.json", eeg::report_to_json(lapse.report));
            emit("circuit.json", qsim::circuit_to_json(lapse.compiled.circuit));
            emit("circuit.quil", qlc::emit_quil(lapse.compiled.circuit));
            emit("histogram.json", qsim::histogram_to_json(lapse.histogram));
            emit("histogram.csv", qsim::histogram_to_csv(lapse.histogram));
            sonify::write_wav(audio, (root / dir / "sound.wav").string());
            lapse.files.push_back(dir + "/sound.wav");

            session_audio.samples.insert(session_audio.samples.end(), audio.samples.begin(),
                                         audio.samples.end());
        } catch (const error& e) {
            if (!config.continue_on_error)
                fail(e.code(), "lapse " + std::to_string(i) + ": " + e.what());
            lapse.failed = true;
            lapse.error = e.what();
            lapse.files.clear();
        }
        result.lapses.push_back(std::move(lapse));
    }
    if (result.lapses.empty())
        fail(errc::invalid_argument, "recording shorter than one window");

    if (!session_audio.samples.empty()) {
        sonify::write_wav(session_audio, (root / "session.wav").string());
        result.session_wav = "session.wav";
    }
    write_text(root / "summary.json", session_summary_json(result, config));
    result.summary = "summary.json";
    return result;
}

std::string session_summary_json(const SessionResult& result, const SessionConfig& config) {
    json lapses = json::array();
    for (const LapseResult& lapse : result.lapses) {
        json entry;
        entry["index"] = lapse.index;
        entry["t_start"] = lapse.t_start;
        if (lapse.failed) {
            entry["error"] = lapse.error;
        } else {
            entry["expression"] = boolexpr::format_cnf3(lapse.report.expression);
            entry["files"] = lapse.files;
        }
        lapses.push_back(std::move(entry));
    }
    json doc;
    doc["config"] = json::parse(config_to_json(config));
    doc["config"].erase("output_dir");
    doc["lapses"] = std::move(lapses);
    if (!result.session_wav.empty()) doc["session_wav"] = result.session_wav;
    return doc.dump(2) + "\n";
}

}  // namespace qmind::pipeline
