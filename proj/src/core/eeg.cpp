#include "core/eeg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "core/error.hpp"
#include "core/qsim.hpp"
#include "json.hpp"

namespace qmind::eeg {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

int EegRecording::channel_index(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return static_cast<int>(i);
    fail(errc::invalid_argument, "no channel '" + label + "' in recording");
}

const char* band_name(Band band) {
    switch (band) {
        case Band::Delta: return "delta";
        case Band::Theta: return "theta";
        case Band::Alpha: return "alpha";
        case Band::Beta: return "beta";
    }
    return "?";
}

std::optional<Band> band_of(double freq_hz) {
    if (freq_hz < 0.0) fail(errc::invalid_argument, "negative frequency");
    if (freq_hz < 4.0) return Band::Delta;
    if (freq_hz < 8.0) return Band::Theta;
    if (freq_hz < 15.0) return Band::Alpha;
    if (freq_hz < max_freq_hz) return Band::Beta;
    return std::nullopt;
}

const std::array<ClauseRow, 3>& electrode_clause_map() {
    static const std::array<ClauseRow, 3> rows = {{
        {{"Fp1", "T3", "O1"}},
        {{"Fz", "Cz", "Oz"}},
        {{"Fp2", "T4", "O2"}},
    }};
    return rows;
}

// ---- CSV -------------------------------------------------------------------

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        while (!field.empty() && (field.back() == '\r' || field.back() == ' '))
            field.pop_back();
        while (!field.empty() && field.front() == ' ') field.erase(0, 1);
        fields.push_back(field);
    }
    return fields;
}

double parse_number(const std::string& text, std::size_t line_no) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size())
        fail(errc::parse_error,
             "line " + std::to_string(line_no) + ": non-numeric cell '" + text + "'");
    return v;
}

}  // namespace

EegRecording parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) fail(errc::parse_error, "empty CSV");
    const std::vector<std::string> header = split_fields(line);
    if (header.size() < 2 || header[0] != "time")
        fail(errc::parse_error, "header must start with 'time' and name at least one channel");

    EegRecording rec;
    rec.labels.assign(header.begin() + 1, header.end());
    std::set<std::string> seen;
    for (const auto& label : rec.labels) {
        if (label.empty()) fail(errc::parse_error, "empty channel label");
        if (!seen.insert(label).second)
            fail(errc::parse_error, "duplicate channel '" + label + "'");
    }
    rec.samples.assign(rec.labels.size(), {});

    std::vector<double> times;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> fields = split_fields(line);
        if (fields.size() != header.size())
            fail(errc::parse_error, "line " + std::to_string(line_no) + ": expected " +
                                        std::to_string(header.size()) + " fields, got " +
                                        std::to_string(fields.size()));
        times.push_back(parse_number(fields[0], line_no));
        for (std::size_t c = 0; c < rec.labels.size(); ++c)
            rec.samples[c].push_back(parse_number(fields[c + 1], line_no));
    }
    if (times.size() < 2) fail(errc::parse_error, "need at least two sample rows");

    double mean_dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
    if (mean_dt <= 0.0) fail(errc::parse_error, "timestamps must increase");
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double dt = times[i] - times[i - 1];
        if (std::abs(dt - mean_dt) > 0.01 * mean_dt)
            fail(errc::parse_error,
                 "non-uniform timestep near row " + std::to_string(i + 1));
    }
    rec.sample_rate = 1.0 / mean_dt;
    if (rec.sample_rate <= min_sample_rate_hz)
        fail(errc::invalid_argument,
             "sample rate " + std::to_string(rec.sample_rate) + " Hz too low; need > " +
                 std::to_string(min_sample_rate_hz));

    for (const auto& row : electrode_clause_map())
        for (const auto& e : row.electrodes)
            if (!seen.contains(e)) fail(errc::parse_error, "missing required electrode '" + e + "'");
    return rec;
}

EegRecording read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(errc::io_error, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str());
}

std::string to_csv(const EegRecording& recording) {
    std::ostringstream out;
    out.precision(10);
    out << "time";
    for (const auto& label : recording.labels) out << ',' << label;
    out << '\n';
    for (std::size_t i = 0; i < recording.sample_count(); ++i) {
        out << static_cast<double>(i) / recording.sample_rate;
        for (const auto& channel : recording.samples) out << ',' << channel[i];
        out << '\n';
    }
    return out.str();
}

// ---- spectra ---------------------------------------------------------------

namespace {

struct Window {
    std::size_t start;
    std::size_t length;
};

Window resolve_window(const EegRecording& rec, double t_start, double duration) {
    if (duration < min_window_s)
        fail(errc::invalid_argument, "window shorter than " + std::to_string(min_window_s) + " s");
    if (t_start < 0.0) fail(errc::invalid_argument, "window starts before the recording");
    const auto start = static_cast<std::size_t>(std::llround(t_start * rec.sample_rate));
    const auto length = static_cast<std::size_t>(std::llround(duration * rec.sample_rate));
    if (length < 2 || start + length > rec.sample_count())
        fail(errc::invalid_argument, "window extends past the recording");
    return {start, length};
}

double hann(std::size_t n, std::size_t length) {
    return 0.5 * (1.0 - std::cos(two_pi * static_cast<double>(n) /
                                 static_cast<double>(length - 1)));
}

}  // namespace

SpectralFrame power_spectrum(const EegRecording& recording, const std::string& channel,
                             double t_start, double duration) {
    const int c = recording.channel_index(channel);
    const Window w = resolve_window(recording, t_start, duration);
    const std::vector<double>& x = recording.samples[static_cast<std::size_t>(c)];

    std::vector<double> windowed(w.length);
    for (std::size_t n = 0; n < w.length; ++n) windowed[n] = x[w.start + n] * hann(n, w.length);

    const double bin_hz = recording.sample_rate / static_cast<double>(w.length);
    SpectralFrame frame;
    for (std::size_t k = 0; k <= w.length / 2; ++k) {
        const double freq = bin_hz * static_cast<double>(k);
        if (freq > max_freq_hz) break;
        double re = 0.0, im = 0.0;
        for (std::size_t n = 0; n < w.length; ++n) {
            const double phase = two_pi * static_cast<double>(k) * static_cast<double>(n) /
                                 static_cast<double>(w.length);
            re += windowed[n] * std::cos(phase);
            im -= windowed[n] * std::sin(phase);
        }
        frame.frequencies.push_back(freq);
        frame.power.push_back((re * re + im * im) / static_cast<double>(w.length));
    }
    return frame;
}

double dominant_frequency(const SpectralFrame& frame) {
    double best_power = 0.0;
    double best_freq = -1.0;
    for (std::size_t k = 0; k < frame.frequencies.size(); ++k) {
        if (frame.frequencies[k] <= 0.0) continue;
        if (frame.power[k] > best_power) {
            best_power = frame.power[k];
            best_freq = frame.frequencies[k];
        }
    }
    if (best_freq < 0.0 || best_power == 0.0)
        fail(errc::invalid_argument, "window has no spectral content");
    return best_freq;
}

// ---- clause construction ---------------------------------------------------

namespace {

double window_rms(const EegRecording& rec, int channel, const Window& w) {
    const std::vector<double>& x = rec.samples[static_cast<std::size_t>(channel)];
    double acc = 0.0;
    for (std::size_t n = 0; n < w.length; ++n) acc += x[w.start + n] * x[w.start + n];
    return std::sqrt(acc / static_cast<double>(w.length));
}

}  // namespace

std::pair<boolexpr::Clause, ClauseReport> build_clause(const EegRecording& recording,
                                                       double t_start, double duration,
                                                       int clause_index) {
    if (clause_index < 0 || clause_index >= 3)
        fail(errc::invalid_argument, "clause index out of range");
    const ClauseRow& row = electrode_clause_map()[static_cast<std::size_t>(clause_index)];
    const Window w = resolve_window(recording, t_start, duration);

    std::array<int, 3> order = {0, 1, 2};
    std::array<double, 3> rms{};
    for (int col = 0; col < 3; ++col)
        rms[static_cast<std::size_t>(col)] =
            window_rms(recording, recording.channel_index(row.electrodes[static_cast<std::size_t>(col)]), w);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return rms[static_cast<std::size_t>(a)] > rms[static_cast<std::size_t>(b)]; });

    ClauseReport report;
    std::array<boolexpr::Literal, 2> literals;
    for (int rank = 0; rank < 2; ++rank) {
        const int col = order[static_cast<std::size_t>(rank)];
        const std::string& electrode = row.electrodes[static_cast<std::size_t>(col)];
        const double freq =
            dominant_frequency(power_spectrum(recording, electrode, t_start, duration));
        SelectedElectrode sel;
        sel.electrode = electrode;
        sel.variable = static_cast<char>('A' + col);
        sel.frequency = freq;
        sel.rms = rms[static_cast<std::size_t>(col)];
        sel.out_of_band = freq >= max_freq_hz;
        sel.positive = !sel.out_of_band && freq >= 15.0;
        report.selected[static_cast<std::size_t>(rank)] = sel;
        literals[static_cast<std::size_t>(rank)] = {sel.variable, !sel.positive};
    }
    return {boolexpr::Clause{literals[0], literals[1]}, report};
}

AnalysisReport build_expression(const EegRecording& recording, double t_start, double duration) {
    AnalysisReport report;
    report.t_start = t_start;
    report.duration = duration;
    for (int i = 0; i < 3; ++i) {
        auto [clause, fragment] = build_clause(recording, t_start, duration, i);
        report.expression.clauses[static_cast<std::size_t>(i)] = clause;
        report.clauses[static_cast<std::size_t>(i)] = fragment;
    }
    return report;
}

std::string report_to_json(const AnalysisReport& report) {
    using nlohmann::json;
    json clauses = json::array();
    for (std::size_t i = 0; i < 3; ++i) {
        const ClauseReport& cr = report.clauses[i];
        json selected = json::array();
        for (const SelectedElectrode& sel : cr.selected) {
            json s;
            s["electrode"] = sel.electrode;
            s["variable"] = std::string(1, sel.variable);
            s["frequency"] = sel.frequency;
            s["rms"] = sel.rms;
            s["positive"] = sel.positive;
            const auto band = sel.out_of_band ? std::nullopt : band_of(sel.frequency);
            s["band"] = band ? band_name(*band) : "out-of-band";
            if (sel.out_of_band) s["warning"] = "dominant frequency at or above 40 Hz";
            selected.push_back(std::move(s));
        }
        json c;
        c["clause"] = i + 1;
        c["selected"] = std::move(selected);
        c["text"] = boolexpr::format(boolexpr::cnf3_to_expression(report.expression)->children[i]);
        clauses.push_back(std::move(c));
    }
    json doc;
    doc["window"] = {{"t_start", report.t_start}, {"duration", report.duration}};
    doc["clauses"] = std::move(clauses);
    doc["expression"] = boolexpr::format_cnf3(report.expression);
    return doc.dump(2) + "\n";
}

// ---- synthesis -------------------------------------------------------------

EegRecording synth_eeg(const SynthSpec& spec, double duration, double rate) {
    if (spec.channels.empty()) fail(errc::invalid_argument, "no channels in synth spec");
    if (duration <= 0.0) fail(errc::invalid_argument, "duration must be positive");
    if (rate <= min_sample_rate_hz)
        fail(errc::invalid_argument, "sample rate must exceed " +
                                         std::to_string(min_sample_rate_hz) + " Hz");
    if (spec.noise < 0.0) fail(errc::invalid_argument, "negative noise level");

    EegRecording rec;
    rec.sample_rate = rate;
    std::set<std::string> seen;
    for (const auto& ch : spec.channels) {
        if (ch.label.empty()) fail(errc::invalid_argument, "empty channel label");
        if (!seen.insert(ch.label).second)
            fail(errc::invalid_argument, "duplicate channel '" + ch.label + "'");
        for (const auto& [freq, amp] : ch.tones) {
            if (freq <= 0.0 || freq >= rate / 2.0)
                fail(errc::invalid_argument,
                     "tone at " + std::to_string(freq) + " Hz aliases at rate " +
                         std::to_string(rate));
            if (amp < 0.0) fail(errc::invalid_argument, "negative tone amplitude");
        }
        rec.labels.push_back(ch.label);
    }

    const auto count = static_cast<std::size_t>(std::llround(duration * rate));
    std::mt19937_64 rng(qsim::mix64(spec.seed));
    for (const auto& ch : spec.channels) {
        std::vector<double> x(count, 0.0);
        for (std::size_t n = 0; n < count; ++n) {
            const double t = static_cast<double>(n) / rate;
            for (const auto& [freq, amp] : ch.tones) x[n] += amp * std::sin(two_pi * freq * t);
            if (spec.noise > 0.0) {
                const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
                x[n] += spec.noise * (2.0 * u - 1.0);
            }
        }
        rec.samples.push_back(std::move(x));
    }
    return rec;
}

SynthSpec synth_spec_from_json(const std::string& text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        fail(errc::parse_error, std::string("bad synth spec JSON: ") + e.what());
    }
    try {
        SynthSpec spec;
        for (const auto& [key, value] : doc.items()) {
            if (key == "channels") {
                for (const auto& ch : value) {
                    ChannelSpec channel;
                    for (const auto& [ck, cv] : ch.items()) {
                        if (ck == "label")
                            channel.label = cv.get<std::string>();
                        else if (ck == "tones")
                            for (const auto& tone : cv)
                                channel.tones.emplace_back(tone.at(0).get<double>(),
                                                           tone.at(1).get<double>());
                        else
                            fail(errc::parse_error, "unknown channel key '" + ck + "'");
                    }
                    spec.channels.push_back(std::move(channel));
                }
            } else if (key == "noise") {
                spec.noise = value.get<double>();
            } else if (key == "seed") {
                spec.seed = value.get<std::uint64_t>();
            } else {
                fail(errc::parse_error, "unknown synth spec key '" + key + "'");
            }
        }
        return spec;
    } catch (const json::exception& e) {
        fail(errc::parse_error, std::string("bad synth spec JSON: ") + e.what());
    }
}

// ---- rhythm snapshots ------------------------------------------------------

boolexpr::ExprPtr encode_rhythm_snapshot(
    const std::vector<std::pair<std::string, std::string>>& prominent,
    const std::vector<std::string>& electrodes, bool disjoin_rhythms) {
    if (prominent.empty()) fail(errc::invalid_argument, "no rhythms given");
    if (electrodes.empty()) fail(errc::invalid_argument, "empty electrode subset");
    std::set<std::string> subset;
    for (const auto& e : electrodes)
        if (e.empty() || !subset.insert(e).second)
            fail(errc::invalid_argument, "electrode subset must be nonempty and unique");

    std::set<std::string> rhythms;
    std::vector<boolexpr::ExprPtr> terms;
    for (const auto& [rhythm, at] : prominent) {
        if (rhythm.empty() || !rhythms.insert(rhythm).second)
            fail(errc::invalid_argument, "rhythm names must be nonempty and unique");
        if (!subset.contains(at))
            fail(errc::invalid_argument,
                 "electrode '" + at + "' outside the subset for rhythm '" + rhythm + "'");
        std::vector<boolexpr::ExprPtr> factors;
        for (const auto& e : electrodes) {
            boolexpr::ExprPtr v = boolexpr::Expr::var(rhythm + "." + e);
            factors.push_back(e == at ? v : boolexpr::Expr::neg(v));
        }
        terms.push_back(boolexpr::Expr::conj(std::move(factors)));
    }
    return disjoin_rhythms ? boolexpr::Expr::disj(std::move(terms))
                           : boolexpr::Expr::conj(std::move(terms));
}

}  // namespace qmind::eeg
