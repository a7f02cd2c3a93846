// Command-line front end over the qmind C API.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qmind/qmind.h"

namespace {

const char* status_code(qm_status st) {
    switch (st) {
        case QM_OK: return "ok";
        case QM_ERROR_INVALID_ARGUMENT: return "invalid_argument";
        case QM_ERROR_PARSE: return "parse";
        case QM_ERROR_IO: return "io";
        case QM_ERROR_UNSUPPORTED: return "unsupported";
        case QM_ERROR_INTERNAL: return "internal";
    }
    return "internal";
}

std::string json_escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

int report_failure(qm_status st, const std::string& message) {
    std::cerr << "{\"error\":{\"status\":" << static_cast<int>(st) << ",\"code\":\""
              << status_code(st) << "\",\"message\":\"" << json_escape(message) << "\"}}\n";
    return static_cast<int>(st);
}

int report_failure(qm_status st) { return report_failure(st, qm_last_error()); }

struct OwnedString {
    char* ptr = nullptr;
    ~OwnedString() { qm_string_free(ptr); }
    std::string str() const { return ptr ? ptr : ""; }
};

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream buf;
    buf << in.rdbuf();
    out = buf.str();
    return true;
}

bool write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << text;
    return static_cast<bool>(out);
}

int emit_result(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return 0;
    }
    if (!write_file(out_path, text))
        return report_failure(QM_ERROR_IO, "cannot write '" + out_path + "'");
    return 0;
}

bool looks_like_json(const std::string& text) {
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') continue;
        return c == '{';
    }
    return false;
}

int load_circuit(const std::string& path, qm_circuit** out) {
    std::string text;
    if (!read_file(path, text)) return report_failure(QM_ERROR_IO, "cannot read '" + path + "'");
    const qm_status st = looks_like_json(text) ? qm_circuit_from_json(text.c_str(), out)
                                               : qm_circuit_from_quil(text.c_str(), out);
    return st == QM_OK ? 0 : report_failure(st);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"EEG-to-quantum-circuit-to-sound toolkit"};
    app.require_subcommand(1);

    // analyze
    std::string an_csv, an_out;
    double an_t = 0.0, an_window = 1.0;
    auto* analyze = app.add_subcommand("analyze", "Build a logic expression from an EEG window");
    analyze->add_option("csv", an_csv, "EEG CSV file")->required();
    analyze->add_option("--t", an_t, "window start, seconds");
    analyze->add_option("--window", an_window, "window duration, seconds");
    analyze->add_option("-o,--out", an_out, "write the report here instead of stdout");

    // compile
    std::string co_expr, co_emit = "quil", co_out;
    int co_k = 1;
    bool co_transpile = false;
    auto* compile = app.add_subcommand("compile", "Compile an expression to a Grover circuit");
    compile->add_option("expression", co_expr, "e.g. \"(A|B)&(~B|~C)&(A|C)\"")->required();
    compile->add_option("--k", co_k, "Grover iterations");
    compile->add_option("--emit", co_emit, "quil, qasm or json")
        ->check(CLI::IsMember({"quil", "qasm", "json"}));
    compile->add_flag("--transpile", co_transpile, "rewrite onto the native set {RX, RZ, CZ}");
    compile->add_option("-o,--out", co_out, "output file instead of stdout");

    // simulate
    std::string si_file, si_out, si_csv;
    std::uint64_t si_shots = 5000, si_seed = 0;
    auto* simulate = app.add_subcommand("simulate", "Run a circuit and histogram the shots");
    simulate->add_option("circuit", si_file, "circuit JSON or Quil file")->required();
    simulate->add_option("--shots", si_shots, "number of shots");
    simulate->add_option("--seed", si_seed, "sampling seed");
    simulate->add_option("-o,--out", si_out, "histogram JSON file instead of stdout");
    simulate->add_option("--csv", si_csv, "also write a decimal-outcome CSV here");

    // sonify
    std::string so_hist, so_out = "sound.wav";
    std::vector<double> so_freqs;
    double so_duration = 5.0, so_rate = 44100.0;
    auto* sonify = app.add_subcommand("sonify", "Render a histogram as an additive-synthesis WAV");
    sonify->add_option("histogram", so_hist, "histogram JSON file")->required();
    sonify->add_option("--freqs", so_freqs, "8 oscillator frequencies, Hz")->delimiter(',');
    sonify->add_option("--duration", so_duration, "seconds");
    sonify->add_option("--rate", so_rate, "sample rate, Hz");
    sonify->add_option("-o,--out", so_out, "output WAV path");

    // run
    std::string ru_csv, ru_config, ru_outdir;
    auto* run = app.add_subcommand("run", "Full session: EEG windows to sounds");
    run->add_option("csv", ru_csv, "EEG CSV file")->required();
    run->add_option("--config", ru_config, "session config JSON file");
    run->add_option("--out-dir", ru_outdir,
                    "output directory (used when the config does not set one)");

    // parse
    std::string pa_file, pa_out;
    auto* parse = app.add_subcommand("parse", "Parse assembly and print normalized circuit JSON");
    parse->add_option("file", pa_file, "Quil file")->required();
    parse->add_option("-o,--out", pa_out, "output file instead of stdout");

    // synth
    std::string sy_spec, sy_out;
    double sy_duration = 12.0, sy_rate = 250.0;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic EEG CSV from a tone spec");
    synth->add_option("spec", sy_spec, "synth spec JSON file")->required();
    synth->add_option("--duration", sy_duration, "seconds");
    synth->add_option("--rate", sy_rate, "sample rate, Hz");
    synth->add_option("-o,--out", sy_out, "output CSV file instead of stdout");

    CLI11_PARSE(app, argc, argv);

    if (app.got_subcommand(analyze)) {
        qm_recording* rec = nullptr;
        qm_status st = qm_recording_from_csv_file(an_csv.c_str(), &rec);
        if (st != QM_OK) return report_failure(st);
        OwnedString report;
        st = qm_recording_analyze(rec, an_t, an_window, &report.ptr, nullptr);
        qm_recording_free(rec);
        if (st != QM_OK) return report_failure(st);
        return emit_result(report.str(), an_out);
    }

    if (app.got_subcommand(compile)) {
        qm_expression* expr = nullptr;
        qm_status st = qm_expression_parse(co_expr.c_str(), &expr);
        if (st != QM_OK) return report_failure(st);
        qm_circuit* circuit = nullptr;
        st = qm_compile(expr, co_k, &circuit);
        qm_expression_free(expr);
        if (st != QM_OK) return report_failure(st);
        if (co_transpile) {
            qm_circuit* native = nullptr;
            st = qm_circuit_transpile(circuit, &native);
            qm_circuit_free(circuit);
            if (st != QM_OK) return report_failure(st);
            circuit = native;
        }
        OwnedString text;
        if (co_emit == "quil")
            st = qm_circuit_to_quil(circuit, &text.ptr);
        else if (co_emit == "qasm")
            st = qm_circuit_to_openqasm(circuit, &text.ptr);
        else
            st = qm_circuit_to_json(circuit, &text.ptr);
        qm_circuit_free(circuit);
        if (st != QM_OK) return report_failure(st);
        return emit_result(text.str(), co_out);
    }

    if (app.got_subcommand(simulate)) {
        qm_circuit* circuit = nullptr;
        if (int rc = load_circuit(si_file, &circuit)) return rc;
        qm_histogram* hist = nullptr;
        qm_status st = qm_circuit_run(circuit, si_shots, si_seed, &hist);
        qm_circuit_free(circuit);
        if (st != QM_OK) return report_failure(st);
        OwnedString json;
        st = qm_histogram_to_json(hist, &json.ptr);
        if (st == QM_OK && !si_csv.empty()) {
            OwnedString csv;
            st = qm_histogram_to_csv(hist, &csv.ptr);
            if (st == QM_OK && !write_file(si_csv, csv.str()))
                st = QM_ERROR_IO;
        }
        qm_histogram_free(hist);
        if (st != QM_OK) return report_failure(st);
        return emit_result(json.str(), si_out);
    }

    if (app.got_subcommand(sonify)) {
        std::string text;
        if (!read_file(so_hist, text))
            return report_failure(QM_ERROR_IO, "cannot read '" + so_hist + "'");
        qm_histogram* hist = nullptr;
        qm_status st = qm_histogram_from_json(text.c_str(), &hist);
        if (st != QM_OK) return report_failure(st);
        st = qm_histogram_to_wav(hist, so_freqs.empty() ? nullptr : so_freqs.data(),
                                 so_freqs.size(), so_duration, so_rate, so_out.c_str());
        qm_histogram_free(hist);
        if (st != QM_OK) return report_failure(st);
        return 0;
    }

    if (app.got_subcommand(run)) {
        std::string config = "{}";
        if (!ru_config.empty() && !read_file(ru_config, config))
            return report_failure(QM_ERROR_IO, "cannot read '" + ru_config + "'");
        if (!ru_outdir.empty()) setenv("QMIND_OUT_DIR", ru_outdir.c_str(), 0);
        qm_recording* rec = nullptr;
        qm_status st = qm_recording_from_csv_file(ru_csv.c_str(), &rec);
        if (st != QM_OK) return report_failure(st);
        OwnedString summary;
        st = qm_run_session(rec, config.c_str(), &summary.ptr);
        qm_recording_free(rec);
        if (st != QM_OK) return report_failure(st);
        std::cout << summary.str();
        return 0;
    }

    if (app.got_subcommand(parse)) {
        qm_circuit* circuit = nullptr;
        if (int rc = load_circuit(pa_file, &circuit)) return rc;
        OwnedString json;
        const qm_status st = qm_circuit_to_json(circuit, &json.ptr);
        qm_circuit_free(circuit);
        if (st != QM_OK) return report_failure(st);
        return emit_result(json.str(), pa_out);
    }

    if (app.got_subcommand(synth)) {
        std::string spec;
        if (!read_file(sy_spec, spec))
            return report_failure(QM_ERROR_IO, "cannot read '" + sy_spec + "'");
        qm_recording* rec = nullptr;
        qm_status st = qm_recording_from_synth_json(spec.c_str(), sy_duration, sy_rate, &rec);
        if (st != QM_OK) return report_failure(st);
        OwnedString csv;
        st = qm_recording_to_csv(rec, &csv.ptr);
        qm_recording_free(rec);
        if (st != QM_OK) return report_failure(st);
        return emit_result(csv.str(), sy_out);
    }

    return 0;
}
