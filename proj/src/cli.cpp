#include "cera/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "cera/analytics.hpp"
#include "cera/hypergraph.hpp"
#include "cera/optcera.hpp"

namespace cera {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void cmd_code_table(std::ostream& out, int n, int q, int k) {
    const Code code = build_optcera_code(n, q, k);
    out << "t\tdigits\tcodeword\n";
    for (std::int64_t t = 0; t < code.params.M; ++t) {
        const QaryDigits d = qary_digits(t, q, n);
        out << t << '\t' << format_symbols(d.digits, q) << '\t'
            << format_word(code.words[static_cast<std::size_t>(t)], q) << '\n';
    }
}

void cmd_decode_demo(std::ostream& out, Scheme scheme, int n, int q, int factor,
                     std::span<const std::int64_t> transmitted) {
    const Code code = scheme == Scheme::optcera ? build_optcera_code(n, q, factor)
                                                : build_multipreamble_code(n, factor, q);
    const DetectedSets y = observe(code, transmitted);
    const CodeHypergraph h = build_hypergraph(code);
    const std::vector<std::int64_t> valid = decode(h, y);

    out << "scheme=" << scheme_name(scheme) << " n=" << n << " q=" << q
        << (scheme == Scheme::optcera ? " k=" : " a=") << factor << " M=" << code.params.M
        << '\n';
    out << "transmitted (" << transmitted.size() << "):";
    for (std::int64_t t : transmitted)
        out << ' ' << t << "=" << format_word(code.words[static_cast<std::size_t>(t)], q);
    out << '\n';
    for (int i = 0; i < n; ++i) {
        out << "Y_" << (i + 1) << " = {";
        bool first = true;
        for (Symbol s : y.per_subframe[static_cast<std::size_t>(i)]) {
            if (!first) out << ' ';
            out << s;
            first = false;
        }
        out << "}\n";
    }
    out << "valid (" << valid.size() << "):";
    for (std::int64_t t : valid)
        out << ' ' << t << "=" << format_word(code.words[static_cast<std::size_t>(t)], q);
    out << '\n';
    out << "inferred/transmitted = " << valid.size() << '/' << transmitted.size() << '\n';
}

void write_csv(std::ostream& out, std::span<const MetricsRow> rows) {
    out << "scheme,n,q,M,K,R,method,P_N,P_A,P_S,E_V,eta,iterations,seed,"
           "ci_P_S,ci_E_V,ci_eta\n";
    for (const MetricsRow& row : rows) {
        out << scheme_name(row.scheme) << ',' << row.n << ',' << row.q << ',' << row.M << ','
            << row.K << ',' << row.R << ',' << row.method << ',';
        out << (row.p_n ? fmt(*row.p_n) : "") << ',';
        out << (row.p_a ? fmt(*row.p_a) : "") << ',';
        out << fmt(row.p_s) << ',' << fmt(row.e_v) << ',' << fmt(row.eta) << ',';
        out << (row.iterations ? std::to_string(*row.iterations) : "") << ',';
        out << (row.seed ? std::to_string(*row.seed) : "") << ',';
        out << (row.ci_p_s ? fmt(*row.ci_p_s) : "") << ',';
        out << (row.ci_e_v ? fmt(*row.ci_e_v) : "") << ',';
        out << (row.ci_eta ? fmt(*row.ci_eta) : "") << '\n';
    }
}

void write_gnuplot(std::ostream& out, std::span<const MetricsRow> rows) {
    std::map<std::int64_t, std::vector<const MetricsRow*>> by_load;
    for (const MetricsRow& row : rows) by_load[row.K].push_back(&row);
    bool first_block = true;
    for (const auto& [load, block] : by_load) {
        if (!first_block) out << "\n\n";
        first_block = false;
        out << "# K=" << load << "\n";
        out << "# scheme method M P_S E_V eta\n";
        for (const MetricsRow* row : block)
            out << scheme_name(row->scheme) << ' ' << row->method << ' ' << row->M << ' '
                << fmt(row->p_s) << ' ' << fmt(row->e_v) << ' ' << fmt(row->eta) << '\n';
    }
}

void cmd_sweep(const ExperimentConfig& config, std::ostream& out, std::ostream& diagnostics) {
    const SweepResult result = sweep(config.spec);
    for (const std::string& warning : result.warnings)
        diagnostics << "warning: " << warning << '\n';

    if (config.out_path.empty()) {
        write_csv(out, result.rows);
    } else {
        std::ofstream file(config.out_path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open output file: " + config.out_path);
        write_csv(file, result.rows);
        if (!file) throw std::runtime_error("failed writing output file: " + config.out_path);
    }
    if (!config.gnuplot_path.empty()) {
        std::ofstream file(config.gnuplot_path, std::ios::binary);
        if (!file)
            throw std::runtime_error("cannot open gnuplot file: " + config.gnuplot_path);
        write_gnuplot(file, result.rows);
        if (!file)
            throw std::runtime_error("failed writing gnuplot file: " + config.gnuplot_path);
    }
}

namespace {

std::pair<int, int> parse_range(const std::string& text) {
    const auto sep = text.find("..");
    if (sep == std::string::npos) {
        const int v = std::stoi(text);
        return {v, v};
    }
    return {std::stoi(text.substr(0, sep)), std::stoi(text.substr(sep + 2))};
}

int env_thread_cap() {
    const char* raw = std::getenv("CERA_LAB_THREADS");
    if (raw == nullptr || *raw == '\0') return 0;
    const int v = std::atoi(raw);
    return v > 0 ? v : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Code-expanded random access lab: code construction, superframe decoding, "
                 "analytical model and Monte Carlo simulation"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file; command-line flags win");

    // code-table
    auto* table_cmd = app.add_subcommand("code-table", "Print the codeword construction table");
    int table_n = 2, table_q = 8, table_k = 1;
    table_cmd->add_option("--n", table_n, "RA subframes per superframe");
    table_cmd->add_option("--q", table_q, "available preambles");
    table_cmd->add_option("--k", table_k, "code size factor, M = k*q");

    // decode-demo
    auto* demo_cmd = app.add_subcommand("decode-demo",
                                        "Observe transmitted codewords and list the inferred set");
    std::string demo_scheme = "optcera";
    int demo_n = 2, demo_q = 8, demo_k = 2, demo_a = 4;
    std::vector<std::int64_t> demo_transmitted;
    demo_cmd->add_option("--scheme", demo_scheme, "optcera or multipreamble")
        ->check(CLI::IsMember({"optcera", "multipreamble"}));
    demo_cmd->add_option("--n", demo_n, "RA subframes per superframe");
    demo_cmd->add_option("--q", demo_q, "available preambles");
    demo_cmd->add_option("--k", demo_k, "optcera code size factor");
    demo_cmd->add_option("--a", demo_a, "multipreamble allowed preambles");
    demo_cmd->add_option("--transmitted", demo_transmitted, "codeword indices")
        ->required()
        ->delimiter(',');

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate a (scheme, M, K) grid to CSV");
    std::string sweep_scheme = "both";
    std::string k_range = "1..8";
    std::string a_range = "8..23";
    std::string mode = "both";
    ExperimentConfig config;
    sweep_cmd->add_option("--scheme", sweep_scheme, "optcera, multipreamble or both")
        ->check(CLI::IsMember({"optcera", "multipreamble", "both"}));
    sweep_cmd->add_option("--n", config.spec.n, "RA subframes per superframe");
    sweep_cmd->add_option("--q", config.spec.q, "available preambles");
    sweep_cmd->add_option("--k-range", k_range, "optcera k values, lo..hi");
    sweep_cmd->add_option("--a-range", a_range, "multipreamble a values, lo..hi");
    sweep_cmd->add_option("--K", config.spec.device_counts, "device loads")->delimiter(',');
    sweep_cmd->add_option("--R", config.spec.R, "uplink resources per superframe");
    sweep_cmd->add_option("--iters", config.spec.iterations, "Monte Carlo iterations per point");
    sweep_cmd->add_option("--seed", config.spec.seed, "master seed");
    sweep_cmd->add_option("--mode", mode, "analytical, simulate or both")
        ->check(CLI::IsMember({"analytical", "simulate", "both"}));
    sweep_cmd->add_option("--out", config.out_path, "CSV output path (default: stdout)");
    sweep_cmd->add_option("--gnuplot", config.gnuplot_path, "companion gnuplot data file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << e.what() << '\n';
        return 2;
    }

    try {
        if (table_cmd->parsed()) {
            cmd_code_table(out, table_n, table_q, table_k);
        } else if (demo_cmd->parsed()) {
            const Scheme scheme =
                demo_scheme == "optcera" ? Scheme::optcera : Scheme::multipreamble;
            const int factor = scheme == Scheme::optcera ? demo_k : demo_a;
            cmd_decode_demo(out, scheme, demo_n, demo_q, factor, demo_transmitted);
        } else if (sweep_cmd->parsed()) {
            config.spec.run_optcera = sweep_scheme != "multipreamble";
            config.spec.run_multipreamble = sweep_scheme != "optcera";
            std::tie(config.spec.k_lo, config.spec.k_hi) = parse_range(k_range);
            std::tie(config.spec.a_lo, config.spec.a_hi) = parse_range(a_range);
            config.spec.mode = mode == "analytical" ? SweepMode::analytical
                               : mode == "simulate" ? SweepMode::simulate
                                                    : SweepMode::both;
            config.spec.max_threads = env_thread_cap();
            cmd_sweep(config, out, err);
        }
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace cera
