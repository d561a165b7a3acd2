#include "unruh/channel.hpp"
#include "unruh/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

// Thin argument-handling shell over the library in unruh/cli.hpp.
// Exit codes: 0 success, 1 verification failure (or unexpected runtime
// failure), 2 usage error (bad arguments, unwritable output, parameters
// outside the supported range).

namespace {

bool parse_grid(const std::string& text, unruh::cli::SweepConfig& config) {
    double start = 0, stop = 0;
    int points = 0;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &start, &stop, &points, &extra) != 3)
        return false;
    config.z_start = start;
    config.z_stop = stop;
    config.z_points = points;
    return true;
}

// Runs `body` against --out (or stdout when empty); returns the exit code.
template <typename Body>
int with_output(const std::string& path, Body body) {
    if (path.empty()) {
        body(std::cout);
        return 0;
    }
    std::ofstream out(path);
    if (!out) {
        std::cerr << "error: cannot open '" << path << "' for writing\n";
        return 2;
    }
    body(out);
    out.flush();
    if (!out) {
        std::cerr << "error: failed while writing '" << path << "'\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"truncated-Fock-space channel toolkit: capacity sweeps, sector block "
                 "dumps, verification suites, and the brute-force oracle comparison"};
    app.require_subcommand(1);

    // ---- capacity ----
    unruh::cli::SweepConfig config;
    std::string grid_text = "0:0.99:100";
    std::string capacity_out;
    auto* capacity = app.add_subcommand(
        "capacity", "sweep Q and Qp over a z grid and emit CSV rows");
    capacity->add_option("--d", config.d_list, "mode counts (default 2,3,5,10)")
        ->delimiter(',');
    capacity->add_option("--z-grid", grid_text, "grid as start:stop:points");
    capacity->add_option("--tol", config.tol, "certified series tail per row");
    capacity->add_option("--out", capacity_out, "output file (default stdout)");

    // ---- block ----
    int block_d = 2, block_k = 1;
    std::string block_beta, block_side = "A", block_out;
    auto* block = app.add_subcommand(
        "block", "dump one raw sector matrix of the channel output");
    block->add_option("--d", block_d, "number of modes")->required();
    block->add_option("--k", block_k, "sector label (1-based)")->required();
    block->add_option("--beta", block_beta, "amplitudes, e.g. 0.6+0j,0.8+0j")->required();
    block->add_option("--side", block_side, "A (output) or C (complement)")
        ->check(CLI::IsMember({"A", "C"}));
    block->add_option("--out", block_out, "output file (default stdout)");

    // ---- verify ----
    std::string suite = "all";
    std::uint64_t seed = unruh::cli::kDefaultSeed;
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option(
        "--suite", suite, "structure|degradability|covariance|oracle|capacity|all");
    verify->add_option("--seed", seed, "override the fixed default seed");

    // ---- oracle-compare ----
    int oc_d = 2;
    double oc_z = 0.5, oc_tail = 1e-8;
    std::string oc_beta;
    auto* oracle = app.add_subcommand(
        "oracle-compare",
        "compare closed-form sector blocks against the squeezer simulation");
    oracle->add_option("--d", oc_d, "number of modes");
    oracle->add_option("--z", oc_z, "acceleration parameter");
    oracle->add_option("--beta", oc_beta, "amplitudes (default uniform)");
    oracle->add_option("--tail", oc_tail, "certified truncation tail");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints help or the error message
        return code == 0 ? 0 : 2;
    }

    try {
        if (*capacity) {
            if (!parse_grid(grid_text, config)) {
                std::cerr << "error: --z-grid expects start:stop:points\n";
                return 2;
            }
            return with_output(capacity_out, [&](std::ostream& out) {
                unruh::cli::write_capacity_csv(config, out);
            });
        }
        if (*block) {
            const auto beta = unruh::cli::parse_beta(block_beta);
            if (beta.dim() != block_d)
                throw std::invalid_argument("block: --beta must list exactly --d amplitudes");
            const auto side = block_side == "A" ? unruh::channel::Side::A
                                                : unruh::channel::Side::C;
            const auto dump = unruh::cli::single_raw_block(block_d, block_k, beta, side);
            return with_output(block_out, [&](std::ostream& out) {
                unruh::cli::write_block_dump(dump, out);
            });
        }
        if (*verify) {
            const auto report = unruh::cli::run_verify(suite, seed);
            std::cout << unruh::cli::format_report(report);
            return report.all_passed() ? 0 : 1;
        }
        if (*oracle) {
            auto beta = [&] {
                if (!oc_beta.empty()) return unruh::cli::parse_beta(oc_beta);
                std::vector<std::complex<double>> amps(
                    static_cast<std::size_t>(oc_d),
                    {1.0 / std::sqrt(static_cast<double>(oc_d)), 0.0});
                return unruh::fock::QuditState(amps);
            }();
            if (beta.dim() != oc_d)
                throw std::invalid_argument(
                    "oracle-compare: --beta must list exactly --d amplitudes");
            const auto comparison =
                unruh::cli::compare_against_oracle(oc_d, oc_z, beta, oc_tail);
            std::cout << unruh::cli::format_oracle_comparison(comparison);
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const unruh::channel::TruncationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
