// npf: non-prefix-free block-enumerative compressor.
//
//   npf compress FILE [-o OUT] [--d N] [--split]
//   npf decompress FILE [FILE2] -o OUT
//   npf bench FILE... [--d 2,4,6]
//   npf stats FILE [--d N] [--context P]

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "npf/container.hpp"
#include "npf/error.hpp"
#include "npf/pipeline.hpp"
#include "npf/report.hpp"

namespace fs = std::filesystem;

namespace {

int run_compress(const std::string& input, std::string output, int d, bool split) {
    if (output.empty()) output = input + ".npf";
    const auto data = npf::read_file(input);
    const npf::Container c = npf::encode(data, {.d = d});
    npf::write_container(output, c, split);
    const auto s = npf::stream_breakdown(c);
    using npf::report::fixed;
    std::cout << "n=" << data.size() << " d=" << d << " sigma=" << c.sigma() << " k=" << c.k()
              << " total_bps=" << fixed(s.total_bps, 4) << " codeword_bps=" << fixed(s.codeword_stream_bps, 4)
              << " pstream_bps=" << fixed(s.pstream_bps, 4) << " qstream_bps=" << fixed(s.qstream_bps, 4) << "\n";
    if (split)
        std::cout << "wrote " << npf::codeword_part_path(output).string() << " and "
                  << npf::boundary_part_path(output).string() << "\n";
    return 0;
}

int run_decompress(const std::vector<std::string>& inputs, const std::string& output) {
    npf::Container c;
    if (inputs.size() == 2) {
        npf::Container a = npf::parse(npf::read_file(inputs[0]));
        npf::Container b = npf::parse(npf::read_file(inputs[1]));
        if (a.part == npf::Container::Part::boundaries) std::swap(a, b);
        c = npf::join(a, b);
    } else {
        c = npf::read_container(inputs.front());
    }
    npf::write_file(output, npf::decode(c));
    return 0;
}

int run_bench(const std::vector<std::string>& paths, const std::vector<int>& ds) {
    const long count = long(paths.size());
    std::vector<std::optional<npf::report::BenchRow>> rows(paths.size());
    std::vector<std::string> errors(paths.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
        try {
            const auto data = npf::read_file(paths[std::size_t(i)]);
            rows[std::size_t(i)] = npf::report::bench_bytes(paths[std::size_t(i)], data, ds);
        } catch (const std::exception& e) {
            errors[std::size_t(i)] = e.what();
        }
    }
    int status = 0;
    std::cout << npf::report::bench_csv_header(ds) << "\n";
    for (std::size_t i = 0; i < paths.size(); ++i) {
        if (rows[i]) {
            std::cout << npf::report::bench_csv_row(*rows[i]) << "\n";
        } else {
            std::cerr << "npf bench: " << paths[i] << ": " << errors[i] << "\n";
            status = 1;
        }
    }
    return status;
}

int run_stats(const std::string& path, int d, std::optional<int> context) {
    const auto data = npf::read_file(path);
    if (data.empty()) npf::fail(npf::Errc::empty_input, path + " is empty");
    const auto blocks = npf::analyze_blocks(data, d);
    const auto rows = npf::report::block_histograms(blocks, context);
    std::cout << npf::report::histogram_csv(rows);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Non-prefix-free codes with block-enumerated codeword boundaries"};
    app.require_subcommand(1);

    std::string input, output;
    int d = 6;
    bool split = false;
    auto* compress = app.add_subcommand("compress", "Compress a file");
    compress->add_option("input", input, "File to compress")->required();
    compress->add_option("-o,--output", output, "Output container (default: INPUT.npf)");
    compress->add_option("--d", d, "Block size in symbols")->check(CLI::Range(1, 16));
    compress->add_flag("--split", split, "Write codewords (.npfb) and boundaries (.npfk) to separate files");

    std::vector<std::string> inputs;
    auto* decompress = app.add_subcommand("decompress", "Restore the original file");
    decompress->add_option("inputs", inputs, "Container, or the .npfb and .npfk halves")->required()->expected(1, 2);
    decompress->add_option("-o,--output", output, "Restored file")->required();

    std::vector<std::string> paths;
    std::vector<int> ds{2, 4, 6};
    auto* bench = app.add_subcommand("bench", "Compare bits/symbol against baselines (CSV)");
    bench->add_option("files", paths, "Input files")->required();
    bench->add_option("--d", ds, "Block sizes")->delimiter(',')->check(CLI::Range(1, 16));

    std::optional<int> context;
    auto* stats = app.add_subcommand("stats", "Inner-sum and rank histograms (CSV)");
    stats->add_option("input", input, "Input file")->required();
    stats->add_option("--d", d, "Block size in symbols")->check(CLI::Range(1, 16));
    stats->add_option("--context", context, "Also list the rank histogram for this inner sum");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*compress) return run_compress(input, output, d, split);
        if (*decompress) return run_decompress(inputs, output);
        if (*bench) return run_bench(paths, ds);
        if (*stats) return run_stats(input, d, context);
    } catch (const npf::Error& e) {
        std::cerr << "npf: " << e.what() << "\n";
        return e.code() == npf::Errc::contract ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "npf: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
