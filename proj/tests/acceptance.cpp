// Acceptance suite: one PASS/FAIL line per criterion, with the tolerance and
// time limit used. Exit status is nonzero if any criterion fails.
//
// Environment:
//   NPF_TEXT_CORPUS  file or directory of English text (default: gathered
//                    from /usr/share/doc copyright files and Perl .pod files)
//   NPF_MANZINI_DIR  directory holding sprot34.dat, etext99, rfc (optional)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "npf/baselines.hpp"
#include "npf/codebook.hpp"
#include "npf/container.hpp"
#include "npf/enumeration.hpp"
#include "npf/error.hpp"
#include "npf/pipeline.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace npf;

namespace {

using Clock = std::chrono::steady_clock;
using Bytes = std::vector<std::uint8_t>;

int failures = 0;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

enum class Verdict { pass, fail, skip };

void report(int id, const std::string& title, Verdict v, const std::string& detail, double secs, double limit) {
    const bool late = limit > 0 && secs > limit;
    if (late && v == Verdict::pass) v = Verdict::fail;
    if (v == Verdict::fail) ++failures;
    const char* tag = v == Verdict::pass ? "PASS" : v == Verdict::fail ? "FAIL" : "SKIP";
    std::printf("%s %d %s: %s [%.2f s", tag, id, title.c_str(), detail.c_str(), secs);
    if (limit > 0) std::printf(", limit %.0f s%s", limit, late ? ", EXCEEDED" : "");
    std::printf("]\n");
    std::fflush(stdout);
}

std::string fmt(double x, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

// ---------------------------------------------------------------- 1

void criterion_1() {
    const auto t0 = Clock::now();
    long checked_vectors = 0;
    std::string problem;
    for (int k = 1; k <= 5 && problem.empty(); ++k) {
        for (int d = 1; d <= 5 && problem.empty(); ++d) {
            const PsiTable table(k, d);
            std::uint64_t total = 0;
            for (int v = d; v <= k * d; ++v) {
                const auto list = oracle::sorted_vectors(k, d, v);
                const std::uint64_t count = psi(k, d, v);
                total += count;
                if (count != list.size() || table.count(v) != count) {
                    problem = "count mismatch at k=" + std::to_string(k) + " d=" + std::to_string(d) +
                              " v=" + std::to_string(v);
                    break;
                }
                for (std::size_t i = 0; i < list.size(); ++i) {
                    LengthVector vec(d);
                    for (int j = 0; j < d; ++j) vec[j] = std::uint8_t(list[i][std::size_t(j)]);
                    const bool ok = vector_to_index(vec, table).value == i &&
                                    index_to_vector(table, v, Rank{i}) == vec;
                    ++checked_vectors;
                    if (!ok) {
                        problem = "rank/unrank mismatch at k=" + std::to_string(k) + " d=" + std::to_string(d);
                        break;
                    }
                }
                if (!problem.empty()) break;
            }
            if (problem.empty() && total != oracle::ipow(std::uint64_t(k), d))
                problem = "sum over v != k^d at k=" + std::to_string(k) + " d=" + std::to_string(d);
        }
    }
    report(1, "enumeration oracle equivalence (k,d <= 5)", problem.empty() ? Verdict::pass : Verdict::fail,
           problem.empty() ? "25 configurations, " + std::to_string(checked_vectors) + " vectors, exact" : problem,
           seconds_since(t0), 10);
}

// ---------------------------------------------------------------- 2

void criterion_2() {
    const auto t0 = Clock::now();
    std::vector<std::string> bad;
    std::ostringstream seen;
    auto expect = [&](const std::string& what, std::uint64_t got, std::uint64_t want) {
        seen << what << "=" << got << (got == want ? "" : " (expected " + std::to_string(want) + ")") << "; ";
        if (got != want) bad.push_back(what);
    };
    expect("psi(3,3,6)", psi(3, 3, 6), 7);
    expect("psi(3,3,5)", psi(3, 3, 5), 6);
    const PsiTable t33(3, 3);
    expect("index<2,2,2>", vector_to_index({2, 2, 2}, t33).value, 3);
    expect("index<3,1,1>", vector_to_index({3, 1, 1}, t33).value, 5);
    expect("psi(7,6,15)", psi(7, 6, 15), 1875);
    report(2, "worked examples, exact", bad.empty() ? Verdict::pass : Verdict::fail, seen.str(), seconds_since(t0),
           0);
}

// ---------------------------------------------------------------- 3

std::string bit_string(const BitBuffer& b) {
    std::string s;
    for (std::uint64_t i = 0; i < b.bit_count; ++i) s += char('0' + ((b.bytes[i / 8] >> (7 - i % 8)) & 1));
    return s;
}

void criterion_3() {
    const auto t0 = Clock::now();
    const std::string word = "NONPREFIXFREE";
    const Bytes text(word.begin(), word.end());
    const std::vector<std::uint8_t> want_lengths{2, 2, 2, 3, 1, 1, 2, 2, 3, 2, 1, 1, 1};

    const Codebook reference({'E', 'R', 'F', 'N', 'I', 'O', 'P', 'X'});
    const auto enc = encode_symbols(text, reference);
    const bool reference_ok = bit_string(enc.bits) == "01110100010001000100100" && enc.lengths == want_lengths;

    // The library orders ties by byte value (F before R), which swaps the
    // lengths of F and R relative to the reference assignment but keeps the code-length
    // profile and the 23-bit total.
    const Codebook own = build_codebook(count_bytes(text));
    const auto own_enc = encode_symbols(text, own);
    std::vector<int> profile_ref, profile_own;
    for (auto s : reference.alphabet()) profile_ref.push_back(reference.length_of(s));
    for (auto s : own.alphabet()) profile_own.push_back(own.length_of(s));
    auto sorted = [](std::vector<std::uint8_t> v) { return std::sort(v.begin(), v.end()), v; };
    const bool own_ok = own_enc.bits.bit_count == 23 && profile_ref == profile_own &&
                        sorted(own_enc.lengths) == sorted(want_lengths);

    report(3, "golden codeword bits", reference_ok && own_ok ? Verdict::pass : Verdict::fail,
           "reference assignment bits=" + bit_string(enc.bits) + (reference_ok ? " lengths exact" : " MISMATCH") +
               "; library tie-break total=" + std::to_string(own_enc.bits.bit_count) + " bits, length profile " +
               (own_ok ? "equal" : "DIFFERENT"),
           seconds_since(t0), 0);
}

// ---------------------------------------------------------------- 4

Bytes random_input(std::mt19937_64& rng, bool& skewed, int& sigma) {
    std::size_t n = 0;
    if (rng() % 50 != 0) n = std::size_t(std::exp(std::uniform_real_distribution<double>(0, std::log(1e5))(rng)));
    n = std::min<std::size_t>(n, 100000);
    sigma = 1 + int(rng() % 256);
    skewed = rng() % 2 == 0;

    std::vector<std::uint8_t> symbols(256);
    for (int i = 0; i < 256; ++i) symbols[std::size_t(i)] = std::uint8_t(i);
    std::shuffle(symbols.begin(), symbols.end(), rng);
    symbols.resize(std::size_t(sigma));

    std::vector<double> w(std::size_t(sigma), 1.0);
    if (skewed) {
        const double s = std::uniform_real_distribution<double>(0.5, 2.5)(rng);
        for (int i = 0; i < sigma; ++i) w[std::size_t(i)] = 1.0 / std::pow(i + 1.0, s);
    }
    std::discrete_distribution<int> pick(w.begin(), w.end());
    Bytes t(n);
    for (auto& b : t) b = symbols[std::size_t(pick(rng))];
    return t;
}

void criterion_4() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(20260401);
    const int ds[] = {1, 2, 4, 6, 16};
    long runs = 0, ok = 0, symbols = 0, skewed_inputs = 0;
    std::set<int> sigmas;
    std::string first_problem;
    for (int i = 0; i < 10000; ++i) {
        bool skewed = false;
        int sigma = 0;
        const Bytes text = random_input(rng, skewed, sigma);
        skewed_inputs += skewed;
        sigmas.insert(sigma);
        symbols += long(text.size());
        for (int d : ds) {
            ++runs;
            try {
                const Container c = encode(text, {.d = d});
                const bool whole = decode(parse(serialize(c))) == text;
                const SplitParts parts = split(c);
                const Container joined = join(parse(serialize(parts.codewords)), parse(serialize(parts.boundaries)));
                const bool halves = decode(joined) == text;
                if (whole && halves) {
                    ++ok;
                    continue;
                }
            } catch (const std::exception& e) {
                if (first_problem.empty()) first_problem = e.what();
            }
            if (first_problem.empty())
                first_problem = "mismatch at input " + std::to_string(i) + " d=" + std::to_string(d);
        }
    }
    std::string detail = std::to_string(ok) + "/" + std::to_string(runs) +
                         " round trips exact (single file and split halves); 10000 inputs, " +
                         std::to_string(symbols) + " symbols, " + std::to_string(skewed_inputs) + " skewed, " +
                         std::to_string(sigmas.size()) + " distinct alphabet sizes";
    if (!first_problem.empty()) detail += "; first problem: " + first_problem;
    report(4, "lossless round trip, d in {1,2,4,6,16}", ok == runs ? Verdict::pass : Verdict::fail, detail,
           seconds_since(t0), 300);
}

// ---------------------------------------------------------------- 5, 6

Bytes gather_corpus(std::string& origin) {
    Bytes out;
    auto append_files = [&](std::vector<fs::path> files) {
        std::sort(files.begin(), files.end());
        std::set<std::pair<std::uint32_t, std::uintmax_t>> seen;
        int used = 0;
        for (const auto& f : files) {
            Bytes data;
            try {
                data = read_file(f);
            } catch (const Error&) {
                continue;
            }
            if (!seen.insert({crc32_of(data), data.size()}).second) continue;
            out.insert(out.end(), data.begin(), data.end());
            ++used;
        }
        return used;
    };
    auto walk = [](const fs::path& root, auto&& keep) {
        std::vector<fs::path> files;
        std::error_code ec;
        if (!fs::is_directory(root, ec)) return files;
        for (auto it = fs::recursive_directory_iterator(root, fs::directory_options::skip_permission_denied, ec);
             it != fs::recursive_directory_iterator(); it.increment(ec)) {
            if (ec) break;
            if (it->is_regular_file(ec) && !it->is_symlink(ec) && keep(it->path())) files.push_back(it->path());
        }
        return files;
    };

    if (const char* env = std::getenv("NPF_TEXT_CORPUS")) {
        const fs::path p(env);
        if (fs::is_directory(p)) {
            const int used = append_files(walk(p, [](const fs::path&) { return true; }));
            origin = std::string(env) + " (" + std::to_string(used) + " files)";
        } else {
            out = read_file(p);
            origin = env;
        }
        return out;
    }
    const int a = append_files(walk("/usr/share/doc", [](const fs::path& f) { return f.filename() == "copyright"; }));
    const int b = append_files(walk("/usr/share/perl", [](const fs::path& f) { return f.extension() == ".pod"; }));
    origin = "system docs: " + std::to_string(a) + " copyright files + " + std::to_string(b) + " .pod files";
    return out;
}

struct TextRun {
    bool ready = false;
    std::string why;
    std::size_t n = 0;
    double h0 = 0;
    std::map<int, StreamBreakdown> by_d;
    double seconds = 0;
};

TextRun run_text() {
    const auto t0 = Clock::now();
    TextRun r;
    std::string origin;
    const Bytes text = gather_corpus(origin);
    r.n = text.size();
    if (text.size() < 5'000'000) {
        r.why = "corpus too small: " + std::to_string(text.size()) + " bytes from " + origin +
                " (set NPF_TEXT_CORPUS to >= 5 MB of text)";
        r.seconds = seconds_since(t0);
        return r;
    }
    std::printf("     corpus: %zu bytes from %s\n", text.size(), origin.c_str());
    r.h0 = baselines::order0_entropy(text);
    for (int d : {2, 4, 6}) {
        const Container c = encode(text, {.d = d});
        if (decode(c) != text) {
            r.why = "round trip failed at d=" + std::to_string(d);
            r.seconds = seconds_since(t0);
            return r;
        }
        r.by_d[d] = stream_breakdown(c);
    }
    r.ready = true;
    r.seconds = seconds_since(t0);
    return r;
}

void criterion_5(const TextRun& r) {
    if (!r.ready) {
        report(5, "entropy approach on text", Verdict::fail, r.why, r.seconds, 120);
        return;
    }
    const double t2 = r.by_d.at(2).total_bps, t4 = r.by_d.at(4).total_bps, t6 = r.by_d.at(6).total_bps;
    const double gap = t6 - r.h0;
    const bool within = gap <= 0.15;
    const bool monotone = t6 <= t4 && t4 <= t2;
    report(5, "entropy approach on text", within && monotone ? Verdict::pass : Verdict::fail,
           "H0=" + fmt(r.h0) + " total bps d=2/4/6 = " + fmt(t2) + "/" + fmt(t4) + "/" + fmt(t6) +
               "; d=6 minus H0 = " + fmt(gap) + " (bound <= 0.15)" + "; ordering d6<=d4<=d2 " +
               (monotone ? "holds" : "VIOLATED"),
           r.seconds, 120);
}

void criterion_6(const TextRun& r) {
    if (!r.ready) {
        report(6, "stream trend on text", Verdict::fail, r.why, r.seconds, 120);
        return;
    }
    const auto &a = r.by_d.at(2), &b = r.by_d.at(4), &c = r.by_d.at(6);
    const bool p_down = a.pstream_bps > b.pstream_bps && b.pstream_bps > c.pstream_bps;
    const bool q_up = a.qstream_bps < b.qstream_bps && b.qstream_bps < c.qstream_bps;
    const bool same_b = a.codeword_bits == b.codeword_bits && b.codeword_bits == c.codeword_bits;
    report(6, "stream trend on text", p_down && q_up && same_b ? Verdict::pass : Verdict::fail,
           "Pstream " + fmt(a.pstream_bps) + " > " + fmt(b.pstream_bps) + " > " + fmt(c.pstream_bps) +
               (p_down ? "" : " VIOLATED") + "; Qstream " + fmt(a.qstream_bps) + " < " + fmt(b.qstream_bps) +
               " < " + fmt(c.qstream_bps) + (q_up ? "" : " VIOLATED") + "; codeword stream " +
               fmt(a.codeword_stream_bps) + " bps at every d" + (same_b ? "" : " VIOLATED"),
           r.seconds, 120);
}

// ---------------------------------------------------------------- 7

void criterion_7() {
    const auto t0 = Clock::now();
    const char* dir = std::getenv("NPF_MANZINI_DIR");
    if (!dir) {
        report(7, "corpus reproduction (report only)", Verdict::skip, "NPF_MANZINI_DIR not set", seconds_since(t0),
               0);
        return;
    }
    const std::pair<const char*, double> rows[] = {{"sprot34.dat", 4.698}, {"etext99", 4.553}, {"rfc", 4.463}};
    std::string detail;
    int found = 0, within = 0;
    for (const auto& [name, target] : rows) {
        const fs::path p = fs::path(dir) / name;
        if (!fs::exists(p)) continue;
        ++found;
        const Bytes data = read_file(p);
        const double got = stream_breakdown(encode(data, {.d = 6})).total_bps;
        const double dev = got - target;
        within += std::abs(dev) <= 0.05;
        detail += std::string(name) + " " + fmt(got, 3) + " vs " + fmt(target, 3) + " (" + (dev >= 0 ? "+" : "") +
                  fmt(dev, 3) + (std::abs(dev) <= 0.05 ? ", within 0.05" : ", outside 0.05") + "); ";
    }
    if (found == 0) {
        report(7, "corpus reproduction (report only)", Verdict::skip, std::string("no corpus files in ") + dir,
               seconds_since(t0), 0);
        return;
    }
    // Deviations are reported, not failed on.
    report(7, "corpus reproduction (report only)", Verdict::pass,
           detail + std::to_string(within) + "/" + std::to_string(found) + " within +-0.05", seconds_since(t0), 0);
}

// ---------------------------------------------------------------- 8

void criterion_8() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(8);
    bool all = true;
    std::string detail;
    for (int a : {2, 16, 256}) {
        Bytes t(1'000'000);
        std::uniform_int_distribution<int> u(0, a - 1);
        for (auto& b : t) b = std::uint8_t(u(rng));
        const auto payload = baselines::adaptive_ac_encode(t);
        const bool exact = baselines::adaptive_ac_decode(payload, t.size()) == t;
        const double bps = 8.0 * double(payload.size()) / double(t.size());
        const double excess = bps - std::log2(double(a));
        const bool ok = exact && excess <= 0.05;
        all &= ok;
        detail += "A=" + std::to_string(a) + " " + fmt(bps) + " bps (+" + fmt(excess) + ")" +
                  (exact ? "" : " DECODE MISMATCH") + "; ";
    }
    report(8, "adaptive coder redundancy, n=10^6", all ? Verdict::pass : Verdict::fail,
           detail + "bound log2(A)+0.05", seconds_since(t0), 60);
}

// ---------------------------------------------------------------- 9

void criterion_9() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(9);
    struct Base {
        Bytes text;
        std::vector<Bytes> blobs; // full container, then the two split halves
    };
    std::vector<Base> bases;
    for (int i = 0; i < 8; ++i) {
        bool skewed = false;
        int sigma = 0;
        Bytes text;
        do text = random_input(rng, skewed, sigma);
        while (text.size() > 20000);
        const Container c = encode(text, {.d = std::array{1, 2, 4, 6, 16, 3, 6, 8}[std::size_t(i)]});
        const SplitParts parts = split(c);
        bases.push_back({text, {serialize(c), serialize(parts.codewords), serialize(parts.boundaries)}});
    }

    std::map<std::string, long> outcomes;
    long wrong = 0, foreign = 0;
    for (int m = 0; m < 10000; ++m) {
        const Base& base = bases[std::size_t(m) % bases.size()];
        const std::size_t target = rng() % 3;
        Bytes blob = base.blobs[target];
        const int edits = 1 + int(rng() % 4);
        for (int e = 0; e < edits && !blob.empty(); ++e) {
            const std::size_t at = rng() % blob.size();
            switch (rng() % 5) {
            case 0: blob[at] ^= std::uint8_t(1u << (rng() % 8)); break;
            case 1: blob[at] = std::uint8_t(rng()); break;
            case 2: blob.resize(at); break;
            case 3: blob.insert(blob.begin() + std::ptrdiff_t(at), std::uint8_t(rng())); break;
            default: blob.erase(blob.begin() + std::ptrdiff_t(at)); break;
            }
        }
        try {
            Container c = parse(blob);
            if (target == 1) c = join(c, parse(base.blobs[2]));
            if (target == 2) c = join(parse(base.blobs[1]), c);
            if (decode(c) == base.text)
                ++outcomes["correct decode"];
            else
                ++wrong;
        } catch (const Error& e) {
            ++outcomes[std::string(errc_name(e.code()))];
        } catch (...) {
            ++foreign;
        }
    }
    std::string detail = "10000 mutations: ";
    for (const auto& [what, count] : outcomes) detail += what + "=" + std::to_string(count) + " ";
    detail += "| wrong output=" + std::to_string(wrong) + ", unstructured exceptions=" + std::to_string(foreign);
    report(9, "container fuzzing", wrong == 0 && foreign == 0 ? Verdict::pass : Verdict::fail, detail,
           seconds_since(t0), 300);
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    const TextRun text = run_text();
    criterion_5(text);
    criterion_6(text);
    criterion_7();
    criterion_8();
    criterion_9();
    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
