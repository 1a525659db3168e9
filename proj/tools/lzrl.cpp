// lzrl: generate adversarial strings, parse and encode texts, and measure
// greedy-versus-optimal encoded sizes.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>

#include "lzrl/analysis.hpp"
#include "lzrl/generators.hpp"
#include "lzrl/io.hpp"
#include "lzrl/optimal.hpp"
#include "lzrl/parser.hpp"

using namespace lzrl;

namespace {

// splitmix64: deterministic across platforms, unlike std distributions
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }
};

Text random_text(Rng& rng, std::size_t n, std::size_t sigma) {
    std::vector<Letter> letters(n);
    std::size_t cap = std::min<std::size_t>(sigma, n + 1);
    for (auto& c : letters) c = static_cast<Letter>(rng.below(cap));
    return Text(std::move(letters));
}

Codec codec_from_name(const std::string& name) {
    if (name == "gamma") return Codec::elias_gamma;
    if (name == "delta") return Codec::elias_delta;
    if (name == "levenshtein") return Codec::levenshtein;
    throw CLI::ValidationError("--codec", "unknown codec '" + name + "'");
}

CostModel model_from_flags(const std::string& codecs, const std::string& variant) {
    CostModel m;
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : codecs) {
        if (ch == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);
    if (parts.size() == 1) {
        m.distance_codec = m.length_codec = m.letter_codec = codec_from_name(parts[0]);
    } else if (parts.size() == 3) {
        m.distance_codec = codec_from_name(parts[0]);
        m.length_codec = codec_from_name(parts[1]);
        m.letter_codec = codec_from_name(parts[2]);
    } else {
        throw CLI::ValidationError("--codec", "expected one codec or d,l,c");
    }
    if (variant == "classical")
        m.variant = Variant::classical;
    else if (variant == "nonclassical")
        m.variant = Variant::nonclassical;
    else
        throw CLI::ValidationError("--variant", "expected classical or nonclassical");
    return m;
}

unsigned thread_budget() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("LZRL_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
    }
    return hw;
}

Parsing parse_for(const Text& s, Variant v) {
    return v == Variant::classical ? greedy_parse_classical(s) : greedy_parse_nonclassical(s);
}

void require_valid(const Text& s, const Parsing& p, const char* what) {
    if (auto viol = validate_parsing(s, p))
        throw Error(std::string(what) + " failed validation at phrase " +
                    std::to_string(viol->phrase_index) + ": " + viol->reason);
}

int cmd_gen(const std::string& family, std::uint64_t n, std::uint64_t sigma, std::uint64_t z,
            std::uint32_t forced_x, const std::string& out, bool bytes) {
    auto fam = family_from_name(family);
    if (!fam) throw InvalidParams("unknown family " + family);
    std::optional<std::uint32_t> x;
    if (forced_x) x = forced_x;
    GeneratedInstance inst = generate(*fam, n, sigma, z, x);

    Parsing w = witness_parse(inst);
    require_valid(inst.text, w, "witness parsing");

    write_text_file(out + ".txt", inst.text, bytes);
    std::ofstream side(out + ".json");
    side << instance_to_json(inst).dump(2) << '\n';
    std::printf("wrote %s.txt and %s.json (n=%llu sigma=%llu k=%llu ell=%llu)\n", out.c_str(),
                out.c_str(), (unsigned long long)inst.n, (unsigned long long)inst.sigma,
                (unsigned long long)inst.k, (unsigned long long)inst.ell);
    return 0;
}

int cmd_parse(const std::string& file, bool bytes, const std::string& variant,
              const std::string& out) {
    Text s = read_text_file(file, bytes);
    Variant v = variant == "nonclassical" ? Variant::nonclassical : Variant::classical;
    Parsing p = parse_for(s, v);
    require_valid(s, p, "greedy parsing");
    std::string dump = parsing_to_json(p).dump(2);
    if (out.empty()) {
        std::printf("%s\n", dump.c_str());
    } else {
        std::ofstream f(out);
        f << dump << '\n';
    }
    return 0;
}

int cmd_encode(const std::string& file, bool bytes, const std::string& codecs,
               const std::string& variant, const std::string& strategy,
               const std::string& out) {
    Text s = read_text_file(file, bytes);
    CostModel m = model_from_flags(codecs, variant);
    Parsing p;
    if (strategy == "greedy") {
        p = parse_for(s, m.variant);
    } else if (strategy == "optimal") {
        p = optimal_bits_parse(s, m).first;
    } else {
        throw CLI::ValidationError("--parse", "expected greedy or optimal");
    }
    require_valid(s, p, "parsing");
    write_encoded_file(out, p, m, s.n());
    std::printf("encoded %zu letters into %llu phrases, %llu payload bits\n", s.n(),
                (unsigned long long)p.z(), (unsigned long long)encode_parsing(p, m).size());
    return 0;
}

int cmd_decode(const std::string& file, const std::string& out, bool bytes) {
    auto [p, hdr] = read_encoded_file(file);
    Text s = reconstruct(p);
    if (s.n() != hdr.text_length)
        throw Error("decoded length disagrees with the header");
    write_text_file(out, s, bytes);
    std::printf("decoded %llu phrases into %zu letters\n", (unsigned long long)p.z(), s.n());
    return 0;
}

MeasureMode mode_from_name(const std::string& mode) {
    if (mode == "exact_opt") return MeasureMode::exact_opt;
    if (mode == "witness") return MeasureMode::witness;
    if (mode == "both") return MeasureMode::both;
    throw CLI::ValidationError("--mode", "expected exact_opt, witness or both");
}

int cmd_measure(const std::string& instance, const std::string& text_file, bool bytes,
                const std::string& codecs, std::string variant, const std::string& mode,
                const std::string& out, bool as_json) {
    Report r;
    if (!instance.empty()) {
        std::ifstream side(instance + ".json");
        if (!side) throw Error("cannot open " + instance + ".json");
        nlohmann::json j;
        side >> j;
        GeneratedInstance inst = instance_from_json(j);
        Text from_disk = read_text_file(instance + ".txt", bytes);
        if (!(from_disk == inst.text))
            throw Error("text file does not match the regenerated instance");
        if (variant.empty()) variant = variant_name(inst.variant);
        CostModel m = model_from_flags(codecs, variant);
        r = measure(inst, m, mode_from_name(mode));
    } else {
        if (variant.empty()) variant = "classical";
        CostModel m = model_from_flags(codecs, variant);
        Text s = read_text_file(text_file, bytes);
        r = measure(s, m, mode_from_name(mode));
    }
    std::string body = as_json ? report_to_json(r).dump(2)
                               : std::string(report_csv_header()) + "\n" + report_csv_row(r);
    if (out.empty()) {
        std::printf("%s\n", body.c_str());
    } else {
        std::ofstream f(out);
        f << body << '\n';
    }
    return 0;
}

int cmd_sweep(const std::string& family, std::vector<std::uint64_t> ns,
              const std::string& z_rule, std::uint64_t z_fixed, std::uint64_t sigma,
              std::uint32_t forced_x, const std::string& codecs, const std::string& variant,
              const std::string& mode, const std::string& out) {
    auto fam = family_from_name(family);
    if (!fam) throw InvalidParams("unknown family " + family);
    if (ns.empty()) throw InvalidParams("need at least one --n value");
    CostModel m = model_from_flags(codecs, variant);
    MeasureMode mm = mode_from_name(mode);

    struct Row {
        std::uint64_t n = 0;
        std::size_t order = 0;
        Report report;
    };
    std::vector<Row> rows(ns.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex err_mutex;
    std::string first_error;

    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= ns.size() || failed.load()) return;
            try {
                std::uint64_t n = ns[i];
                std::uint64_t z = z_fixed;
                if (z_rule == "log")
                    z = static_cast<std::uint64_t>(std::ceil(std::log2(double(n))));
                else if (z_rule == "sqrt")
                    z = static_cast<std::uint64_t>(std::ceil(std::sqrt(double(n))));
                else if (z_rule != "fixed")
                    throw InvalidParams("unknown z rule " + z_rule);
                std::optional<std::uint32_t> x;
                if (forced_x) x = forced_x;
                GeneratedInstance inst = generate(*fam, n, sigma, z, x);
                rows[i] = Row{n, i, measure(inst, m, mm)};
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!failed.exchange(true)) first_error = e.what();
            }
        }
    };
    unsigned threads = std::min<unsigned>(thread_budget(), static_cast<unsigned>(ns.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failed.load()) throw Error("sweep failed: " + first_error);

    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return a.n != b.n ? a.n < b.n : a.order < b.order;
    });

    std::ostream* os = &std::cout;
    std::ofstream f;
    if (!out.empty()) {
        f.open(out);
        if (!f) throw Error("cannot open " + out + " for writing");
        os = &f;
    }
    (*os) << report_csv_header() << '\n';
    for (const Row& row : rows) (*os) << report_csv_row(row.report) << '\n';
    if (!out.empty())
        std::printf("wrote %zu rows to %s\n", rows.size(), out.c_str());
    return 0;
}

int cmd_verify(std::uint64_t samples, std::uint64_t seed, std::uint64_t max_n,
               bool with_instances) {
    Rng rng(seed);
    CostModel gamma3 = CostModel::all(Codec::elias_gamma);
    std::uint64_t sigmas[] = {2, 4, 16, 64};
    std::uint64_t overlap_checked = 0;

    for (std::uint64_t i = 0; i < samples; ++i) {
        std::size_t n = 1 + rng.below(max_n);
        Text s = random_text(rng, n, sigmas[i % 4]);
        Parsing g = greedy_parse_classical(s);
        Parsing gn = greedy_parse_nonclassical(s);

        auto fail = [&](const std::string& what, const std::string& detail) {
            std::printf("FAIL %s sample=%llu n=%zu: %s\n", what.c_str(),
                        (unsigned long long)i, n, detail.c_str());
            return 1;
        };
        if (auto v = validate_parsing(s, g)) return fail("validate-classical", v->reason);
        if (auto v = validate_parsing(s, gn)) return fail("validate-nonclassical", v->reason);
        if (!(reconstruct(g) == s)) return fail("round-trip-classical", "mismatch");
        if (!(reconstruct(gn) == s)) return fail("round-trip-nonclassical", "mismatch");
        auto d1 = check_distinct_phrases(s, g);
        if (!d1.ok) return fail("distinct-phrases", d1.detail);
        auto d2 = check_distinct_phrases(s, gn);
        if (!d2.ok) return fail("distinct-extended-phrases", d2.detail);
        auto lp = check_long_phrases(g, s.sigma());
        if (!lp.ok) return fail("long-phrases", lp.detail);
        if (n <= 300) {
            auto [opt, bits] = optimal_bits_parse(s, gamma3);
            auto ov = check_overlap_bound(opt, g);
            if (!ov.ok) return fail("overlap-bound", ov.detail);
            ++overlap_checked;
        }
        if (g.z() != min_phrase_parse(s).z())
            return fail("greedy-phrase-minimality", "count mismatch");
    }
    std::printf("ok random corpus: %llu texts (overlap checked on %llu)\n",
                (unsigned long long)samples, (unsigned long long)overlap_checked);

    if (with_instances) {
        std::vector<GeneratedInstance> insts;
        insts.push_back(gen_gray_multi(2000, 4, 24));
        insts.push_back(gen_gray_binary(4096, 16));
        insts.push_back(gen_gray_multi_nc(2000, 4, 20));
        insts.push_back(gen_gray_binary_nc(4096, 16));
        insts.push_back(gen_steiner(1024, 1));
        insts.push_back(gen_steiner_nc(1024, 1));
        for (const auto& inst : insts) {
            Parsing g = parse_for(inst.text, inst.variant);
            StructureCheck sc = check_structure(inst, g);
            if (!sc.ok) {
                std::printf("FAIL structure %s: %s\n", family_name(inst.family),
                            sc.detail.c_str());
                return 1;
            }
            Parsing w = witness_parse(inst);
            auto ov = check_overlap_bound(w, g);
            if (!ov.ok) {
                std::printf("FAIL witness-overlap %s: %s\n", family_name(inst.family),
                            ov.detail.c_str());
                return 1;
            }
        }
        std::printf("ok generated instances: %zu families\n", insts.size());
    }
    std::printf("verify: all checks passed\n");
    return 0;
}

int cmd_selftest(bool quick) {
    const Codec codecs[] = {Codec::elias_gamma, Codec::elias_delta, Codec::levenshtein};
    std::uint64_t instances = 0, mismatches = 0;
    std::size_t max_len = quick ? 9 : 12;

    for (Codec c : codecs) {
        CostModel m = CostModel::all(c);
        for (std::size_t len = 2; len <= max_len; ++len) {
            for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << len); ++mask) {
                std::vector<Letter> letters(len);
                for (std::size_t i = 0; i < len; ++i) letters[i] = (mask >> i) & 1u;
                Text s(std::move(letters));
                ++instances;
                if (optimal_bits_parse(s, m).second != brute_force_optimal(s, m)) ++mismatches;
            }
        }
    }
    Rng rng(20260810);
    std::uint64_t randoms = quick ? 100 : 500;
    for (std::uint64_t i = 0; i < randoms; ++i) {
        std::size_t n = 1 + rng.below(14);
        Text s = random_text(rng, n, 1 + rng.below(4));
        for (Codec c : codecs) {
            CostModel m = CostModel::all(c, i % 2 ? Variant::nonclassical : Variant::classical);
            ++instances;
            if (optimal_bits_parse(s, m).second != brute_force_optimal(s, m)) ++mismatches;
        }
    }
    std::printf("optimal=oracle on %llu instances, %llu mismatches\n",
                (unsigned long long)instances, (unsigned long long)mismatches);
    return mismatches == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"greedy and bit-optimal LZ77 parsing laboratory"};
    app.require_subcommand(1);

    std::string family = "gray_binary", out, text_file, instance, variant = "classical";
    std::string codecs = "gamma", mode = "witness", z_rule = "fixed", strategy = "greedy";
    std::string parse_out;
    std::uint64_t n = 0, z = 0, sigma = 0, samples = 1000, seed = 42, max_n = 300;
    std::uint32_t forced_x = 0;
    std::vector<std::uint64_t> n_list;
    bool bytes = false, as_json = false, with_instances = false, quick = false;

    auto* gen = app.add_subcommand("gen", "generate an adversarial instance");
    gen->add_option("--family", family, "family name")->required();
    gen->add_option("--n", n, "text length")->required();
    gen->add_option("--z", z, "requested z");
    gen->add_option("--sigma", sigma, "alphabet size (gray_multi families)");
    gen->add_option("--x", forced_x, "forced recursion depth (steiner families)");
    gen->add_option("--out", out, "output prefix")->required();
    gen->add_flag("--bytes", bytes, "write raw bytes instead of decimal codes");

    auto* parse = app.add_subcommand("parse", "greedy-parse a text file to JSON");
    parse->add_option("file", text_file, "text file")->required();
    parse->add_flag("--bytes", bytes, "treat the file as raw bytes");
    parse->add_option("--variant", variant, "classical or nonclassical");
    parse->add_option("--out", parse_out, "output file (default stdout)");

    auto* encode = app.add_subcommand("encode", "encode a text file");
    encode->add_option("file", text_file, "text file")->required();
    encode->add_flag("--bytes", bytes, "treat the file as raw bytes");
    encode->add_option("--codec", codecs, "codec or d,l,c triple");
    encode->add_option("--variant", variant, "classical or nonclassical");
    encode->add_option("--parse", strategy, "greedy or optimal");
    encode->add_option("--out", out, "output file")->required();

    auto* decode = app.add_subcommand("decode", "decode an encoded file back to text");
    decode->add_option("file", text_file, "encoded file")->required();
    decode->add_option("--out", out, "output text file")->required();
    decode->add_flag("--bytes", bytes, "write raw bytes");

    auto* measure_cmd = app.add_subcommand("measure", "measure one instance or text");
    measure_cmd->add_option("--instance", instance, "instance prefix from gen");
    measure_cmd->add_option("--text", text_file, "plain text file");
    measure_cmd->add_flag("--bytes", bytes, "treat the file as raw bytes");
    measure_cmd->add_option("--codec", codecs, "codec or d,l,c triple");
    std::string measure_variant;
    measure_cmd->add_option("--variant", measure_variant,
                            "classical or nonclassical (defaults to the instance's variant)");
    measure_cmd->add_option("--mode", mode, "exact_opt, witness or both");
    measure_cmd->add_option("--out", out, "output file (default stdout)");
    measure_cmd->add_flag("--json", as_json, "emit the JSON mirror instead of CSV");

    auto* sweep = app.add_subcommand("sweep", "measure a family across sizes");
    sweep->add_option("--family", family, "family name")->required();
    sweep->add_option("--n", n_list, "text lengths")->required()->delimiter(',');
    sweep->add_option("--z-rule", z_rule, "fixed, log, or sqrt");
    sweep->add_option("--z", z, "z for --z-rule fixed");
    sweep->add_option("--sigma", sigma, "alphabet size (gray_multi families)");
    sweep->add_option("--x", forced_x, "forced depth (steiner families)");
    sweep->add_option("--codec", codecs, "codec or d,l,c triple");
    sweep->add_option("--variant", variant, "classical or nonclassical");
    sweep->add_option("--mode", mode, "exact_opt, witness or both");
    sweep->add_option("--out", out, "CSV output file (default stdout)");
    sweep->add_option("--seed", seed, "unused for deterministic families");

    auto* verify = app.add_subcommand("verify", "run the structural validators");
    verify->add_option("--samples", samples, "random texts to draw");
    verify->add_option("--seed", seed, "random seed");
    verify->add_option("--max-n", max_n, "maximum random text length");
    verify->add_flag("--with-instances", with_instances, "also check generated instances");

    auto* selftest = app.add_subcommand("selftest", "compare the optimal parser to the oracle");
    selftest->add_flag("--quick", quick, "reduced corpus");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen(family, n, sigma, z, forced_x, out, bytes);
        if (parse->parsed()) return cmd_parse(text_file, bytes, variant, parse_out);
        if (encode->parsed())
            return cmd_encode(text_file, bytes, codecs, variant, strategy, out);
        if (decode->parsed()) return cmd_decode(text_file, out, bytes);
        if (measure_cmd->parsed())
            return cmd_measure(instance, text_file, bytes, codecs, measure_variant, mode, out,
                               as_json);
        if (sweep->parsed())
            return cmd_sweep(family, n_list, z_rule, z, sigma, forced_x, codecs, variant, mode,
                             out);
        if (verify->parsed()) return cmd_verify(samples, seed, max_n, with_instances);
        if (selftest->parsed()) return cmd_selftest(quick);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
