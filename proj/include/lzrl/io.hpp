#pragma once

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lzrl/analysis.hpp"
#include "lzrl/generators.hpp"
#include "lzrl/phrase_coding.hpp"

namespace lzrl {

// ---- text files: whitespace-separated decimal codes, or raw bytes ----

inline Text read_text_file(const std::string& path, bool bytes) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::vector<Letter> letters;
    if (bytes) {
        char ch;
        while (in.get(ch)) letters.push_back(static_cast<std::uint8_t>(ch));
    } else {
        std::uint64_t v;
        while (in >> v) letters.push_back(static_cast<Letter>(v));
    }
    return Text(std::move(letters));
}

/// Canonical rendering: single spaces, trailing newline. Encode/decode
/// round-trips are byte-identical on files in this form.
inline void write_text_file(const std::string& path, const Text& s, bool bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    if (bytes) {
        for (Letter c : s.letters()) {
            if (c > 255) throw InvalidParams("letter does not fit in a byte");
            out.put(static_cast<char>(c));
        }
    } else {
        for (std::size_t i = 0; i < s.n(); ++i) {
            if (i) out.put(' ');
            out << s[i];
        }
        out.put('\n');
    }
}

// ---- parsing dumps ----

inline nlohmann::json parsing_to_json(const Parsing& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Phrase& f : p.phrases) {
        nlohmann::json row;
        switch (f.kind) {
            case PhraseKind::classical_triple:
                row = {{"kind", "classical"}, {"d", f.d}, {"ell", f.ell}, {"c", f.c}};
                break;
            case PhraseKind::nc_literal:
                row = {{"kind", "literal"}, {"d", 0}, {"ell", 1}, {"c", f.c}};
                break;
            case PhraseKind::nc_reference:
                row = {{"kind", "reference"}, {"d", f.d}, {"ell", f.ell}};
                break;
        }
        arr.push_back(std::move(row));
    }
    return arr;
}

inline Parsing parsing_from_json(const nlohmann::json& arr) {
    Parsing p;
    bool nonclassical = false;
    for (const auto& row : arr) {
        Phrase f;
        std::string kind = row.at("kind");
        if (kind == "classical") {
            f.kind = PhraseKind::classical_triple;
            f.d = row.at("d");
            f.ell = row.at("ell");
            f.c = row.at("c");
        } else if (kind == "literal") {
            f.kind = PhraseKind::nc_literal;
            f.ell = 1;
            f.c = row.at("c");
            nonclassical = true;
        } else if (kind == "reference") {
            f.kind = PhraseKind::nc_reference;
            f.d = row.at("d");
            f.ell = row.at("ell");
            nonclassical = true;
        } else {
            throw InvalidParams("unknown phrase kind: " + kind);
        }
        p.phrases.push_back(f);
    }
    p.variant = nonclassical ? Variant::nonclassical : Variant::classical;
    return p;
}

// ---- encoded-parsing container ----
//
// header: magic "LZRL", version, variant, codec ids for d/l/c, phrase count
// and text length as 64-bit little-endian, then the bit payload padded with
// zeros to a byte boundary.

inline constexpr char kMagic[4] = {'L', 'Z', 'R', 'L'};
inline constexpr std::uint8_t kFormatVersion = 1;

namespace detail {

inline void put_u64_le(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline std::uint64_t get_u64_le(const std::vector<std::uint8_t>& in, std::size_t at) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(in[at + i]) << (8 * i);
    return v;
}

}  // namespace detail

struct EncodedFile {
    CostModel model;
    std::uint64_t phrase_count = 0;
    std::uint64_t text_length = 0;
    BitString payload;
};

inline std::vector<std::uint8_t> serialize_encoded(const Parsing& p, const CostModel& m,
                                                   std::uint64_t text_length) {
    std::vector<std::uint8_t> out;
    out.insert(out.end(), kMagic, kMagic + 4);
    out.push_back(kFormatVersion);
    out.push_back(static_cast<std::uint8_t>(m.variant));
    out.push_back(static_cast<std::uint8_t>(m.distance_codec));
    out.push_back(static_cast<std::uint8_t>(m.length_codec));
    out.push_back(static_cast<std::uint8_t>(m.letter_codec));
    detail::put_u64_le(out, p.z());
    detail::put_u64_le(out, text_length);
    BitString bits = encode_parsing(p, m);
    const auto& bytes = bits.bytes();
    out.insert(out.end(), bytes.begin(), bytes.end());
    return out;
}

inline EncodedFile parse_encoded_header(const std::vector<std::uint8_t>& data) {
    if (data.size() < 25) throw Error("encoded file too short for its header");
    if (!std::equal(kMagic, kMagic + 4, data.begin())) throw Error("bad magic");
    if (data[4] != kFormatVersion) throw Error("unsupported format version");
    EncodedFile f;
    if (data[5] > 1) throw Error("bad variant byte");
    f.model.variant = static_cast<Variant>(data[5]);
    for (int i = 0; i < 3; ++i)
        if (data[6 + i] > 2) throw Error("bad codec id");
    f.model.distance_codec = static_cast<Codec>(data[6]);
    f.model.length_codec = static_cast<Codec>(data[7]);
    f.model.letter_codec = static_cast<Codec>(data[8]);
    f.phrase_count = detail::get_u64_le(data, 9);
    f.text_length = detail::get_u64_le(data, 17);
    std::vector<std::uint8_t> payload(data.begin() + 25, data.end());
    f.payload = BitString::from_bytes(payload, payload.size() * 8);
    return f;
}

inline void write_encoded_file(const std::string& path, const Parsing& p, const CostModel& m,
                               std::uint64_t text_length) {
    auto data = serialize_encoded(p, m, text_length);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
}

inline std::pair<Parsing, EncodedFile> read_encoded_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
    EncodedFile f = parse_encoded_header(data);
    Parsing p = decode_parsing(f.payload, f.model, f.phrase_count);
    return {std::move(p), std::move(f)};
}

// ---- generated-instance sidecar ----

inline nlohmann::json instance_to_json(const GeneratedInstance& inst) {
    nlohmann::json j;
    j["family"] = family_name(inst.family);
    j["variant"] = variant_name(inst.variant);
    j["n"] = inst.n;
    j["sigma"] = inst.sigma;
    j["z"] = inst.z_req;
    j["k"] = inst.k;
    j["ell"] = inst.ell;
    j["m"] = inst.m;
    j["x"] = inst.x;
    j["degenerate"] = inst.degenerate;
    j["markers"] = {{"run_start", inst.markers.run_start},
                    {"run_end", inst.markers.run_end},
                    {"suffix_start", inst.markers.suffix_start},
                    {"appended_start", inst.markers.appended_start},
                    {"suffix_block_starts", inst.markers.suffix_block_starts}};
    if (!inst.markers.base_block_ends_suffix.empty()) {
        j["markers"]["base_block_ends_prefix"] = inst.markers.base_block_ends_prefix;
        j["markers"]["base_block_ends_suffix"] = inst.markers.base_block_ends_suffix;
    }
    return j;
}

/// Rebuilds the instance deterministically from its sidecar parameters.
inline GeneratedInstance instance_from_json(const nlohmann::json& j) {
    auto fam = family_from_name(j.at("family"));
    if (!fam) throw InvalidParams("unknown family in sidecar");
    std::optional<std::uint32_t> x;
    if (j.value("x", 0) > 0) x = j["x"].get<std::uint32_t>();
    return generate(*fam, j.at("n"), j.value("sigma", 0), j.value("z", 0), x);
}

// ---- report serialization ----

inline const char* report_csv_header() {
    return "n,sigma,z,variant,codec_d,codec_l,codec_c,bits_greedy,bits_opt,bits_witness,"
           "denominator,ratio_lb,bound_upper,bound_lower";
}

inline std::string report_csv_row(const Report& r) {
    std::ostringstream out;
    out << r.n << ',' << r.sigma << ',' << r.z << ',' << variant_name(r.variant) << ','
        << codec_name(r.codec_d) << ',' << codec_name(r.codec_l) << ',' << codec_name(r.codec_c)
        << ',' << r.bits_greedy << ',';
    if (r.bits_opt) out << *r.bits_opt;
    out << ',';
    if (r.bits_witness) out << *r.bits_witness;
    out << ',' << r.denominator << ',' << std::fixed << std::setprecision(6) << r.ratio_lb << ',';
    if (r.bound_upper_value) out << std::setprecision(6) << *r.bound_upper_value;
    out << ',';
    if (r.bound_lower_value) out << std::setprecision(6) << *r.bound_lower_value;
    return out.str();
}

inline nlohmann::json report_to_json(const Report& r) {
    nlohmann::json j;
    j["n"] = r.n;
    j["sigma"] = r.sigma;
    j["z"] = r.z;
    j["variant"] = variant_name(r.variant);
    j["codec_d"] = codec_name(r.codec_d);
    j["codec_l"] = codec_name(r.codec_l);
    j["codec_c"] = codec_name(r.codec_c);
    j["bits_greedy"] = r.bits_greedy;
    if (r.bits_opt) j["bits_opt"] = *r.bits_opt;
    if (r.bits_witness) j["bits_witness"] = *r.bits_witness;
    j["denominator"] = r.denominator;
    j["ratio_lb"] = r.ratio_lb;
    if (r.bound_upper_value) j["bound_upper"] = *r.bound_upper_value;
    if (r.bound_lower_value) j["bound_lower"] = *r.bound_lower_value;
    return j;
}

}  // namespace lzrl
