#pragma once

// Command-line front end. `run_cli` parses argv, runs one subcommand and writes
// the report; it returns the process exit status (0 all matched, 1 mismatch,
// 2 usage or configuration error).

#include "sumsq/charsum.hpp"
#include "sumsq/error.hpp"
#include "sumsq/field.hpp"
#include "sumsq/hankel.hpp"
#include "sumsq/multiset.hpp"
#include "sumsq/variance.hpp"
#include "sumsq/verify.hpp"
#include "sumsq/version.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace sumsq::cli {

using Json = nlohmann::ordered_json;

enum class Format { Json, Csv, Pretty };

struct Options {
    std::string field;
    std::int64_t n = -1;
    std::int64_t m = -1;
    std::int64_t h = -1;
    std::string gamma = "1";
    std::int64_t n_max = 2;
    std::string mode;
    std::string method = "both";
    std::string variant = "derived";
    std::string compare = "closed";
    std::string seq;
    std::string named;
    std::uint64_t param = 1;
    std::string format;
    std::string out;
    unsigned shards = 1;
};

/// What a subcommand produced: a JSON body, optionally a CSV table and a text
/// rendering, and whether every comparison matched.
struct Outcome {
    Json result;
    std::vector<std::string> csv_header;
    std::vector<std::vector<std::string>> csv_rows;
    std::string pretty;
    bool matched = true;
};

namespace detail {

inline Json rational_json(const ScaledRational& r) {
    return Json{{"num", r.num.str()}, {"scale", {{"base", r.q}, {"exponent", r.exp}}}, {"reduced", r.to_string()}};
}

inline Json matrix_json(const Field& f, const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols; ++j) row.push_back(f.to_string(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json multiset_json(const MultisetFq& a) {
    Json o = Json::object();
    const Field& f = a.field();
    for (std::uint32_t i = 0; i < f.order(); ++i)
        if (a.counts()[i] != 0) o[f.to_string(Elem{i})] = a.counts()[i].str();
    return o;
}

inline Json partition_json(const RhoPiPartition& p) {
    return Json{{"p1_prime", p.p1_prime}, {"p1_dblprime", p.p1_dblprime}, {"tail", p.tail}, {"text", p.to_string()}};
}

inline Json charsum_json(const CharSumValue& v) {
    Json counts = Json::array();
    for (const auto& c : v.residue_counts()) counts.push_back(c.str());
    Json o{{"residue_counts", counts}};
    if (auto i = v.as_integer()) o["integer"] = i->str();
    else o["integer"] = nullptr;
    return o;
}

inline void require(bool ok, const std::string& flag) {
    if (!ok) throw Error(ErrorCode::Usage, "missing or invalid " + flag);
}

inline Elem parse_gamma(const Field& f, const std::string& text) {
    const auto v = parse_elements(f, text);
    if (v.size() != 1) throw Error(ErrorCode::Usage, "--gamma takes one element");
    if (v[0].is_zero()) throw Error(ErrorCode::GammaZero, "gamma must be nonzero");
    return v[0];
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream s;
    s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return s.str();
}

}  // namespace detail

// ---- subcommands -----------------------------------------------------------

inline Outcome cmd_variance(const Options& o) {
    const FieldPtr field = parse_field_spec(o.field);
    const Elem gamma = detail::parse_gamma(*field, o.gamma);
    validate_variance_params(o.n, o.m, o.h);
    const std::int64_t q = field->order();
    const bool closed_wanted = o.method == "closed" || o.method == "both";
    const bool brute_wanted = o.method == "brute" || o.method == "both";
    if (!closed_wanted && !brute_wanted) throw Error(ErrorCode::Usage, "--method must be closed, brute or both");
    const ClosedVariant variant = o.variant == "flipped" ? ClosedVariant::Flipped : ClosedVariant::Derived;
    if (o.variant != "flipped" && o.variant != "derived") throw Error(ErrorCode::Usage, "--variant must be derived or flipped");

    Outcome out;
    Json& r = out.result;
    std::ostringstream pretty;
    pretty << "q=" << q << " n=" << o.n << " m=" << o.m << " h=" << o.h << " gamma=" << field->to_string(gamma) << "\n";
    std::optional<ScaledRational> closed, brute;
    if (closed_wanted) {
        const ClosedVariance cv = variance_closed(q, o.n, o.m, o.h, variant);
        closed = cv.value;
        r["case"] = cv.case_label;
        r["subrange"] = cv.subrange_label;
        r["closed"] = detail::rational_json(cv.value);
        pretty << "closed: " << cv.value.to_string() << "  [" << cv.case_label << "; " << cv.subrange_label << "]\n";
    }
    if (brute_wanted) {
        const STable table = build_stable(field, o.n, o.m, gamma, o.shards);
        brute = variance_from_square_sum(q, o.n, o.m, o.h, square_sum_from_table(table, o.h));
        r["brute"] = detail::rational_json(*brute);
        r["mean"] = {{"closed", detail::rational_json(mean_closed(q, o.n, o.m, o.h))},
                     {"brute", detail::rational_json(mean_brute(table, o.h))}};
        pretty << "brute:  " << brute->to_string() << "\n";
    }
    if (closed && brute) {
        out.matched = *closed == *brute;
        r["match"] = out.matched;
        pretty << (out.matched ? "match\n" : "MISMATCH\n");
    }
    out.pretty = pretty.str();
    return out;
}

inline Outcome cmd_theorem_check(const Options& o) {
    const FieldPtr field = parse_field_spec(o.field);
    if (o.n_max < 1) throw Error(ErrorCode::BadParameters, "--n-max must be >= 1");
    const std::int64_t q = field->order();
    if (o.variant != "flipped" && o.variant != "derived") throw Error(ErrorCode::Usage, "--variant must be derived or flipped");
    const ClosedVariant variant = o.variant == "flipped" ? ClosedVariant::Flipped : ClosedVariant::Derived;

    struct Row {
        std::vector<std::string> cells;
        bool match;
    };
    std::vector<Row> rows;
    for (auto [n, m] : nm_grid(o.n_max)) {
        for (Elem gamma : field->elements()) {
            if (gamma.is_zero()) continue;
            const STable table = build_stable(field, n, m, gamma, o.shards);
            for (std::int64_t h = 0; h <= 2 * n; ++h) {
                const ClosedVariance cv = variance_closed(q, n, m, h, variant);
                const ScaledRational brute = variance_from_square_sum(q, n, m, h, square_sum_from_table(table, h));
                const bool match = cv.value == brute;
                rows.push_back(Row{{std::to_string(n), std::to_string(m), std::to_string(h), field->to_string(gamma),
                                    cv.case_label, cv.subrange_label, cv.value.to_string(), brute.to_string(),
                                    match ? "true" : "false"},
                                   match});
            }
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return !a.match && b.match; });

    Outcome out;
    out.csv_header = {"n", "m", "h", "gamma", "case", "subcase", "closed", "brute", "match"};
    Json arr = Json::array();
    std::size_t mismatches = 0;
    for (auto& row : rows) {
        if (!row.match) ++mismatches;
        Json j = Json::object();
        for (std::size_t i = 0; i < out.csv_header.size(); ++i) j[out.csv_header[i]] = row.cells[i];
        arr.push_back(std::move(j));
        out.csv_rows.push_back(std::move(row.cells));
    }
    out.matched = mismatches == 0;
    out.result = Json{{"rows", arr.size()}, {"mismatches", mismatches}, {"all_match", out.matched}, {"table", arr}};
    out.pretty = std::to_string(rows.size()) + " rows, " + std::to_string(mismatches) + " mismatches\n";
    return out;
}

inline HankelMatrix hankel_from_seq_text(const FieldPtr& field, const std::string& text) {
    detail::require(!text.empty(), "--seq");
    std::vector<Elem> seq = parse_elements(*field, text);
    if (seq.size() % 2 == 0)
        throw Error(ErrorCode::LengthMismatch, "a square Hankel matrix needs an odd-length sequence (2n-1 entries)");
    return HankelMatrix::square(field, std::move(seq));
}

inline Outcome cmd_hankel_reduce(const Options& o) {
    const FieldPtr field = parse_field_spec(o.field);
    const HankelMatrix h = hankel_from_seq_text(field, o.seq);
    const Field& f = *field;
    const Reduction red = reduce_with_certificate(h);
    const Matrix rendered = red.form.render();
    const RhoPi rp = strict_rho_pi(h);
    Outcome out;
    out.matched = congruence(f, red.transform, h.dense()) == rendered;
    out.result = Json{{"n", h.rows()},
                      {"matrix", detail::matrix_json(f, h.dense())},
                      {"reduced", detail::matrix_json(f, rendered)},
                      {"partition", detail::partition_json(red.form.partition())},
                      {"rho_s", rp.rho},
                      {"pi_s", rp.pi},
                      {"rank", rank(h)},
                      {"transform", detail::matrix_json(f, red.transform)},
                      {"certificate_ok", out.matched}};
    out.pretty = "H =\n" + to_string(f, h.dense()) + "red(H) =\n" + to_string(f, rendered) + "partition " +
                 red.form.partition().to_string() + ", rho_s=" + std::to_string(rp.rho) + ", pi_s=" +
                 std::to_string(rp.pi) + ", rank=" + std::to_string(rank(h)) + "\n";
    return out;
}

inline Outcome cmd_multiset(const Options& o) {
    const FieldPtr field = parse_field_spec(o.field);
    const HankelMatrix h = hankel_from_seq_text(field, o.seq);
    const std::string mode_text = o.mode.empty() ? "monic" : o.mode;
    QuadMode mode;
    if (mode_text == "full") mode = QuadMode::Full;
    else if (mode_text == "monic") mode = QuadMode::Monic;
    else if (mode_text == "last1") mode = QuadMode::Last1;
    else throw Error(ErrorCode::Usage, "--mode must be full, monic or last1");

    Outcome out;
    const MultisetFq enumerated = values_quadform(h, mode);
    out.result = Json{{"mode", mode_text}, {"enumerated", detail::multiset_json(enumerated)}};
    out.pretty = "enumerated: " + enumerated.to_string() + "\n";
    if (o.compare == "closed") {
        // Monic mode has a closed form from the partition; the other modes are
        // compared against enumeration on red(H).
        const MultisetFq other = mode == QuadMode::Monic ? values_closed_hankel(h)
                                                         : values_quadform(field, reduce(h).render(), mode);
        out.matched = other == enumerated;
        out.result["closed"] = detail::multiset_json(other);
        out.result["closed_source"] = mode == QuadMode::Monic ? "partition" : "reduced form";
        out.result["match"] = out.matched;
        out.pretty += "closed:     " + other.to_string() + "\n" + (out.matched ? "match\n" : "MISMATCH\n");
    } else if (o.compare != "none") {
        throw Error(ErrorCode::Usage, "--compare must be closed or none");
    }
    return out;
}

inline Outcome cmd_ncount(const Options& o) {
    const FieldPtr field = parse_field_spec(o.field);
    validate_census_params(o.n, o.m, o.h);
    const std::string mode = o.mode.empty() ? "both" : o.mode;
    if (mode != "closed" && mode != "enumerate" && mode != "both")
        throw Error(ErrorCode::Usage, "--mode must be closed, enumerate or both");
    const bool want_closed = mode != "enumerate";
    const bool want_enum = mode != "closed";
    std::optional<Census> closed, enumerated;
    if (want_closed) closed = census_closed(field->order(), o.n, o.m, o.h);
    if (want_enum) enumerated = census_enumerate(field, o.n, o.m, o.h, o.shards);

    std::set<std::pair<std::size_t, std::size_t>> keys;
    for (const auto* c : {closed ? &*closed : nullptr, enumerated ? &*enumerated : nullptr})
        if (c)
            for (const auto& cell : c->cells) keys.insert({cell.rho2, cell.rho1});

    Outcome out;
    out.csv_header = {"rho2", "rho1"};
    if (want_closed) out.csv_header.push_back("closed");
    if (want_enum) out.csv_header.push_back("enumerated");
    if (want_closed && want_enum) out.csv_header.push_back("match");
    Json cells = Json::array();
    std::ostringstream pretty;
    for (auto [r2, r1] : keys) {
        Json cell{{"rho2", r2}, {"rho1", r1}};
        std::vector<std::string> row{std::to_string(r2), std::to_string(r1)};
        pretty << "(" << r2 << "," << r1 << ")";
        if (want_closed) {
            cell["closed"] = closed->count(r2, r1).str();
            row.push_back(closed->count(r2, r1).str());
            pretty << " closed=" << closed->count(r2, r1);
        }
        if (want_enum) {
            cell["enumerated"] = enumerated->count(r2, r1).str();
            row.push_back(enumerated->count(r2, r1).str());
            pretty << " enumerated=" << enumerated->count(r2, r1);
        }
        if (want_closed && want_enum) {
            const bool match = closed->count(r2, r1) == enumerated->count(r2, r1);
            out.matched = out.matched && match;
            cell["match"] = match;
            row.push_back(match ? "true" : "false");
        }
        pretty << "\n";
        cells.push_back(std::move(cell));
        out.csv_rows.push_back(std::move(row));
    }
    out.result = Json{{"subcase", to_string(classify_subcase(o.n, o.m, o.h))}, {"cells", cells}};
    if (want_enum) out.result["filtered_out"] = enumerated->filtered_out.str();
    if (want_closed && want_enum) out.result["all_match"] = out.matched;
    out.pretty = "subcase " + to_string(classify_subcase(o.n, o.m, o.h)) + "\n" + pretty.str();
    return out;
}

inline Outcome cmd_charsum(const Options& o) {
    const FieldPtr field = parse_field_spec(o.field);
    Outcome out;
    if (!o.seq.empty()) {
        const std::vector<Elem> alpha = parse_elements(*field, o.seq);
        if (alpha.size() % 2 == 0) throw Error(ErrorCode::LengthMismatch, "alpha needs 2n+1 entries");
        const std::size_t n = alpha.size() / 2;
        const BigInt closed = pair_contribution_closed(field, alpha, n);
        const BigInt direct = pair_contribution_direct(field, alpha, n);
        const BigInt via_multisets = pair_contribution(field, alpha, n);
        const RhoPi rp = strict_rho_pi(sumsq::detail::square_on_prefix(field, alpha, n));
        out.matched = closed == direct && closed == via_multisets;
        out.result = Json{{"n", n},         {"rho_s", rp.rho},          {"pi_s", rp.pi},
                          {"closed", closed.str()}, {"multiset", via_multisets.str()}, {"direct", direct.str()},
                          {"match", out.matched}};
        out.pretty = "pair contribution: closed=" + closed.str() + " multiset=" + via_multisets.str() +
                     " direct=" + direct.str() + (out.matched ? " (match)\n" : " (MISMATCH)\n");
        return out;
    }
    NamedMultiset which;
    if (o.named == "fq") which = NamedMultiset::Fq;
    else if (o.named == "tq") which = NamedMultiset::Tq;
    else if (o.named == "zq") which = NamedMultiset::Zq;
    else if (o.named == "sq") which = NamedMultiset::Sq;
    else throw Error(ErrorCode::Usage, "charsum needs --seq or --named fq|tq|zq|sq");
    const MultisetFq a = ms_named(field, which, o.param);
    const CharSumValue v = char_of_multiset(a);
    out.result = Json{{"multiset", detail::multiset_json(a)}, {"value", detail::charsum_json(v)}};
    out.pretty = "sum of psi over " + o.named + " = " + v.to_string() + "\n";
    return out;
}

inline Outcome cmd_verify_all(const Options& o) {
    const FieldPtr field = parse_field_spec(o.field);
    if (o.n_max < 1) throw Error(ErrorCode::BadParameters, "--n-max must be >= 1");
    VerifyConfig c;
    c.fields = {field};
    c.census_field = field;
    c.n_max = o.n_max;
    c.reduction_n_max = static_cast<std::size_t>(o.n_max) + 1;
    c.multiset_n_max = static_cast<std::size_t>(o.n_max);
    c.triangular_l_max = static_cast<std::size_t>(o.n_max) + 1;
    c.pair_n = std::min<std::int64_t>(o.n_max, 2);
    c.shards = o.shards;

    Outcome out;
    out.csv_header = {"criterion", "name", "passed", "cases", "failures"};
    Json arr = Json::array();
    std::ostringstream pretty;
    for (const auto& r : verify_all(c)) {
        out.matched = out.matched && r.passed();
        arr.push_back(Json{{"criterion", r.id},
                           {"name", r.name},
                           {"passed", r.passed()},
                           {"cases", r.cases},
                           {"failures", r.failures},
                           {"failure_samples", r.failure_samples},
                           {"note", r.note}});
        out.csv_rows.push_back({std::to_string(r.id), r.name, r.passed() ? "true" : "false", std::to_string(r.cases),
                                std::to_string(r.failures)});
        pretty << "[" << (r.passed() ? "PASS" : "FAIL") << "] " << r.id << " " << r.name << " (" << r.cases
               << " cases, " << r.failures << " failures)\n";
        for (const auto& s : r.failure_samples) pretty << "    " << s << "\n";
    }
    out.result = Json{{"criteria", arr}, {"all_passed", out.matched}};
    out.pretty = pretty.str();
    return out;
}

// ---- report emission -------------------------------------------------------

inline Format parse_format(const std::string& s, Format fallback) {
    if (s.empty()) return fallback;
    if (s == "json") return Format::Json;
    if (s == "csv") return Format::Csv;
    if (s == "pretty") return Format::Pretty;
    throw Error(ErrorCode::Usage, "--format must be json, csv or pretty");
}

/// Renders the report. Timing fields come last so that two runs of the same
/// configuration differ only on those lines.
inline std::string render_report(const std::string& command, const Json& config, const Outcome& out, Format format,
                                 std::int64_t elapsed_ms, const std::string& timestamp) {
    if (format == Format::Csv) {
        if (out.csv_header.empty()) throw Error(ErrorCode::Usage, command + " has no CSV form");
        std::string s;
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + detail::csv_escape(cells[i]);
            s += "\n";
        };
        line(out.csv_header);
        for (const auto& row : out.csv_rows) line(row);
        return s;
    }
    if (format == Format::Pretty) return out.pretty;
    Json report{{"tool", "sumsq"}, {"version", kVersion}, {"command", command}, {"config", config},
                {"result", out.result}, {"all_match", out.matched}, {"elapsed_ms", elapsed_ms},
                {"timestamp", timestamp}};
    return report.dump(2) + "\n";
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& stdout_stream) {
    if (path.empty() || path == "-") {
        stdout_stream << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
    f << text;
    if (!f) throw Error(ErrorCode::IoError, "write to " + path + " failed");
}

// ---- dispatch --------------------------------------------------------------

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact verification harness for sums of two squares over F_q[T] in short intervals", "sumsq"};
    app.set_help_flag("--help", "print help and exit");
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub, bool needs_field = true) {
        auto* f = sub->add_option("--field", o.field, "field spec: p or p^k:c0,...,ck");
        if (needs_field) f->required();
        sub->add_option("--format", o.format, "json, csv or pretty");
        sub->add_option("--out", o.out, "report path (default stdout)");
        sub->add_option("--shards", o.shards, "worker threads")->check(CLI::PositiveNumber);
    };

    auto* variance = app.add_subcommand("variance", "closed-form and brute-force variance");
    add_common(variance);
    variance->add_option("--n", o.n)->required();
    variance->add_option("--m", o.m)->required();
    variance->add_option("--h", o.h)->required();
    variance->add_option("--gamma", o.gamma, "nonzero element (index)");
    variance->add_option("--method", o.method, "closed, brute or both");
    variance->add_option("--variant", o.variant, "derived or flipped");

    auto* theorem = app.add_subcommand("theorem-check", "sweep all (n, m, h, gamma) up to n-max");
    add_common(theorem);
    theorem->add_option("--n-max", o.n_max)->required();
    theorem->add_option("--variant", o.variant, "derived or flipped");

    auto* hankel = app.add_subcommand("hankel", "Hankel matrix operations");
    hankel->require_subcommand(1);
    auto* reduce_cmd = hankel->add_subcommand("reduce", "reduced form, partition and (rho_s, pi_s)");
    add_common(reduce_cmd);
    reduce_cmd->add_option("--seq", o.seq, "beta_0,...,beta_{2n-2}")->required();

    auto* multiset = app.add_subcommand("multiset", "value multiset of v^T H v");
    add_common(multiset);
    multiset->add_option("--seq", o.seq, "beta_0,...,beta_{2n-2}")->required();
    multiset->add_option("--mode", o.mode, "full, monic or last1");
    multiset->add_option("--compare", o.compare, "closed or none");

    auto* ncount = app.add_subcommand("ncount", "census of (rho2, rho1) over alpha with h leading zeros");
    add_common(ncount);
    ncount->add_option("--n", o.n)->required();
    ncount->add_option("--m", o.m)->required();
    ncount->add_option("--h", o.h)->required();
    ncount->add_option("--mode", o.mode, "closed, enumerate or both");

    auto* charsum = app.add_subcommand("charsum", "exact character sums");
    add_common(charsum);
    charsum->add_option("--seq", o.seq, "alpha_0,...,alpha_{2n}: pair contribution");
    charsum->add_option("--named", o.named, "fq, tq, zq or sq");
    charsum->add_option("--param", o.param, "n for zq, lambda index for sq");

    auto* verify = app.add_subcommand("verify-all", "every oracle comparison at the given scale");
    add_common(verify);
    verify->add_option("--n-max", o.n_max);

    std::vector<std::string> args;
    for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        std::ostringstream cli_out, cli_err;
        const int code = app.exit(e, cli_out, cli_err);
        out << cli_out.str();
        err << cli_err.str();
        return code == 0 ? 0 : 2;
    }

    std::string command;
    Format fallback = Format::Json;
    Json config{{"field", o.field}};
    Outcome (*handler)(const Options&) = nullptr;
    if (*variance) {
        command = "variance";
        handler = cmd_variance;
        config.update(Json{{"n", o.n}, {"m", o.m}, {"h", o.h}, {"gamma", o.gamma}, {"method", o.method}, {"variant", o.variant}});
    } else if (*theorem) {
        command = "theorem-check";
        handler = cmd_theorem_check;
        fallback = Format::Csv;
        config.update(Json{{"n_max", o.n_max}, {"variant", o.variant}});
    } else if (*reduce_cmd) {
        command = "hankel reduce";
        handler = cmd_hankel_reduce;
        config.update(Json{{"seq", o.seq}});
    } else if (*multiset) {
        command = "multiset";
        handler = cmd_multiset;
        config.update(Json{{"seq", o.seq}, {"mode", o.mode.empty() ? "monic" : o.mode}, {"compare", o.compare}});
    } else if (*ncount) {
        command = "ncount";
        handler = cmd_ncount;
        config.update(Json{{"n", o.n}, {"m", o.m}, {"h", o.h}, {"mode", o.mode.empty() ? "both" : o.mode}});
    } else if (*charsum) {
        command = "charsum";
        handler = cmd_charsum;
        config.update(Json{{"seq", o.seq}, {"named", o.named}, {"param", o.param}});
    } else {
        command = "verify-all";
        handler = cmd_verify_all;
        config.update(Json{{"n_max", o.n_max}});
    }
    config.update(Json{{"shards", o.shards}, {"out", o.out}});

    bool json_errors = o.format.empty() || o.format == "json";
    try {
        const Format format = parse_format(o.format, fallback);
        json_errors = format == Format::Json;
        config["format"] = format == Format::Json ? "json" : format == Format::Csv ? "csv" : "pretty";
        const auto t0 = std::chrono::steady_clock::now();
        const Outcome result = handler(o);
        const auto ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
        write_output(o.out, render_report(command, config, result, format, ms, detail::utc_timestamp()), out);
        if (!result.matched) err << command << ": mismatch for " << config.dump() << "\n";
        return result.matched ? 0 : 1;
    } catch (const Error& e) {
        if (json_errors)
            err << Json{{"error", {{"code", to_string(e.code())}, {"message", e.what()}}}}.dump() << "\n";
        else
            err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace sumsq::cli
