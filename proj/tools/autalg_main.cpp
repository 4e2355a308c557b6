// autalg: command-line surface over the library.
//
// Subcommands: build, hilbert, automaton, recurrence (terms|zeros|fit),
// search, verify.  All outputs are deterministic: the same invocation yields
// byte-identical files.  Exit code 0 unless a table comparison reports
// MISMATCH or the input fails to parse/validate.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "autalg/json_io.hpp"
#include "autalg/verify.hpp"

namespace {

using namespace autalg;

struct Options {
    std::string field = "Q";
    std::string family;
    std::string alpha, beta;
    std::size_t rho = 0;
    std::uint64_t prime = 0;
    std::string coeffs, init;
    long long horizon = -1;
    std::string method;
    std::size_t guard = 3;
    std::size_t min_evidence = 3;
    std::size_t cap = 25;
    std::string out, dot_out, presentation_path, vlrs_path, prefix, format;
    long long threshold = 0;
    std::size_t n0 = 0;
    std::uint64_t seed = 20240917;
};

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, ',')) parts.push_back(part);
    return parts;
}

std::vector<FieldElement> parse_elements(const std::string& text, const FieldDescriptor& fd) {
    std::vector<FieldElement> out;
    for (const auto& p : split_commas(text)) out.push_back(parse_element(p, fd));
    return out;
}

std::string set_str(const std::vector<std::size_t>& values) {
    std::ostringstream o;
    o << "{";
    for (std::size_t i = 0; i < values.size(); ++i) o << (i ? ", " : "") << values[i];
    o << "}";
    return o.str();
}

std::string series_str(const RationalSeries& s) {
    auto poly_text = [](const std::vector<long long>& cs) {
        if (cs.empty()) return std::string("0");
        std::ostringstream o;
        bool first = true;
        for (std::size_t i = 0; i < cs.size(); ++i) {
            if (cs[i] == 0) continue;
            long long c = cs[i];
            if (first) {
                if (c < 0) o << "-";
            } else {
                o << (c < 0 ? " - " : " + ");
            }
            long long mag = c < 0 ? -c : c;
            if (mag != 1 || i == 0) o << mag;
            if (i == 1) o << "z";
            if (i > 1) o << "z^" << i;
            first = false;
        }
        if (first) return std::string("0");
        return o.str();
    };
    return "(" + poly_text(s.num) + ") / (" + poly_text(s.den) + ")";
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw field_error("cannot open output file '" + path + "'");
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw field_error("cannot open input file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

LinearRecurrence recurrence_from_options(const Options& o) {
    if (o.coeffs.empty() || o.init.empty())
        throw field_error("this command needs --coeffs and --init");
    FieldDescriptor fd = FieldDescriptor::parse(o.field);
    LinearRecurrence rec{fd, parse_elements(o.coeffs, fd), parse_elements(o.init, fd)};
    if (rec.initial.size() != rec.coeffs.size())
        throw field_error("need as many initial values as coefficients");
    return rec;
}

VlrsData vlrs_from_options(const Options& o) {
    if (!o.vlrs_path.empty()) return vlrs_from_json(json::parse(read_file(o.vlrs_path)));
    if (o.family == "fermat") {
        if (o.alpha.empty() || o.beta.empty())
            throw field_error("family fermat needs --alpha and --beta");
        FieldDescriptor fd = FieldDescriptor::parse(o.field);
        return family_fermat(parse_element(o.alpha, fd), parse_element(o.beta, fd));
    }
    if (o.family == "lech") {
        if (o.prime == 0) throw field_error("family lech needs --prime");
        return family_lech(o.prime);
    }
    if (o.family == "segment") {
        if (o.alpha.empty()) throw field_error("family segment needs --alpha (and --rho)");
        FieldDescriptor fd = FieldDescriptor::parse(o.field);
        return family_segment(o.rho, parse_element(o.alpha, fd));
    }
    if (o.family == "from-recurrence") return from_recurrence(recurrence_from_options(o));
    if (o.family.empty())
        throw field_error("choose --family fermat|lech|segment|from-recurrence or provide input");
    throw field_error("unknown family '" + o.family +
                      "' (expected fermat, lech, segment, or from-recurrence)");
}

std::size_t horizon_or(const Options& o, std::size_t fallback) {
    if (o.horizon < 0) return fallback;
    return static_cast<std::size_t>(o.horizon);
}

void check_cap(const Options& o, std::size_t n) {
    if (n > o.cap)
        throw field_error("completion horizon " + std::to_string(n) + " exceeds the cap " +
                          std::to_string(o.cap) + "; raise it with --cap");
}

int cmd_build(const Options& o) {
    VlrsData data = vlrs_from_options(o);
    Presentation p = build_vlrs(data);
    std::size_t m = data.m, r = data.r(), l = data.l();
    std::size_t formula = m * m + 3 * m + 5 + r + l;
    std::cout << "g=" << p.generators.size() << " s=" << p.relations.size() << " (m^2+3m+5+r+l="
              << formula << (formula == p.relations.size() ? " ok" : " MISMATCH") << ")\n";
    write_output(o.out, presentation_to_json(p).dump(2) + "\n");
    return formula == p.relations.size() ? 0 : 1;
}

int cmd_hilbert(const Options& o) {
    std::size_t n = horizon_or(o, 20);
    std::string method = o.method;
    std::optional<HilbertData> closed, oracle;
    if (!o.presentation_path.empty()) {
        if (method.empty()) method = "groebner";
        if (method != "groebner")
            throw field_error("an explicit presentation supports --method groebner only "
                              "(the closed formula needs structured family data)");
        Presentation p = presentation_from_json(json::parse(read_file(o.presentation_path)));
        check_cap(o, n);
        oracle = hilbert_oracle(p, p.declaration_order(), static_cast<int>(n));
    } else {
        VlrsData data = vlrs_from_options(o);
        if (method.empty()) method = "closed";
        if (method != "closed" && method != "groebner" && method != "both")
            throw field_error("--method must be closed, groebner, or both");
        if (method == "closed" || method == "both") closed = hilbert_closed(data, n);
        if (method == "groebner" || method == "both") {
            check_cap(o, n);
            Presentation p = build_vlrs(data);
            oracle = hilbert_oracle(p, p.declaration_order(), static_cast<int>(n));
        }
    }

    auto render = [&](const HilbertData& h) {
        if (o.format == "json") {
            json j;
            j["method"] = hilbert_method_name(h.method);
            j["values"] = h.values;
            return j.dump(2) + "\n";
        }
        return hilbert_to_csv(h);
    };

    int status = 0;
    if (closed && oracle) {
        std::size_t first_bad = closed->values.size();
        for (std::size_t d = 0; d < closed->values.size(); ++d)
            if (closed->values[d] != oracle->values[d]) {
                first_bad = d;
                break;
            }
        if (first_bad == closed->values.size()) {
            std::cout << "MATCH\n";
        } else {
            std::cout << "MISMATCH(first degree " << first_bad << ")\n";
            status = 1;
        }
        write_output(o.out, render(*closed));
        write_output(o.out.empty() ? "" : o.out + ".oracle", render(*oracle));
    } else if (closed) {
        write_output(o.out, render(*closed));
    } else {
        write_output(o.out, render(*oracle));
    }
    return status;
}

int cmd_automaton(const Options& o) {
    std::size_t n = horizon_or(o, 30);
    Presentation p = o.presentation_path.empty()
                         ? build_vlrs(vlrs_from_options(o))
                         : presentation_from_json(json::parse(read_file(o.presentation_path)));
    auto rep = certify_normal_words(p, p.declaration_order(), n, o.min_evidence, o.guard);
    switch (rep.verdict) {
        case CertificationReport::Verdict::certified: std::cout << "CERTIFIED\n"; break;
        case CertificationReport::Verdict::undetermined: std::cout << "UNDETERMINED\n"; break;
        case CertificationReport::Verdict::fit_failure: std::cout << "FIT_FAILURE\n"; break;
    }
    std::cout << "families=" << rep.fit.families.size() << " residue=" << rep.fit.residue.size()
              << " split_degree=" << rep.fit.split_degree << "\n";
    if (rep.verdict != CertificationReport::Verdict::fit_failure)
        std::cout << "states=" << rep.automaton.state_count()
                  << " series=" << series_str(rep.series) << "\n";
    for (const auto& d : rep.diagnostics) std::cout << "note: " << d << "\n";
    if (!o.out.empty()) write_output(o.out, certification_to_json(rep, p).dump(2) + "\n");
    if (!o.dot_out.empty() && rep.verdict != CertificationReport::Verdict::fit_failure)
        write_output(o.dot_out, automaton_to_dot(rep.automaton));
    return 0;
}

int cmd_recurrence_terms(const Options& o) {
    LinearRecurrence rec = recurrence_from_options(o);
    std::size_t n = horizon_or(o, 20);
    std::ostringstream out;
    for (const auto& t : terms(rec, n)) out << t.str() << "\n";
    write_output(o.out, out.str());
    return 0;
}

int cmd_recurrence_zeros(const Options& o) {
    LinearRecurrence rec = recurrence_from_options(o);
    std::size_t n = horizon_or(o, 40);
    auto zeros = zero_set(rec, n);
    std::cout << set_str({zeros.begin(), zeros.end()}) << "\n";
    return 0;
}

int cmd_recurrence_fit(const Options& o) {
    if (o.prefix.empty()) throw field_error("recurrence fit needs --prefix v0,v1,...");
    FieldDescriptor fd = FieldDescriptor::parse(o.field);
    auto values = parse_elements(o.prefix, fd);
    auto rec = minimal_recurrence(values);
    if (!rec) {
        std::cout << "no linear recurrence fits the prefix (max order "
                  << values.size() / 2 << ")\n";
        return 0;
    }
    std::cout << "order " << rec->order() << ", coeffs ";
    for (std::size_t i = 0; i < rec->coeffs.size(); ++i)
        std::cout << (i ? "," : "") << rec->coeffs[i].str();
    std::cout << "\n";
    if (!o.out.empty()) write_output(o.out, recurrence_to_json(*rec).dump(2) + "\n");
    return 0;
}

int cmd_search(const Options& o) {
    std::size_t n = horizon_or(o, 30);
    HilbertData h;
    if (!o.presentation_path.empty()) {
        check_cap(o, n);
        Presentation p = presentation_from_json(json::parse(read_file(o.presentation_path)));
        h = hilbert_oracle(p, p.declaration_order(), static_cast<int>(n));
    } else {
        h = hilbert_closed(vlrs_from_options(o), n);
    }
    std::vector<std::size_t> hits;
    for (std::size_t d = o.n0; d <= n && d < h.values.size(); ++d)
        if (h.values[d] > o.threshold) hits.push_back(d);
    std::cout << "bounded search: degrees n in [" << o.n0 << ", " << n << "] with h(n) > "
              << o.threshold << " (no statement beyond the horizon)\n";
    std::cout << set_str(hits) << "\n";
    return 0;
}

int cmd_verify(const Options& o) {
    std::cout << "seed " << o.seed << "\n";
    bool all = true;
    for (const auto& r : run_acceptance(o.seed)) {
        std::cout << "[" << (r.pass ? "PASS" : "FAIL") << "] criterion " << r.index << ": "
                  << r.name << " — " << r.detail << "\n";
        all = all && r.pass;
    }
    std::cout << (all ? "ACCEPTED" : "REJECTED") << "\n";
    return all ? 0 : 1;
}

void add_family_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--field", o.field, "field descriptor: Q, F<p>, or F<p>(x)");
    cmd->add_option("--family", o.family, "fermat | lech | segment | from-recurrence");
    cmd->add_option("--alpha", o.alpha, "family parameter (field element literal)");
    cmd->add_option("--beta", o.beta, "family parameter (field element literal)");
    cmd->add_option("--rho", o.rho, "segment family shift");
    cmd->add_option("--prime", o.prime, "characteristic for the lech family");
    cmd->add_option("--coeffs", o.coeffs, "recurrence coefficients c1,...,cd");
    cmd->add_option("--init", o.init, "recurrence initial values a0,...,a(d-1)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Hilbert functions, normal-word automata, and C-finite utilities"};
    app.require_subcommand(1);
    Options o;

    CLI::App* build = app.add_subcommand("build", "construct a presentation and emit it as JSON");
    add_family_options(build, o);
    build->add_option("--vlrs", o.vlrs_path, "explicit structured data file (JSON)");
    build->add_option("--out", o.out, "output path for the presentation JSON");

    CLI::App* hilbert = app.add_subcommand("hilbert", "Hilbert values by formula and/or completion");
    add_family_options(hilbert, o);
    hilbert->add_option("-N,--n", o.horizon, "top degree (default 20)");
    hilbert->add_option("--method", o.method, "closed | groebner | both");
    hilbert->add_option("--cap", o.cap, "completion-degree cap (default 25)");
    hilbert->add_option("--presentation", o.presentation_path, "presentation JSON input");
    hilbert->add_option("--format", o.format, "csv (default) | json");
    hilbert->add_option("--out", o.out, "output path (with both, oracle goes to <out>.oracle)");

    CLI::App* automaton = app.add_subcommand("automaton", "fit families and certify the language");
    add_family_options(automaton, o);
    automaton->add_option("-N,--n", o.horizon, "word-enumeration horizon (default 30)");
    automaton->add_option("--guard", o.guard, "periods required before trusting a pattern");
    automaton->add_option("--min-evidence", o.min_evidence, "words required to accept a family");
    automaton->add_option("--presentation", o.presentation_path, "presentation JSON input");
    automaton->add_option("--out", o.out, "certification report JSON path");
    automaton->add_option("--dot", o.dot_out, "automaton DOT output path");

    CLI::App* recurrence = app.add_subcommand("recurrence", "C-finite sequence utilities");
    recurrence->require_subcommand(1);
    CLI::App* rterms = recurrence->add_subcommand("terms", "print the first terms");
    CLI::App* rzeros = recurrence->add_subcommand("zeros", "print the zero set up to a bound");
    CLI::App* rfit = recurrence->add_subcommand("fit", "fit a minimal recurrence to a prefix");
    for (CLI::App* sub : {rterms, rzeros}) {
        sub->add_option("--field", o.field, "field descriptor");
        sub->add_option("--coeffs", o.coeffs, "coefficients c1,...,cd");
        sub->add_option("--init", o.init, "initial values a0,...,a(d-1)");
        sub->add_option("-N,--n", o.horizon, "last index to inspect");
        sub->add_option("--out", o.out, "output path");
    }
    rfit->add_option("--field", o.field, "field descriptor");
    rfit->add_option("--prefix", o.prefix, "sequence prefix v0,v1,...");
    rfit->add_option("--out", o.out, "recurrence JSON output path");

    CLI::App* search = app.add_subcommand("search", "bounded search for degrees with h(n) > c");
    add_family_options(search, o);
    search->add_option("-N,--n", o.horizon, "top degree (default 30)");
    search->add_option("-c,--threshold", o.threshold, "threshold c");
    search->add_option("--n0", o.n0, "first degree to inspect");
    search->add_option("--cap", o.cap, "completion-degree cap for presentation input");
    search->add_option("--presentation", o.presentation_path, "presentation JSON input");

    CLI::App* verify = app.add_subcommand("verify", "run the full acceptance suite");
    verify->add_option("--seed", o.seed, "seed for the randomized suites");

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) return cmd_build(o);
        if (hilbert->parsed()) return cmd_hilbert(o);
        if (automaton->parsed()) return cmd_automaton(o);
        if (recurrence->parsed()) {
            if (rterms->parsed()) return cmd_recurrence_terms(o);
            if (rzeros->parsed()) return cmd_recurrence_zeros(o);
            return cmd_recurrence_fit(o);
        }
        if (search->parsed()) return cmd_search(o);
        if (verify->parsed()) return cmd_verify(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
