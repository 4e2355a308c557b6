#pragma once

// JSON/CSV/DOT serialization for every pipeline object.  JSON goes through
// nlohmann::json; all field elements travel as canonical literal strings so
// exactness survives the round trip.

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "autalg/automaton.hpp"
#include "autalg/groebner.hpp"

namespace autalg {

using nlohmann::json;

// ---------------------------------------------------------------- matrices

inline json matrix_to_json(const Matrix& m) {
    json j;
    j["field"] = m.field.str();
    j["rows"] = m.rows;
    j["cols"] = m.cols;
    json entries = json::array();
    for (const auto& e : m.entries) entries.push_back(e.str());
    j["entries"] = entries;
    return j;
}

inline Matrix matrix_from_json(const json& j) {
    FieldDescriptor fd = FieldDescriptor::parse(j.at("field").get<std::string>());
    Matrix m(fd, j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
    const json& entries = j.at("entries");
    if (entries.size() != m.rows * m.cols) throw field_error("matrix entry count mismatch");
    for (std::size_t i = 0; i < entries.size(); ++i)
        m.entries[i] = parse_element(entries[i].get<std::string>(), fd);
    return m;
}

inline json subspace_to_json(const Subspace& s) {
    json j = matrix_to_json(s.basis);
    j["ambient"] = s.ambient;
    return j;
}

inline Subspace subspace_from_json(const json& j) {
    Matrix basis = matrix_from_json(j);
    std::size_t ambient = j.at("ambient").get<std::size_t>();
    if (basis.cols != ambient) throw field_error("subspace basis width mismatch");
    return Subspace::span(std::move(basis));
}

inline json vlrs_to_json(const VlrsData& d) {
    json j;
    j["field"] = d.field.str();
    j["m"] = d.m;
    j["L"] = subspace_to_json(d.L);
    j["R"] = subspace_to_json(d.R);
    j["sigma"] = matrix_to_json(d.sigma);
    return j;
}

inline VlrsData vlrs_from_json(const json& j) {
    VlrsData d;
    d.field = FieldDescriptor::parse(j.at("field").get<std::string>());
    d.m = j.at("m").get<std::size_t>();
    d.L = subspace_from_json(j.at("L"));
    d.R = subspace_from_json(j.at("R"));
    d.sigma = matrix_from_json(j.at("sigma"));
    d.validate();
    return d;
}

// ------------------------------------------------------------ presentations

inline json polynomial_to_json(const NCPolynomial& poly, const Presentation& p) {
    json terms = json::array();
    for (const auto& [w, c] : poly.terms) {
        json term;
        term["coeff"] = c.str();
        json word = json::array();
        for (int g : w) word.push_back(p.generators[static_cast<std::size_t>(g)].name);
        term["word"] = word;
        terms.push_back(term);
    }
    return terms;
}

inline json presentation_to_json(const Presentation& p) {
    json j;
    j["field"] = p.field.str();
    json gens = json::array();
    for (const auto& g : p.generators) gens.push_back({{"name", g.name}, {"degree", g.degree}});
    j["generators"] = gens;
    json rels = json::array();
    for (const auto& rel : p.relations) rels.push_back(polynomial_to_json(rel, p));
    j["relations"] = rels;
    return j;
}

inline Presentation presentation_from_json(const json& j) {
    Presentation p;
    p.field = FieldDescriptor::parse(j.at("field").get<std::string>());
    for (const auto& g : j.at("generators"))
        p.generators.push_back({g.at("name").get<std::string>(), g.at("degree").get<int>()});
    for (const auto& rel : j.at("relations")) {
        NCPolynomial poly(p.field);
        for (const auto& term : rel) {
            Word w;
            for (const auto& name : term.at("word")) {
                int idx = p.generator_index(name.get<std::string>());
                if (idx < 0) throw field_error("relation uses unknown generator '" +
                                               name.get<std::string>() + "'");
                w.push_back(idx);
            }
            poly.add_term(w, parse_element(term.at("coeff").get<std::string>(), p.field));
        }
        p.relations.push_back(std::move(poly));
    }
    p.validate();
    return p;
}

// -------------------------------------------------------------- recurrences

inline json recurrence_to_json(const LinearRecurrence& r) {
    json j;
    j["field"] = r.field.str();
    json cs = json::array(), is = json::array();
    for (const auto& c : r.coeffs) cs.push_back(c.str());
    for (const auto& v : r.initial) is.push_back(v.str());
    j["coeffs"] = cs;
    j["initial"] = is;
    return j;
}

inline LinearRecurrence recurrence_from_json(const json& j) {
    LinearRecurrence r;
    r.field = FieldDescriptor::parse(j.at("field").get<std::string>());
    for (const auto& c : j.at("coeffs")) r.coeffs.push_back(parse_element(c.get<std::string>(), r.field));
    for (const auto& v : j.at("initial")) r.initial.push_back(parse_element(v.get<std::string>(), r.field));
    if (r.initial.size() != r.coeffs.size())
        throw field_error("recurrence needs as many initial values as coefficients");
    return r;
}

inline json sml_to_json(const SMLSet& s) {
    json j;
    j["finite"] = s.finite;
    json ps = json::array();
    for (auto [start, step] : s.progressions) ps.push_back({{"start", start}, {"step", step}});
    j["progressions"] = ps;
    return j;
}

inline SMLSet sml_from_json(const json& j) {
    SMLSet s;
    for (const auto& v : j.at("finite")) s.finite.push_back(v.get<std::size_t>());
    for (const auto& p : j.at("progressions"))
        s.progressions.push_back({p.at("start").get<std::size_t>(), p.at("step").get<std::size_t>()});
    s.normalize();
    return s;
}

// ------------------------------------------------------------- Hilbert data

inline std::string hilbert_method_name(HilbertData::Method m) {
    return m == HilbertData::Method::closed ? "closed" : "groebner";
}

inline std::string hilbert_to_csv(const HilbertData& h) {
    std::ostringstream out;
    out << "n,h,method\n";
    for (std::size_t n = 0; n < h.values.size(); ++n)
        out << n << "," << h.values[n] << "," << hilbert_method_name(h.method) << "\n";
    return out.str();
}

inline HilbertData hilbert_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "n,h,method")
        throw field_error("Hilbert CSV must start with header 'n,h,method'");
    HilbertData h;
    bool method_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string n_s, h_s, m_s;
        if (!std::getline(row, n_s, ',') || !std::getline(row, h_s, ',') || !std::getline(row, m_s))
            throw field_error("malformed Hilbert CSV row: " + line);
        if (std::stoull(n_s) != h.values.size())
            throw field_error("Hilbert CSV degrees must be consecutive from 0");
        h.values.push_back(std::stoll(h_s));
        HilbertData::Method m;
        if (m_s == "closed")
            m = HilbertData::Method::closed;
        else if (m_s == "groebner")
            m = HilbertData::Method::groebner;
        else
            throw field_error("unknown Hilbert method '" + m_s + "'");
        if (method_seen && m != h.method) throw field_error("mixed methods in Hilbert CSV");
        h.method = m;
        method_seen = true;
    }
    return h;
}

// ----------------------------------------------------------------- automata

inline json automaton_to_json(const WeightedAutomaton& a) {
    json j;
    j["states"] = a.state_count();
    j["initial"] = a.initial;
    json acc = json::array();
    for (std::size_t s = 0; s < a.state_count(); ++s)
        if (a.accepting[s]) acc.push_back(s);
    j["accepting"] = acc;
    json trans = json::array();
    for (std::size_t s = 0; s < a.state_count(); ++s)
        for (auto [letter, t] : a.transitions[s])
            trans.push_back({{"from", s},
                             {"to", t},
                             {"letter", a.alphabet[letter].label},
                             {"weight", a.alphabet[letter].weight}});
    j["transitions"] = trans;
    return j;
}

inline std::string automaton_to_dot(const WeightedAutomaton& a) {
    std::ostringstream out;
    out << "digraph automaton {\n  rankdir=LR;\n  start [shape=point];\n";
    for (std::size_t s = 0; s < a.state_count(); ++s)
        out << "  q" << s << " [shape=" << (a.accepting[s] ? "doublecircle" : "circle") << "];\n";
    out << "  start -> q" << a.initial << ";\n";
    for (std::size_t s = 0; s < a.state_count(); ++s)
        for (auto [letter, t] : a.transitions[s])
            out << "  q" << s << " -> q" << t << " [label=\"" << a.alphabet[letter].label << " ("
                << a.alphabet[letter].weight << ")\"];\n";
    out << "}\n";
    return out.str();
}

inline json series_to_json(const RationalSeries& s) {
    return json{{"num", s.num}, {"den", s.den}};
}

inline RationalSeries series_from_json(const json& j) {
    RationalSeries s;
    for (const auto& v : j.at("num")) s.num.push_back(v.get<long long>());
    for (const auto& v : j.at("den")) s.den.push_back(v.get<long long>());
    if (s.den.empty() || s.den[0] != 1) throw field_error("series denominator must start with 1");
    return s;
}

// -------------------------------------------------- Groebner basis, words

inline json basis_to_json(const TruncatedGroebnerBasis& gb, const Presentation& p) {
    json j = json::array();
    for (const auto& g : gb.elements) {
        const auto& [lead, coeff] = g.leading_term(gb.order);
        json words = json::array();
        for (int gen : lead) words.push_back(p.generators[static_cast<std::size_t>(gen)].name);
        j.push_back({{"leading_word", words}, {"polynomial", polynomial_to_json(g, p)}});
    }
    return j;
}

inline std::string normal_words_text(const std::vector<std::vector<Word>>& words_by_degree,
                                     const Presentation& p) {
    std::ostringstream out;
    for (std::size_t d = 0; d < words_by_degree.size(); ++d) {
        out << "# degree " << d << " (" << words_by_degree[d].size() << " words)\n";
        for (const Word& w : words_by_degree[d]) out << p.word_str(w) << "\n";
    }
    return out.str();
}

// ------------------------------------------------------------------ report

inline json certification_to_json(const CertificationReport& rep, const Presentation& p) {
    json j;
    switch (rep.verdict) {
        case CertificationReport::Verdict::certified: j["verdict"] = "CERTIFIED"; break;
        case CertificationReport::Verdict::undetermined: j["verdict"] = "UNDETERMINED"; break;
        case CertificationReport::Verdict::fit_failure: j["verdict"] = "FIT_FAILURE"; break;
    }
    json fams = json::array();
    for (const auto& f : rep.fit.families) {
        json fam;
        fam["prefix"] = f.prefix.empty() ? "1" : p.word_str(f.prefix);
        fam["loop"] = p.word_str(f.loop);
        fam["suffix"] = f.suffix.empty() ? "1" : p.word_str(f.suffix);
        fam["exponents_seen"] = f.exponents_seen;
        if (f.exponents)
            fam["exponents"] = sml_to_json(*f.exponents);
        else
            fam["exponents"] = nullptr;
        fams.push_back(fam);
    }
    j["families"] = fams;
    json residue = json::array();
    for (const Word& w : rep.fit.residue) residue.push_back(p.word_str(w));
    j["residue"] = residue;
    j["split_degree"] = rep.fit.split_degree;
    if (rep.verdict != CertificationReport::Verdict::fit_failure) {
        j["automaton"] = automaton_to_json(rep.automaton);
        j["series"] = series_to_json(rep.series);
        j["series_prefix"] = rep.series_prefix;
    }
    j["diagnostics"] = rep.diagnostics;
    return j;
}

} // namespace autalg
