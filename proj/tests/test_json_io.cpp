#include <catch2/catch_amalgamated.hpp>

#include "autalg/json_io.hpp"

using namespace autalg;

namespace {

const FieldDescriptor Q = FieldDescriptor::rationals();
const FieldDescriptor F11 = FieldDescriptor::prime_field(11);

FieldElement qi(long long v) { return FieldElement::from_integer(Q, v); }

} // namespace

TEST_CASE("Matrix and subspace round trips", "[json]") {
    Matrix m(Q, 2, 3);
    m.at(0, 0) = qi(1);
    m.at(0, 2) = qi(2) / qi(3);
    m.at(1, 1) = qi(-5);
    json j = matrix_to_json(m);
    CHECK(j["field"] == "Q");
    CHECK(j["entries"][2] == "2/3");
    CHECK(matrix_from_json(j) == m);

    Subspace s = Subspace::span_rows(Q, {{qi(1), qi(1), qi(0)}, {qi(0), qi(2), qi(2)}}, 3);
    Subspace back = subspace_from_json(subspace_to_json(s));
    CHECK(back == s);

    json bad = matrix_to_json(m);
    bad["entries"] = json::array();
    CHECK_THROWS_AS(matrix_from_json(bad), field_error);
}

TEST_CASE("VLRS data round trip", "[json]") {
    VlrsData data = family_fermat(qi(2), qi(-1));
    VlrsData back = vlrs_from_json(vlrs_to_json(data));
    CHECK(back.m == data.m);
    CHECK(back.L == data.L);
    CHECK(back.R == data.R);
    CHECK(back.sigma == data.sigma);
    CHECK(hilbert_closed(back, 10).values == hilbert_closed(data, 10).values);
}

TEST_CASE("Presentation round trip preserves the relations", "[json]") {
    Presentation p = build_vlrs(family_fermat(qi(2), qi(-1)));
    json j = presentation_to_json(p);
    CHECK(j["generators"].size() == 6);
    CHECK(j["relations"].size() == 26);
    Presentation back = presentation_from_json(j);
    REQUIRE(back.generators.size() == p.generators.size());
    REQUIRE(back.relations.size() == p.relations.size());
    for (std::size_t i = 0; i < p.relations.size(); ++i)
        CHECK(back.relations[i].terms == p.relations[i].terms);
    MonomialOrder ord = p.declaration_order();
    CHECK(hilbert_oracle(back, back.declaration_order(), 8).values ==
          hilbert_oracle(p, ord, 8).values);

    json broken = j;
    broken["relations"][0][0]["word"] = {"zz"};
    CHECK_THROWS_AS(presentation_from_json(broken), field_error);
}

TEST_CASE("Recurrence and SML round trips", "[json]") {
    LinearRecurrence rec{Q, {qi(2), qi(1), qi(-2)}, {qi(1), qi(0), qi(4)}};
    LinearRecurrence back = recurrence_from_json(recurrence_to_json(rec));
    CHECK(back.coeffs == rec.coeffs);
    CHECK(back.initial == rec.initial);
    CHECK(zero_set(back, 20) == zero_set(rec, 20));

    json bad = recurrence_to_json(rec);
    bad["initial"].erase(2);
    CHECK_THROWS_AS(recurrence_from_json(bad), field_error);

    SMLSet s;
    s.finite = {3, 5};
    s.progressions = {{2, 10}};
    SMLSet t = sml_from_json(sml_to_json(s));
    CHECK(t == s);
    // Normalization drops finite points covered by a progression.
    json j = sml_to_json(s);
    j["finite"].push_back(12);
    CHECK(sml_from_json(j) == s);
}

TEST_CASE("Hilbert CSV round trip", "[json]") {
    HilbertData h = hilbert_closed(family_fermat(qi(2), qi(-1)), 6);
    std::string csv = hilbert_to_csv(h);
    CHECK(csv.substr(0, 11) == "n,h,method\n");
    CHECK(csv.find("4,11,closed") != std::string::npos);
    HilbertData back = hilbert_from_csv(csv);
    CHECK(back.values == h.values);
    CHECK(back.method == h.method);

    CHECK_THROWS_AS(hilbert_from_csv("h,n,method\n"), field_error);
    CHECK_THROWS_AS(hilbert_from_csv("n,h,method\n1,6,closed\n"), field_error);
    CHECK_THROWS_AS(hilbert_from_csv("n,h,method\n0,1,fancy\n"), field_error);
}

TEST_CASE("Automaton, series, and report serialization", "[json]") {
    Presentation p = build_vlrs(family_fermat(qi(2), qi(-1)));
    auto rep = certify_normal_words(p, p.declaration_order(), 30);

    json a = automaton_to_json(rep.automaton);
    CHECK(a["states"] == 6);
    CHECK(a["initial"] == 0);
    CHECK(a["accepting"].is_array());
    std::size_t weight2 = 0;
    for (const auto& t : a["transitions"]) {
        CHECK(t["from"].get<std::size_t>() < 6);
        CHECK(t["to"].get<std::size_t>() < 6);
        if (t["weight"] == 2) {
            ++weight2;
            CHECK(t["letter"] == "x3.b");
        }
    }
    CHECK(weight2 > 0);

    std::string dot = automaton_to_dot(rep.automaton);
    CHECK(dot.find("digraph automaton") != std::string::npos);
    CHECK(dot.find("doublecircle") != std::string::npos);
    CHECK(dot.find("x3.b (2)") != std::string::npos);

    RationalSeries s = series_from_json(series_to_json(rep.series));
    CHECK(s == rep.series);
    CHECK_THROWS_AS(series_from_json(json{{"num", {1}}, {"den", {2, 1}}}), field_error);

    json report = certification_to_json(rep, p);
    CHECK(report["verdict"] == "CERTIFIED");
    CHECK(report["families"].size() == 11);
    CHECK(report["residue"].empty());
    CHECK(report["series"]["den"] == std::vector<long long>{1, -1});
}

TEST_CASE("Groebner basis export and normal word listing", "[json]") {
    Presentation p = build_vlrs(family_segment(3, FieldElement::from_integer(F11, 2)));
    MonomialOrder ord = p.declaration_order();
    auto gb = truncated_groebner(p, ord, 6);
    json j = basis_to_json(gb, p);
    CHECK(j.size() == gb.elements.size());
    for (const auto& entry : j) {
        CHECK(entry.contains("leading_word"));
        CHECK(entry.contains("polynomial"));
        CHECK(!entry["polynomial"].empty());
    }

    std::string text = normal_words_text(normal_words(gb), p);
    CHECK(text.find("# degree 0 (1 words)") != std::string::npos);
    CHECK(text.find("# degree 1 (5 words)") != std::string::npos);
    CHECK(text.find("a.c") != std::string::npos);
}
