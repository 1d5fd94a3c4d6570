#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entfid/entanglement.hpp"
#include "entfid/families.hpp"
#include "entfid/json_io.hpp"
#include "entfid/sampling.hpp"

using namespace entfid;
using nlohmann::json;

namespace {

const char* kIdentityChannel = R"({
  "dim_in": 2, "dim_out": 2,
  "kraus": [[[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]]
})";

}  // namespace

TEST_CASE("parses a valid channel file") {
    const Channel c = channel_from_json_text(kIdentityChannel);
    CHECK(c.dim_in() == 2);
    CHECK(c.dim_out() == 2);
    CHECK(c.tp_residual() == 0.0);
}

TEST_CASE("rejects malformed channel documents") {
    CHECK_THROWS_AS(channel_from_json_text("not json at all"), ParseError);
    CHECK_THROWS_AS(channel_from_json_text("[1,2,3]"), ParseError);
    CHECK_THROWS_AS(channel_from_json_text(R"({"dim_in": 2, "dim_out": 2})"), ParseError);
    CHECK_THROWS_AS(channel_from_json_text(R"({"dim_in": 0, "dim_out": 2, "kraus": []})"),
                    ParseError);

    // ragged row: second row has one entry
    CHECK_THROWS_AS(channel_from_json_text(R"({
        "dim_in": 2, "dim_out": 2,
        "kraus": [[[[1,0],[0,0]], [[0,0]]]]
    })"),
                    ParseError);

    // non-finite entry
    CHECK_THROWS_AS(channel_from_json_text(R"({
        "dim_in": 2, "dim_out": 2,
        "kraus": [[[[1,0],[0,0]], [[0,0],[null,0]]]]
    })"),
                    ParseError);

    // entry is not a [re, im] pair
    CHECK_THROWS_AS(channel_from_json_text(R"({
        "dim_in": 2, "dim_out": 2,
        "kraus": [[[[1,0],[0,0]], [[0,0],[1,0,0]]]]
    })"),
                    ParseError);
}

TEST_CASE("channel serialization round trip") {
    Rng rng(77);
    const Channel c = random_channel(rng, 2, 3);
    const Channel back = channel_from_json_text(channel_to_json(c).dump());
    CHECK(back.dim_in() == c.dim_in());
    CHECK(back.dim_out() == c.dim_out());
    REQUIRE(back.kraus().size() == c.kraus().size());
    for (size_t i = 0; i < c.kraus().size(); ++i)
        CHECK(max_abs_diff(back.kraus()[i], c.kraus()[i]) == 0.0);
}

TEST_CASE("report serialization carries the documented fields") {
    const Channel c = amplitude_damping(0.5).channel;
    FidelityReport fid = max_fidelity(c);
    const EntanglementReport ent = input_entanglement(c, fid);

    const json jf = fidelity_report_to_json(fid);
    CHECK(jf.at("o_value").get<double>() == doctest::Approx(0.75));
    CHECK(jf.at("top_eigenvalue").get<double>() == doctest::Approx(1.5));
    CHECK(jf.at("degeneracy").get<int>() == 1);
    CHECK(jf.at("input_kind").get<std::string>() == "unique_pure");
    CHECK(jf.at("convention").get<std::string>() == "overlap_squared_fidelity");
    CHECK(!jf.contains("separable_witness"));

    const json je = entanglement_report_to_json(ent);
    CHECK(je.at("e_value").get<double>() == doctest::Approx(0.9182958340544896));
    CHECK(je.at("method").get<std::string>() == "pure_unique");
    CHECK(je.at("assumption").get<std::string>() == "pure_state_minimum_over_support");

    // degenerate case carries the witness once attached
    const Channel deg = pcubed_channel(0.5, 0.0).channel;
    FidelityReport fdeg = max_fidelity(deg);
    const EntanglementReport edeg = input_entanglement(deg, fdeg);
    fdeg.separable_witness = edeg.minimizer;
    const json jd = fidelity_report_to_json(fdeg);
    CHECK(jd.at("input_kind").get<std::string>() == "degenerate_family");
    CHECK(jd.contains("separable_witness"));

    const json jed = entanglement_report_to_json(edeg);
    CHECK(jed.at("method").get<std::string>() == "pencil_product_state");
    CHECK(jed.at("e_value").get<double>() == 0.0);
}
