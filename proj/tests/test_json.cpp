#include "eulerpade/error.hpp"
#include "eulerpade/json_io.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace eulerpade;

namespace {

const QuadraticField Q;
const QuadraticField Q5(5);

}  // namespace

TEST_CASE("certificate JSON field order and content") {
    const Certificate c = certify_nonvanishing(Q, {FieldElement(Q, 0), FieldElement(Q, -1)}, {FieldElement(Q, 1)}, 2, 2, 8);
    const Json j = to_json(c);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"field_d", "lambdas", "alphas", "prime", "place", "precision",
                                           "partial_valuation", "tail_valuation_bound", "status"});
    CHECK(j["field_d"].is_null());
    CHECK(j["prime"] == 2);
    CHECK(j["partial_valuation"] == "1");
    CHECK(j["status"] == "nonzero");
}

TEST_CASE("property: certificates round-trip and re-verify") {
    std::mt19937 rng(61);
    for (long d : {0L, 5L, -1L, 3L}) {
        const QuadraticField K = QuadraticField::from_optional(d ? std::optional<long>(d) : std::nullopt);
        for (int trial = 0; trial < 8; ++trial) {
            const FieldElement a = oracle::random_nonzero_integral(rng, K, 5);
            std::vector<FieldElement> lambda{oracle::random_nonzero_integral(rng, K, 9), oracle::random_integral(rng, K, 9)};
            const Certificate c = certify_nonvanishing(K, lambda, {a}, 2, 20, 16);
            const std::string text = to_json(c).dump();
            const Certificate back = certificate_from_json(Json::parse(text));
            CHECK(to_json(back).dump() == text);
            CHECK(back.status == c.status);
            CHECK(back.place == c.place);
            CHECK(back.lambdas == c.lambdas);
            CHECK(verify_certificate(back));
        }
    }
}

TEST_CASE("place and certified value JSON") {
    for (long p : {2L, 5L, 11L}) {
        for (const Place& v : places_above(Q5, p)) {
            const Json j = to_json(v);
            CHECK(place_from_json(j, Q5) == v);
        }
    }
    const CertifiedValue two = euler_eval_certified(places_above(Q, 2)[0], FieldElement(Q, 1), 2);
    CHECK(to_json(two).dump() ==
          R"({"p":2,"place":"rational","N":2,"residue":"2","tail_valuation_bound":"3","terms_used":4})");
    const CertifiedValue inert = euler_eval_certified(places_above(Q5, 2)[0], FieldElement(Q5, 0, 1), 3);
    const Json ji = to_json(inert);
    CHECK(ji["place"] == "inert");
    CHECK(ji["residue"].is_array());
    CHECK(ji["residue"].size() == 2);
}

TEST_CASE("polynomial JSON round trip") {
    const Polynomial p(Q5, {FieldElement(Q5, Rational(1, 2), 3), FieldElement(Q5), FieldElement(Q5, -7, Rational(2, 3))});
    const Json j = to_json(p);
    CHECK(polynomial_from_json(j, Q5) == p);
    CHECK(j["coeffs"][0] == Json::array({"1/2", "3"}));
}

TEST_CASE("malformed JSON is a parse error") {
    const auto code = [](const std::string& text) {
        try {
            certificate_from_json(Json::parse(text));
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::InvalidArgument;
    };
    CHECK(code(R"({"field_d":null})") == ErrorCode::ParseError);
    CHECK(code(R"({"field_d":"x","lambdas":[],"alphas":[],"prime":2,"place":{},"precision":1,)"
               R"("partial_valuation":"0","tail_valuation_bound":"1","status":"nonzero"})") == ErrorCode::ParseError);
}

TEST_CASE("bound report JSON") {
    const Json j = to_json(theorem2_bounds(1, 1, 2, 17 * std::exp(17.0)));
    CHECK(j["s"] == 17.0);
    CHECK(j["containment"] == true);
    CHECK(j.contains("exponent"));
}
