#include "eulerpade/json_io.hpp"

#include "eulerpade/error.hpp"

namespace eulerpade {

namespace {

template <typename F>
auto guarded(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

Json element_list(const std::vector<FieldElement>& xs) {
    Json out = Json::array();
    for (const auto& x : xs) out.push_back(to_string(x));
    return out;
}

std::vector<FieldElement> element_list_from(const Json& j, const QuadraticField& K) {
    std::vector<FieldElement> out;
    for (const auto& item : j) out.push_back(parse_element(K, item.get<std::string>()));
    return out;
}

}  // namespace

Json to_json(const Place& v) {
    return Json{{"p", v.p}, {"splitting", to_string(v.splitting)}, {"e", v.e}, {"f", v.f}};
}

Place place_from_json(const Json& j, const QuadraticField& K) {
    return guarded([&] {
        const long p = j.at("p").get<long>();
        const Splitting s = parse_splitting(j.at("splitting").get<std::string>());
        for (const Place& v : places_above(K, p)) {
            if (v.splitting == s) return v;
        }
        throw Error(ErrorCode::ParseError, "no " + to_string(s) + " place above " + std::to_string(p));
    });
}

Json to_json(const CertifiedValue& value) {
    const CompletionElement& x = value.value;
    Json residue;
    if (x.ring().degree_two())
        residue = Json::array({x.u().get_str(), x.w().get_str()});
    else
        residue = x.u().get_str();
    return Json{{"p", x.place().p},
                {"place", to_string(x.place().splitting)},
                {"N", x.precision()},
                {"residue", residue},
                {"tail_valuation_bound", to_string(value.tail_valuation_bound)},
                {"terms_used", value.terms_used}};
}

Json to_json(const Polynomial& poly) {
    Json coeffs = Json::array();
    for (const auto& c : poly.coeffs()) coeffs.push_back(Json::array({to_string(c.x()), to_string(c.y())}));
    return Json{{"coeffs", coeffs}};
}

Polynomial polynomial_from_json(const Json& j, const QuadraticField& K) {
    return guarded([&] {
        std::vector<FieldElement> coeffs;
        for (const auto& pair : j.at("coeffs")) {
            if (!pair.is_array() || pair.size() != 2) throw Error(ErrorCode::ParseError, "coefficient must be [x, y]");
            coeffs.emplace_back(K, parse_rational(pair[0].get<std::string>()), parse_rational(pair[1].get<std::string>()));
        }
        return Polynomial(K, std::move(coeffs));
    });
}

Json to_json(const Certificate& cert) {
    Json d = cert.field.is_rational() ? Json(nullptr) : Json(cert.field.d());
    return Json{{"field_d", d},
                {"lambdas", element_list(cert.lambdas)},
                {"alphas", element_list(cert.alphas)},
                {"prime", cert.prime()},
                {"place", to_json(cert.place)},
                {"precision", cert.precision},
                {"partial_valuation", to_string(cert.partial_valuation)},
                {"tail_valuation_bound", to_string(cert.tail_valuation_bound)},
                {"status", to_string(cert.status)}};
}

Certificate certificate_from_json(const Json& j) {
    return guarded([&] {
        Certificate cert;
        const Json& d = j.at("field_d");
        cert.field = d.is_null() ? QuadraticField() : QuadraticField(d.get<long>());
        cert.lambdas = element_list_from(j.at("lambdas"), cert.field);
        cert.alphas = element_list_from(j.at("alphas"), cert.field);
        cert.place = place_from_json(j.at("place"), cert.field);
        if (j.at("prime").get<long>() != cert.place.p) throw Error(ErrorCode::ParseError, "prime and place disagree");
        cert.precision = j.at("precision").get<long>();
        cert.partial_valuation = parse_rational(j.at("partial_valuation").get<std::string>());
        cert.tail_valuation_bound = parse_rational(j.at("tail_valuation_bound").get<std::string>());
        const std::string status = j.at("status").get<std::string>();
        if (status == "nonzero")
            cert.status = CertificateStatus::nonzero;
        else if (status == "undetermined")
            cert.status = CertificateStatus::undetermined;
        else
            throw Error(ErrorCode::ParseError, "unknown status '" + status + "'");
        return cert;
    });
}

Json to_json(const BoundReport& r) {
    return Json{{"m", r.m},
                {"kappa", r.kappa},
                {"c1", r.c1},
                {"s", r.s},
                {"logH", r.logH},
                {"ell", r.ell},
                {"N_ell", r.N_ell},
                {"N_ell_plus_1", r.N_ell_plus_1},
                {"interval_lo", r.interval_lo},
                {"interval_hi", r.interval_hi},
                {"exponent", r.exponent},
                {"containment", r.containment}};
}

}  // namespace eulerpade
