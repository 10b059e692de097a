#pragma once

#include "eulerpade/certify.hpp"
#include "eulerpade/padics.hpp"
#include "eulerpade/places.hpp"
#include "eulerpade/polynomial.hpp"

#include <json.hpp>

namespace eulerpade {

/// Insertion-ordered so emitted documents are byte-stable.
using Json = nlohmann::ordered_json;

Json to_json(const Place& v);
Place place_from_json(const Json& j, const QuadraticField& K);

Json to_json(const CertifiedValue& value);

Json to_json(const Polynomial& poly);
Polynomial polynomial_from_json(const Json& j, const QuadraticField& K);

Json to_json(const Certificate& cert);
Certificate certificate_from_json(const Json& j);

Json to_json(const BoundReport& report);

}  // namespace eulerpade
