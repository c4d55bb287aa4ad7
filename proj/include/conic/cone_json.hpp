#pragma once

#include <string>

#include "conic/cone.hpp"

namespace conic {

// Cone descriptors as JSON objects, e.g. {"kind":"circular","d":50,"alpha":0.5236}.
// Kinds: orthant{d}, subspace{d,k}, circular{d,alpha}, psd{n}, chamber_a{d},
// chamber_bc{d}, l1_descent{d,s}, schatten_descent{m,n,r}, polar{of:{...}};
// an optional "negated":true reflects the self-dual family.
ConeSpec cone_from_json_text(const std::string& text);
std::string cone_to_json_text(const ConeSpec& cone);

}  // namespace conic
