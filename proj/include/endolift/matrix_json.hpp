#pragma once

// JSON encoding of matrices: {ring: {kind, m|n}, rows, cols, data}.
// GF(2) rows are arrays of 16-digit hex words, bit 0 of word 0 = column 0.

#include "endolift/fmatrix.hpp"
#include "endolift/zmod.hpp"
#include "json.hpp"

namespace endolift {

nlohmann::json matrix_to_json(const FMatrix& a);
nlohmann::json matrix_to_json(const ZMatrix& a);
FMatrix fmatrix_from_json(const nlohmann::json& j);
ZMatrix zmatrix_from_json(const nlohmann::json& j);

nlohmann::json ring_json_gf(int m);
nlohmann::json ring_json_zmod(int n);

}  // namespace endolift
