#pragma once

#include <cstdint>
#include <optional>

#include "khdetect/diagram.hpp"
#include "khdetect/khovanov.hpp"
#include "khdetect/laurent_poly.hpp"

namespace khdetect {

// V(t) = sum (-1)^h t^{q/2} dim Kh^{h,q}. Throws DomainError on odd q.
LaurentPoly jones_from_kh(const BigradedDims& b);

// |V(-1)|
mpz_class determinant_from_jones(const LaurentPoly& v);

// Wirtinger presentation and Fox derivatives. The Alexander matrix drops
// the last arc's column and the last relation; the minor's determinant is
// normalised to be symmetric with Delta(1) = 1. Throws InternalError if the
// minor vanishes.
LaurentPoly alexander_fox(const PlanarDiagram& d);

// |Delta(-1)|
mpz_class determinant_from_alexander(const LaurentPoly& a);

// 2*delta when the delta-support is a single value, otherwise nothing.
std::optional<int> s_from_thin(const BigradedDims& b);

// Symmetrise a Laurent polynomial up to units +-t^k with p(1) > 0. Throws
// DomainError if no symmetric representative exists.
LaurentPoly normalise_alexander(const LaurentPoly& p);

}  // namespace khdetect
