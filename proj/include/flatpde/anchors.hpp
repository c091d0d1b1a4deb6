#pragma once

#include "flatpde/transform.hpp"

namespace flatpde {

/// The three n = 2 equations of 0 = D_k(DX) Y_X - D_k(DY), written as
/// combinations of 3 x 3 determinants with coefficients in dy and ddy.
/// Keys (1,1), (1,2), (2,2). Throws IndexOutOfRange unless n = 2.
Residuals determinantal_identities(const PointTransformation& t);

/// determinantal_identities with ddy[i][j] replaced by F^{i,j}.
Residuals determinantal_anchor(const PointTransformation& t, const PdeSystem& sys);

/// Second prolongation coefficients for n = 2 in expanded form, keys (1,1),
/// (1,2), (2,2).
Residuals prolong2_expanded_n2(const VectorField& v);

/// The flat-equivalent system for n = 2 in expanded form.
PdeSystem synthesize_expanded_n2(const JetContext& ctx, const SquareTable& s);

/// Number of square functions, counted by blocks.
long square_function_count(int n);
/// Number of component functions of (G, H, L, M).
long ghlm_count(int n);

}  // namespace flatpde
