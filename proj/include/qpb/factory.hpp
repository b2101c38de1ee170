#pragma once

#include "qpb/element.hpp"
#include "qpb/presentation.hpp"

namespace qpb {

/// The matrix bialgebra O_q(M_n) with the Manin relations; generators a11..ann
/// in row-major order, all of degree 1. No determinant relation.
PresPtr presentationOqM(int n);

/// O_q(SL_2): alpha, beta, gamma, delta with the Manin relations and the
/// determinant relation; normal monomials a^a b^b c^c and b^b c^c d^d.
PresPtr presentationOqSl2();

/// O_q(P) = O_q(SL_2)/(gamma): t (invertible), p with tp = q^-1 pt.
PresPtr presentationOqP();

/// U_q(sl2): F, K (invertible), E; PBW normal form F^a K^b E^c.
PresPtr presentationUqSl2();

/// Free polynomial algebras on the base coordinates.
PresPtr presentationB1();  // C_q[u]
PresPtr presentationB2();  // C_q[v]
PresPtr presentationB12(); // C_q[u, u^-1]

}  // namespace qpb
