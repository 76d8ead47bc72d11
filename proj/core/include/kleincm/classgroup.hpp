#pragma once

#include <vector>

#include "kleincm/rational.hpp"

namespace kleincm {

/// Ideal class group shape: two_part[j] is the multiplicity of Z/2^{j+1}Z,
/// odd_part lists the cyclic orders of the odd component G1.
struct ClassGroupShape {
    std::vector<long> two_part;
    std::vector<Int> odd_part;

    long r() const;        // total number of two-power factors
    Int class_number() const;
};

/// Structure of Gal(K(X,Y)/K) under conditions (C1)-(C3): every Z/2^j factor
/// drops to Z/2^{j-1} (the j = 1 factors vanish), the odd part survives.
struct GaloisResult {
    std::vector<Int> quotient;  // cyclic orders, two-part then odd part
    Int degree;                 // = h / 2^r
};

GaloisResult galois_structure(const ClassGroupShape& shape);

/// The class-field bookkeeping exponents under (C1)-(C3): epsilon, beta and
/// eta vanish, gamma = r, and [I(K/K0) : P_K] = 2^r.
struct LemmaQuantities {
    long epsilon = 0;
    long beta = 0;
    long eta = 0;
    long gamma = 0;
    long r = 0;
    Int index_i_kk0_pk;  // 2^r
};

LemmaQuantities lemma_quantities(const ClassGroupShape& shape);

}  // namespace kleincm
