#include "kleincm/classgroup.hpp"

#include <stdexcept>

namespace kleincm {

namespace {

void validate(const ClassGroupShape& s) {
    for (long rj : s.two_part)
        if (rj < 0) throw std::invalid_argument("class group shape: negative multiplicity");
    for (const Int& n : s.odd_part) {
        if (n < 1) throw std::invalid_argument("class group shape: non-positive cyclic order");
        if (mpz_even_p(n.get_mpz_t()))
            throw std::invalid_argument("class group shape: even order in the odd part");
    }
}

}  // namespace

long ClassGroupShape::r() const {
    long total = 0;
    for (long rj : two_part) total += rj;
    return total;
}

Int ClassGroupShape::class_number() const {
    Int h = 1;
    for (size_t j = 0; j < two_part.size(); ++j)
        for (long c = 0; c < two_part[j]; ++c) h <<= (j + 1);
    for (const Int& n : odd_part) h *= n;
    return h;
}

GaloisResult galois_structure(const ClassGroupShape& shape) {
    validate(shape);
    GaloisResult out;
    out.degree = 1;
    for (size_t j = 1; j < shape.two_part.size(); ++j) {
        Int order = Int(1) << j;  // Z/2^{j+1} maps to Z/2^j
        for (long c = 0; c < shape.two_part[j]; ++c) {
            out.quotient.push_back(order);
            out.degree *= order;
        }
    }
    for (const Int& n : shape.odd_part) {
        if (n == 1) continue;
        out.quotient.push_back(n);
        out.degree *= n;
    }
    return out;
}

LemmaQuantities lemma_quantities(const ClassGroupShape& shape) {
    validate(shape);
    LemmaQuantities q;
    q.r = shape.r();
    q.gamma = q.r;
    q.index_i_kk0_pk = Int(1) << q.r;
    return q;
}

}  // namespace kleincm
