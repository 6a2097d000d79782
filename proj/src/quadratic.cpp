#include "ncdq/quadratic.hpp"

namespace ncdq {

std::vector<Rational> laguerre_coefficients(unsigned n) {
    std::vector<Rational> out;
    out.reserve(n + 1);
    // term_j = (−1)^j C(n,j)/j!, built from term_{j−1} by −(n−j+1)/j².
    Rational term(1);
    out.push_back(term);
    for (unsigned j = 1; j <= n; ++j) {
        term *= Rational(-static_cast<long>(n - j + 1), static_cast<unsigned long>(j) * j);
        term.canonicalize();
        out.push_back(term);
    }
    return out;
}

}  // namespace ncdq
