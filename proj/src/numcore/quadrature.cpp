#include "fraclab/numcore.hpp"

#include "fraclab/errors.hpp"
#include "rules_impl.hpp"

namespace fraclab {

QuadRule gauss_legendre(int n) {
    QuadRule rule;
    rules::legendre_rule<double>(n, rule.nodes, rule.weights);
    return rule;
}

QuadRule gauss_jacobi(int n, double exponent) {
    QuadRule rule;
    rules::jacobi_rule01<double>(n, exponent, rule.nodes, rule.weights);
    return rule;
}

} // namespace fraclab
