#pragma once

#include "heckecong/arith.hpp"

#include <vector>

namespace heckecong {

// Dense univariate polynomials over Q, coefficients stored low degree first.
// The zero polynomial is the empty vector.
using QPoly = std::vector<Rational>;

namespace qpoly {

void trim(QPoly& f);
long degree(const QPoly& f);  // -1 for zero
QPoly derivative(const QPoly& f);
QPoly mul(const QPoly& f, const QPoly& g);
QPoly add(const QPoly& f, const QPoly& g);
// Division with remainder; throws on division by zero polynomial.
void divmod(const QPoly& f, const QPoly& g, QPoly& quotient, QPoly& remainder);
QPoly monic(const QPoly& f);
QPoly gcd(const QPoly& f, const QPoly& g);  // monic, zero if both zero
QPoly radical(const QPoly& f);             // f / gcd(f, f'), monic
bool is_squarefree(const QPoly& f);
Rational eval(const QPoly& f, const Rational& x);

}  // namespace qpoly
}  // namespace heckecong
