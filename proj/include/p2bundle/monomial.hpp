#pragma once

#include <cstddef>
#include <vector>

namespace p2b {

// Exponents of a degree-d monomial x^a y^b z^c, a + b + c = d.
struct Monomial {
    int a = 0, b = 0, c = 0;
};

// Number of degree-d forms on the plane; 0 for d < 0. Doubles as h^0(O(d)).
inline long long monomial_count(int d) {
    if (d < 0) return 0;
    return static_cast<long long>(d + 1) * (d + 2) / 2;
}

inline long long h0_forms(int d) { return monomial_count(d); }

// h^2(O(d)) = h^0(O(-d-3)) by duality; h^1 of a line bundle vanishes.
inline long long h2_forms(int d) { return monomial_count(-d - 3); }

// Degree-d basis in graded-lex order with x heaviest:
// (d,0,0), (d-1,1,0), (d-1,0,1), ..., (0,0,d).
inline std::vector<Monomial> monomial_basis(int d) {
    std::vector<Monomial> basis;
    if (d < 0) return basis;
    basis.reserve(static_cast<std::size_t>(monomial_count(d)));
    for (int a = d; a >= 0; --a)
        for (int b = d - a; b >= 0; --b) basis.push_back({a, b, d - a - b});
    return basis;
}

// Position of m in monomial_basis(d).
inline std::size_t monomial_index(int d, Monomial m) {
    const int da = d - m.a;
    return static_cast<std::size_t>(da) * (da + 1) / 2 +
           static_cast<std::size_t>(da - m.b);
}

}  // namespace p2b
