#pragma once

#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "gcx/rational.hpp"

namespace gcx {

using rmatrix = std::vector<std::vector<rational>>;

// finite-dimensional Z/2-graded algebra with an invariant inner product of
// degree form_degree, a differential, and optionally a contracting homotopy s
// and a projector t.  operator matrices act by columns: op(e_j) = sum_i
// m[i][j] e_i.  everything is exact rationals.
struct frobenius_data {
    std::vector<std::string> names;
    std::vector<int> parity;   // 0 even, 1 odd
    int form_degree = 0;       // 0 or 1
    // mul[i][j][k]: coefficient of e_k in e_i * e_j
    std::vector<std::vector<std::vector<rational>>> mul;
    rmatrix form;              // form[i][j] = <e_i, e_j>
    rmatrix diff;
    rmatrix s;                 // empty when absent
    rmatrix t;                 // empty when absent

    int dim() const { return (int)names.size(); }
    bool has_s() const { return !s.empty(); }
    bool has_t() const { return !t.empty(); }
    int find(const std::string& name) const; // -1 when missing
};

// text format, one declaration per line, '#' comments:
//   degree <0|1>
//   basis <name> <even|odd>
//   mul <x> <y> <target> <coeff>     x*y += coeff * target
//   form <x> <y> <coeff>
//   d <x> <target> <coeff>
//   s <x> <target> <coeff>
//   t <x> <target> <coeff>
frobenius_data parse_algebra(std::istream& in);
frobenius_data load_algebra(const std::string& path);

// every identity the structure promises, evaluated exactly; failures carry a
// witness
struct check_item {
    std::string name;
    bool ok = true;
    std::string witness;
};
struct algebra_report {
    std::vector<check_item> items;
    bool ok = true;
    std::string text() const;
};
algebra_report validate(const frobenius_data& a);

// the copairing c with sum_p form[r][p] c[p][q] = delta(r,q) * (-1)^(degree *
// parity r).  raising through an odd form costs (-1)^|x|: for every basis x,
// sum_i <x, a_i> b_i = (-1)^(degree |x|) x, and sum_i a_i <b_i, x> =
// (-1)^(degree (|x|+1)) x.
rmatrix inverse_form(const frobenius_data& a);

// relation values over the copairing sum a_i (x) b_i.  rel1: sum a_i b_i.
// rel2 at x: sum (-1)^(|a_i||x|) a_i x b_i.  rel3: sum over pairs
// (-1)^(|a_j||b_i|) a_i a_j b_i b_j.  each returns a coefficient vector.
std::vector<rational> rel1_value(const frobenius_data& a);
std::vector<rational> rel2_value(const frobenius_data& a, int x);
std::vector<rational> rel3_value(const frobenius_data& a);
bool check_rel1(const frobenius_data& a);
bool check_rel2(const frobenius_data& a); // all basis x
bool check_rel3(const frobenius_data& a);

// split V = W + im d + U' with W a complement of im d in ker d and U' an
// isotropic complement orthogonal to W; s inverts d from im d onto U', t
// projects onto W, so ds + sd = id - t.  throws when the induced form on the
// homology is degenerate.
struct hodge_pair {
    rmatrix s, t;
};
hodge_pair hodge_split(const frobenius_data& a);

// graded tensor product; the form degrees add mod 2, the homotopy of the
// left factor extends as s (x) 1 when present
frobenius_data tensor_product(const frobenius_data& a, const frobenius_data& b);

// a random four-dimensional contractible algebra with an odd form: a
// two-dimensional contractible algebra tensored with a two-dimensional
// commutative one, pushed through a random change of basis, with s rebuilt
// by hodge_split
frobenius_data random_contractible_algebra(std::mt19937& rng);

} // namespace gcx
