#include "gcx/frobenius.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gcx {

namespace {

int pow_sign(int exponent) { return exponent % 2 ? -1 : 1; }

rmatrix zero_matrix(int n) { return rmatrix(n, std::vector<rational>(n, 0)); }

rmatrix identity_matrix(int n) {
    auto m = zero_matrix(n);
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

rmatrix mat_mul(const rmatrix& a, const rmatrix& b) {
    int n = (int)a.size();
    auto out = zero_matrix(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            if (a[i][k] != 0)
                for (int j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
    return out;
}

// solve a x = rhs for square a; returns empty on a singular system
std::vector<rational> solve_square(rmatrix a, std::vector<rational> rhs) {
    int n = (int)a.size();
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (a[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return {};
        std::swap(a[piv], a[col]);
        std::swap(rhs[piv], rhs[col]);
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            rational f = a[r][col] / a[col][col];
            for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<rational> x(n);
    for (int i = 0; i < n; ++i) x[i] = rhs[i] / a[i][i];
    return x;
}

// least-structure solution of a (rows x cols) system; empty on inconsistency
std::vector<rational> solve_rect(rmatrix a, std::vector<rational> rhs) {
    int rows = (int)a.size();
    int cols = rows ? (int)a[0].size() : 0;
    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (a[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[piv], a[rank]);
        std::swap(rhs[piv], rhs[rank]);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || a[r][col] == 0) continue;
            rational f = a[r][col] / a[rank][col];
            for (int c = col; c < cols; ++c) a[r][c] -= f * a[rank][c];
            rhs[r] -= f * rhs[rank];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (int r = rank; r < rows; ++r)
        if (rhs[r] != 0) return {};
    std::vector<rational> x(cols, 0);
    for (int r = 0; r < rank; ++r) x[pivot_col[r]] = rhs[r] / a[r][pivot_col[r]];
    return x;
}

std::vector<rational> apply_op(const rmatrix& m, const std::vector<rational>& x) {
    int n = (int)m.size();
    std::vector<rational> out(n, 0);
    for (int j = 0; j < n; ++j)
        if (x[j] != 0)
            for (int i = 0; i < n; ++i) out[i] += m[i][j] * x[j];
    return out;
}

std::vector<rational> basis_vector(int n, int i) {
    std::vector<rational> v(n, 0);
    v[i] = 1;
    return v;
}

std::vector<rational> mul_vectors(const frobenius_data& a,
                                  const std::vector<rational>& x,
                                  const std::vector<rational>& y) {
    int n = a.dim();
    std::vector<rational> out(n, 0);
    for (int i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < n; ++j) {
            if (y[j] == 0) continue;
            rational f = x[i] * y[j];
            for (int k = 0; k < n; ++k)
                if (a.mul[i][j][k] != 0) out[k] += f * a.mul[i][j][k];
        }
    }
    return out;
}

rational form_pair(const frobenius_data& a, const std::vector<rational>& x,
                   const std::vector<rational>& y) {
    rational out = 0;
    int n = a.dim();
    for (int i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < n; ++j)
            if (y[j] != 0) out += x[i] * a.form[i][j] * y[j];
    }
    return out;
}

bool is_zero(const std::vector<rational>& v) {
    return std::all_of(v.begin(), v.end(), [](const rational& x) { return x == 0; });
}

std::string describe(const frobenius_data& a, const std::vector<rational>& v) {
    std::ostringstream out;
    bool first = true;
    for (int i = 0; i < a.dim(); ++i) {
        if (v[i] == 0) continue;
        if (!first) out << " + ";
        out << v[i] << "*" << a.names[i];
        first = false;
    }
    if (first) out << "0";
    return out.str();
}

rational parse_rational(const std::string& tok, int line_no) {
    try {
        return rational(tok);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational '" + tok + "' on line " +
                                   std::to_string(line_no));
    }
}

} // namespace

int frobenius_data::find(const std::string& name) const {
    for (int i = 0; i < dim(); ++i)
        if (names[i] == name) return i;
    return -1;
}

frobenius_data parse_algebra(std::istream& in) {
    frobenius_data a;
    std::string line;
    int line_no = 0;
    auto need = [&](const std::string& name) {
        int i = a.find(name);
        if (i < 0)
            throw std::invalid_argument("unknown basis element '" + name + "' on line " +
                                       std::to_string(line_no));
        return i;
    };
    auto ensure_ops = [&] {
        if (!a.mul.empty()) return;
        int n = a.dim();
        if (n == 0) throw std::invalid_argument("no basis declared before structure lines");
        a.mul.assign(n, std::vector<std::vector<rational>>(n, std::vector<rational>(n, 0)));
        a.form = zero_matrix(n);
        a.diff = zero_matrix(n);
    };
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;
        if (kind == "degree") {
            int d;
            if (!(ls >> d) || (d != 0 && d != 1))
                throw std::invalid_argument("degree must be 0 or 1 on line " +
                                           std::to_string(line_no));
            a.form_degree = d;
        } else if (kind == "basis") {
            if (!a.mul.empty())
                throw std::invalid_argument("basis after structure lines on line " +
                                           std::to_string(line_no));
            std::string name, par;
            if (!(ls >> name >> par) || (par != "even" && par != "odd"))
                throw std::invalid_argument("expected 'basis <name> <even|odd>' on line " +
                                           std::to_string(line_no));
            if (a.find(name) >= 0)
                throw std::invalid_argument("duplicate basis element '" + name +
                                           "' on line " + std::to_string(line_no));
            a.names.push_back(name);
            a.parity.push_back(par == "odd");
        } else if (kind == "mul") {
            ensure_ops();
            std::string x, y, z, c;
            if (!(ls >> x >> y >> z >> c))
                throw std::invalid_argument("expected 'mul <x> <y> <target> <coeff>' on line " +
                                           std::to_string(line_no));
            a.mul[need(x)][need(y)][need(z)] += parse_rational(c, line_no);
        } else if (kind == "form") {
            ensure_ops();
            std::string x, y, c;
            if (!(ls >> x >> y >> c))
                throw std::invalid_argument("expected 'form <x> <y> <coeff>' on line " +
                                           std::to_string(line_no));
            a.form[need(x)][need(y)] += parse_rational(c, line_no);
        } else if (kind == "d" || kind == "s" || kind == "t") {
            ensure_ops();
            std::string x, z, c;
            if (!(ls >> x >> z >> c))
                throw std::invalid_argument("expected '" + kind +
                                           " <x> <target> <coeff>' on line " +
                                           std::to_string(line_no));
            rmatrix* m = kind == "d" ? &a.diff : kind == "s" ? &a.s : &a.t;
            if (m->empty()) *m = zero_matrix(a.dim());
            (*m)[need(z)][need(x)] += parse_rational(c, line_no);
        } else {
            throw std::invalid_argument("unknown directive '" + kind + "' on line " +
                                       std::to_string(line_no));
        }
        std::string extra;
        if (ls >> extra)
            throw std::invalid_argument("trailing tokens on line " + std::to_string(line_no));
    }
    ensure_ops();
    return a;
}

frobenius_data load_algebra(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open algebra file " + path);
    return parse_algebra(in);
}

std::string algebra_report::text() const {
    std::ostringstream out;
    for (const auto& it : items) {
        out << "check " << it.name << (it.ok ? " pass" : " fail");
        if (!it.ok && !it.witness.empty()) out << " " << it.witness;
        out << "\n";
    }
    out << "result " << (ok ? "pass" : "fail") << "\n";
    return out.str();
}

algebra_report validate(const frobenius_data& a) {
    algebra_report rep;
    int n = a.dim();
    auto item = [&](const std::string& name, bool good, const std::string& witness) {
        rep.items.push_back({name, good, good ? "" : witness});
        rep.ok = rep.ok && good;
    };
    auto at2 = [&](int i, int j) { return "at (" + a.names[i] + ", " + a.names[j] + ")"; };

    {
        bool good = true;
        std::string w;
        for (int i = 0; i < n && good; ++i)
            for (int j = 0; j < n && good; ++j)
                for (int k = 0; k < n && good; ++k)
                    if (a.mul[i][j][k] != 0 &&
                        (a.parity[i] + a.parity[j] - a.parity[k]) % 2 != 0) {
                        good = false;
                        w = at2(i, j) + " hits " + a.names[k];
                    }
        item("product-parity", good, w);
    }
    {
        bool good = true;
        std::string w;
        for (int i = 0; i < n && good; ++i)
            for (int j = 0; j < n && good; ++j)
                for (int k = 0; k < n && good; ++k) {
                    auto lhs = mul_vectors(a, mul_vectors(a, basis_vector(n, i),
                                                          basis_vector(n, j)),
                                           basis_vector(n, k));
                    auto rhs = mul_vectors(a, basis_vector(n, i),
                                           mul_vectors(a, basis_vector(n, j),
                                                       basis_vector(n, k)));
                    for (int l = 0; l < n; ++l) lhs[l] -= rhs[l];
                    if (!is_zero(lhs)) {
                        good = false;
                        w = "at (" + a.names[i] + ", " + a.names[j] + ", " + a.names[k] + ")";
                        break;
                    }
                }
        item("associativity", good, w);
    }
    {
        bool good = true;
        std::string w;
        for (int i = 0; i < n && good; ++i)
            for (int j = 0; j < n && good; ++j)
                if (a.form[i][j] != 0 &&
                    (a.parity[i] + a.parity[j] - a.form_degree) % 2 != 0) {
                    good = false;
                    w = at2(i, j);
                }
        item("form-degree", good, w);
    }
    {
        bool good = true;
        std::string w;
        for (int i = 0; i < n && good; ++i)
            for (int j = 0; j < n && good; ++j)
                if (a.form[i][j] != pow_sign(a.parity[i] * a.parity[j]) * a.form[j][i]) {
                    good = false;
                    w = at2(i, j);
                }
        item("form-symmetry", good, w);
    }
    {
        bool good = true;
        std::string w;
        for (int i = 0; i < n && good; ++i)
            for (int j = 0; j < n && good; ++j)
                for (int l = 0; l < n; ++l) {
                    rational lhs = 0, rhs = 0;
                    for (int k = 0; k < n; ++k) {
                        lhs += a.mul[i][j][k] * a.form[k][l];
                        rhs += a.mul[j][l][k] * a.form[i][k];
                    }
                    if (lhs != rhs) {
                        good = false;
                        w = "at (" + a.names[i] + ", " + a.names[j] + ", " + a.names[l] + ")";
                        break;
                    }
                }
        item("form-invariance", good, w);
    }
    {
        // nondegeneracy via a full pivot sweep
        auto m = a.form;
        int rank = 0;
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            for (int r = rank; r < n; ++r)
                if (m[r][col] != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) continue;
            std::swap(m[piv], m[rank]);
            for (int r = rank + 1; r < n; ++r) {
                if (m[r][col] == 0) continue;
                rational f = m[r][col] / m[rank][col];
                for (int c = col; c < n; ++c) m[r][c] -= f * m[rank][c];
            }
            ++rank;
        }
        item("form-nondegenerate", rank == n,
             "rank " + std::to_string(rank) + " of " + std::to_string(n));
    }
    {
        bool good = true;
        std::string w;
        for (int i = 0; i < n && good; ++i)
            for (int j = 0; j < n && good; ++j)
                if (a.diff[i][j] != 0 && (a.parity[i] + a.parity[j]) % 2 != 1) {
                    good = false;
                    w = at2(i, j);
                }
        item("d-parity", good, w);
    }
    {
        auto dd = mat_mul(a.diff, a.diff);
        bool good = true;
        std::string w;
        for (int i = 0; i < n && good; ++i)
            for (int j = 0; j < n && good; ++j)
                if (dd[i][j] != 0) {
                    good = false;
                    w = at2(i, j);
                }
        item("d-squared", good, w);
    }
    {
        bool good = true;
        std::string w;
        for (int i = 0; i < n && good; ++i)
            for (int j = 0; j < n && good; ++j) {
                auto lhs = apply_op(a.diff, mul_vectors(a, basis_vector(n, i),
                                                        basis_vector(n, j)));
                auto rhs = mul_vectors(a, apply_op(a.diff, basis_vector(n, i)),
                                       basis_vector(n, j));
                auto cross = mul_vectors(a, basis_vector(n, i),
                                         apply_op(a.diff, basis_vector(n, j)));
                for (int l = 0; l < n; ++l)
                    rhs[l] += pow_sign(a.parity[i]) * cross[l];
                for (int l = 0; l < n; ++l) lhs[l] -= rhs[l];
                if (!is_zero(lhs)) {
                    good = false;
                    w = at2(i, j);
                    break;
                }
            }
        item("leibniz", good, w);
    }
    {
        bool good = true;
        std::string w;
        for (int i = 0; i < n && good; ++i)
            for (int j = 0; j < n; ++j) {
                rational v = 0;
                for (int k = 0; k < n; ++k)
                    v += a.diff[k][i] * a.form[k][j] +
                         pow_sign(a.parity[i]) * a.diff[k][j] * a.form[i][k];
                if (v != 0) {
                    good = false;
                    w = at2(i, j);
                    break;
                }
            }
        item("d-form-compatibility", good, w);
    }
    if (a.has_s()) {
        {
            bool good = true;
            std::string w;
            for (int i = 0; i < n && good; ++i)
                for (int j = 0; j < n && good; ++j)
                    if (a.s[i][j] != 0 && (a.parity[i] + a.parity[j]) % 2 != 1) {
                        good = false;
                        w = at2(i, j);
                    }
            item("s-parity", good, w);
        }
        {
            auto ss = mat_mul(a.s, a.s);
            bool good = true;
            std::string w;
            for (int i = 0; i < n && good; ++i)
                for (int j = 0; j < n && good; ++j)
                    if (ss[i][j] != 0) {
                        good = false;
                        w = at2(i, j);
                    }
            item("s-squared", good, w);
        }
        {
            bool good = true;
            std::string w;
            for (int i = 0; i < n && good; ++i)
                for (int j = 0; j < n; ++j) {
                    rational v = 0;
                    for (int k = 0; k < n; ++k)
                        v += a.s[k][i] * a.form[k][j] -
                             pow_sign(a.parity[i]) * a.s[k][j] * a.form[i][k];
                    if (v != 0) {
                        good = false;
                        w = at2(i, j);
                        break;
                    }
                }
            item("s-form-symmetry", good, w);
        }
        {
            auto h = mat_mul(a.diff, a.s);
            auto sd = mat_mul(a.s, a.diff);
            bool good = true;
            std::string w;
            for (int i = 0; i < n && good; ++i)
                for (int j = 0; j < n && good; ++j) {
                    rational want = (i == j) ? 1 : 0;
                    if (a.has_t()) want -= a.t[i][j];
                    if (h[i][j] + sd[i][j] != want) {
                        good = false;
                        std::vector<rational> got(n);
                        for (int k = 0; k < n; ++k) got[k] = h[k][j] + sd[k][j];
                        w = "(ds+sd)(" + a.names[j] + ") = " + describe(a, got);
                    }
                }
            item("homotopy", good, w);
        }
    }
    if (a.has_t()) {
        {
            bool good = true;
            std::string w;
            for (int i = 0; i < n && good; ++i)
                for (int j = 0; j < n && good; ++j)
                    if (a.t[i][j] != 0 && (a.parity[i] + a.parity[j]) % 2 != 0) {
                        good = false;
                        w = at2(i, j);
                    }
            item("t-parity", good, w);
        }
        {
            auto tt = mat_mul(a.t, a.t);
            bool good = true;
            std::string w;
            for (int i = 0; i < n && good; ++i)
                for (int j = 0; j < n && good; ++j)
                    if (tt[i][j] != a.t[i][j]) {
                        good = false;
                        w = at2(i, j);
                    }
            item("t-idempotent", good, w);
        }
        {
            auto dt = mat_mul(a.diff, a.t);
            auto td = mat_mul(a.t, a.diff);
            bool good = true;
            std::string w;
            for (int i = 0; i < n && good; ++i)
                for (int j = 0; j < n && good; ++j)
                    if (dt[i][j] != td[i][j]) {
                        good = false;
                        w = at2(i, j);
                    }
            item("t-d-commute", good, w);
        }
        {
            bool good = true;
            std::string w;
            for (int i = 0; i < n && good; ++i)
                for (int j = 0; j < n; ++j) {
                    rational v = 0;
                    for (int k = 0; k < n; ++k)
                        v += a.t[k][i] * a.form[k][j] - a.t[k][j] * a.form[i][k];
                    if (v != 0) {
                        good = false;
                        w = at2(i, j);
                        break;
                    }
                }
            item("t-form-symmetry", good, w);
        }
        if (a.has_s()) {
            auto st = mat_mul(a.s, a.t);
            auto ts = mat_mul(a.t, a.s);
            bool good = true;
            std::string w;
            for (int i = 0; i < n && good; ++i)
                for (int j = 0; j < n && good; ++j)
                    if (st[i][j] != 0 || ts[i][j] != 0) {
                        good = false;
                        w = at2(i, j);
                    }
            item("s-t-zero", good, w);
        }
    }
    return rep;
}

rmatrix inverse_form(const frobenius_data& a) {
    int n = a.dim();
    // solve form * c = diag((-1)^(degree * parity)) column by column
    rmatrix c = zero_matrix(n);
    for (int q = 0; q < n; ++q) {
        std::vector<rational> rhs(n, 0);
        rhs[q] = pow_sign(a.form_degree * a.parity[q]);
        auto x = solve_square(a.form, rhs);
        if (x.empty()) throw std::runtime_error("singular inner product");
        for (int p = 0; p < n; ++p) c[p][q] = x[p];
    }
    return c;
}

std::vector<rational> rel1_value(const frobenius_data& a) {
    int n = a.dim();
    auto c = inverse_form(a);
    std::vector<rational> out(n, 0);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            if (c[p][q] == 0) continue;
            for (int k = 0; k < n; ++k) out[k] += c[p][q] * a.mul[p][q][k];
        }
    return out;
}

std::vector<rational> rel2_value(const frobenius_data& a, int x) {
    int n = a.dim();
    auto c = inverse_form(a);
    std::vector<rational> out(n, 0);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            if (c[p][q] == 0) continue;
            rational f = c[p][q] * pow_sign(a.parity[p] * a.parity[x]);
            auto px = mul_vectors(a, basis_vector(n, p), basis_vector(n, x));
            auto pxq = mul_vectors(a, px, basis_vector(n, q));
            for (int k = 0; k < n; ++k) out[k] += f * pxq[k];
        }
    return out;
}

std::vector<rational> rel3_value(const frobenius_data& a) {
    int n = a.dim();
    auto c = inverse_form(a);
    std::vector<rational> out(n, 0);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            if (c[p][q] == 0) continue;
            for (int r = 0; r < n; ++r)
                for (int u = 0; u < n; ++u) {
                    if (c[r][u] == 0) continue;
                    // terms a_i a_j b_i b_j with (a_i,b_i) = (p,q), (a_j,b_j) = (r,u)
                    rational f = c[p][q] * c[r][u] * pow_sign(a.parity[r] * a.parity[q]);
                    auto pr = mul_vectors(a, basis_vector(n, p), basis_vector(n, r));
                    auto prq = mul_vectors(a, pr, basis_vector(n, q));
                    auto prqu = mul_vectors(a, prq, basis_vector(n, u));
                    for (int k = 0; k < n; ++k) out[k] += f * prqu[k];
                }
        }
    return out;
}

bool check_rel1(const frobenius_data& a) { return is_zero(rel1_value(a)); }

bool check_rel2(const frobenius_data& a) {
    for (int x = 0; x < a.dim(); ++x)
        if (!is_zero(rel2_value(a, x))) return false;
    return true;
}

bool check_rel3(const frobenius_data& a) { return is_zero(rel3_value(a)); }

hodge_pair hodge_split(const frobenius_data& a) {
    int n = a.dim();
    // image of d with preimages, by column echelon in basis order
    std::vector<std::vector<rational>> image, pre;
    std::vector<int> pivot_row;
    for (int j = 0; j < n; ++j) {
        std::vector<rational> vec(n), c = basis_vector(n, j);
        for (int i = 0; i < n; ++i) vec[i] = a.diff[i][j];
        for (size_t k = 0; k < image.size(); ++k) {
            int r = pivot_row[k];
            if (vec[r] == 0) continue;
            rational f = vec[r] / image[k][r];
            for (int i = 0; i < n; ++i) vec[i] -= f * image[k][i];
            for (int i = 0; i < n; ++i) c[i] -= f * pre[k][i];
        }
        int r = -1;
        for (int i = 0; i < n; ++i)
            if (vec[i] != 0) {
                r = i;
                break;
            }
        if (r < 0) continue;
        image.push_back(vec);
        pre.push_back(c);
        pivot_row.push_back(r);
    }
    int rank = (int)image.size();

    // kernel of d, parity block by parity block
    std::vector<std::vector<rational>> kernel;
    for (int p = 0; p < 2; ++p) {
        std::vector<int> cols;
        for (int j = 0; j < n; ++j)
            if (a.parity[j] == p) cols.push_back(j);
        rmatrix m(n, std::vector<rational>(cols.size(), 0));
        for (size_t cj = 0; cj < cols.size(); ++cj)
            for (int i = 0; i < n; ++i) m[i][cj] = a.diff[i][cols[cj]];
        // row echelon, record pivot columns
        std::vector<int> piv_of_col(cols.size(), -1);
        int rk = 0;
        for (size_t col = 0; col < cols.size() && rk < n; ++col) {
            int piv = -1;
            for (int r = rk; r < n; ++r)
                if (m[r][col] != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) continue;
            std::swap(m[piv], m[rk]);
            for (int r = 0; r < n; ++r) {
                if (r == rk || m[r][col] == 0) continue;
                rational f = m[r][col] / m[rk][col];
                for (size_t c = col; c < cols.size(); ++c) m[r][c] -= f * m[rk][c];
            }
            piv_of_col[col] = rk;
            ++rk;
        }
        for (size_t col = 0; col < cols.size(); ++col) {
            if (piv_of_col[col] >= 0) continue;
            std::vector<rational> v(n, 0);
            v[cols[col]] = 1;
            for (size_t c = 0; c < col; ++c)
                if (piv_of_col[c] >= 0)
                    v[cols[c]] = -m[piv_of_col[c]][col] / m[piv_of_col[c]][c];
            kernel.push_back(v);
        }
    }

    // complement of the image inside the kernel
    std::vector<std::vector<rational>> w;
    {
        auto pool = image;
        auto rows = pivot_row;
        for (auto v : kernel) {
            for (size_t k = 0; k < pool.size(); ++k) {
                int r = rows[k];
                if (v[r] == 0) continue;
                rational f = v[r] / pool[k][r];
                for (int i = 0; i < n; ++i) v[i] -= f * pool[k][i];
            }
            int r = -1;
            for (int i = 0; i < n; ++i)
                if (v[i] != 0) {
                    r = i;
                    break;
                }
            if (r < 0) continue;
            pool.push_back(v);
            rows.push_back(r);
            w.push_back(v);
        }
    }
    int h = (int)w.size();

    // push the preimages orthogonal to the homology representatives
    if (h > 0) {
        rmatrix gram(h, std::vector<rational>(h, 0));
        for (int l = 0; l < h; ++l)
            for (int j = 0; j < h; ++j) gram[j][l] = form_pair(a, w[l], w[j]);
        for (int i = 0; i < rank; ++i) {
            std::vector<rational> rhs(h);
            for (int j = 0; j < h; ++j) rhs[j] = form_pair(a, pre[i], w[j]);
            auto z = solve_rect(gram, rhs);
            if (z.empty())
                throw std::runtime_error("the form induced on the homology is degenerate");
            for (int l = 0; l < h; ++l)
                for (int k = 0; k < n; ++k) pre[i][k] -= z[l] * w[l][k];
        }
    }

    // make the corrected preimages isotropic, one at a time
    for (int i = 0; i < rank; ++i) {
        rmatrix rows;
        std::vector<rational> rhs;
        for (int j = 0; j < i; ++j) {
            std::vector<rational> row(rank);
            for (int l = 0; l < rank; ++l) row[l] = form_pair(a, image[l], pre[j]);
            rows.push_back(row);
            rhs.push_back(form_pair(a, pre[i], pre[j]));
        }
        {
            std::vector<rational> row(rank);
            for (int l = 0; l < rank; ++l) row[l] = 2 * form_pair(a, pre[i], image[l]);
            rows.push_back(row);
            rhs.push_back(form_pair(a, pre[i], pre[i]));
        }
        auto beta = solve_rect(rows, rhs);
        if (beta.empty())
            throw std::runtime_error("no isotropic complement over this form");
        for (int l = 0; l < rank; ++l)
            for (int k = 0; k < n; ++k) pre[i][k] -= beta[l] * image[l][k];
    }

    // assemble s and t through the split basis [w | image | pre]
    rmatrix q(n, std::vector<rational>(n, 0)), img(n, std::vector<rational>(n, 0)),
        keep(n, std::vector<rational>(n, 0));
    for (int j = 0; j < h; ++j)
        for (int i = 0; i < n; ++i) {
            q[i][j] = w[j][i];
            keep[i][j] = w[j][i];
        }
    for (int j = 0; j < rank; ++j)
        for (int i = 0; i < n; ++i) {
            q[i][h + j] = image[j][i];
            img[i][h + j] = pre[j][i];
            q[i][h + rank + j] = pre[j][i];
        }
    if (h + 2 * rank != n) throw std::logic_error("split does not fill the space");
    hodge_pair out;
    out.s = zero_matrix(n);
    out.t = zero_matrix(n);
    for (int col = 0; col < n; ++col) {
        auto x = solve_square(q, basis_vector(n, col));
        if (x.empty()) throw std::logic_error("split basis is not a basis");
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                out.s[i][col] += img[i][k] * x[k];
                out.t[i][col] += keep[i][k] * x[k];
            }
    }
    return out;
}

frobenius_data tensor_product(const frobenius_data& a, const frobenius_data& b) {
    frobenius_data p;
    int na = a.dim(), nb = b.dim(), n = na * nb;
    p.form_degree = (a.form_degree + b.form_degree) % 2;
    auto id = [&](int i, int j) { return i * nb + j; };
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j) {
            p.names.push_back(a.names[i] + "." + b.names[j]);
            p.parity.push_back((a.parity[i] + b.parity[j]) % 2);
        }
    p.mul.assign(n, std::vector<std::vector<rational>>(n, std::vector<rational>(n, 0)));
    p.form = zero_matrix(n);
    p.diff = zero_matrix(n);
    for (int i1 = 0; i1 < na; ++i1)
        for (int j1 = 0; j1 < nb; ++j1)
            for (int i2 = 0; i2 < na; ++i2)
                for (int j2 = 0; j2 < nb; ++j2) {
                    int koszul = pow_sign(b.parity[j1] * a.parity[i2]);
                    p.form[id(i1, j1)][id(i2, j2)] =
                        koszul * a.form[i1][i2] * b.form[j1][j2];
                    for (int k1 = 0; k1 < na; ++k1)
                        for (int k2 = 0; k2 < nb; ++k2)
                            p.mul[id(i1, j1)][id(i2, j2)][id(k1, k2)] =
                                koszul * a.mul[i1][i2][k1] * b.mul[j1][j2][k2];
                }
    for (int i1 = 0; i1 < na; ++i1)
        for (int j1 = 0; j1 < nb; ++j1) {
            for (int k = 0; k < na; ++k)
                p.diff[id(k, j1)][id(i1, j1)] += a.diff[k][i1];
            for (int k = 0; k < nb; ++k)
                p.diff[id(i1, k)][id(i1, j1)] += pow_sign(a.parity[i1]) * b.diff[k][j1];
        }
    if (a.has_s()) {
        p.s = zero_matrix(n);
        for (int i1 = 0; i1 < na; ++i1)
            for (int j1 = 0; j1 < nb; ++j1)
                for (int k = 0; k < na; ++k) p.s[id(k, j1)][id(i1, j1)] += a.s[k][i1];
    }
    if (a.has_t()) {
        p.t = zero_matrix(n);
        for (int i1 = 0; i1 < na; ++i1)
            for (int j1 = 0; j1 < nb; ++j1)
                for (int k = 0; k < na; ++k) p.t[id(k, j1)][id(i1, j1)] += a.t[k][i1];
    }
    return p;
}

frobenius_data random_contractible_algebra(std::mt19937& rng) {
    auto pick = [&](int lo, int hi) {
        return lo + (int)(rng() % (unsigned)(hi - lo + 1));
    };
    frobenius_data k;
    k.form_degree = 1;
    k.names = {"1", "a"};
    k.parity = {0, 1};
    k.mul.assign(2, std::vector<std::vector<rational>>(2, std::vector<rational>(2, 0)));
    k.form = zero_matrix(2);
    k.diff = zero_matrix(2);
    rational square = pick(0, 2); // a*a = square * 1
    k.mul[0][0][0] = 1;
    k.mul[0][1][1] = 1;
    k.mul[1][0][1] = 1;
    k.mul[1][1][0] = square;
    rational lambda = pick(1, 3);
    k.form[0][1] = lambda;
    k.form[1][0] = lambda;
    rational mu = pick(1, 3);
    k.diff[0][1] = mu; // d(a) = mu * 1

    frobenius_data c;
    c.form_degree = 0;
    c.names = {"u", "x"};
    c.parity = {0, 0};
    c.mul.assign(2, std::vector<std::vector<rational>>(2, std::vector<rational>(2, 0)));
    c.form = zero_matrix(2);
    c.diff = zero_matrix(2);
    rational cc = pick(-1, 2); // x*x = cc * u
    c.mul[0][0][0] = 1;
    c.mul[0][1][1] = 1;
    c.mul[1][0][1] = 1;
    c.mul[1][1][0] = cc;
    rational beta = pick(-2, 2);
    while (cc * beta * beta == 1) beta += 1;
    c.form[0][0] = beta;
    c.form[0][1] = 1;
    c.form[1][0] = 1;
    c.form[1][1] = cc * beta;

    auto t = tensor_product(k, c);
    int n = t.dim();

    // random parity-preserving change of basis with small integer entries
    rmatrix q, qinv;
    while (qinv.empty()) {
        q = zero_matrix(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (t.parity[i] == t.parity[j]) q[i][j] = pick(-2, 2);
        rmatrix inv = zero_matrix(n);
        for (int col = 0; col < n; ++col) {
            auto x = solve_square(q, basis_vector(n, col));
            if (x.empty()) {
                inv.clear();
                break;
            }
            for (int i = 0; i < n; ++i) inv[i][col] = x[i];
        }
        qinv = inv;
    }

    frobenius_data out;
    out.form_degree = t.form_degree;
    for (int i = 0; i < n; ++i) {
        out.names.push_back("e" + std::to_string(i));
        out.parity.push_back(t.parity[i]);
    }
    out.mul.assign(n, std::vector<std::vector<rational>>(n, std::vector<rational>(n, 0)));
    out.form = zero_matrix(n);
    out.diff = mat_mul(qinv, mat_mul(t.diff, q));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<rational> qi(n), qj(n);
            for (int p = 0; p < n; ++p) {
                qi[p] = q[p][i];
                qj[p] = q[p][j];
            }
            out.form[i][j] = form_pair(t, qi, qj);
            auto prod = mul_vectors(t, qi, qj);
            auto coeff = apply_op(qinv, prod);
            for (int k = 0; k < n; ++k) out.mul[i][j][k] = coeff[k];
        }
    auto hp = hodge_split(out);
    out.s = hp.s;
    return out;
}

} // namespace gcx
