#include "gcx/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <future>
#include <sstream>
#include <utility>

#include "gcx/rational.hpp"

namespace gcx {

namespace {

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    b %= p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

// dense elimination modulo a word-sized prime.  a modular rank is only a
// lower bound on the rational rank, so the caller may trust it solely when
// it hits the shape bound.
int rank_mod(int rows, const std::vector<std::map<int, int>>& cols, std::uint64_t p) {
    int n = (int)cols.size();
    std::vector<std::vector<std::uint32_t>> m(rows, std::vector<std::uint32_t>(n, 0));
    for (int j = 0; j < n; ++j)
        for (const auto& [i, v] : cols[j])
            m[i][j] = (std::uint32_t)(((long long)v % (long long)p + (long long)p) % (long long)p);
    int rank = 0;
    for (int j = 0; j < n && rank < rows; ++j) {
        int piv = -1;
        for (int i = rank; i < rows; ++i)
            if (m[i][j]) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(m[piv], m[rank]);
        std::uint64_t inv = pow_mod(m[rank][j], p - 2, p);
        for (int i = rank + 1; i < rows; ++i) {
            if (!m[i][j]) continue;
            std::uint64_t f = (p - m[i][j]) * inv % p;
            for (int k = j; k < n; ++k)
                m[i][k] = (std::uint32_t)((m[i][k] + f * m[rank][k]) % p);
        }
        ++rank;
    }
    return rank;
}

// fraction-free sparse elimination.  rows are kept as sorted (column, value)
// vectors, pivots follow the Markowitz fill estimate, and every updated row
// is divided by its content to keep the integers short.
int rank_fraction_free(int rows, const std::vector<std::map<int, int>>& cols) {
    int n = (int)cols.size();
    std::vector<std::vector<std::pair<int, integer>>> row(rows);
    std::vector<int> colcount(n, 0);
    for (int j = 0; j < n; ++j)
        for (const auto& [i, v] : cols[j]) {
            if (v == 0) continue;
            row[i].emplace_back(j, v);
            ++colcount[j];
        }
    std::vector<char> rowdone(rows, 0);
    int rank = 0;
    std::vector<std::pair<int, integer>> merged;
    while (true) {
        int bi = -1, bj = -1;
        long long best = 0;
        const integer* bestval = nullptr;
        for (int i = 0; i < rows; ++i) {
            if (rowdone[i] || row[i].empty()) continue;
            long long rl = (long long)row[i].size();
            for (const auto& [j, v] : row[i]) {
                long long score = (rl - 1) * (colcount[j] - 1);
                if (bi < 0 || score < best ||
                    (score == best && abs(v) < abs(*bestval))) {
                    best = score;
                    bi = i;
                    bj = j;
                    bestval = &v;
                }
            }
        }
        if (bi < 0) break;
        ++rank;
        rowdone[bi] = 1;
        for (const auto& [j, v] : row[bi]) --colcount[j];
        const auto& prow = row[bi];
        integer pv;
        for (const auto& [j, v] : prow)
            if (j == bj) pv = v;
        for (int i = 0; i < rows; ++i) {
            if (rowdone[i] || row[i].empty()) continue;
            auto it = std::lower_bound(
                row[i].begin(), row[i].end(), bj,
                [](const std::pair<int, integer>& e, int j) { return e.first < j; });
            if (it == row[i].end() || it->first != bj) continue;
            integer a = it->second;
            merged.clear();
            auto ai = row[i].begin(), ae = row[i].end();
            auto pi = prow.begin(), pe = prow.end();
            while (ai != ae || pi != pe) {
                if (pi == pe || (ai != ae && ai->first < pi->first)) {
                    merged.emplace_back(ai->first, pv * ai->second);
                    ++ai;
                } else if (ai == ae || pi->first < ai->first) {
                    merged.emplace_back(pi->first, -a * pi->second);
                    ++pi;
                } else {
                    integer t = pv * ai->second - a * pi->second;
                    if (t != 0) merged.emplace_back(ai->first, std::move(t));
                    ++ai;
                    ++pi;
                }
            }
            integer g = 0;
            for (const auto& e : merged) {
                g = gcd(g, e.second);
                if (g == 1) break;
            }
            if (g > 1)
                for (auto& e : merged) e.second /= g;
            for (const auto& [j, v] : row[i]) --colcount[j];
            for (const auto& [j, v] : merged) ++colcount[j];
            row[i].swap(merged);
        }
    }
    return rank;
}

} // namespace

int rank_exact(int rows, const std::vector<std::map<int, int>>& cols) {
    int n = (int)cols.size();
    int nzcols = 0;
    std::vector<char> rowseen(rows, 0);
    for (const auto& c : cols) {
        bool nz = false;
        for (const auto& [i, v] : c)
            if (v != 0) {
                nz = true;
                rowseen[i] = 1;
            }
        if (nz) ++nzcols;
    }
    int nzrows = (int)std::count(rowseen.begin(), rowseen.end(), 1);
    int shape_bound = std::min(nzrows, nzcols);
    if (shape_bound == 0) return 0;
    if ((long long)rows * n <= (1 << 20)) {
        // primes fixed once; several tries guard against an unlucky one
        for (std::uint64_t p : {1073741789ull, 1000000007ull, 998244353ull})
            if (rank_mod(rows, cols, p) == shape_bound) return shape_bound;
    }
    return rank_fraction_free(rows, cols);
}

int rank_exact(const level_matrix& m) { return rank_exact(m.rows, m.col); }

chain_data chain_of(const graph_complex& gc) {
    chain_data c;
    c.dims = gc.dims();
    c.boundary = gc.boundary;
    bool comm = gc.fam == family::com_underline || gc.fam == family::com_bar;
    int full = comm ? max_edges_comm(gc.a, gc.b) : max_edges_ribbon(gc.a, gc.b);
    c.complete = gc.levels() == 0 || gc.levels() - 1 >= full;
    return c;
}

chain_data chain_of(const bv_complex& bc) {
    chain_data c;
    c.dims = bc.dims();
    c.boundary = bc.boundary;
    c.complete = bc.levels() == 0 || bc.levels() - 1 >= max_edges_comm(bc.genus, 0);
    return c;
}

chain_data chain_of(const dft_complex& dc) {
    chain_data c;
    c.dims = dc.dims();
    c.boundary = dc.boundary;
    int full = max_edges_comm(dc.genus, dc.legs) + dc.legs;
    c.complete = dc.levels() == 0 || dc.levels() - 1 >= full;
    return c;
}

homology_report homology(const chain_data& c) {
    homology_report r;
    r.dims = c.dims;
    r.complete = c.complete;
    int levels = (int)c.dims.size();
    r.ranks.assign(levels, 0);
    {
        std::vector<std::future<int>> fut(levels);
        for (int i = 1; i < levels; ++i)
            fut[i] = std::async(std::launch::async,
                                [&c, i] { return rank_exact(c.boundary[i]); });
        for (int i = 1; i < levels; ++i) r.ranks[i] = fut[i].get();
    }
    r.betti.assign(levels, 0);
    for (int i = 0; i < levels; ++i) {
        int above = i + 1 < levels ? r.ranks[i + 1] : 0;
        r.betti[i] = c.dims[i] - r.ranks[i] - above;
    }
    r.betti_low = r.betti;
    if (!c.complete && levels > 0) r.betti_low[levels - 1] = 0;
    for (int i = 0; i < levels; ++i)
        r.euler += (i & 1 ? -1ll : 1ll) * c.dims[i];
    return r;
}

homology_report homology(const graph_complex& gc) { return homology(chain_of(gc)); }

std::vector<int> betti(const graph_complex& gc) { return homology(gc).betti; }

long long euler_characteristic(const graph_complex& gc) {
    long long chi = 0;
    auto d = gc.dims();
    for (int i = 0; i < (int)d.size(); ++i) chi += (i & 1 ? -1ll : 1ll) * d[i];
    return chi;
}

std::vector<int> hat_betti(const graph_complex& gc) {
    std::vector<int> hat{1};
    auto b = betti(gc);
    hat.insert(hat.end(), b.begin(), b.end());
    return hat;
}

std::string report_text(const homology_report& r) {
    std::ostringstream out;
    int levels = (int)r.dims.size();
    out << "levels " << levels << "\n";
    out << "complete " << (r.complete ? 1 : 0) << "\n";
    for (int i = 0; i < levels; ++i) out << "dim " << i << " " << r.dims[i] << "\n";
    for (int i = 1; i < levels; ++i) out << "rank " << i << " " << r.ranks[i] << "\n";
    for (int i = 0; i < levels; ++i) {
        out << "betti " << i << " ";
        if (r.betti_low[i] == r.betti[i])
            out << r.betti[i] << "\n";
        else
            out << r.betti_low[i] << " " << r.betti[i] << "\n";
    }
    out << "chi " << r.euler << "\n";
    return out.str();
}

} // namespace gcx
