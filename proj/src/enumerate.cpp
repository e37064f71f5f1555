#include "ssv/enumerate.hpp"

#include <algorithm>
#include <cstdlib>

namespace ssv {

namespace {

// Static per-lattice data for the pruned scan.  The Gram graph is split into
// connected components; a definite component gets a reverse-order LDL
// decomposition Q(y) = sum_t D_t (y_t + sum_{j<t} M_tj y_j)^2 whose partial
// sums are monotone in the assigned prefix (all D_t share one sign), which is
// what makes zero-target scans over large definite blocks cheap.  Components
// where that fails (indefinite blocks, zero rows) fall back to exact partial
// values plus interval bounds on the unassigned remainder.
struct Component {
    std::vector<int> idx;                 // global indices, ascending
    int m = 0;
    bool monotone = false;
    int sign = 0;                         // pivot sign in monotone mode
    std::vector<BigRat> D;
    std::vector<std::vector<BigRat>> M;   // M[t][j], j < t
    std::vector<BigRat> reach;            // reach[t] = sum_{u>=t} |D_u| (1 + sum_j |M_uj|)^2
    std::vector<std::vector<Int>> g;      // local gram (fallback mode)
    std::vector<Int> cross_suffix;        // sum_{t<=i<j} |g[i][j]|
};

struct Analysis {
    int n = 0;
    std::vector<Component> comps;
    std::vector<int> comp_of, local_of;

    explicit Analysis(const IntLattice& L) : n(L.rank), comp_of(n, -1), local_of(n, 0) {
        std::vector<int> parent(n);
        for (int i = 0; i < n; ++i) parent[i] = i;
        std::function<int(int)> find = [&](int a) {
            while (parent[a] != a) a = parent[a] = parent[parent[a]];
            return a;
        };
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (L.gram[i][j] != 0) parent[find(i)] = find(j);

        for (int i = 0; i < n; ++i) {
            int r = find(i);
            if (comp_of[r] < 0) {
                comp_of[r] = (int)comps.size();
                comps.emplace_back();
            }
            Component& c = comps[comp_of[r]];
            comp_of[i] = comp_of[r];
            local_of[i] = c.m++;
            c.idx.push_back(i);
        }
        for (auto& c : comps) build(c, L);
    }

    static void build(Component& c, const IntLattice& L) {
        const int m = c.m;
        c.g.assign(m, std::vector<Int>(m));
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) c.g[a][b] = L.gram[c.idx[a]][c.idx[b]];

        c.cross_suffix.assign(m + 1, 0);
        for (int t = m - 1; t >= 0; --t) {
            Int s = c.cross_suffix[t + 1];
            for (int j = t + 1; j < m; ++j) s += std::abs(c.g[t][j]);
            c.cross_suffix[t] = s;
        }

        // Reverse-order LDL: eliminate the highest local variable first so the
        // term for variable t is fixed once y_0..y_t are known.
        std::vector<std::vector<BigRat>> B(m, std::vector<BigRat>(m));
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) B[a][b] = c.g[a][b];
        c.D.assign(m, BigRat(0));
        c.M.assign(m, {});
        bool ok = true;
        for (int t = m - 1; t >= 0 && ok; --t) {
            BigRat piv = B[t][t];
            if (piv == 0) { ok = false; break; }
            c.D[t] = piv;
            c.M[t].resize(t);
            for (int j = 0; j < t; ++j) c.M[t][j] = B[t][j] / piv;
            for (int a = 0; a < t; ++a)
                for (int b = 0; b <= a; ++b) {
                    B[a][b] -= B[t][a] * B[t][b] / piv;
                    B[b][a] = B[a][b];
                }
        }
        if (ok) {
            int sg = c.D[0] > 0 ? 1 : -1;
            for (int t = 0; t < m; ++t)
                if ((c.D[t] > 0 ? 1 : -1) != sg) { ok = false; break; }
            if (ok) { c.monotone = true; c.sign = sg; }
        }
        if (c.monotone) {
            c.reach.assign(m + 1, BigRat(0));
            for (int t = m - 1; t >= 0; --t) {
                BigRat sm = 1;
                for (int j = 0; j < t; ++j) sm += abs(c.M[t][j]);
                c.reach[t] = c.reach[t + 1] + abs(c.D[t]) * sm * sm;
            }
        }
    }
};

struct CompState {
    BigRat partial;          // monotone mode
    std::vector<BigRat> acc; // acc[t] = sum over assigned j<t of M[t][j] y_j
    Int P = 0;               // fallback mode: exact Q of the assigned part
    std::vector<Int> B;      // B[u] = sum over assigned j of g[u][j] y_j
    int next = 0;
    BigRat lo, hi;
};

struct Undo {
    BigRat partial, lo, hi;
    Int P;
};

struct Engine {
    const Analysis* A;
    const IntLattice* L;
    Int target = 0, h = 1, h2 = 1;
    const VecPred* pred = nullptr;
    std::vector<CompState> st;
    std::vector<Undo> undo_stack;
    BigRat glo, ghi;
    LatVec x;
    std::vector<LatVec>* out = nullptr;
    bool stop_first = false;
    std::optional<LatVec> first;

    Engine(const Analysis& a, const IntLattice& lat, Int tgt, const VecPred* p)
        : A(&a), L(&lat), target(tgt), pred(p), undo_stack(a.n), x(a.n, 0) {}

    void comp_interval(int ci, BigRat& lo, BigRat& hi) const {
        const Component& c = A->comps[ci];
        const CompState& s = st[ci];
        if (c.monotone) {
            BigRat tail = c.reach[s.next] * h2;
            if (c.sign > 0) { lo = s.partial; hi = s.partial + tail; }
            else            { lo = s.partial - tail; hi = s.partial; }
            return;
        }
        Int rmin = 0, rmax = 0;
        for (int u = s.next; u < c.m; ++u) {
            const Int g = c.g[u][u], b = s.B[u];
            Int cand[6] = {-h, h, 0, 0, 0, 0};
            int nc = 3;
            if (g != 0) {
                // integer extrema of g y^2 + 2 b y sit next to -b/g; truncated
                // division can land on either side, so take both neighbours too
                Int v = -b / g;
                for (Int w : {v - 1, v, v + 1}) {
                    if (w > h) w = h;
                    if (w < -h) w = -h;
                    cand[nc++] = w;
                }
            }
            Int qmin = 0, qmax = 0;
            for (int i = 0; i < nc; ++i) {
                Int y = cand[i], q = g * y * y + 2 * b * y;
                if (i == 0 || q < qmin) qmin = q;
                if (i == 0 || q > qmax) qmax = q;
            }
            rmin += qmin;
            rmax += qmax;
        }
        Int cross = 2 * h2 * c.cross_suffix[s.next];
        lo = s.P + rmin - cross;
        hi = s.P + rmax + cross;
    }

    void set_shell(Int shell) {
        h = shell;
        h2 = shell * shell;
        st.assign(A->comps.size(), CompState{});
        glo = 0; ghi = 0;
        for (size_t ci = 0; ci < A->comps.size(); ++ci) {
            st[ci].acc.assign(A->comps[ci].m, BigRat(0));
            st[ci].B.assign(A->comps[ci].m, 0);
            comp_interval((int)ci, st[ci].lo, st[ci].hi);
            glo += st[ci].lo;
            ghi += st[ci].hi;
        }
    }

    void apply(int k, Int y) {
        const int ci = A->comp_of[k];
        const Component& c = A->comps[ci];
        CompState& s = st[ci];
        const int t = A->local_of[k];
        Undo& u = undo_stack[k];
        u.partial = s.partial; u.P = s.P; u.lo = s.lo; u.hi = s.hi;
        if (c.monotone) {
            BigRat lin = s.acc[t] + y;
            s.partial += c.D[t] * lin * lin;
            for (int v = t + 1; v < c.m; ++v)
                if (y != 0) s.acc[v] += c.M[v][t] * y;
        } else {
            s.P += c.g[t][t] * y * y + 2 * y * s.B[t];
            for (int v = t + 1; v < c.m; ++v) s.B[v] += c.g[t][v] * y;
        }
        ++s.next;
        BigRat nlo, nhi;
        comp_interval(ci, nlo, nhi);
        glo += nlo - s.lo;
        ghi += nhi - s.hi;
        s.lo = nlo; s.hi = nhi;
    }

    void unapply(int k, Int y) {
        const int ci = A->comp_of[k];
        const Component& c = A->comps[ci];
        CompState& s = st[ci];
        const int t = A->local_of[k];
        const Undo& u = undo_stack[k];
        --s.next;
        if (c.monotone) {
            s.partial = u.partial;
            for (int v = t + 1; v < c.m; ++v)
                if (y != 0) s.acc[v] -= c.M[v][t] * y;
        } else {
            s.P = u.P;
            for (int v = t + 1; v < c.m; ++v) s.B[v] -= c.g[t][v] * y;
        }
        glo += u.lo - s.lo;
        ghi += u.hi - s.hi;
        s.lo = u.lo; s.hi = u.hi;
    }

    void leaf(bool seen_h) {
        if (!seen_h) return;
        if (norm(*L, x) != target) return;   // defensive: engine bookkeeping must agree
        if (content(x) != 1) return;
        if (pred && *pred && !(*pred)(x)) return;
        if (stop_first) { if (!first) first = x; }
        else out->push_back(x);
    }

    void dfs(int k, bool seen_h, bool zero_prefix) {
        if (stop_first && first) return;
        if (target < glo || target > ghi) return;
        if (k == A->n) { leaf(seen_h); return; }
        const Int start = zero_prefix ? 0 : -h;
        for (Int y = start; y <= h; ++y) {
            if (k == A->n - 1 && !seen_h && y != h && y != -h) continue;
            x[k] = y;
            apply(k, y);
            dfs(k + 1, seen_h || y == h || y == -h, zero_prefix && y == 0);
            unapply(k, y);
            if (stop_first && first) { x[k] = 0; return; }
        }
        x[k] = 0;
    }
};

}  // namespace

std::vector<LatVec> enumerate_with_value(const IntLattice& L, Int target, Int height_bound,
                                         const VecPred& pred) {
    if (height_bound < 1) throw domain_error("height bound must be positive");
    if (L.rank == 0) return {};
    Analysis A(L);
    const VecPred* p = pred ? &pred : nullptr;
    std::vector<LatVec> result;

    for (Int h = 1; h <= height_bound; ++h) {
        Engine base(A, L, target, p);
        base.set_shell(h);
        if (A.n <= 2) {
            base.out = &result;
            base.dfs(0, false, true);
            continue;
        }
        // Split the shell on the first two coordinates and merge in branch
        // order, which keeps the output identical to the serial walk.
        std::vector<std::pair<Int, Int>> prefixes;
        for (Int c0 = 0; c0 <= h; ++c0)
            for (Int c1 = (c0 == 0 ? 0 : -h); c1 <= h; ++c1)
                prefixes.emplace_back(c0, c1);
        std::vector<std::vector<LatVec>> buckets(prefixes.size());
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < (long long)prefixes.size(); ++i) {
            Engine e(base);
            e.out = &buckets[i];
            auto [c0, c1] = prefixes[i];
            e.x[0] = c0;
            e.apply(0, c0);
            e.x[1] = c1;
            e.apply(1, c1);
            bool seen = (c0 == h || c0 == -h || c1 == h || c1 == -h);
            e.dfs(2, seen, c0 == 0 && c1 == 0);
        }
        for (auto& b : buckets)
            for (auto& v : b) result.push_back(std::move(v));
    }
    return result;
}

std::optional<LatVec> find_first_with_value(const IntLattice& L, Int target, Int height_cap,
                                            const VecPred& pred) {
    if (height_cap < 1) throw domain_error("height cap must be positive");
    if (L.rank == 0) return std::nullopt;
    Analysis A(L);
    const VecPred* p = pred ? &pred : nullptr;
    Engine e(A, L, target, p);
    e.stop_first = true;
    for (Int h = 1; h <= height_cap; ++h) {
        e.set_shell(h);
        e.dfs(0, false, true);
        if (e.first) return e.first;
    }
    return std::nullopt;
}

std::vector<LatVec> enumerate_with_value_serial(const IntLattice& L, Int target, Int height_bound,
                                                const VecPred& pred) {
    if (height_bound < 1) throw domain_error("height bound must be positive");
    const int n = L.rank;
    if (n == 0) return {};
    std::vector<LatVec> result;
    LatVec x(n, -height_bound);
    for (;;) {
        Int mx = 0;
        int first_nz = -1;
        for (int i = 0; i < n; ++i) {
            Int a = std::abs(x[i]);
            if (a > mx) mx = a;
            if (first_nz < 0 && x[i] != 0) first_nz = i;
        }
        if (first_nz >= 0 && x[first_nz] > 0 && mx >= 1 && content(x) == 1 &&
            norm(L, x) == target && (!pred || pred(x)))
            result.push_back(x);
        int k = n - 1;
        while (k >= 0 && x[k] == height_bound) x[k--] = -height_bound;
        if (k < 0) break;
        ++x[k];
    }
    std::stable_sort(result.begin(), result.end(), [](const LatVec& a, const LatVec& b) {
        Int ma = 0, mb = 0;
        for (Int v : a) ma = std::max(ma, std::abs(v));
        for (Int v : b) mb = std::max(mb, std::abs(v));
        if (ma != mb) return ma < mb;
        return a < b;
    });
    return result;
}

}  // namespace ssv
