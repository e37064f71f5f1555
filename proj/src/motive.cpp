#include "ssv/motive.hpp"

#include <algorithm>
#include <functional>

namespace ssv {
namespace {

// Adds c (assumed >= 0) to slot i, keeping the map free of zero entries.
void add_term(std::map<Int, BigInt>& m, Int i, const BigInt& c) {
    if (c == 0) return;
    m[i] += c;
}

void check_twist(Int i) {
    if (i < 0) throw domain_error("motive twists must be nonnegative");
}

// Number of size-a multisets from c distinct slots: C(c + a - 1, a), with a
// possibly huge c.  The running product stays integral after every step.
BigInt multiset_binomial(const BigInt& c, Int a) {
    BigInt r = 1;
    for (Int t = 1; t <= a; ++t) {
        r *= c + t - 1;
        r /= t;
    }
    return r;
}

// Sym^k of a pure-Tate motive: twist-t multiplicity = number of k-element
// multisets of slots with twist sum t, by knapsack convolution over the
// distinct twists.
SSMotive sym_tate(const SSMotive& surface, Int k) {
    std::vector<std::map<Int, BigInt>> f(k + 1);
    f[0][0] = 1;
    for (const auto& [twist, mult] : surface.tate) {
        std::vector<std::map<Int, BigInt>> g(k + 1);
        for (Int taken = 0; taken <= k; ++taken)
            for (const auto& [sum, count] : f[taken])
                for (Int a = 0; a + taken <= k; ++a)
                    add_term(g[taken + a], sum + twist * a,
                             count * multiset_binomial(mult, a));
        f = std::move(g);
    }
    SSMotive out;
    out.tate = std::move(f[k]);
    return out;
}

using Poly = std::vector<BigInt>;   // coefficients by degree, no trailing zeros required

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

// (1 - (-z)^d)^4 expanded: alternating signs appear only for even d.
Poly cycle_factor(Int d) {
    Poly r(4 * d + 1);
    for (Int i = 0; i <= 4; ++i) {
        BigInt c = binomial(4, i);
        if (d % 2 == 0 && i % 2 == 1) c = -c;
        r[(size_t)(d * i)] = c;
    }
    return r;
}

// Exact division by (1 + z); throws if a remainder is left.
Poly divide_by_one_plus_z(const Poly& p) {
    if (p.empty()) return {};
    Poly q(p.size());
    for (size_t i = 0; i < p.size(); ++i)
        q[i] = p[i] - (i > 0 ? q[i - 1] : BigInt(0));
    if (q.back() != 0)
        throw internal_error("trace polynomial is not divisible by (1+z)^4");
    q.pop_back();
    return q;
}

}  // namespace

Int Partition::sum() const {
    Int s = 0;
    for (Int p : parts) s += p;
    return s;
}

Int Partition::gcd() const {
    Int g = 0;
    for (Int p : parts) g = gcd_int(g, p);
    return g;
}

Partition Partition::transpose() const {
    Partition t;
    if (parts.empty()) return t;
    for (Int j = 1; j <= parts[0]; ++j) {
        Int count = 0;
        for (Int p : parts)
            if (p >= j) ++count;
        t.parts.push_back(count);
    }
    return t;
}

std::map<Int, Int> Partition::multiplicities() const {
    std::map<Int, Int> m;
    for (Int p : parts) ++m[p];
    return m;
}

Partition make_partition(std::vector<Int> parts) {
    for (Int p : parts)
        if (p < 1) throw domain_error("partition parts must be positive");
    std::sort(parts.rbegin(), parts.rend());
    return Partition{std::move(parts)};
}

std::vector<Partition> all_partitions(Int n) {
    if (n < 0) throw domain_error("cannot partition a negative integer");
    std::vector<Partition> out;
    std::vector<Int> cur;
    std::function<void(Int, Int)> gen = [&](Int remaining, Int max_part) {
        if (remaining == 0) {
            out.push_back(Partition{cur});
            return;
        }
        for (Int part = std::min(max_part, remaining); part >= 1; --part) {
            cur.push_back(part);
            gen(remaining - part, part);
            cur.pop_back();
        }
    };
    gen(n, n);
    return out;
}

SSMotive tate_motive(Int twist, BigInt mult) {
    check_twist(twist);
    if (mult < 0) throw domain_error("motive multiplicities must be nonnegative");
    SSMotive m;
    add_term(m.tate, twist, mult);
    return m;
}

SSMotive h1e_motive(Int twist, BigInt mult) {
    check_twist(twist);
    if (mult < 0) throw domain_error("motive multiplicities must be nonnegative");
    SSMotive m;
    add_term(m.h1e, twist, mult);
    return m;
}

SSMotive motive_add(const SSMotive& a, const SSMotive& b) {
    SSMotive r = a;
    for (const auto& [i, c] : b.tate) add_term(r.tate, i, c);
    for (const auto& [i, c] : b.h1e) add_term(r.h1e, i, c);
    return r;
}

SSMotive motive_tensor(const SSMotive& a, const SSMotive& b) {
    SSMotive r;
    for (const auto& [i, c] : a.tate) {
        for (const auto& [j, d] : b.tate) add_term(r.tate, i + j, c * d);
        for (const auto& [j, d] : b.h1e) add_term(r.h1e, i + j, c * d);
    }
    for (const auto& [i, c] : a.h1e) {
        for (const auto& [j, d] : b.tate) add_term(r.h1e, i + j, c * d);
        for (const auto& [j, d] : b.h1e) add_term(r.tate, i + j + 1, 4 * c * d);
    }
    return r;
}

SSMotive motive_scale(const SSMotive& m, const BigInt& c) {
    if (c < 0) throw domain_error("motive multiplicities must be nonnegative");
    SSMotive r;
    if (c == 0) return r;
    for (const auto& [i, v] : m.tate) r.tate[i] = v * c;
    for (const auto& [i, v] : m.h1e) r.h1e[i] = v * c;
    return r;
}

SSMotive motive_twist(const SSMotive& m, Int k) {
    SSMotive r;
    for (const auto& [i, v] : m.tate) {
        check_twist(i + k);
        r.tate[i + k] = v;
    }
    for (const auto& [i, v] : m.h1e) {
        check_twist(i + k);
        r.h1e[i + k] = v;
    }
    return r;
}

BigInt realization_rank(const SSMotive& m) {
    BigInt r = 0;
    for (const auto& [i, v] : m.tate) r += v;
    for (const auto& [i, v] : m.h1e) r += 2 * v;
    return r;
}

SSMotive sym_h1e(Int k) {
    if (k < 0) throw domain_error("symmetric power degree must be nonnegative");
    // Rank of the realization is k+1, which pins the multiplicities.
    if (k % 2 == 0) return tate_motive(k / 2, k + 1);
    return h1e_motive((k - 1) / 2, (k + 1) / 2);
}

SSMotive wedge_h1e(Int k) {
    if (k < 0) throw domain_error("exterior power degree must be nonnegative");
    if (k == 0) return tate_motive(0);
    if (k == 1) return h1e_motive(0);
    if (k == 2) return tate_motive(1);
    return SSMotive{};   // rank 2 kills everything beyond the top wedge
}

SSMotive schur_h1e(const Partition& lambda) {
    if (lambda.length() >= 3) return SSMotive{};
    if (lambda.length() == 0) return tate_motive(0);
    Int a = lambda.length() == 2 ? lambda.parts[1] : 0;
    Int b = lambda.parts[0] - a;
    return motive_tensor(tate_motive(a), sym_h1e(b));
}

BigInt schur_dim(const Partition& lambda, Int g) {
    if (g < 0) throw domain_error("schur_dim needs a nonnegative dimension");
    auto t = lambda.transpose();
    BigInt num = 1, den = 1;
    for (Int i = 1; i <= lambda.length(); ++i)
        for (Int j = 1; j <= lambda.parts[i - 1]; ++j) {
            Int content = g + j - i;
            if (content == 0) return 0;
            num *= content;
            den *= lambda.parts[i - 1] - j + t.parts[j - 1] - i + 1;   // hook length
        }
    if (num % den != 0) throw internal_error("hook content product failed to divide");
    return num / den;
}

SSMotive abelian_motive_direct(Int g) {
    if (g < 0) throw domain_error("abelian variety dimension must be nonnegative");
    SSMotive m;
    for (Int i = 0; i <= 2 * g; ++i) {
        BigInt b = binomial(2 * g, i);
        if (i % 2 == 0)
            add_term(m.tate, i / 2, b);
        else
            add_term(m.h1e, (i - 1) / 2, b / 2);   // C(2g, odd) is always even
    }
    return m;
}

SSMotive abelian_motive_schur(Int g) {
    if (g < 0) throw domain_error("abelian variety dimension must be nonnegative");
    SSMotive m;
    for (Int i = 0; i <= 2 * g; ++i)
        for (const auto& lambda : all_partitions(i))
            m = motive_add(m, motive_scale(schur_h1e(lambda),
                                           schur_dim(lambda.transpose(), g)));
    return m;
}

SSMotive canonical_from_betti(const BettiVector& b) {
    SSMotive m;
    for (size_t k = 0; k < b.size(); ++k) {
        if (b[k] < 0) throw domain_error("Betti numbers must be nonnegative");
        if (k % 2 == 0) {
            add_term(m.tate, (Int)(k / 2), b[k]);
        } else {
            if (b[k] % 2 != 0) throw domain_error("odd-degree Betti numbers must be even");
            add_term(m.h1e, (Int)(k / 2), b[k] / 2);
        }
    }
    return m;
}

BettiVector betti_of(const SSMotive& m) {
    Int top = -1;
    if (!m.tate.empty()) top = std::max(top, 2 * m.tate.rbegin()->first);
    if (!m.h1e.empty()) top = std::max(top, 2 * m.h1e.rbegin()->first + 1);
    BettiVector b((size_t)(top + 1));
    for (const auto& [i, v] : m.tate) b[(size_t)(2 * i)] = v;
    for (const auto& [i, v] : m.h1e) b[(size_t)(2 * i + 1)] = 2 * v;
    return b;
}

SSMotive hilb_motive(const SSMotive& surface, Int n) {
    if (!surface.h1e.empty())
        throw domain_error("Hilbert scheme decomposition needs a surface motive of Tate type");
    if (n < 0) throw domain_error("Hilbert scheme index must be nonnegative");
    SSMotive total;
    for (const auto& lambda : all_partitions(n)) {
        SSMotive factor = tate_motive(0);
        for (const auto& [m, a_m] : lambda.multiplicities())
            factor = motive_tensor(
                factor, motive_twist(sym_tate(surface, a_m), (m - 1) * a_m));
        total = motive_add(total, factor);
    }
    return total;
}

BettiVector gottsche_poincare(const BettiVector& b_surface, Int n) {
    if (b_surface.size() != 5)
        throw domain_error("surface Betti vector must have length 5");
    if (b_surface[1] != 0 || b_surface[3] != 0)
        throw domain_error("surface must have no odd cohomology");
    for (const auto& v : b_surface)
        if (v < 0) throw domain_error("Betti numbers must be nonnegative");
    if (n < 0) throw domain_error("Hilbert scheme index must be nonnegative");

    // series[q][t]: coefficient of q^q t^t, truncated at q^n.  Contributions
    // to q^m carry t-degree at most 4m, so 4n+1 columns always suffice.
    std::vector<std::vector<BigInt>> series(n + 1, std::vector<BigInt>(4 * n + 1));
    series[0][0] = 1;
    for (Int m = 1; m <= n; ++m) {
        const std::pair<Int, BigInt> factors[3] = {
            {2 * m - 2, b_surface[0]}, {2 * m, b_surface[2]}, {2 * m + 2, b_surface[4]}};
        for (const auto& [t_step, e] : factors) {
            if (e == 0) continue;
            auto next = series;
            for (Int q0 = 0; q0 <= n; ++q0)
                for (Int t0 = 0; t0 <= 4 * n; ++t0) {
                    if (series[q0][t0] == 0) continue;
                    for (Int c = 1; q0 + m * c <= n; ++c)
                        next[q0 + m * c][t0 + t_step * c] +=
                            series[q0][t0] * multiset_binomial(e, c);
                }
            series = std::move(next);
        }
    }
    return series[n];
}

std::vector<KummerSummand> kummer_inventory(Int n) {
    if (n < 1) throw domain_error("generalized Kummer index must be at least 1");
    std::vector<KummerSummand> out;
    for (const auto& lambda : all_partitions(n + 1)) {
        BigInt g = lambda.gcd();
        out.push_back(KummerSummand{lambda, g * g * g * g, lambda.length() - 1,
                                    lambda.length() - n});
    }
    return out;
}

BettiVector kummer_betti(Int n) {
    if (n < 1) throw domain_error("generalized Kummer index must be at least 1");

    // D_k = sum over S_k of prod over cycle lengths d of (1-(-z)^d)^4, via
    // the choose-the-cycle-of-the-first-element recurrence; k! times the
    // average trace polynomial.
    std::vector<Poly> D(n + 2);
    D[0] = {BigInt(1)};
    for (Int k = 1; k <= n + 1; ++k) {
        Poly acc;
        for (Int d = 1; d <= k; ++d) {
            BigInt ways = 1;   // (k-1)(k-2)...(k-d+1)
            for (Int t = 1; t < d; ++t) ways *= k - t;
            Poly term = poly_mul(cycle_factor(d), D[(size_t)(k - d)]);
            if (acc.size() < term.size()) acc.resize(term.size());
            for (size_t i = 0; i < term.size(); ++i) acc[i] += ways * term[i];
        }
        D[(size_t)k] = std::move(acc);
    }

    BettiVector total((size_t)(4 * n + 1));
    for (const auto& lambda : all_partitions(n + 1)) {
        Poly num = {BigInt(1)};
        BigInt order = 1;   // |S_lambda|
        for (const auto& [m, a_m] : lambda.multiplicities()) {
            num = poly_mul(num, D[(size_t)a_m]);
            for (Int t = 2; t <= a_m; ++t) order *= t;
        }
        for (int pass = 0; pass < 4; ++pass) num = divide_by_one_plus_z(num);
        const Int shift = 2 * (n + 1 - lambda.length());
        BigInt g = lambda.gcd();
        const BigInt copies = g * g * g * g;
        for (size_t i = 0; i < num.size(); ++i) {
            if (num[i] == 0) continue;
            if (num[i] % order != 0)
                throw internal_error("trace average is not integral");
            total[(size_t)shift + i] += copies * (num[i] / order);
        }
    }
    return total;
}

KummerAudit kummer_audit(Int n) {
    KummerAudit audit;
    audit.summands = kummer_inventory(n);
    audit.inventory_rank = 0;
    for (const auto& s : audit.summands) {
        BigInt rank = 1;   // total cohomology of a power of the abelian surface
        for (Int i = 0; i < s.power; ++i) rank *= 16;
        audit.inventory_rank += s.copies * rank;
    }
    audit.betti_rank = 0;
    for (const auto& b : kummer_betti(n)) audit.betti_rank += b;
    audit.consistent = audit.inventory_rank == audit.betti_rank;
    return audit;
}

ChowReport chow_rank_report(const BettiVector& b) {
    for (size_t k = 0; k < b.size(); ++k) {
        if (b[k] < 0) throw domain_error("Betti numbers must be nonnegative");
        if (k % 2 == 1 && b[k] % 2 != 0)
            throw domain_error("odd-degree Betti numbers must be even");
    }
    ChowReport report;
    report.tate_type = true;
    for (size_t k = 1; k < b.size(); k += 2)
        if (b[k] != 0) report.tate_type = false;
    const Int len = (Int)b.size();
    for (Int i = 0; 2 * i < len || (i >= 1 && 2 * i - 1 < len); ++i) {
        ChowRow row;
        row.codim = i;
        row.ch_rank = 2 * i < len ? b[(size_t)(2 * i)] : 0;
        row.ab_dim =
            (i >= 1 && 2 * i - 1 < len) ? BigInt(b[(size_t)(2 * i - 1)] / 2) : BigInt(0);
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace ssv
