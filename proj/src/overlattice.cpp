#include "ssv/overlattice.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace ssv {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;
using boost::multiprecision::gcd;
using boost::multiprecision::lcm;

std::vector<std::vector<BigInt>> hnf_rows(std::vector<std::vector<BigInt>> m) {
    if (m.empty()) return m;
    const int rows = (int)m.size(), cols = (int)m[0].size();
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(m[r], m[piv]);
        // Clear the column below the pivot with Euclidean row combinations.
        for (int i = r + 1; i < rows; ++i) {
            while (m[i][c] != 0) {
                BigInt q = m[r][c] / m[i][c];
                for (int j = 0; j < cols; ++j) m[r][j] -= q * m[i][j];
                std::swap(m[r], m[i]);
            }
        }
        if (m[r][c] < 0)
            for (int j = 0; j < cols; ++j) m[r][j] = -m[r][j];
        for (int i = 0; i < r; ++i) {
            BigInt q = m[i][c] / m[r][c];
            if (m[i][c] % m[r][c] < 0) q -= 1;   // floor division for a canonical reduction
            if (q != 0)
                for (int j = 0; j < cols; ++j) m[i][j] -= q * m[r][j];
        }
        ++r;
    }
    m.resize(r);
    return m;
}

Overlattice overlattice_from_generators(const RationalGeneratorSet& gs) {
    const int dim = (int)gs.ambient_diag.size();
    if (gs.generators.empty()) throw domain_error("empty generator set");
    for (const auto& g : gs.generators)
        if ((int)g.size() != dim)
            throw domain_error("generator length does not match ambient dimension");

    BigInt den = 1;
    for (const auto& g : gs.generators)
        for (const auto& v : g) den = lcm(den, denominator(v));

    std::vector<std::vector<BigInt>> m;
    m.reserve(gs.generators.size());
    for (const auto& g : gs.generators) {
        std::vector<BigInt> row(dim);
        for (int j = 0; j < dim; ++j) {
            BigRat scaled = g[j] * BigRat(den);
            row[j] = numerator(scaled);   // integral after clearing denominators
        }
        m.push_back(std::move(row));
    }
    auto basis_scaled = hnf_rows(std::move(m));
    const int r = (int)basis_scaled.size();
    if (r == 0) throw domain_error("generators span the zero module");

    // Gram of the span basis: (B D B^t) / den^2, which must be integral.
    BigInt den2 = den * den;
    std::vector<std::vector<Int>> gram(r, std::vector<Int>(r));
    for (int i = 0; i < r; ++i) {
        for (int j = i; j < r; ++j) {
            BigInt acc = 0;
            for (int k = 0; k < dim; ++k)
                acc += basis_scaled[i][k] * gs.ambient_diag[k] * basis_scaled[j][k];
            if (acc % den2 != 0)
                throw domain_error("generators have non-integral pairings");
            BigInt v = acc / den2;
            gram[i][j] = gram[j][i] = (Int)v;
        }
    }

    Overlattice out;
    out.lattice = IntLattice(r, std::move(gram));
    out.basis.resize(r, std::vector<BigRat>(dim));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < dim; ++j)
            out.basis[i][j] = BigRat(basis_scaled[i][j], den);
    return out;
}

}  // namespace ssv
