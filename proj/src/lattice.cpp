#include "latfactor/lattice.hpp"

#include <functional>
#include <utility>

namespace latfactor {

Int dot(const IntVector& a, const IntVector& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Int norm2(const IntVector& v) { return dot(v, v); }

namespace {

Int round_div(const Int& a, const Int& b) {
    // nearest integer to a/b for b > 0, ties toward +inf
    Int num = 2 * a + b, den = 2 * b, q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

void axpy(IntVector& y, const Int& q, const IntVector& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] -= q * x[i];
}

}  // namespace

// Fraction-free integral LLL; every division below is exact.
ReducedBasis lll_reduce(const IntLattice& basis, const Rational& delta) {
    const std::size_t n = basis.rows.size();
    if (!(delta > Rational(1, 4) && delta < 1)) throw Error("lll_reduce: delta out of (1/4, 1)");
    const Int num = delta.get_num(), den = delta.get_den();

    // 1-indexed internally: b[1..n], d[0..n], lam[k][j] for j < k.
    std::vector<IntVector> b(n + 1), H(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        b[i + 1] = basis.rows[i];
        H[i + 1].assign(n, Int(0));
        H[i + 1][i] = 1;
    }
    ReducedBasis out;
    if (n == 0) return out;

    std::vector<Int> d(n + 1);
    std::vector<std::vector<Int>> lam(n + 1, std::vector<Int>(n + 1));
    d[0] = 1;
    d[1] = norm2(b[1]);
    if (d[1] == 0) throw DependentRows();

    auto redi = [&](std::size_t k, std::size_t l) {
        Int twice = 2 * abs(lam[k][l]);
        if (twice <= d[l]) return;
        Int q = round_div(lam[k][l], d[l]);
        axpy(b[k], q, b[l]);
        axpy(H[k], q, H[l]);
        lam[k][l] -= q * d[l];
        for (std::size_t i = 1; i < l; ++i) lam[k][i] -= q * lam[l][i];
    };

    std::size_t kmax = 1;
    auto swapi = [&](std::size_t k) {
        std::swap(b[k], b[k - 1]);
        std::swap(H[k], H[k - 1]);
        for (std::size_t j = 1; j + 1 < k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
        Int l = lam[k][k - 1];
        Int B = (d[k - 2] * d[k] + l * l) / d[k - 1];
        for (std::size_t i = k + 1; i <= kmax; ++i) {
            Int t = lam[i][k];
            lam[i][k] = (d[k] * lam[i][k - 1] - l * t) / d[k - 1];
            lam[i][k - 1] = (B * t + l * lam[i][k]) / d[k];
        }
        d[k - 1] = B;
    };

    std::size_t k = 2;
    while (k <= n) {
        if (k > kmax) {
            kmax = k;
            for (std::size_t j = 1; j <= k; ++j) {
                Int u = dot(b[k], b[j]);
                for (std::size_t i = 1; i < j; ++i) u = (d[i] * u - lam[k][i] * lam[j][i]) / d[i - 1];
                if (j < k)
                    lam[k][j] = u;
                else
                    d[k] = u;
            }
            if (d[k] == 0) throw DependentRows();
        }
        redi(k, k - 1);
        const Int& l = lam[k][k - 1];
        if (den * d[k] * d[k - 2] < num * d[k - 1] * d[k - 1] - den * l * l) {
            swapi(k);
            if (k > 2) --k;
        } else {
            for (std::size_t l2 = k - 1; l2-- > 1;) redi(k, l2);
            ++k;
        }
    }
    // n == 1 never enters the loop; nothing to reduce.
    for (std::size_t i = 1; i <= n; ++i) {
        out.rows.push_back(std::move(b[i]));
        out.transform.push_back(std::move(H[i]));
    }
    return out;
}

IntLattice build_balanced_basis(const Int& N, const Int& m_inv, const Int& j, const Int& X) {
    return build_mod_basis(N, Int(j * m_inv), X);
}

IntLattice build_mod_basis(const Int& N, const Int& mj_s, const Int& X) {
    Int t = mj_s % N;
    if (t < 0) t += N;
    Int t2 = t * t % N;
    IntLattice L;
    L.rows = {{N, 0, 0}, {t, X, 0}, {t2, 2 * t * X, X * X}};
    return L;
}

PowerRows build_power_rows(const Int& M, const Int& X, unsigned r) {
    PowerRows pr;
    pr.u.assign(r + 2, Int(0));
    pr.v.assign(r + 2, Int(0));
    Int binom = 1, Mpow, Xpow = 1;
    for (unsigned i = 0; i <= r; ++i) {
        mpz_pow_ui(Mpow.get_mpz_t(), M.get_mpz_t(), r - i);
        Int coef = binom * Mpow;
        pr.u[i] = coef * Xpow;
        pr.v[i + 1] = coef * Xpow * X;
        Xpow *= X;
        binom = binom * (r - i) / (i + 1);
    }
    return pr;
}

SecondVector second_vector(const ReducedBasis& rb, const Int& X) {
    if (rb.rows.size() < 2 || rb.rows[1].size() != 3) throw Error("second_vector: need rank-3 width-3 basis");
    const IntVector& v = rb.rows[1];
    Int X2 = X * X;
    if (!mpz_divisible_p(v[1].get_mpz_t(), X.get_mpz_t()) || !mpz_divisible_p(v[2].get_mpz_t(), X2.get_mpz_t()))
        throw NonDivisibleCoordinates("second_vector: coordinates not multiples of X, X^2");
    SecondVector sv{v[0], v[1] / X, v[2] / X2, X};
    int s = sgn(sv.a) != 0 ? sgn(sv.a) : (sgn(sv.b) != 0 ? sgn(sv.b) : sgn(sv.c));
    if (s < 0) {
        sv.a = -sv.a;
        sv.b = -sv.b;
        sv.c = -sv.c;
    }
    return sv;
}

GramSchmidt gram_schmidt(const std::vector<IntVector>& rows) {
    const std::size_t n = rows.size();
    GramSchmidt gs;
    gs.mu.assign(n, std::vector<Rational>(n));
    gs.bstar2.assign(n, Rational(0));
    std::vector<std::vector<Rational>> bs(n);
    for (std::size_t i = 0; i < n; ++i) {
        bs[i].assign(rows[i].begin(), rows[i].end());
        for (std::size_t j = 0; j < i; ++j) {
            Rational ip = 0;
            for (std::size_t t = 0; t < rows[i].size(); ++t) ip += Rational(rows[i][t]) * bs[j][t];
            gs.mu[i][j] = ip / gs.bstar2[j];
            for (std::size_t t = 0; t < rows[i].size(); ++t) bs[i][t] -= gs.mu[i][j] * bs[j][t];
        }
        Rational s = 0;
        for (auto& x : bs[i]) s += x * x;
        gs.bstar2[i] = s;
    }
    return gs;
}

namespace {

// Integers x with (x - c)^2 <= r, as [lo, hi]; empty when lo > hi.
std::pair<Int, Int> int_window(const Rational& c, const Rational& r) {
    if (r < 0) return {Int(1), Int(0)};
    Int fc;
    mpz_fdiv_q(fc.get_mpz_t(), c.get_num_mpz_t(), c.get_den_mpz_t());
    Int fr;
    mpz_fdiv_q(fr.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    Int s;
    mpz_sqrt(s.get_mpz_t(), fr.get_mpz_t());
    auto ok = [&](const Int& x) {
        Rational t = Rational(x) - c;
        return t * t <= r;
    };
    Int hi = fc + s + 2, lo = fc - s - 1;
    while (hi >= lo && !ok(hi)) --hi;
    while (lo <= hi && !ok(lo)) ++lo;
    return {lo, hi};
}

}  // namespace

std::vector<IntVector> enum_shortest_dim3(const IntLattice& basis, const Int& bound, std::uint64_t step_budget) {
    const auto& B = basis.rows;
    const std::size_t n = B.size();
    GramSchmidt gs = gram_schmidt(B);
    Rational R = Rational(bound) * Rational(bound);
    std::vector<IntVector> out;
    std::vector<Int> x(n);
    std::uint64_t steps = 0;

    std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t lvl, const Rational& used) {
        Rational c = 0;
        for (std::size_t j = lvl + 1; j < n; ++j) c -= gs.mu[j][lvl] * Rational(x[j]);
        auto [lo, hi] = int_window(c, (R - used) / gs.bstar2[lvl]);
        for (Int v = lo; v <= hi; ++v) {
            if (++steps > step_budget) throw BoundTooLarge("enum_shortest_dim3: step budget exceeded");
            x[lvl] = v;
            Rational t = Rational(v) - c;
            Rational nu = used + t * t * gs.bstar2[lvl];
            if (lvl == 0) {
                IntVector w(basis.width(), Int(0));
                bool zero = true;
                for (std::size_t i = 0; i < n; ++i) {
                    if (x[i] != 0) zero = false;
                    for (std::size_t t2 = 0; t2 < w.size(); ++t2) w[t2] += x[i] * B[i][t2];
                }
                if (!zero && Rational(norm2(w)) <= R) out.push_back(std::move(w));
            } else {
                rec(lvl - 1, nu);
            }
        }
    };
    if (n) rec(n - 1, Rational(0));
    return out;
}

}  // namespace latfactor
