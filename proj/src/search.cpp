#include "latfactor/search.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>

#include "latfactor/coppersmith.hpp"
#include "latfactor/lattice.hpp"
#include "latfactor/parallel.hpp"

namespace latfactor {

namespace {

Int pow_ui(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

// Upper bound for e: the Taylor sum to 1/30! plus a tail bound of 2/31!.
Rational e_upper() {
    Rational sum = 0, term = 1;
    for (unsigned n = 0; n <= 30; ++n) {
        sum += term;
        term /= n + 1;
    }
    return sum + 2 * term;
}

// Everything the three searches share past giant-step construction.
// solve(tag, sigma) tries one matched pair; the tag indexes the giant list.
std::optional<std::pair<Int, Int>> sort_match_and_collide(
    const Int& N, const std::vector<Int>& babies, const ZnElem& gamma, const std::vector<GiantStep>& giants,
    bool with_inverses, const std::function<std::optional<Int>(const GiantStep&, const Int&)>& solve,
    Counters* ctr) {
    BabyTable bt;
    bt.entries.reserve(babies.size());
    for (std::size_t i = 0; i < babies.size(); ++i) bt.entries.push_back({babies[i], i});

    // tag = 2 * index + (1 if the entry is x^-1, i.e. sigma < 0)
    GiantList gl;
    for (std::size_t t = 0; t < giants.size(); ++t) {
        gl.entries.push_back({giants[t].x, 2 * t});
        if (with_inverses) gl.entries.push_back({mod_inv(giants[t].x, N).residue, 2 * t + 1});
    }

    std::vector<bool> matched(gl.entries.size() + 1, false);
    auto pos = [&](std::uint64_t tag) { return with_inverses ? tag : tag / 2; };
    for (const Match& mt : sort_match(bt, gl)) {
        matched[pos(mt.tag)] = true;
        Int sigma = Int(static_cast<unsigned long>(mt.i));
        if (mt.tag & 1) sigma = -sigma;
        if (auto p = solve(giants[mt.tag / 2], sigma)) {
            Int q = N / *p;
            return std::make_pair(Int(std::min(*p, q)), Int(std::max(*p, q)));
        }
    }

    std::vector<Int> rest;
    for (std::size_t e = 0; e < gl.entries.size(); ++e)
        if (!matched[e]) rest.push_back(gl.entries[e].first);
    auto hit = find_collisions(N, Int(static_cast<unsigned long>(babies.size())), gamma, rest, {}, ctr);
    if (!hit) return std::nullopt;
    return std::make_pair(Int(std::min(hit->first, hit->second)), Int(std::max(hit->first, hit->second)));
}

std::vector<Int> baby_steps(const ZnElem& gamma, const Int& k, Counters* ctr) {
    std::vector<Int> out;
    const std::size_t K = k.get_ui();
    out.reserve(K);
    Int cur = 1 % gamma.modulus;
    for (std::size_t i = 0; i < K; ++i) {
        out.push_back(cur);
        cur = cur * gamma.residue % gamma.modulus;
    }
    if (ctr) ctr->baby_steps += K;
    return out;
}

// Root of a p^2 + B p + C = 0 that divides N nontrivially.
std::optional<Int> quadratic_divisor(const Int& N, const Int& A, const Int& B, const Int& C) {
    for (const Int& p : quadratic_integer_roots(A, B, C))
        if (p > 1 && p < N && N % p == 0) return p;
    return std::nullopt;
}

// c + b (p - s)/w + a ((p - s)/w)^2 = sigma p, cleared of the denominator w^2.
std::optional<Int> solve_reduced(const Int& N, const GiantStep& g, const Int& w, const Int& sigma) {
    Int A = g.a;
    Int B = g.b * w - 2 * g.a * g.j - sigma * w * w;
    Int C = g.c * w * w - g.b * w * g.j + g.a * g.j * g.j;
    return quadratic_divisor(N, A, B, C);
}

GiantStep reduced_giant(const ZnElem& alpha, const IntLattice& L, const Int& X, const Int& j,
                        const Int& w, std::size_t sweep) {
    SecondVector sv = second_vector(lll_reduce(L), X);
    GiantStep g;
    g.j = j;
    g.sweep = sweep;
    g.c = sv.c;
    g.b = sv.b;
    g.a = sv.a;
    // w p_msb = p - j = 1 - j (mod p - 1)
    Int one_j = 1 - j;
    g.E = sv.c * w * w + sv.b * w * one_j + sv.a * one_j * one_j;
    g.x = mod_pow_signed(alpha, g.E).residue;
    return g;
}

}  // namespace

Int balanced_k(const Int& N, const Rational& c, const Int& m) {
    const Int u = c.get_num(), v = c.get_den();
    // k^4 >= 16 * 3^5 * N^2 / (c^4 m^6)
    return int_root_ceil(16 * 243 * N * N * pow_ui(v, 4), pow_ui(u, 4) * pow_ui(m, 6), 1, 4);
}

Int mod_k(const Int& N, const Int& mn) { return int_root_ceil(256 * 243 * N * N, pow_ui(mn, 6), 1, 4); }

Int power_k(const Int& m, unsigned r) {
    static const Rational e = e_upper();
    Rational y2 = 4 * e * e * Rational(m * m) * r;  // (2 e m sqrt r)^2
    return int_root_ceil(y2.get_num(), y2.get_den(), 1, 2);
}

BalancedParams make_balanced_params(const Int& N, const Rational& beta, const Rational& c, const Int& m,
                                    const ZnElem& alpha) {
    if (beta < Rational(1, 3) || beta > Rational(1, 2)) throw BoundTooLarge("main search: beta outside [1/3, 1/2]");
    if (c <= 0 || c >= 1) throw BoundTooLarge("main search: c outside (0, 1)");
    if (gcd(m, N) != 1) throw SharedFactor(gcd(m, N));
    const unsigned long bn = beta.get_num().get_ui(), bd = beta.get_den().get_ui();
    // 72 < m and (2m)^(2 bd) < N^(bd - bn)
    if (m <= 72 || pow_ui(2 * m, 2 * bd) >= pow_ui(N, bd - bn))
        throw BoundTooLarge("main search: need 72 < m < N^((1-beta)/2)/2, m = " + m.get_str());
    BalancedParams P;
    P.N = N;
    P.beta = beta;
    P.c = c;
    P.m = m;
    P.m_inv = mod_inv(m, N).residue;
    P.X = int_root_floor(pow_ui(N, bn), pow_ui(m, bd), 1, bd);
    P.k = balanced_k(N, c, m);
    P.alpha = alpha;
    return P;
}

ModParams make_mod_params(const Int& N, const Int& r, const Int& n, const Int& m, const ZnElem& alpha) {
    const Int mn = m * n;
    if (gcd(m, n) != 1) throw BoundTooLarge("mod search: gcd(m, n) != 1");
    if (gcd(mn, N) != 1) throw SharedFactor(gcd(mn, N));
    // 72 < mn < N^(1/4)/2
    if (mn <= 72 || pow_ui(2 * mn, 4) >= N) throw BoundTooLarge("mod search: need 72 < mn < N^(1/4)/2");
    ModParams P;
    P.N = N;
    P.r = ((r % n) + n) % n;
    P.n = n;
    P.m = m;
    P.s = mod_inv(mn, N).residue;
    P.m_inv_mod_n = n == 1 ? Int(0) : mod_inv(m, n).residue;
    P.n_inv_mod_m = m == 1 ? Int(0) : mod_inv(n, m).residue;
    P.k = mod_k(N, mn);
    // X_i = floor(2^i N^(3/10) / mn); run until X_i reaches sqrt(N)/mn so every p < N^(1/2) is covered
    const std::size_t t_min = (bitlen(N) + 5) / 6;
    const Int top = sqrt(N) / mn;
    for (std::size_t i = 0;; ++i) {
        Int Xi = int_root_floor(pow_ui(N, 3) << (10 * i), pow_ui(mn, 10), 1, 10);
        P.X_seq.push_back(Xi);
        if (i >= t_min && Xi >= top) break;
    }
    P.alpha = alpha;
    return P;
}

Int crt_residue(const ModParams& P, const Int& j) {
    const Int mn = P.m * P.n;
    Int v = (P.r * P.m * P.m_inv_mod_n + j * P.n * P.n_inv_mod_m) % mn;
    if (v < 0) v += mn;
    return v;
}

PowerParams make_power_params(const Int& N, unsigned r, const Rational& c1, const Rational& c2, const Int& m,
                              const ZnElem& alpha) {
    if (r < 1 || m < 1) throw BoundTooLarge("power search: need r >= 1, m >= 1");
    if (c1 <= 0 || c2 <= c1) throw BoundTooLarge("power search: need 0 < c1 < c2");
    PowerParams P;
    P.N = N;
    P.r = r;
    P.c1 = c1;
    P.c2 = c2;
    P.m = m;
    P.k = power_k(m, r);
    const Int u = c1.get_num(), v = c1.get_den();
    // J^(2r) <= N v^2 / (u^2 X^(2r))
    P.J = int_root_floor(N * v * v, u * u * pow_ui(m, 2 * r), 1, 2 * r);
    P.alpha = alpha;
    return P;
}

std::vector<GiantStep> balanced_giant_steps(const BalancedParams& P, Counters* ctr) {
    std::vector<Int> js;
    for (Int j = 1; j <= P.m; ++j)
        if (gcd(j, P.m) == 1) js.push_back(j);
    std::vector<GiantStep> out(js.size());
    parallel_for(js.size(), [&](std::size_t t) {
        out[t] = reduced_giant(P.alpha, build_balanced_basis(P.N, P.m_inv, js[t], P.X), P.X, js[t], P.m, 0);
    });
    if (ctr) {
        ctr->giant_steps += js.size();
        ctr->lll_calls += js.size();
    }
    return out;
}

std::vector<GiantStep> mod_giant_steps(const ModParams& P, Counters* ctr) {
    const Int mn = P.m * P.n;
    std::vector<std::pair<std::size_t, Int>> work;
    for (std::size_t i = 0; i < P.X_seq.size(); ++i)
        for (Int j = 1; j <= P.m; ++j)
            if (gcd(j, P.m) == 1) work.push_back({i, j});
    std::vector<GiantStep> out(work.size());
    parallel_for(work.size(), [&](std::size_t t) {
        auto& [i, j] = work[t];
        Int mj = crt_residue(P, j);
        const Int& X = P.X_seq[i];
        out[t] = reduced_giant(P.alpha, build_mod_basis(P.N, Int(mj * P.s), X), X, mj, mn, i);
    });
    if (ctr) {
        ctr->giant_steps += work.size();
        ctr->lll_calls += work.size();
    }
    return out;
}

std::pair<Int, Int> main_search(const BalancedParams& P, Counters* ctr) {
    const ZnElem gamma = mod_pow(P.alpha, Int(P.m * P.m));
    auto babies = baby_steps(gamma, P.k, ctr);
    auto giants = balanced_giant_steps(P, ctr);
    auto solve = [&](const GiantStep& g, const Int& sigma) { return solve_reduced(P.N, g, P.m, sigma); };
    if (auto r = sort_match_and_collide(P.N, babies, gamma, giants, true, solve, ctr)) return *r;
    throw SearchExhausted("main search: no collision for N = " + P.N.get_str() + ", m = " + P.m.get_str() +
                          ", k = " + P.k.get_str() + "; alpha or bounds precondition suspected");
}

std::pair<Int, Int> main_search_mod(const ModParams& P, Counters* ctr) {
    const Int mn = P.m * P.n;
    const ZnElem gamma = mod_pow(P.alpha, Int(mn * mn));
    auto babies = baby_steps(gamma, P.k, ctr);
    auto giants = mod_giant_steps(P, ctr);
    auto solve = [&](const GiantStep& g, const Int& sigma) { return solve_reduced(P.N, g, mn, sigma); };
    if (auto r = sort_match_and_collide(P.N, babies, gamma, giants, true, solve, ctr)) return *r;
    throw SearchExhausted("mod search: no collision for N = " + P.N.get_str() + ", m = " + P.m.get_str() +
                          ", n = " + P.n.get_str());
}

std::pair<Int, Int> split_power_divisor(const Int& N, unsigned r, const Int& g) {
    const Int a = g, b = N / g;
    const Int h = gcd(a, b);
    Int p;
    if (h > 1) {
        p = perfect_power(h).first;
    } else {
        for (const Int& d : {a, b}) {
            Int root = int_root_floor(d, 1, 1, r);
            if (pow_ui(root, r) == d && (p == 0 || root < p)) p = root;
        }
    }
    if (p < 2) throw SearchExhausted("power search: cannot resolve divisor " + g.get_str());
    Int pr = pow_ui(p, r);
    if (N % pr != 0) throw SearchExhausted("power search: p^r does not divide N for p = " + p.get_str());
    return {p, N / pr};
}

std::pair<Int, Int> main_search_power(const PowerParams& P, Counters* ctr) {
    const Int& N = P.N;
    const std::size_t K = P.k.get_ui();
    std::vector<Int> babies;
    babies.reserve(K);
    Int cur = 1 % N;
    for (std::size_t i = 0; i < K; ++i) {
        babies.push_back(cur);
        if (ctr) {
            ++ctr->baby_steps;
            ++ctr->gcd_calls;
        }
        if (i > 0) {
            Int g = gcd(Int(cur - 1), N);
            if (g > 1 && g < N) return split_power_divisor(N, P.r, g);
        }
        cur = cur * P.alpha.residue % N;
    }

    const std::size_t J = P.J.get_ui();
    std::vector<GiantStep> giants(J + 1);
    parallel_for(J + 1, [&](std::size_t j) {
        Int M = P.m * static_cast<unsigned long>(j);
        PowerRows rows = build_power_rows(M, P.m, P.r);
        // g_j(x) = x (x + M)^r, coefficients v_j^t = rows.v[t] / X^t
        IntPoly g(P.r + 2);
        Int Xt = 1;
        for (unsigned t = 0; t < P.r + 2; ++t) {
            g[t] = rows.v[t] / Xt;
            Xt *= P.m;
        }
        GiantStep gs;
        gs.j = M;
        gs.E = poly_eval(g, Int(1 - M));
        gs.x = mod_pow_signed(P.alpha, gs.E).residue;
        giants[j] = std::move(gs);
    });
    if (ctr) ctr->giant_steps += J + 1;

    std::optional<std::pair<Int, Int>> found;
    auto solve = [&](const GiantStep& g, const Int& sigma) -> std::optional<Int> {
        // x (x + M)^r = sigma (x + M)^r has the single candidate x = sigma
        Int p = g.j + sigma;
        if (p > 1 && N % pow_ui(p, P.r) == 0 && N / pow_ui(p, P.r) > 1) {
            found = std::make_pair(p, Int(N / pow_ui(p, P.r)));
            return p;
        }
        return std::nullopt;
    };
    auto hit = sort_match_and_collide(N, babies, P.alpha, giants, false, solve, ctr);
    if (found) return *found;
    if (hit) return split_power_divisor(N, P.r, hit->first);
    throw SearchExhausted("power search: no collision for N = " + N.get_str() + ", r = " + std::to_string(P.r));
}

}  // namespace latfactor
