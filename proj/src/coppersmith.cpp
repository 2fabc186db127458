#include "latfactor/coppersmith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace latfactor {

void poly_trim(IntPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Int poly_eval(const IntPoly& f, const Int& x) {
    Int acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
    return acc;
}

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
    if (a.empty() || b.empty()) return {};
    IntPoly c(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

IntPoly poly_pow(const IntPoly& f, unsigned e) {
    IntPoly r{Int(1)};
    for (unsigned i = 0; i < e; ++i) r = poly_mul(r, f);
    return r;
}

IntPoly poly_shift(const IntPoly& f, const Int& tau) {
    // Horner in the ring Z[x]: acc = acc * (x + tau) + f_i
    IntPoly acc;
    for (std::size_t i = f.size(); i-- > 0;) {
        IntPoly next(acc.size() + 1, Int(0));
        for (std::size_t k = 0; k < acc.size(); ++k) {
            next[k + 1] += acc[k];
            next[k] += acc[k] * tau;
        }
        next[0] += f[i];
        acc = std::move(next);
    }
    poly_trim(acc);
    return acc;
}

IntPoly poly_derivative(const IntPoly& f) {
    IntPoly d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<unsigned long>(i));
    poly_trim(d);
    return d;
}

namespace {

// Superset of floor(c) over real roots c of p inside [lo, hi].
std::vector<Int> root_floors(IntPoly p, const Int& lo, const Int& hi) {
    poly_trim(p);
    std::vector<Int> out;
    if (p.size() <= 1 || lo > hi) return out;
    if (p.size() == 2) {
        Int a, num = -p[0];
        Int den = p[1];
        if (den < 0) {
            num = -num;
            den = -den;
        }
        mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (a >= lo && a <= hi) out.push_back(a);
        return out;
    }
    std::vector<Int> crit = root_floors(poly_derivative(p), lo, hi);
    out = crit;
    auto scan = [&](const Int& s, const Int& w) {
        if (s > w) return;
        int ps = sgn(poly_eval(p, s)), pw = sgn(poly_eval(p, w));
        if (ps == 0) out.push_back(s);
        if (pw == 0) out.push_back(w);
        if (ps * pw >= 0) return;
        Int l = s, r = w;
        while (r - l > 1) {
            Int mid = (l + r) / 2;
            int pm = sgn(poly_eval(p, mid));
            if (pm == 0) {
                out.push_back(mid);
                return;
            }
            if (pm == ps)
                l = mid;
            else
                r = mid;
        }
        out.push_back(l);
    };
    Int cur = lo;
    for (auto& a : crit) {
        scan(cur, a);
        cur = a + 1;
    }
    scan(cur, hi);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

std::vector<Int> integer_roots(const IntPoly& g, const Int& lo, const Int& hi) {
    std::vector<Int> out;
    for (auto& a : root_floors(g, lo, hi))
        if (poly_eval(g, a) == 0) out.push_back(a);
    return out;
}

std::vector<Int> positive_integer_roots(const IntPoly& g0) {
    IntPoly g = g0;
    poly_trim(g);
    if (g.size() <= 1) return {};
    // Cauchy bound
    Int mx = 0;
    for (std::size_t i = 0; i + 1 < g.size(); ++i) mx = std::max(mx, Int(abs(g[i])));
    Int lead = abs(g.back());
    Int bound = 1 + (mx + lead - 1) / lead;
    return integer_roots(g, 1, bound);
}

std::vector<Int> quadratic_integer_roots(const Int& A, const Int& B, const Int& C) {
    std::vector<Int> out;
    if (A == 0) {
        if (B != 0 && mpz_divisible_p(Int(-C).get_mpz_t(), B.get_mpz_t())) out.push_back(-C / B);
        return out;
    }
    Int disc = B * B - 4 * A * C;
    if (disc < 0) return out;
    Int s = sqrt(disc);
    if (s * s != disc) return out;
    Int den = 2 * A;
    for (Int num : {Int(-B + s), Int(-B - s)})
        if (mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) out.push_back(num / den);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

long double log2_int(const Int& n) {
    if (n <= 0) return -std::numeric_limits<long double>::infinity();
    long e;
    double d = mpz_get_d_2exp(&e, n.get_mpz_t());
    return std::log2(static_cast<long double>(d)) + e;
}

Int int_from_log2(long double lx) {
    if (lx < 0) return 0;
    long e = static_cast<long>(std::floor(lx));
    long double frac = lx - e;
    // 2^frac in [1, 2), scaled to 60 bits of precision
    Int mant = Int(static_cast<unsigned long>(std::ldexp(std::pow(2.0L, frac), 60)));
    if (e >= 60) return mant << (e - 60);
    return mant >> (60 - e);
}

IntPoly reduce_monic(IntPoly f, const Int& N) {
    poly_trim(f);
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
        f[i] %= N;
        if (f[i] < 0) f[i] += N;
    }
    return f;
}

Int powz(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

// (2 gcd(v, N))^den >= N^num
bool divisor_large_enough(const Int& v, const Int& N, const Rational& beta) {
    Int g = gcd(v, N);
    if (g == 0) g = N;
    return powz(2 * g, beta.get_den().get_ui()) >= powz(N, beta.get_num().get_ui());
}

Int translates_needed(const Int& half_range, const Int& X) {
    Int width = 2 * half_range + 1, cover = 2 * X + 1;
    return (width + cover - 1) / cover;
}

}  // namespace

Rational beta_lower(const Int& N, const Int& b, unsigned long v) {
    if (b <= 1) return 0;
    if (b >= N) return 1;
    long double est = v * log2_int(b) / log2_int(N);
    long u = std::max(0L, static_cast<long>(std::floor(est)));
    Int bv = powz(b, v);
    while (u > 0 && powz(N, u) > bv) --u;
    while (powz(N, u + 1) <= bv) ++u;
    Rational r(u, v);
    r.canonicalize();
    return r;
}

namespace {
// Observed LLL output on these lattices is far better than 2^((n-1)/4);
// windows that still miss the bound are split by solve_window.
const long double kLllSlackBits = 0.1L;
}  // namespace

HintParams choose_hint_params(const Int& N, const Rational& beta, unsigned delta, const Int& half_range) {
    const long double lN = log2_int(N);
    const long double b = beta.get_d();
    const unsigned cap = static_cast<unsigned>(std::ceil(lN + 1));
    HintParams best;
    long double best_cost = std::numeric_limits<long double>::infinity();
    const long double lR = log2_int(2 * half_range + 1);
    for (unsigned n = delta + 1; n <= cap; ++n) {
        for (unsigned m = 1; m * delta <= n; ++m) {
            // divisor bound taken as N^beta / 2; LLL approximation charged at
            // kLllSlackBits per dimension rather than the worst-case 1/4
            long double lx = (m * (b * lN - 1.0L) - static_cast<long double>(delta) * m * (m + 1) / (2.0L * n) * lN -
                              kLllSlackBits * (n - 1) - 0.5L * std::log2(static_cast<long double>(n))) *
                             2.0L / (n - 1);
            if (lx < 0) continue;
            // measured: reduction cost grows ~4x per unit of m, ~n^2 in n
            long double lt = std::max(0.0L, lR - lx - 1.0L);
            long double cost = std::pow(2.0L, lt + 2.0L * m) * n * n;
            if (cost < best_cost) {
                best_cost = cost;
                best.n = n;
                best.m = m;
                best.X = int_from_log2(lx);
            }
        }
    }
    if (best.n == 0 || best.X < 1) throw NoShortEnoughVector("no parameters meet the Howgrave-Graham bound");
    // never wider than needed
    if (best.X > half_range) best.X = std::max(Int(1), half_range);
    return best;
}

IntLattice build_hint_lattice(const IntPoly& f, const Int& N, unsigned m, unsigned n, const Int& X) {
    const unsigned delta = static_cast<unsigned>(f.size() - 1);
    if (delta * m > n) throw Error("build_hint_lattice: need delta*m <= n");
    std::vector<IntPoly> fp{IntPoly{Int(1)}};
    for (unsigned i = 1; i <= m; ++i) fp.push_back(poly_mul(fp.back(), f));
    std::vector<Int> Xp(n, Int(1));
    for (unsigned i = 1; i < n; ++i) Xp[i] = Xp[i - 1] * X;

    IntLattice L;
    auto emit = [&](const IntPoly& poly, unsigned shift, const Int& scale) {
        IntVector row(n, Int(0));
        for (std::size_t k = 0; k < poly.size(); ++k) row[k + shift] = poly[k] * scale * Xp[k + shift];
        L.rows.push_back(std::move(row));
    };
    for (unsigned i = 0; i < m; ++i) {
        Int Np = powz(N, m - i);
        for (unsigned j = 0; j < delta; ++j) emit(fp[i], j, Np);
    }
    for (unsigned i = 0; i + delta * m < n; ++i) emit(fp[m], i, Int(1));
    return L;
}

namespace {

HintLatticeObserver& observer() {
    static HintLatticeObserver obs;
    return obs;
}

// Covers [a, b] with one lattice centred in the window; when the reduced
// vector misses the Howgrave-Graham bound the window is split in half.
void solve_window(const IntPoly& f, const Int& N, const Rational& beta, const HintParams& hp, const Int& a,
                  const Int& b, Counters* ctr, std::vector<Int>& out) {
    if (b - a < 4) {
        for (Int x = a; x <= b; ++x) out.push_back(x);
        return;
    }
    Int tau = (a + b) / 2;
    Int X = std::max(tau - a, b - tau);
    IntPoly g = reduce_monic(poly_shift(f, tau), N);
    IntLattice L = build_hint_lattice(g, N, hp.m, hp.n, X);
    if (observer()) observer()(L, N, static_cast<unsigned>(g.size() - 1), hp.m, hp.n, X);
    ReducedBasis rb = lll_reduce(L);
    if (ctr) ++ctr->lll_calls;
    const IntVector& v = rb.rows[0];

    // ||h(xX)||^2 * n < (N^beta / 2)^(2m), exactly
    unsigned long bu = beta.get_num().get_ui(), bv = beta.get_den().get_ui();
    Int lhs = powz(norm2(v) * hp.n, bv) << (2 * hp.m * bv);
    Int rhs = powz(N, 2 * bu * hp.m);
    if (!(lhs < rhs)) {
        solve_window(f, N, beta, hp, a, tau, ctr, out);
        solve_window(f, N, beta, hp, tau + 1, b, ctr, out);
        return;
    }

    IntPoly h(v.size());
    Int Xp = 1;
    for (std::size_t k = 0; k < v.size(); ++k) {
        h[k] = v[k] / Xp;
        Xp *= X;
    }
    for (auto& x : integer_roots(h, a - tau, b - tau)) out.push_back(x + tau);
}

}  // namespace

void set_hint_lattice_observer(HintLatticeObserver obs) { observer() = std::move(obs); }

std::vector<Int> small_roots_in(const IntPoly& f0, const Int& N, const Rational& beta, const Int& lo, const Int& hi,
                                Counters* ctr) {
    std::vector<Int> out;
    if (hi < lo) return out;
    IntPoly f = reduce_monic(f0, N);
    if (f.empty() || f.back() != 1) throw Error("small_roots: polynomial must be monic");
    const unsigned delta = static_cast<unsigned>(f.size() - 1);
    if (delta == 0) return out;

    Int half = (hi - lo + 2) / 2;
    HintParams hp = choose_hint_params(N, beta, delta, half);
    Int cover = 2 * hp.X + 1;
    std::vector<Int> cand;
    for (Int a = lo; a <= hi; a += cover) solve_window(f, N, beta, hp, a, std::min(hi, Int(a + cover - 1)), ctr, cand);
    for (auto& x : cand)
        if (divisor_large_enough(poly_eval(f, x), N, beta)) out.push_back(x);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Int> small_roots(const HintInstance& inst, Counters* ctr) {
    // range c * N^(beta^2 / delta), floored exactly
    const unsigned delta = inst.delta_deg();
    Rational e = inst.beta * inst.beta / delta;
    unsigned long eu = e.get_num().get_ui(), ev = e.get_den().get_ui();
    unsigned long cu = inst.c.get_num().get_ui(), cd = inst.c.get_den().get_ui();
    // floor((N^eu * cu^ev / cd^ev)^(1/ev))
    Int R = int_root_floor(powz(inst.N, eu) * powz(Int(cu), ev), powz(Int(cd), ev), 1, ev);
    return small_roots_in(inst.f, inst.N, inst.beta, -R, R, ctr);
}

SweepPlan make_sweep_plan(const Int& N, unsigned r, const Int& s, const Int& m) {
    SweepPlan plan;
    plan.m = m;
    plan.s = s;
    Int R = int_root_floor(N, 1, 1, r);
    std::size_t k = bitlen(N) / r;
    for (std::size_t i = 0; i <= k; ++i) plan.X_seq.push_back(R >> i);
    return plan;
}

std::vector<Int> rpower_divisors_congruence(const Int& N, unsigned r, const Int& s0, const Int& m,
                                            const SweepOptions& opt, Counters* ctr) {
    if (m < 1 || r < 1) throw Error("rpower_divisors_congruence: need m >= 1, r >= 1");
    Int g = gcd(m, N);
    if (g != 1) throw SharedFactor(g);
    Int s = s0 % m;
    if (s < 0) s += m;
    Int t = m == 1 ? Int(1) : mod_inv(m, N).residue;
    IntPoly f = reduce_monic(poly_pow(IntPoly{Int(s * t % N), Int(1)}, r), N);

    std::vector<Int> found;
    auto check = [&](const Int& p) {
        if (p <= 1 || !mpz_divisible_p(N.get_mpz_t(), p.get_mpz_t())) return;
        if (mpz_divisible_p(N.get_mpz_t(), powz(p, r).get_mpz_t())) found.push_back(p);
    };
    auto ceil_div = [](const Int& a, const Int& b) {
        Int q;
        mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return q;
    };
    auto floor_div = [](const Int& a, const Int& b) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return q;
    };
    auto step = [&](const Int& xlo, const Int& xhi) {
        for (Int x = xlo; x <= xhi; ++x) check(s + m * x);
    };

    SweepPlan plan = make_sweep_plan(N, r, s, m);
    const std::size_t k = plan.X_seq.size() - 1;
    for (std::size_t i = 0; i < k; ++i) {
        Int lo = std::max(Int(2), plan.X_seq[i + 1]), hi = plan.X_seq[i];
        if (hi < lo) continue;
        Int xlo = ceil_div(lo - s, m), xhi = floor_div(hi - s, m);
        if (xhi < xlo) continue;
        Int count = xhi - xlo + 1;
        if (count <= Int(static_cast<unsigned long>(opt.exhaustive_below))) {
            step(xlo, xhi);
            continue;
        }
        Rational beta = beta_lower(N, powz(lo, r));
        HintParams hp;
        bool feasible = beta > 0;
        if (feasible) {
            try {
                hp = choose_hint_params(N, beta, r, (count + 1) / 2);
            } catch (const NoShortEnoughVector&) {
                feasible = false;
            }
        }
        if (!feasible ||
            count <= translates_needed((count + 1) / 2, hp.X) * Int(static_cast<unsigned long>(opt.lll_weight))) {
            step(xlo, xhi);
            continue;
        }
        for (auto& x : small_roots_in(f, N, beta, xlo, xhi, ctr)) {
            Int p = s + m * x;
            if (p >= lo && p <= hi) check(p);
        }
    }
    // terminal piece [1, X_k] by direct stepping
    {
        Int hi = plan.X_seq[k];
        Int xlo = ceil_div(Int(2) - s, m), xhi = floor_div(hi - s, m);
        step(xlo, xhi);
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
}

std::vector<Int> factor_with_congruence(const Int& N, const Int& s, const Int& m, const SweepOptions& opt,
                                        Counters* ctr) {
    std::vector<Int> out;
    for (auto& p : rpower_divisors_congruence(N, 1, s, m, opt, ctr))
        if (det_prime_test(p)) out.push_back(p);
    return out;
}

}  // namespace latfactor
