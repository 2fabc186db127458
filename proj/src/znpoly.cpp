#include "latfactor/znpoly.hpp"

#include <algorithm>
#include <cstring>

namespace latfactor {

namespace {

constexpr std::size_t limb_bits = GMP_NUMB_BITS;

void strip(std::vector<Int>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

Int pack(const std::vector<Int>& c, std::size_t L) {
    Int out;
    if (c.empty()) return out;
    std::size_t total = c.size() * L;
    mp_limb_t* dst = mpz_limbs_write(out.get_mpz_t(), static_cast<mp_size_t>(total));
    std::memset(dst, 0, total * sizeof(mp_limb_t));
    for (std::size_t i = 0; i < c.size(); ++i) {
        std::size_t n = mpz_size(c[i].get_mpz_t());
        if (n) std::memcpy(dst + i * L, mpz_limbs_read(c[i].get_mpz_t()), n * sizeof(mp_limb_t));
    }
    mpz_limbs_finish(out.get_mpz_t(), static_cast<mp_size_t>(total));
    return out;
}

std::vector<Int> unpack(const Int& v, std::size_t count, std::size_t L) {
    std::vector<Int> out(count);
    std::size_t have = mpz_size(v.get_mpz_t());
    const mp_limb_t* src = mpz_limbs_read(v.get_mpz_t());
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t lo = i * L;
        if (lo >= have) break;
        std::size_t n = std::min(L, have - lo);
        mp_limb_t* dst = mpz_limbs_write(out[i].get_mpz_t(), static_cast<mp_size_t>(n));
        std::memcpy(dst, src + lo, n * sizeof(mp_limb_t));
        mpz_limbs_finish(out[i].get_mpz_t(), static_cast<mp_size_t>(n));
    }
    return out;
}

}  // namespace

std::vector<Int> kronecker_mul(const std::vector<Int>& a, const std::vector<Int>& b,
                               std::size_t coeff_bits) {
    if (a.empty() || b.empty()) return {};
    std::size_t shorter = std::min(a.size(), b.size());
    std::size_t slot = 2 * coeff_bits + bitlen(Int(static_cast<unsigned long>(shorter))) + 1;
    std::size_t L = (slot + limb_bits - 1) / limb_bits;
    Int pa = pack(a, L);
    Int pb = pack(b, L);
    Int prod = pa * pb;
    return unpack(prod, a.size() + b.size() - 1, L);
}

ZnPoly make_poly(std::vector<Int> coeffs, const Int& N) {
    for (auto& c : coeffs) {
        c %= N;
        if (c < 0) c += N;
    }
    strip(coeffs);
    return {std::move(coeffs), N};
}

ZnPoly poly_mul_schoolbook(const ZnPoly& a, const ZnPoly& b) {
    if (a.modulus != b.modulus) throw ModulusMismatch();
    if (a.coeffs.empty() || b.coeffs.empty()) return {{}, a.modulus};
    std::vector<Int> c(a.coeffs.size() + b.coeffs.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j) c[i + j] += a.coeffs[i] * b.coeffs[j];
    return make_poly(std::move(c), a.modulus);
}

ZnPoly poly_mul(const ZnPoly& a, const ZnPoly& b) {
    if (a.modulus != b.modulus) throw ModulusMismatch();
    if (a.coeffs.empty() || b.coeffs.empty()) return {{}, a.modulus};
    if (std::min(a.coeffs.size(), b.coeffs.size()) <= 2) return poly_mul_schoolbook(a, b);
    auto c = kronecker_mul(a.coeffs, b.coeffs, bitlen(a.modulus));
    for (auto& x : c) x %= a.modulus;
    strip(c);
    return {std::move(c), a.modulus};
}

ZnPoly product_tree(const std::vector<Int>& points, const Int& N) {
    if (points.empty()) throw Error("product_tree: empty point list");
    std::vector<ZnPoly> level;
    level.reserve(points.size());
    for (auto& v : points) {
        Int c0 = (-v) % N;
        if (c0 < 0) c0 += N;
        level.push_back({{c0, Int(1)}, N});
    }
    while (level.size() > 1) {
        std::vector<ZnPoly> next;
        next.reserve((level.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(poly_mul(level[i], level[i + 1]));
        if (level.size() % 2) next.push_back(std::move(level.back()));
        level = std::move(next);
    }
    return std::move(level.front());
}

ZnPoly product_tree(const std::vector<ZnElem>& points) {
    if (points.empty()) throw Error("product_tree: empty point list");
    std::vector<Int> vs;
    vs.reserve(points.size());
    for (auto& p : points) {
        if (p.modulus != points.front().modulus) throw ModulusMismatch();
        vs.push_back(p.residue);
    }
    return product_tree(vs, points.front().modulus);
}

Int horner(const ZnPoly& f, const Int& x) {
    Int acc = 0;
    for (std::size_t i = f.coeffs.size(); i-- > 0;) acc = (acc * x + f.coeffs[i]) % f.modulus;
    if (acc < 0) acc += f.modulus;
    return acc;
}

std::vector<Int> eval_geometric(const ZnPoly& f, const ZnElem& alpha, std::size_t m) {
    const Int& N = f.modulus;
    if (alpha.modulus != N) throw ModulusMismatch();
    if (m == 0) return {};
    if (f.coeffs.empty()) return std::vector<Int>(m, Int(0));
    Int ainv = mod_inv(alpha.residue, N).residue;

    // i*j = C(i+j,2) - C(i,2) - C(j,2)
    const std::size_t d = f.coeffs.size() - 1;
    const std::size_t nb = m + d;
    std::vector<Int> chirp(nb), ichirp(std::max(nb, d + 1));
    Int w = 1, step = 1, iw = 1, istep = 1;
    for (std::size_t l = 0; l < chirp.size(); ++l) {
        chirp[l] = w;
        w = w * step % N;
        step = step * alpha.residue % N;
    }
    for (std::size_t l = 0; l < ichirp.size(); ++l) {
        ichirp[l] = iw;
        iw = iw * istep % N;
        istep = istep * ainv % N;
    }
    std::vector<Int> arev(d + 1);
    for (std::size_t j = 0; j <= d; ++j) arev[d - j] = f.coeffs[j] * ichirp[j] % N;

    auto prod = kronecker_mul(arev, chirp, bitlen(N));
    std::vector<Int> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = prod[d + i] % N * ichirp[i] % N;
    return out;
}

}  // namespace latfactor
