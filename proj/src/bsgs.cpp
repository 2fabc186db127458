#include "latfactor/bsgs.hpp"

#include <algorithm>

#include "latfactor/parallel.hpp"
#include "latfactor/znpoly.hpp"

namespace latfactor {

std::vector<Match> sort_match(const BabyTable& babies, const GiantList& giants) {
    auto b = babies.entries;
    auto g = giants.entries;
    std::sort(b.begin(), b.end());
    std::sort(g.begin(), g.end());
    std::vector<Match> out;
    std::size_t x = 0, y = 0;
    while (x < b.size() && y < g.size()) {
        if (b[x].first < g[y].first) {
            ++x;
        } else if (g[y].first < b[x].first) {
            ++y;
        } else {
            std::size_t x2 = x, y2 = y;
            while (x2 < b.size() && b[x2].first == b[x].first) ++x2;
            while (y2 < g.size() && g[y2].first == g[y].first) ++y2;
            for (std::size_t u = x; u < x2; ++u)
                for (std::size_t v = y; v < y2; ++v) out.push_back({b[u].second, g[v].second});
            x = x2;
            y = y2;
        }
    }
    std::sort(out.begin(), out.end(), [](const Match& l, const Match& r) {
        return l.i != r.i ? l.i < r.i : l.tag < r.tag;
    });
    return out;
}

std::optional<std::pair<Int, Int>> find_collisions(const Int& N, const Int& kappa, const ZnElem& gamma,
                                                   const std::vector<Int>& vs, const CollisionOptions& opt,
                                                   Counters* ctr) {
    if (vs.empty() || kappa < 1) return std::nullopt;
    const std::size_t B = std::max<std::size_t>(opt.block, 1);

    std::vector<ZnPoly> trees;
    for (std::size_t lo = 0; lo < vs.size(); lo += B) {
        std::vector<Int> part(vs.begin() + lo, vs.begin() + std::min(vs.size(), lo + B));
        trees.push_back(product_tree(part, N));
    }

    const std::uint64_t K = kappa.get_ui();
    const std::size_t nblocks = (K + B - 1) / B;
    const std::size_t wave = std::max<unsigned>(threads(), 1);
    for (std::size_t w0 = 0; w0 < nblocks; w0 += wave) {
        const std::size_t w1 = std::min(nblocks, w0 + wave);
        std::vector<std::vector<Int>> vals(w1 - w0);
        parallel_for(w1 - w0, [&](std::size_t t) {
            const std::uint64_t i0 = (w0 + t) * B;
            const std::size_t len = static_cast<std::size_t>(std::min<std::uint64_t>(B, K - i0));
            // f(gamma^(i0+i)) = g(gamma^i) where g_d = f_d * gamma^(i0 d)
            Int shift = mod_pow(gamma, Int(static_cast<unsigned long>(i0))).residue;
            std::vector<Int> acc(len, Int(1));
            for (auto& f : trees) {
                ZnPoly g = f;
                Int sp = 1;
                for (auto& c : g.coeffs) {
                    c = c * sp % N;
                    sp = sp * shift % N;
                }
                auto ys = eval_geometric(g, gamma, len);
                for (std::size_t i = 0; i < len; ++i) acc[i] = acc[i] * ys[i] % N;
            }
            vals[t] = std::move(acc);
        });
        for (std::size_t t = 0; t < vals.size(); ++t) {
            const std::uint64_t i0 = (w0 + t) * B;
            for (std::size_t i = 0; i < vals[t].size(); ++i) {
                if (ctr) {
                    ++ctr->gcd_calls;
                    ++ctr->collisions_checked;
                }
                Int g = gcd(N, vals[t][i]);
                if (g == 1) continue;
                // resolve to the first v_h so the answer is the smallest (i, h)
                Int gi = mod_pow(gamma, Int(static_cast<unsigned long>(i0 + i))).residue;
                for (auto& v : vs) {
                    if (ctr) ++ctr->gcd_calls;
                    Int h = gcd(N, Int(v - gi));
                    if (h != 1 && h != N) return std::make_pair(h, Int(N / h));
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace latfactor
