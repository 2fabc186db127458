#include "latfactor/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "latfactor/drivers.hpp"
#include "latfactor/parallel.hpp"

namespace latfactor {

namespace {

using json = nlohmann::ordered_json;

json counters_json(const Counters& c) {
    return {{"baby_steps", c.baby_steps},
            {"giant_steps", c.giant_steps},
            {"lll_calls", c.lll_calls},
            {"collisions_checked", c.collisions_checked},
            {"gcd_calls", c.gcd_calls}};
}

json factors_json(const Factorization& f) {
    json a = json::array();
    for (auto& pp : f) a.push_back({{"prime", pp.prime.get_str()}, {"multiplicity", pp.mult}});
    return a;
}

json factor_list_json(const Factorization& f) {
    json a = json::array();
    for (auto& pp : f)
        for (unsigned e = 0; e < pp.mult; ++e) a.push_back(pp.prime.get_str());
    return a;
}

json report(const std::string& command, const Int& N, const json& given, const FactorizationResult& res,
            double ms) {
    json params = given;
    for (auto& t : res.trace)
        for (auto& [k, v] : t.params)
            if (!params.contains(k)) params[k] = v;
    json trace = json::array();
    for (auto& t : res.trace) {
        json p = json::object();
        for (auto& [k, v] : t.params) p[k] = v;
        trace.push_back({{"stage", t.stage}, {"params", p}, {"counters", counters_json(t.counters)}});
    }
    return {{"command", command},
            {"input", N.get_str()},
            {"parameters", params},
            {"factors", factors_json(res.factors)},
            {"factor_list", factor_list_json(res.factors)},
            {"counters", counters_json(res.totals())},
            {"trace", trace},
            {"wall_time_ms", ms}};
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

// Reduces the input, then runs the balanced search on the remaining semiprime.
FactorizationResult factor_auto(const Int& N, const Rational& beta, const Rational& c) {
    FactorizationResult res;
    if (det_prime_test(N)) {
        res.factors = {{N, 1}};
        res.trace.push_back({"prime", {}, {}});
        return res;
    }
    Reduction red = reduce_to_semiprime(N);
    res.trace.push_back({"reduce", {{"removed", std::to_string(red.removed.size())}, {"core", red.core.get_str()}}, {}});
    Factorization f = red.removed;
    if (red.core > 1) {
        if (det_prime_test(red.core)) {
            f.push_back({red.core, 1});
        } else {
            auto sub = factor_balanced(red.core, beta, c);
            res.trace.insert(res.trace.end(), sub.trace.begin(), sub.trace.end());
            f.insert(f.end(), sub.factors.begin(), sub.factors.end());
        }
    }
    res.factors = normalize(f);
    return res;
}

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Prime with exactly `bits` bits drawn from eng; raw words keep it platform independent.
Int random_prime_bits(std::mt19937_64& eng, unsigned bits) {
    for (;;) {
        Int c = 0;
        for (unsigned b = 0; b < bits; b += 64) c = (c << 64) + Int(std::to_string(eng()));
        c %= Int(1) << (bits - 1);
        c += Int(1) << (bits - 1);
        Int p;
        mpz_nextprime(p.get_mpz_t(), Int(c - 1).get_mpz_t());
        if (bitlen(p) == bits) return p;
    }
}

std::string fmt_double(double v, int prec) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(prec) << v;
    return s.str();
}

}  // namespace

Int parse_int(const std::string& s) {
    Int v;
    bool hex = s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X');
    std::string digits = hex ? s.substr(2) : s;
    if (digits.empty() || digits.find_first_not_of(hex ? "0123456789abcdefABCDEF" : "0123456789") != std::string::npos)
        throw std::invalid_argument("not an integer: '" + s + "'");
    v.set_str(digits, hex ? 16 : 10);
    return v;
}

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Int u = parse_int(s.substr(0, slash)), v = parse_int(s.substr(slash + 1));
        if (v == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
        Rational q(u, v);
        q.canonicalize();
        return q;
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string frac = s.substr(dot + 1), whole = s.substr(0, dot);
        if (frac.empty()) throw std::invalid_argument("not a rational: '" + s + "'");
        Int den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
        Rational q(parse_int(whole.empty() ? "0" : whole) * den + parse_int(frac), den);
        q.canonicalize();
        return q;
    }
    return Rational(parse_int(s));
}

std::pair<Int, Int> bench_instance(unsigned bits, std::uint64_t seed, unsigned index) {
    if (bits < 8 || bits % 2) throw std::invalid_argument("bench sizes must be even and >= 8");
    std::mt19937_64 eng(splitmix(seed ^ splitmix((std::uint64_t(bits) << 32) | index)));
    Int p = random_prime_bits(eng, bits / 2), q = random_prime_bits(eng, bits / 2);
    if (p > q) std::swap(p, q);
    return {p, q};
}

BenchRow bench_row(unsigned bits, std::uint64_t seed, unsigned index, const Rational& c) {
    BenchRow row;
    row.bits = bits;
    row.index = index;
    std::tie(row.p, row.q) = bench_instance(bits, seed, index);
    row.N = row.p * row.q;
    auto t0 = std::chrono::steady_clock::now();
    FactorizationResult res = factor_balanced(row.N, Rational(1, 2), c);
    row.wall_time_ms = elapsed_ms(t0);
    auto plan = plan_balanced(row.N, Rational(1, 2), c);
    row.m = plan.m;
    row.phi_m = plan.phi_m;
    row.k = plan.k;
    row.path = res.trace.back().stage;
    row.counters = res.totals();
    row.ok = recompose(res.factors) == row.N && res.factors.front().prime == row.p;
    return row;
}

std::vector<BenchRow> run_bench(const BenchOptions& opt) {
    std::vector<BenchRow> rows;
    for (unsigned b = opt.min_bits; b <= opt.max_bits; b += std::max(opt.step, 1u))
        for (unsigned i = 0; i < opt.count; ++i) rows.push_back(bench_row(b, opt.seed, i, opt.c));
    return rows;
}

std::optional<PowerFit> fit_baby_steps(const std::vector<BenchRow>& rows) {
    std::vector<double> xs, ys;
    std::vector<unsigned> sizes;
    for (auto& r : rows) {
        if (r.counters.baby_steps == 0) continue;
        if (std::find(sizes.begin(), sizes.end(), r.bits) == sizes.end()) sizes.push_back(r.bits);
        xs.push_back(std::log2(r.N.get_d()));
        ys.push_back(std::log2(static_cast<double>(r.counters.baby_steps)));
    }
    // a trend needs at least two sizes
    if (sizes.size() < 2) return std::nullopt;
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
    mx /= xs.size();
    my /= xs.size();
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    PowerFit fit;
    fit.exponent = sxy / sxx;
    fit.log2_C = my - fit.exponent * mx;
    fit.points = xs.size();
    return fit;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Deterministic lattice-based integer factoring"};
    app.require_subcommand(1);
    unsigned threads_opt = 0;
    app.add_option("--threads", threads_opt, "worker threads (default: LATFACTOR_THREADS or 1)");

    std::string n_str, beta_str = "1/2", c_str = "1/2", mod_str;
    auto* factor = app.add_subcommand("factor", "factor N (balanced semiprime search or residue-class mode)");
    factor->add_option("N", n_str, "integer, decimal or 0x-hex")->required();
    bool balanced = false;
    factor->add_flag("--balanced", balanced, "require N = pq with c N^beta < p <= N^beta");
    factor->add_option("--beta", beta_str, "size exponent of the smaller prime");
    factor->add_option("--c", c_str, "lower constant of the smaller prime");
    auto* mod_opt = factor->add_option("--mod", mod_str, "r:n, every prime factor is r mod n");
    mod_opt->excludes(factor->get_option("--balanced"));

    unsigned r_opt = 0;
    bool all = false;
    std::string c1_str, c2_str;
    auto* power = app.add_subcommand("power", "prime p with p^r | N");
    power->add_option("N", n_str, "integer")->required();
    power->add_option("--r", r_opt, "exponent")->required()->check(CLI::PositiveNumber);
    auto* all_opt = power->add_flag("--all", all, "every prime p with p^r | N");
    auto* c1_opt = power->add_option("--c1", c1_str, "lower bracket of q / N^(1/2)");
    auto* c2_opt = power->add_option("--c2", c2_str, "upper bracket of q / N^(1/2)");
    all_opt->excludes(c1_opt)->excludes(c2_opt);
    c1_opt->needs(c2_opt);
    c2_opt->needs(c1_opt);

    std::string a_str, b_str;
    auto* anbn = app.add_subcommand("anbn", "factor N = a^n +- b^n");
    anbn->add_option("N", n_str, "integer")->required();
    anbn->add_option("--a", a_str, "base a")->required();
    anbn->add_option("--b", b_str, "base b")->required();

    BenchOptions bo;
    std::string format = "csv", bench_c = "1/2";
    auto* bench = app.add_subcommand("bench", "seeded balanced-semiprime benchmark with a baby-step fit");
    bench->add_option("--min-bits", bo.min_bits, "smallest N size in bits")->check(CLI::Range(8u, 256u));
    bench->add_option("--max-bits", bo.max_bits, "largest N size in bits")->check(CLI::Range(8u, 256u));
    bench->add_option("--step", bo.step, "size step")->check(CLI::PositiveNumber);
    bench->add_option("--count", bo.count, "instances per size");
    bench->add_option("--seed", bo.seed, "instance seed");
    bench->add_option("--c", bench_c, "lower constant passed to the search");
    bench->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (threads_opt) set_threads(threads_opt);
        auto t0 = std::chrono::steady_clock::now();
        if (*factor) {
            Int N = parse_int(n_str);
            if (N < 2) throw std::invalid_argument("N must be at least 2");
            if (!mod_str.empty()) {
                auto colon = mod_str.find(':');
                if (colon == std::string::npos) throw std::invalid_argument("--mod expects r:n");
                Int r = parse_int(mod_str.substr(0, colon)), n = parse_int(mod_str.substr(colon + 1));
                if (n < 1) throw std::invalid_argument("--mod modulus must be positive");
                auto res = factor_with_modinfo(N, n, r);
                out << report("factor", N, {{"mode", "mod"}, {"r", r.get_str()}, {"n", n.get_str()}}, res,
                              elapsed_ms(t0))
                           .dump(2)
                    << "\n";
            } else {
                Rational beta = parse_rational(beta_str), c = parse_rational(c_str);
                auto res = balanced ? factor_balanced(N, beta, c) : factor_auto(N, beta, c);
                json given{{"mode", balanced ? "balanced" : "auto"}, {"beta", beta.get_str()}, {"c", c.get_str()}};
                out << report("factor", N, given, res, elapsed_ms(t0)).dump(2) << "\n";
            }
        } else if (*power) {
            Int N = parse_int(n_str);
            if (N < 2) throw std::invalid_argument("N must be at least 2");
            if (all) {
                Counters ctr;
                auto ps = rpower_all(N, r_opt, &ctr);
                json primes = json::array();
                for (auto& p : ps) primes.push_back(p.get_str());
                json j{{"command", "power"},
                       {"input", N.get_str()},
                       {"parameters", {{"mode", "all"}, {"r", std::to_string(r_opt)}}},
                       {"primes", primes},
                       {"counters", counters_json(ctr)},
                       {"wall_time_ms", elapsed_ms(t0)}};
                out << j.dump(2) << "\n";
            } else {
                FactorizationResult res;
                json given{{"mode", "single"}, {"r", std::to_string(r_opt)}};
                if (!c1_str.empty()) {
                    Rational c1 = parse_rational(c1_str), c2 = parse_rational(c2_str);
                    res = factor_rpower(N, r_opt, c1, c2);
                } else {
                    res = factor_rpower(N, r_opt);
                }
                out << report("power", N, given, res, elapsed_ms(t0)).dump(2) << "\n";
            }
        } else if (*anbn) {
            Int N = parse_int(n_str), a = parse_int(a_str), b = parse_int(b_str);
            auto res = factor_anbn(a, b, N);
            out << report("anbn", N, {{"a", a.get_str()}, {"b", b.get_str()}}, res, elapsed_ms(t0)).dump(2) << "\n";
        } else if (*bench) {
            if (bo.min_bits > bo.max_bits) throw std::invalid_argument("--min-bits exceeds --max-bits");
            if (bo.min_bits % 2 || bo.step % 2) throw std::invalid_argument("bench sizes must be even");
            bo.c = parse_rational(bench_c);
            auto rows = run_bench(bo);
            auto fit = fit_baby_steps(rows);
            if (format == "csv") {
                out << "bits,index,N,p,q,m,phi_m,k,path,baby_steps,giant_steps,lll_calls,collisions_checked,"
                       "gcd_calls,ok,wall_time_ms\n";
                for (auto& r : rows)
                    out << r.bits << ',' << r.index << ',' << r.N << ',' << r.p << ',' << r.q << ',' << r.m << ','
                        << r.phi_m << ',' << r.k << ',' << r.path << ',' << r.counters.baby_steps << ','
                        << r.counters.giant_steps << ',' << r.counters.lll_calls << ','
                        << r.counters.collisions_checked << ',' << r.counters.gcd_calls << ',' << (r.ok ? 1 : 0)
                        << ',' << fmt_double(r.wall_time_ms, 3) << '\n';
                if (fit)
                    out << "# fit baby_steps = 2^" << fmt_double(fit->log2_C, 4) << " * N^"
                        << fmt_double(fit->exponent, 4) << " over " << fit->points << " instances\n";
            } else {
                json a = json::array();
                for (auto& r : rows)
                    a.push_back({{"bits", r.bits},
                                 {"index", r.index},
                                 {"N", r.N.get_str()},
                                 {"p", r.p.get_str()},
                                 {"q", r.q.get_str()},
                                 {"m", r.m.get_str()},
                                 {"phi_m", r.phi_m.get_str()},
                                 {"k", r.k.get_str()},
                                 {"path", r.path},
                                 {"counters", counters_json(r.counters)},
                                 {"ok", r.ok},
                                 {"wall_time_ms", r.wall_time_ms}});
                json j{{"command", "bench"}, {"seed", std::to_string(bo.seed)}, {"rows", a}};
                j["fit"] = fit ? json{{"exponent", fit->exponent}, {"log2_C", fit->log2_C}, {"points", fit->points}}
                               : json(nullptr);
                out << j.dump(2) << "\n";
            }
        }
        return 0;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const PromiseViolated& e) {
        err << "promise violated: " << e.what() << "\n";
        return 2;
    } catch (const NotOfForm& e) {
        err << "not of form: " << e.what() << "\n";
        return 2;
    } catch (const SearchExhausted& e) {
        err << "search exhausted: " << e.what() << "\n";
        return 2;
    } catch (const NotSemiprime& e) {
        err << "not a semiprime: " << e.what();
        if (!e.partial().empty()) {
            err << " (partial:";
            for (auto& p : e.partial()) err << ' ' << p;
            err << ')';
        }
        err << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace latfactor
