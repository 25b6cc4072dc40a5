#include "zetadef/pipeline.hpp"

#include <nlohmann/json.hpp>

#include <iostream>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace zetadef {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string bigint_str(const BigInt& v) { return v.str(); }

int default_n_target(std::int64_t p, int a, int n, int b) {
    BigInt q = pow_ui(p, (unsigned long)a);
    BigInt bound = 0;
    BigInt binom = 1;
    for (int i = 1; i <= b; ++i) {
        binom = binom * (b - i + 1) / i;
        // 2 C(b,i) q^{i(n-1)/2}: compare squares to stay integral
        BigInt sq = 4 * binom * binom * pow_bi(q, (unsigned long)(i * (n - 1)));
        if (sq > bound) bound = sq;
    }
    int N = 1;
    while (pow_ui(p, (unsigned long)(2 * N)) <= bound) ++N;
    return N;
}

JobSpec job_from_json(const json& j) {
    JobSpec job;
    job.p = j.at("p").get<std::int64_t>();
    job.a = j.value("a", 1);
    if (j.contains("f")) {
        for (const auto& c : j.at("f")) job.f.push_back(c.get<std::int64_t>());
    } else {
        job.f = (job.a == 1) ? std::vector<std::int64_t>{0, 1} : std::vector<std::int64_t>{};
    }
    if (!j.contains("P1") || !j.at("P1").is_array() || j.at("P1").empty())
        throw ValidationError("P1 must be a non-empty term array");
    int n = -1, d = -1;
    for (const auto& t : j.at("P1")) {
        Term term;
        for (const auto& e : t.at("exponents")) term.expo.push_back(e.get<int>());
        if (t.at("coeff").is_array()) {
            for (const auto& c : t.at("coeff")) {
                if (c.is_string())
                    term.coeff.push_back(BigInt(c.get<std::string>()));
                else
                    term.coeff.push_back(BigInt(c.get<std::int64_t>()));
            }
        } else {
            term.coeff.push_back(BigInt(t.at("coeff").get<std::int64_t>()));
        }
        int deg = 0;
        for (int e : term.expo) {
            if (e < 0) throw ValidationError("negative exponent");
            deg += e;
        }
        if (n < 0)
            n = (int)term.expo.size() - 1;
        else if ((int)term.expo.size() != n + 1)
            throw ValidationError("inconsistent exponent vector lengths");
        if (d < 0)
            d = deg;
        else if (deg != d)
            throw ValidationError("P1 is not homogeneous of uniform degree");
        job.P1.terms.push_back(std::move(term));
    }
    job.P1.n = n;
    job.P1.d = d;
    job.n = n;
    job.d = d;
    if (j.contains("diag"))
        for (const auto& c : j.at("diag")) job.avec.push_back(c.get<std::int64_t>());
    if (job.avec.empty()) job.avec.assign(n + 1, 1);
    std::string m = j.value("method", "both");
    if (m == "sqrt-p")
        job.method = Method::SqrtP;
    else if (m == "linear")
        job.method = Method::Linear;
    else if (m == "both")
        job.method = Method::Both;
    else if (m == "oracle")
        job.method = Method::Oracle;
    else
        throw ValidationError("unknown method: " + m);
    if (j.contains("precision") && !j.at("precision").is_null())
        job.precision = j.at("precision").get<int>();
    job.seed = j.value("seed", 0ull);
    job.retries = j.value("retries", 3);
    job.max_oracle_size = j.value("max_oracle_size", 1000000000ull);
    job.oracle_check = j.value("oracle_check", false);
    job.oracle_imax = j.value("oracle_imax", 0);
    job.threads = j.value("threads", 1);
    job.verbose = j.value("verbose", false);
    job.K_scale = j.value("k_scale", 1);
    return job;
}

json job_to_json(const JobSpec& job) {
    json j;
    j["p"] = job.p;
    j["a"] = job.a;
    j["f"] = job.f;
    json terms = json::array();
    for (const auto& t : job.P1.terms) {
        json tt;
        tt["exponents"] = t.expo;
        std::vector<std::string> cc;
        for (const auto& c : t.coeff) cc.push_back(c.str());
        tt["coeff"] = cc;
        terms.push_back(tt);
    }
    j["P1"] = terms;
    j["diag"] = job.avec;
    j["seed"] = job.seed;
    return j;
}

namespace {

void validate(const JobSpec& job) {
    if (job.p < 3 || !is_probable_prime(BigInt(job.p))) throw ValidationError("p must be an odd prime");
    if (job.d < 2 || job.n < 1) throw ValidationError("need d >= 2 and n >= 1");
    if (job.d % job.p == 0) throw ValidationError("p divides d");
    if (job.a < 1) throw ValidationError("a must be >= 1");
    if ((int)job.f.size() != job.a + 1 || job.f[job.a] != 1)
        throw ValidationError("field modulus f must be monic of degree a");
    if ((int)job.avec.size() != job.n + 1) throw ValidationError("diag must have n+1 entries");
    for (auto ai : job.avec)
        if (ai % job.p == 0) throw ValidationError("diagonal coefficients must be units");
    // smoothness of the target fibre over F_q
    std::vector<std::int64_t> fmodp;
    for (auto c : job.f) fmodp.push_back(((c % job.p) + job.p) % job.p);
    GFq F(job.p, fmodp);
    if (!F.is_irreducible(fmodp)) throw ValidationError("f is reducible mod p");
    if (!check_smooth(job.P1, F)) throw ValidationError("P1 defines a singular hypersurface");
}

ordered_json zeta_to_json(const ZetaFunction& Z) {
    ordered_json out;
    std::vector<std::string> num, den;
    for (const auto& c : Z.numerator) num.push_back(c.str());
    for (const auto& c : Z.denominator) den.push_back(c.str());
    out["numerator"] = num;
    out["denominator"] = den;
    return out;
}

}  // namespace

RunResult run_oracle(const JobSpec& job) {
    validate(job);
    const int b = (int)b_closed_form(job.n, job.d);
    BigInt q = pow_ui(job.p, (unsigned long)job.a);
    std::vector<std::int64_t> fmodp;
    for (auto c : job.f) fmodp.push_back(((c % job.p) + job.p) % job.p);
    int imax = job.oracle_imax;
    if (imax <= 0) {
        // as many as the guard affords, at most b
        imax = 0;
        for (int i = 1; i <= b; ++i) {
            long double sz = 1;
            bool ok = true;
            for (int t = 0; t < job.a * i * job.n; ++t) {
                sz *= (long double)job.p;
                if (sz > (long double)job.max_oracle_size) ok = false;
            }
            if (!ok) break;
            imax = i;
        }
        if (imax == 0) throw TooLarge("oracle cannot afford even i=1");
    }
    std::vector<BigInt> counts;
    for (int i = 1; i <= imax; ++i)
        counts.push_back(count_points(job.P1, job.p, job.a, fmodp, i, job.max_oracle_size,
                                      job.seed + 17));
    ordered_json doc;
    doc["p"] = job.p;
    doc["a"] = job.a;
    doc["q"] = q.str();
    doc["n"] = job.n;
    doc["d"] = job.d;
    doc["b"] = b;
    std::vector<std::string> cs;
    for (const auto& c : counts) cs.push_back(c.str());
    doc["counts"] = cs;
    RunResult rr;
    rr.checks_ok = true;
    // full zeta when enough counts are available
    try {
        auto chi = chi_from_counts(counts, b, q, job.n);
        std::vector<std::string> chis;
        for (const auto& c : chi) chis.push_back(c.str());
        doc["chi"] = chis;
        doc["zeta"] = zeta_to_json(assemble_zeta(chi, q, job.n));
    } catch (const Inconsistent& e) {
        doc["chi"] = nullptr;
        doc["zeta"] = nullptr;
        doc["note"] = std::string("zeta not determined: ") + e.what();
    }
    rr.document = doc;
    return rr;
}

RunResult run(const JobSpec& job) {
#ifdef _OPENMP
    omp_set_num_threads(std::max(1, job.threads));
#endif
    if (job.method == Method::Oracle) return run_oracle(job);
    validate(job);
    const int n = job.n, d = job.d, a = job.a;
    const std::int64_t p = job.p;
    MonomialBasis basis = monomial_basis(n, d);
    const int b = basis.b;
    BigInt q = pow_ui(p, (unsigned long)a);
    const int N_target = job.precision.value_or(default_n_target(p, a, n, b));

    std::vector<std::int64_t> avec = job.avec;
    std::mt19937_64 rng(job.seed * 0x9e3779b97f4a7c15ull + 12345);
    ConnectionData cd;
    int attempts_used = 0;
    PadicContext probe = PadicContext::make(p, a, 1, [&] {
        std::vector<BigInt> fv;
        for (auto c : job.f) fv.push_back(BigInt(c));
        return fv;
    }());
    for (int attempt = 0;; ++attempt) {
        try {
            Pencil pc;
            pc.n = n;
            pc.d = d;
            pc.avec = avec;
            pc.P1 = job.P1;
            if (a == 1) {
                pc.K = NumField();
            } else {
                std::vector<BigRat> fr;
                for (auto c : job.f) fr.push_back(BigRat(c));
                pc.K = NumField(fr);
            }
            cd = gauss_manin(pc, basis);
            // genericity: r a unit at both fibres mod p
            {
                std::vector<Zq> rz;
                for (const auto& co : cd.r) {
                    Zq z = probe.zero();
                    for (size_t i = 0; i < co.size() && (int)i < a; ++i) z.c[i] = probe.mod(co[i]);
                    rz.push_back(z);
                }
                if (!check_generic_pencil(rz, probe))
                    throw GenericityFailure("r(0) or r(1) not a unit mod p");
            }
            break;
        } catch (const GenericityFailure&) {
            if (attempt >= job.retries) throw;
            for (auto& ai : avec) ai = 1 + (std::int64_t)(rng() % (std::uint64_t)std::min<std::int64_t>(p - 1, 19));
            ++attempts_used;
        } catch (const NotInJacobianIdeal&) {
            if (attempt >= job.retries) throw;
            for (auto& ai : avec) ai = 1 + (std::int64_t)(rng() % (std::uint64_t)std::min<std::int64_t>(p - 1, 19));
            ++attempts_used;
        }
    }

    PrecisionPlan plan = precision_plan(p, a, d, n, b, N_target, cd.deg_r, cd.deg_G, job.K_scale);
    std::vector<BigInt> fv;
    for (auto c : job.f) fv.push_back(BigInt(c));
    PadicContext ctx = PadicContext::make(p, a, plan.W, fv);
    ZqConnection zc = reduce_connection(cd, ctx);
    if (!check_generic_pencil(zc.r, ctx)) throw GenericityFailure("genericity lost at working precision");

    if (job.verbose)
        std::cerr << "[plan] N_target=" << plan.N_target << " N_phi=" << plan.N_phi
                  << " h=" << plan.h << " theta=" << plan.theta << " kappa=" << plan.kappa
                  << " K=" << plan.K << " delta=" << plan.delta << " W=" << plan.W
                  << " deg_r=" << zc.deg_r << " deg_G=" << zc.deg_G << "\n";

    FrobeniusMatrix ph0 = phi0(basis, avec, ctx, plan.N_phi0);
    long nC = (plan.K + p - 1) / p;
    ScaledMatSeries cinv = cminus_series(zc, nC, ctx);

    Phi1Options opt;
    opt.verbose = job.verbose;
    FrobeniusMatrix phi1;
    if (job.method == Method::Linear) {
        phi1 = phi1_linear(zc, ph0, cinv, plan, ctx, opt);
    } else if (job.method == Method::SqrtP) {
        CompanionBlock cb = build_companion(zc, plan.theta, ctx);
        phi1 = phi1_sqrt_p(cb, zc, ph0, cinv, plan, ctx, opt);
    } else {
        FrobeniusMatrix lin = phi1_linear(zc, ph0, cinv, plan, ctx, opt);
        CompanionBlock cb = build_companion(zc, plan.theta, ctx);
        FrobeniusMatrix sq = phi1_sqrt_p(cb, zc, ph0, cinv, plan, ctx, opt);
        if (!frob_equal_mod(lin, sq, ctx, plan.N_phi))
            throw ChecksFailed("phi1 linear and sqrt-p paths disagree");
        phi1 = lin;
    }

    FrobeniusMatrix phq = frobenius_q(phi1, ctx);
    std::vector<BigInt> chi = char_poly_lift(phq, ctx, q, n, b, N_target);
    ZetaFunction Z = assemble_zeta(chi, q, n);

    std::vector<BigInt> oracle_counts;
    int imax_check = 0;
    if (job.oracle_check) {
        std::vector<std::int64_t> fmodp;
        for (auto c : job.f) fmodp.push_back(((c % p) + p) % p);
        int imax = job.oracle_imax;
        if (imax <= 0) {
            for (int i = 1; i <= std::max(2, b); ++i) {
                long double sz = 1;
                bool ok = true;
                for (int t = 0; t < a * i * n; ++t) {
                    sz *= (long double)p;
                    if (sz > (long double)job.max_oracle_size) ok = false;
                }
                if (!ok) break;
                imax = i;
            }
        }
        for (int i = 1; i <= imax; ++i)
            oracle_counts.push_back(
                count_points(job.P1, p, a, fmodp, i, job.max_oracle_size, job.seed + 17));
        imax_check = imax;
    }

    WeilReport rep = weil_checks(Z, chi, q, n, job.oracle_check ? &oracle_counts : nullptr,
                                 imax_check);
    if (!rep.ok) {
        std::string msg = "weil checks failed:";
        for (auto& f : rep.failures) msg += " " + f;
        throw ChecksFailed(msg);
    }

    ordered_json doc;
    doc["p"] = p;
    doc["a"] = a;
    doc["q"] = q.str();
    doc["n"] = n;
    doc["d"] = d;
    doc["b"] = b;
    doc["method"] = job.method == Method::Linear   ? "linear"
                    : job.method == Method::SqrtP ? "sqrt-p"
                                                  : "both";
    doc["diag"] = avec;
    doc["genericity"] = {{"deg_r", zc.deg_r}, {"deg_G", zc.deg_G}, {"retries_used", attempts_used}};
    doc["precision"] = {{"N_target", plan.N_target}, {"N_phi", plan.N_phi},
                        {"N_phi0", plan.N_phi0},     {"h", plan.h},
                        {"theta", plan.theta},       {"kappa", plan.kappa},
                        {"K", plan.K},               {"delta", plan.delta},
                        {"W", plan.W}};
    std::vector<std::string> chis;
    for (const auto& c : chi) chis.push_back(c.str());
    doc["chi"] = chis;
    doc["zeta"] = zeta_to_json(Z);
    std::vector<std::string> cnts;
    for (const auto& c : rep.counts) cnts.push_back(c.str());
    doc["counts"] = cnts;
    ordered_json checks;
    checks["weil_roots"] = true;
    checks["counts_integral"] = true;
    checks["methods_agree"] = job.method == Method::Both;
    checks["oracle_match"] = job.oracle_check;
    doc["checks"] = checks;
    RunResult rr;
    rr.document = doc;
    rr.checks_ok = true;
    return rr;
}

}  // namespace zetadef
