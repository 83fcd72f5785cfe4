// divisum: batch experiments on truncated divisor sums, singular series,
// correlations, short-interval moments and gap bounds. Every run prints a
// CSV table (default) or a JSON report.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "divisum/divisum.hpp"

namespace {

using namespace divisum;
using json = nlohmann::ordered_json;

using Cell = std::variant<std::monostate, std::string, double, std::int64_t, bool>;

std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string csv_cell(const Cell& c) {
    struct {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(const std::string& s) const {
            if (s.find_first_of(",\"\n") == std::string::npos) return s;
            std::string q = "\"";
            for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            return q + "\"";
        }
        std::string operator()(double v) const { return fmt_double(v); }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
    } vis;
    return std::visit(vis, c);
}

json json_cell(const Cell& c) {
    struct {
        json operator()(std::monostate) const { return nullptr; }
        json operator()(const std::string& s) const { return s; }
        // Round-trip through the same 12-digit text as CSV so both formats agree.
        json operator()(double v) const {
            if (!std::isfinite(v)) return fmt_double(v);
            return std::strtod(fmt_double(v).c_str(), nullptr);
        }
        json operator()(std::int64_t v) const { return v; }
        json operator()(bool v) const { return v; }
    } vis;
    return std::visit(vis, c);
}

struct Report {
    std::string command;
    json params = json::object();
    std::vector<std::string> columns{"name", "value", "predictor", "tolerance", "pass"};
    std::vector<std::vector<Cell>> rows;

    void add(std::string name, Cell value, Cell predictor = {}, Cell tolerance = {}, Cell pass = {}) {
        rows.push_back({std::move(name), std::move(value), std::move(predictor), std::move(tolerance), std::move(pass)});
    }

    void write(std::ostream& os, const std::string& format, double runtime_ms) const {
        if (format == "json") {
            json out;
            out["command"] = command;
            out["params"] = params;
            json results = json::array();
            for (const auto& r : rows) {
                json obj = json::object();
                for (std::size_t i = 0; i < columns.size() && i < r.size(); ++i)
                    if (!std::holds_alternative<std::monostate>(r[i])) obj[columns[i]] = json_cell(r[i]);
                results.push_back(std::move(obj));
            }
            out["results"] = std::move(results);
            out["runtime_ms"] = std::llround(runtime_ms);
            os << out.dump(2) << '\n';
            return;
        }
        for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
        os << '\n';
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
            os << '\n';
        }
    }
};

struct Globals {
    unsigned threads = 0;
    std::string format = "csv";
    std::string out;
    std::int64_t prime_limit = 0;
    std::uint64_t seed = 1;
};

std::int64_t env_prime_limit() {
    if (const char* env = std::getenv("DIVISUM_PRIME_LIMIT")) {
        const long long v = std::strtoll(env, nullptr, 10);
        if (v > 0) return v;
    }
    return 1000000;
}

std::vector<std::int64_t> parse_list(const std::string& s) {
    std::vector<std::int64_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(item, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("not an integer list: '" + s + "'");
        }
        if (pos != item.size()) throw std::invalid_argument("not an integer list: '" + s + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty integer list");
    return out;
}

json to_json(const std::vector<std::int64_t>& v) {
    json a = json::array();
    for (auto x : v) a.push_back(x);
    return a;
}

// Sieve covering both the requested range and the Euler-product truncation.
struct Context {
    FactorSieve sieve;
    ConstantsTable consts;

    Context(std::int64_t needed, const Globals& g)
        : sieve(std::max(needed, g.prime_limit), g.threads), consts(ConstantsTable::build(sieve, g.prime_limit)) {}
};

double relative_gap(double value, double target) {
    return target == 0.0 ? std::fabs(value) : std::fabs(value - target) / std::fabs(target);
}

// ---------------------------------------------------------------- commands

Report cmd_sieve_info(std::int64_t limit, const Globals& g) {
    const FactorSieve s(limit, g.threads);
    Report rep;
    rep.command = "sieve-info";
    rep.params = {{"limit", limit}};
    rep.add("limit", limit);
    rep.add("prime_count", static_cast<std::int64_t>(s.primes().size()));
    rep.add("largest_prime", s.primes().empty() ? std::int64_t{0} : s.primes().back());
    rep.add("table_bytes", static_cast<std::int64_t>(s.table().size_bytes()));
    return rep;
}

Report cmd_lambda(std::int64_t n, double R, const std::string& kind, const Globals& g) {
    require_arg(n >= 1, "--n must be >= 1");
    Context ctx(std::max<std::int64_t>({n, divisor_cutoff(R), 2}), g);
    Report rep;
    rep.command = "lambda";
    rep.params = {{"n", n}, {"r", R}, {"kind", kind}};
    const double vm = von_mangoldt(n, ctx.sieve);
    if (kind == "lower") {
        rep.add("lambda_R", lambda_lower_r_point(n, R, ctx.sieve));
    } else {
        const double v = lambda_r_point(n, R, ctx.sieve);
        // For 1 < n <= R every divisor survives and the sum is exactly Lambda(n).
        if (n > 1 && static_cast<double>(n) <= R)
            rep.add("Lambda_R", v, vm, 1e-9, std::fabs(v - vm) <= 1e-9);
        else
            rep.add("Lambda_R", v);
    }
    rep.add("Lambda", vm);
    return rep;
}

Report cmd_series(const std::vector<std::int64_t>& jvec, bool exact, const Globals& g) {
    require_distinct(jvec);
    std::int64_t spread = 0, maxabs = 1;
    for (auto a : jvec)
        for (auto b : jvec) spread = std::max(spread, std::abs(a - b));
    for (auto a : jvec) maxabs = std::max(maxabs, std::abs(a));
    Context ctx(std::max<std::int64_t>(spread, 2), g);
    Report rep;
    rep.command = "series";
    rep.params = {{"jvec", to_json(jvec)}, {"exact", exact}, {"prime_limit", g.prime_limit}};
    const auto f = sseries_vec(jvec, g.prime_limit, ctx.sieve);
    if (jvec.size() <= 3) {
        const auto ex = sseries_vec_exact(jvec, ctx.sieve);
        const double target = ex.value(ctx.consts);
        const double tol = 1e-9;
        rep.add("S(j)", f.value, target, tol, relative_gap(f.value, target) <= tol);
        if (exact) rep.add("S(j) exact", ex.str());
    } else {
        if (exact) throw unsupported_error("exact singular series is only provided for r <= 3");
        rep.add("S(j)", f.value);
    }
    rep.add("S(j) truncated", f.truncated);
    rep.add("tail_bound", f.tail_bound);
    return rep;
}

Report cmd_lemma(const std::string& which, double R, std::int64_t k, int j, std::int64_t samples, const Globals& g) {
    Report rep;
    rep.command = "lemma";
    rep.params = {{"lemma", which}, {"r", R}, {"k", k}, {"j", j}};
    if (which == "4exact") {
        if (samples > 0) {
            rep.params["samples"] = samples;
            rep.params["seed"] = g.seed;
            Context ctx(20000, g);
            std::mt19937_64 rng(g.seed);
            std::int64_t equal = 0;
            for (std::int64_t s = 0; s < samples; ++s) {
                const int jj = 1 + static_cast<int>(rng() % 2);
                std::int64_t rr = 0;
                do rr = 1 + static_cast<std::int64_t>(rng() % 10000);
                while (!is_squarefree(rr, ctx.sieve));
                std::int64_t kk = 1 + static_cast<std::int64_t>(rng() % 10000);
                if (kk % p_of(jj) != 0) kk = kk * p_of(jj) <= 10000 ? kk * p_of(jj) : p_of(jj);
                if (lemma4_exact(rr, kk, jj, ctx.sieve).equal()) ++equal;
            }
            rep.add("samples", samples);
            rep.add("equal", equal, samples, {}, equal == samples);
            return rep;
        }
        const auto r = static_cast<std::int64_t>(std::llround(R));
        require_arg(static_cast<double>(r) == R, "lemma 4exact needs an integer --r");
        Context ctx(std::max<std::int64_t>({r, k, 2}), g);
        const auto res = lemma4_exact(r, k, j, ctx.sieve);
        rep.add("lhs", res.lhs.str());
        rep.add("rhs", res.rhs.str());
        rep.add("equal", res.equal());
        return rep;
    }
    Context ctx(std::max<std::int64_t>({divisor_cutoff(R), k * 3, 2}), g);
    if (which == "1") {
        const auto res = lemma1_sum(R, k, j, ctx.sieve, ctx.consts);
        rep.add("lhs", res.lhs, res.main);
        rep.add("main", res.main);
        rep.add("residual", res.residual);
        rep.add("plain", lemma1_plain(R, k, j, ctx.sieve), 0.0);
    } else if (which == "2") {
        const auto res = lemma2_sum(R, k, j, ctx.sieve, ctx.consts);
        rep.add("lhs", res.lhs, res.main);
        rep.add("main", res.main);
        rep.add("scaled_residual", res.scaled_residual);
    } else if (which == "2log") {
        const auto res = lemma2_log_sum(R, k, j, ctx.sieve, ctx.consts);
        rep.add("lhs", res.lhs);
        rep.add("main_without_E", res.main_without_E);
        rep.add("empirical_E", res.empirical_E);
    } else if (which == "3") {
        const auto res = lemma3_sum(R, k, j, ctx.sieve, ctx.consts);
        rep.add("lhs", res.lhs, res.main ? Cell{*res.main} : Cell{});
        if (res.main) rep.add("main", *res.main);
    } else if (which == "4") {
        const auto res = lemma4_truncated(R, k, j, ctx.sieve, ctx.consts);
        rep.add("lhs", res.lhs, res.main);
        rep.add("main", res.main);
        rep.add("scaled_residual", (res.lhs - res.main) * std::sqrt(R));
    } else {
        throw std::invalid_argument("unknown lemma '" + which + "' (expected 1, 2, 2log, 3, 4, 4exact)");
    }
    return rep;
}

Report cmd_correlate(const std::vector<std::int64_t>& shifts, const std::vector<std::int64_t>& powers, std::int64_t N,
                     double r_exp, bool mixed, bool decomp, const std::string& kind, const Globals& g) {
    require_arg(N >= 0, "--n must be >= 0");
    require_arg(r_exp > 0.0, "--r-exp must be > 0");
    const double R = std::pow(static_cast<double>(std::max<std::int64_t>(N, 2)), r_exp);
    CorrelationSpec spec;
    spec.shifts = shifts;
    for (auto a : powers) spec.powers.push_back(static_cast<int>(a));
    spec.mixed = mixed;
    spec.approx = kind == "lower" ? ApproxKind::LambdaLowerR : ApproxKind::LambdaR;
    spec.validate();

    Report rep;
    rep.command = "correlate";
    rep.params = {{"shifts", to_json(shifts)}, {"powers", to_json(powers)}, {"n", N}, {"r_exp", r_exp},
                  {"R", R},         {"mixed", mixed},                {"kind", kind}};
    const std::int64_t top = N + std::max<std::int64_t>(0, spec.max_shift());

    if (decomp) {
        require_arg(!mixed && spec.approx == ApproxKind::LambdaR, "--decomp-check applies to pure Lambda_R sums");
        std::vector<std::int64_t> k3;
        for (std::size_t i = 0; i < shifts.size(); ++i)
            for (int a = 0; a < spec.powers[i]; ++a) k3.push_back(shifts[i]);
        require_arg(k3.size() == 3, "--decomp-check needs total power 3");
        Context ctx(std::max<std::int64_t>(top, divisor_cutoff(R)), g);
        const auto d = decomp_check_s3(N, R, k3[0], k3[1], k3[2], ctx.sieve, g.threads);
        rep.add("brute", d.brute, d.n_times_t3, d.bound, d.holds());
        rep.add("n_times_t3", d.n_times_t3);
        rep.add("bound", d.bound);
        return rep;
    }

    Context ctx(std::max<std::int64_t>({top, divisor_cutoff(R), 2}), g);
    const double brute = brute_corr(N, spec, R, ctx.sieve, g.threads);
    std::optional<double> pred;
    try {
        pred = mixed ? predictor_mixed(N, R, spec, ctx.sieve, ctx.consts)
                     : predictor_theorem1(N, R, spec, ctx.sieve, ctx.consts);
    } catch (const unsupported_error&) {
    }
    rep.add("brute", brute, pred ? Cell{*pred} : Cell{});
    if (pred) {
        rep.add("predictor", *pred);
        rep.add("ratio", *pred != 0.0 ? brute / *pred : std::nan(""));
    }
    return rep;
}

Report cmd_moments(std::int64_t N, double lambda, int k, const std::string& source, double r_exp,
                   std::optional<double> c_shift, std::optional<double> rho, bool primed, const Globals& g) {
    require_arg(N >= 2, "--n must be >= 2");
    require_arg(lambda >= 0.0, "--lambda must be >= 0");
    const double logN = std::log(static_cast<double>(N));
    const auto h = static_cast<std::int64_t>(std::llround(lambda * logN));
    const double R = std::pow(static_cast<double>(N), r_exp);
    Report rep;
    rep.command = "moments";
    rep.params = {{"n", N}, {"lambda", lambda}, {"h", h}, {"k", k}, {"source", source}, {"r_exp", r_exp}, {"R", R}};

    if (rho) {
        const double C = c_shift.value_or(0.0);
        rep.params["rho"] = *rho;
        rep.params["c_shift"] = C;
        Context ctx(2 * N + h + 1, g);
        const auto m = m_h_rho(N, h, *rho, R, C, ctx.sieve, g.threads);
        const double lam = static_cast<double>(h) / logN;
        const double th = std::log(R) / logN;
        Cell pred;
        if (lam != *rho) pred = m_h_rho_completed(lam, *rho, th, C);
        rep.add("M(h,rho)", m.value);
        rep.add("normalized", m.normalized, pred);
        if (lam != *rho) {
            rep.add("optimal_c", optimal_c(lam, *rho, th));
            rep.add("closed_form_at_optimal_c", m_h_rho_closed(lam, *rho, th));
        }
        return rep;
    }

    MomentParams p;
    p.N = N;
    p.h = h;
    p.k = k;
    if (source == "psi") p.source = MomentSource::Psi;
    else if (source == "psir") p.source = MomentSource::PsiR;
    else if (source == "mixed") p.source = MomentSource::Mixed;
    else throw std::invalid_argument("--source must be psi, psir or mixed");
    p.R = R;
    p.C = c_shift.value_or(0.0);
    p.primed = primed;
    p.threads = g.threads;
    rep.params["c_shift"] = p.C;
    rep.params["primed"] = primed;
    Context ctx((primed ? 2 * N : N) + h + 1, g);
    const auto m = moment(p, ctx.sieve);
    rep.add("value", m.value, m.predictor ? Cell{*m.predictor} : Cell{});
    rep.add("normalized", m.normalized, m.predictor_normalized ? Cell{*m.predictor_normalized} : Cell{});
    rep.add("lambda_realized", m.lambda);
    rep.add("theta", m.theta);
    return rep;
}

Report cmd_gallagher_avg(std::int64_t h, int r, const Globals& g) {
    Context ctx(std::max<std::int64_t>(h, 2), g);
    Report rep;
    rep.command = "gallagher-avg";
    rep.params = {{"h", h}, {"r", r}};
    rep.add("singular_avg", singular_avg(h, r, ctx.sieve, ctx.consts), 1.0);
    return rep;
}

Report cmd_gap_hist(std::int64_t N, double lambda, std::optional<std::int64_t> xi_r, const Globals& g) {
    require_arg(N >= 2, "--n must be >= 2");
    const double logN = std::log(static_cast<double>(N));
    const auto h = static_cast<std::int64_t>(std::llround(lambda * logN));
    const double lam = static_cast<double>(h) / logN;
    // Room past 2N for the prime after the range and p_{n+r}.
    const std::int64_t needed = 2 * N + h + 1 + 2000 * (xi_r.value_or(1) + 1);
    Context ctx(needed, g);
    const auto hist = gap_histogram(N, h, ctx.sieve, g.threads);
    Report rep;
    rep.command = "gap-hist";
    rep.params = {{"n", N}, {"lambda", lambda}, {"h", h}, {"lambda_realized", lam}};
    double fact = 1.0;
    for (std::size_t r = 0; r < hist.counts.size(); ++r) {
        if (r > 0) fact *= static_cast<double>(r);
        const double poisson = std::pow(lam, static_cast<double>(r)) * std::exp(-lam) / fact * static_cast<double>(N);
        rep.add("P_" + std::to_string(r), hist.counts[r], poisson);
    }
    rep.add("total", hist.total(), N, {}, hist.total() == N);
    for (std::size_t r = 0; r + 1 < hist.counts.size(); ++r) {
        rep.add("Q-_" + std::to_string(r), hist.q_minus(r));
        rep.add("Q+_" + std::to_string(r), hist.q_plus(r), {}, {}, hist.q_minus(r) + hist.q_plus(r) == N);
    }
    if (xi_r) {
        rep.params["xi_r"] = *xi_r;
        rep.add("empirical_xi", empirical_xi(N, *xi_r, ctx.sieve));
    }
    return rep;
}

Report cmd_gap_bounds(double B, double vartheta, int rmax) {
    Report rep;
    rep.command = "gap-bounds";
    rep.params = {{"b", B}, {"vartheta", vartheta}, {"rmax", rmax}};
    rep.columns = {"method", "r", "B", "vartheta", "value"};
    for (const auto& row : bound_table(B, vartheta, rmax).rows) {
        std::string m = to_string(row.method);
        if (row.maier_scaled) m += "_Maier";
        rep.rows.push_back({m, static_cast<std::int64_t>(row.r), std::isnan(row.B) ? Cell{} : Cell{row.B},
                            std::isnan(row.vartheta) ? Cell{} : Cell{row.vartheta}, row.value});
    }
    return rep;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"divisum: truncated divisor sums, singular series, prime correlations and gap bounds"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    g.prime_limit = env_prime_limit();
    app.add_option("--threads", g.threads, "Worker threads (0 = DIVISUM_THREADS or hardware)");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", g.out, "Output path (default stdout)");
    app.add_option("--prime-limit", g.prime_limit, "Euler-product truncation (default DIVISUM_PRIME_LIMIT or 1e6)")
        ->check(CLI::Range(std::int64_t{1000}, std::int64_t{1} << 31));
    app.add_option("--seed", g.seed, "Seed for randomized sampling");

    std::optional<Report> report;
    const auto started = std::chrono::steady_clock::now();

    auto* s_info = app.add_subcommand("sieve-info", "Sieve statistics");
    std::int64_t info_limit = 0;
    s_info->add_option("--limit", info_limit, "Sieve limit")->required();

    auto* s_lambda = app.add_subcommand("lambda", "Point value of Lambda_R(n) or lambda_R(n)");
    std::int64_t l_n = 0;
    double l_r = 1.0;
    std::string l_kind = "upper";
    s_lambda->add_option("--n", l_n)->required();
    s_lambda->add_option("--r", l_r)->required();
    s_lambda->add_option("--kind", l_kind)->check(CLI::IsMember({"upper", "lower"}));

    auto* s_series = app.add_subcommand("series", "Singular series of a shift vector");
    std::string se_j;
    bool se_exact = false;
    s_series->add_option("--jvec", se_j, "Comma-separated distinct shifts")->required();
    s_series->add_flag("--exact", se_exact);

    auto* s_lemma = app.add_subcommand("lemma", "Finite divisor sums with predicted main terms");
    std::string le_which;
    double le_r = 1.0;
    std::int64_t le_k = 1, le_samples = 0;
    int le_j = 1;
    s_lemma->add_option("which", le_which, "1, 2, 2log, 3, 4 or 4exact")
        ->required()
        ->check(CLI::IsMember({"1", "2", "2log", "3", "4", "4exact"}));
    s_lemma->add_option("--r", le_r, "Cutoff R (squarefree r for 4exact)");
    s_lemma->add_option("--k", le_k);
    s_lemma->add_option("--j", le_j);
    s_lemma->add_option("--samples", le_samples, "4exact: random instances drawn with --seed");

    auto* s_corr = app.add_subcommand("correlate", "Brute-force correlation against its main term");
    std::string co_shifts, co_powers;
    std::int64_t co_n = 0;
    double co_rexp = 0.25;
    bool co_mixed = false, co_decomp = false;
    std::string co_kind = "upper";
    s_corr->add_option("--shifts", co_shifts)->required();
    s_corr->add_option("--powers", co_powers)->required();
    s_corr->add_option("--n", co_n)->required();
    s_corr->add_option("--r-exp", co_rexp, "R = N^r_exp");
    s_corr->add_flag("--mixed", co_mixed);
    s_corr->add_flag("--decomp-check", co_decomp);
    s_corr->add_option("--kind", co_kind)->check(CLI::IsMember({"upper", "lower"}));

    auto* s_mom = app.add_subcommand("moments", "Short-interval moments");
    std::int64_t mo_n = 0;
    double mo_lambda = 1.0, mo_rexp = 0.25;
    int mo_k = 1;
    std::string mo_source = "psi";
    std::optional<double> mo_c, mo_rho;
    bool mo_primed = false;
    s_mom->add_option("--n", mo_n)->required();
    s_mom->add_option("--lambda", mo_lambda);
    s_mom->add_option("--k", mo_k);
    s_mom->add_option("--source", mo_source)->check(CLI::IsMember({"psi", "psir", "mixed"}));
    s_mom->add_option("--r-exp", mo_rexp, "R = N^r_exp");
    s_mom->add_option("--c-shift", mo_c);
    s_mom->add_option("--rho", mo_rho, "Evaluate M(h, rho) over (N, 2N]");
    s_mom->add_flag("--primed", mo_primed, "Sum over (N, 2N]");

    auto* s_gal = app.add_subcommand("gallagher-avg", "Average singular series over [1, h]^r");
    std::int64_t ga_h = 0;
    int ga_r = 2;
    s_gal->set_help_flag("--help", "Print this help message and exit");
    s_gal->add_option("--h", ga_h)->required();
    s_gal->add_option("--r", ga_r)->check(CLI::IsMember({2, 3}));

    auto* s_hist = app.add_subcommand("gap-hist", "Histogram of prime counts in (n, n + h]");
    std::int64_t gh_n = 0;
    double gh_lambda = 1.0;
    std::optional<std::int64_t> gh_xi;
    s_hist->add_option("--n", gh_n)->required();
    s_hist->add_option("--lambda", gh_lambda);
    s_hist->add_option("--xi", gh_xi, "Also report min (p_{n+r} - p_n)/log p_n");

    auto* s_bounds = app.add_subcommand("gap-bounds", "Small-gap bound tables");
    double gb_b = 4.0, gb_vt = 0.5;
    int gb_rmax = 10;
    s_bounds->add_option("--b", gb_b);
    s_bounds->add_option("--vartheta", gb_vt);
    s_bounds->add_option("--rmax", gb_rmax);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (*s_info) report = cmd_sieve_info(info_limit, g);
        else if (*s_lambda) report = cmd_lambda(l_n, l_r, l_kind, g);
        else if (*s_series) report = cmd_series(parse_list(se_j), se_exact, g);
        else if (*s_lemma) report = cmd_lemma(le_which, le_r, le_k, le_j, le_samples, g);
        else if (*s_corr)
            report = cmd_correlate(parse_list(co_shifts), parse_list(co_powers), co_n, co_rexp, co_mixed, co_decomp,
                                   co_kind, g);
        else if (*s_mom) report = cmd_moments(mo_n, mo_lambda, mo_k, mo_source, mo_rexp, mo_c, mo_rho, mo_primed, g);
        else if (*s_gal) report = cmd_gallagher_avg(ga_h, ga_r, g);
        else if (*s_hist) report = cmd_gap_hist(gh_n, gh_lambda, gh_xi, g);
        else if (*s_bounds) report = cmd_gap_bounds(gb_b, gb_vt, gb_rmax);
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return 2;
    } catch (const precondition_error& e) {
        std::cerr << "precondition violated: " << e.what() << '\n';
        return 3;
    } catch (const unsupported_error& e) {
        std::cerr << "unsupported: " << e.what() << '\n';
        return 3;
    } catch (const resource_error& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return 3;
    }

    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    if (g.out.empty()) {
        report->write(std::cout, g.format, ms);
    } else {
        std::ofstream f(g.out, std::ios::binary);
        if (!f) {
            std::cerr << "cannot open output file " << g.out << '\n';
            return 2;
        }
        report->write(f, g.format, ms);
    }
    return 0;
}
