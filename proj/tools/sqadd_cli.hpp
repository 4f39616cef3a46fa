#pragma once

#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <sqadd/sqadd.hpp>

namespace sqadd::cli {

using io::json;

struct CommonOptions {
    std::string out = "-";
    std::string format = "json";
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Named pass/fail results collected while a pipeline runs.
class Checks {
public:
    void add(const std::string& name, bool ok) { results_[name] = results_.count(name) ? results_[name] && ok : ok; }
    bool all() const
    {
        for (const auto& [k, v] : results_)
            if (!v)
                return false;
        return true;
    }
    json to_json() const { return json(results_); }

private:
    std::map<std::string, bool> results_;
};

/// Accepts "a,b,c" or "start:stop:step" (inclusive, tolerant to rounding).
inline std::vector<double> parse_grid(const std::string& text)
{
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        std::vector<double> parts;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ':'))
            parts.push_back(io::parse_double(item));
        if (parts.size() != 3 || parts[2] <= 0 || parts[1] < parts[0])
            throw InputError("grid '" + text + "' must be start:stop:step with step > 0");
        const auto count = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9)) + 1;
        if (count > 100000)
            throw InputError("grid '" + text + "' has more than 100000 points");
        for (long i = 0; i < count; ++i)
            out.push_back(parts[0] + static_cast<double>(i) * parts[2]);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(io::parse_double(item));
    if (out.empty())
        throw InputError("empty grid");
    return out;
}

inline std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

/// One element: "r", "r^k" (powers of the primitive element) or polynomial text reduced mod f.
inline AlgebraElement parse_element(const QuotientAlgebra& alg, const std::string& text,
                                    const std::optional<DiscreteLog>& dl)
{
    const std::string t = trim(text);
    if (!t.empty() && t[0] == 'r') {
        if (!dl)
            throw InputError("'" + t + "': powers of r need a field with at most 2^16 elements");
        long k = 1;
        if (t.size() > 1) {
            if (t.size() < 3 || t[1] != '^')
                throw InputError("malformed element '" + t + "'");
            std::size_t used = 0;
            try {
                k = std::stol(t.substr(2), &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != t.size() - 2)
                throw InputError("malformed exponent in '" + t + "'");
        }
        return alg.from_index(dl->power(k));
    }
    return alg.element(parse_polynomial(t));
}

/// "power", "normal", "normal:K" or semicolon-separated element expressions.
inline std::vector<AlgebraElement> parse_basis(const QuotientAlgebra& alg, const std::string& text,
                                               const std::optional<DiscreteLog>& dl)
{
    const std::string t = trim(text);
    if (t == "power")
        return power_basis(alg);
    if (t.rfind("normal", 0) == 0) {
        std::size_t which = 0;
        if (t.size() > 6) {
            if (t[6] != ':')
                throw InputError("malformed basis '" + t + "'");
            which = std::stoul(t.substr(7));
        }
        if (!alg.is_field())
            throw InputError("normal bases are only listed for fields");
        const auto nb = normal_bases(alg);
        if (which >= nb.size())
            throw InputError("normal basis index " + std::to_string(which) + " out of range (" +
                             std::to_string(nb.size()) + " available)");
        return nb[which];
    }
    std::vector<AlgebraElement> basis;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ';'))
        basis.push_back(parse_element(alg, item, dl));
    return basis;
}

inline json version_block()
{
    return json{{"tool", "sqadd"}, {"version", kVersion}};
}

// ---------------------------------------------------------------------------
// Rendering and round-trip verification

struct Rendered {
    std::string text;
    bool round_trip = false;
};

inline std::string render_json(const json& doc) { return doc.dump(2) + "\n"; }

/// CSV documents carry the version, config and checks as leading comment lines.
inline io::CsvTable with_header(io::CsvTable table, const json& config, const Checks& checks)
{
    table.comments = {std::string("sqadd ") + kVersion, "config " + config.dump(), "checks " + checks.to_json().dump()};
    return table;
}

inline bool json_round_trips(const std::string& text)
{
    return render_json(json::parse(text)) == text;
}

// ---------------------------------------------------------------------------
// Subcommands

struct FieldReportOptions {
    std::string poly;
    std::string basis = "power";
    std::string order = "auto";
};

inline int emit(const CommonOptions& common, const std::string& text, std::ostream& out)
{
    if (common.out == "-") {
        out << text;
        return 0;
    }
    std::ofstream f(common.out, std::ios::binary);
    if (!f)
        throw InputError("cannot open output file '" + common.out + "'");
    f << text;
    return f.good() ? 0 : 1;
}

/// Finishes a run: adds the round-trip check, writes the document, maps checks to an exit code.
inline int finish(const CommonOptions& common, const std::string& command, const json& config, Checks& checks,
                  const json& result, const std::function<std::optional<io::CsvTable>()>& csv_table,
                  const std::function<bool(const std::string&)>& typed_round_trip, std::ostream& out)
{
    std::string text;
    for (int pass = 0; pass < 2; ++pass) {
        if (common.format == "json") {
            json doc = version_block();
            doc["command"] = command;
            doc["config"] = config;
            doc["checks"] = checks.to_json();
            doc["result"] = result;
            text = render_json(doc);
            if (pass == 0)
                checks.add("output_round_trip", json_round_trips(text) && typed_round_trip(text));
        } else {
            auto table = csv_table();
            if (!table)
                throw InputError(command + ": CSV output is not available for this input");
            text = with_header(*table, config, checks).str();
            if (pass == 0)
                checks.add("output_round_trip",
                           io::CsvTable::parse(text).str() == text && typed_round_trip(text));
        }
    }
    const int io_status = emit(common, text, out);
    return io_status != 0 ? io_status : (checks.all() ? 0 : 1);
}

inline json common_config(const CommonOptions& c)
{
    return json{{"out", c.out}, {"format", c.format}, {"seed", c.seed}, {"threads", c.threads}};
}

inline std::vector<std::string> fractions(const std::vector<Rational>& v)
{
    std::vector<std::string> out;
    for (const auto& x : v)
        out.push_back(to_fraction_string(x));
    return out;
}

inline io::CsvTable sparse_matrix_csv(const TransitionMatrix& k)
{
    io::CsvTable t;
    t.header = {"from", "to", "probability"};
    for (std::size_t x = 0; x < k.size(); ++x)
        for (const auto& [y, p] : k.row(x))
            t.rows.push_back({k.states()[x], k.states()[y], to_fraction_string(p)});
    return t;
}

inline int cmd_field_report(const CommonOptions& common, const FieldReportOptions& opt, std::ostream& out)
{
    const BinaryPolynomial f = parse_polynomial(opt.poly);
    if (f.degree() < 1)
        throw InputError("modulus must have degree at least 1");
    if (!is_squarefree(f))
        throw InputError("modulus not squarefree: " + format_polynomial(f));
    const QuotientAlgebra alg(f);
    if (alg.dimension() > 14)
        throw InputError("field-report: state space 2^" + std::to_string(alg.dimension()) + " exceeds 2^14");
    std::optional<DiscreteLog> dl;
    if (alg.is_field())
        dl.emplace(alg);
    const auto basis = parse_basis(alg, opt.basis, dl);

    std::string order = opt.order;
    if (order == "auto")
        order = dl ? "log" : "index";
    if (order != "log" && order != "index")
        throw InputError("--order must be auto, log or index");
    if (order == "log" && !dl)
        throw InputError("--order log needs a field");

    Checks checks;
    const TransitionMatrix k = build_square_add(alg, basis);
    const TransitionMatrix p = build_squaring_permutation(alg);
    const TransitionMatrix t = build_add_only(alg, basis);
    checks.add("factorization_k_equals_pt", multiply(p, t) == k);
    checks.add("p_is_permutation", is_permutation_matrix(p));
    checks.add("t_is_symmetric", is_symmetric(t));

    std::vector<std::size_t> display(k.size());
    std::iota(display.begin(), display.end(), 0);
    if (order == "log")
        for (std::size_t i = 0; i < display.size(); ++i)
            display[i] = static_cast<std::size_t>(dl->power_order()[i]);
    const TransitionMatrix shown = k.reordered(display);

    const StationaryResult st = stationary(k);
    const bool irreducible = is_irreducible(k);
    const bool aperiodic = is_aperiodic(k);
    checks.add("stationary_unique", st.unique);
    checks.add("stationary_uniform", st.unique && *st.distribution == Distribution::uniform(k.size()));
    checks.add("irreducible", irreducible);
    checks.add("aperiodic", aperiodic);

    json result;
    json algebra{{"modulus", format_polynomial(f)},
                 {"dimension", alg.dimension()},
                 {"size", alg.size()},
                 {"is_field", alg.is_field()},
                 {"component_sizes", crt_summary(f)}};
    if (dl)
        algebra["primitive_element"] = format_element(alg, dl->generator());
    result["algebra"] = algebra;

    json basis_json = json::array();
    for (const auto& b : basis) {
        json e{{"element", format_element(alg, b)}};
        if (dl)
            e["name"] = dl->name(b.coords.to_index());
        basis_json.push_back(e);
    }
    result["basis"] = basis_json;
    result["normal_basis"] = is_normal_basis(alg, basis);
    result["squaring_matrix"] = squaring_matrix(alg).to_rows();
    result["order"] = order;
    result["transition_matrix"] = io::to_json(shown);
    if (dl) {
        std::vector<std::string> names;
        for (auto idx : display)
            names.push_back(dl->name(idx));
        result["state_names"] = names;
    }
    if (k.size() <= 64) {
        const RationalPolynomial cp = char_poly(k);
        checks.add("char_poly_vanishes_at_one", cp.evaluate(Rational(1)) == 0);
        result["char_poly"] = json{{"coefficients", fractions(cp.coefficients())}, {"text", cp.to_string()}};
    } else {
        result["char_poly"] = nullptr;
    }
    result["stationary"] = json{{"unique", st.unique},
                                {"distribution", st.unique ? io::to_json(*st.distribution, k.states()) : json(nullptr)}};
    result["irreducible"] = irreducible;
    result["aperiodic"] = aperiodic;

    json config = common_config(common);
    config["poly"] = opt.poly;
    config["basis"] = opt.basis;
    config["order"] = opt.order;

    const auto typed = [&](const std::string& text) {
        if (common.format == "json") {
            const json doc = json::parse(text);
            const auto back = io::transition_matrix_from_json(doc["result"]["transition_matrix"]);
            return back == shown && io::to_json(back) == doc["result"]["transition_matrix"];
        }
        const auto table = io::CsvTable::parse(text);
        return table.rows == sparse_matrix_csv(shown).rows;
    };
    return finish(common, "field-report", config, checks, result, [&] { return std::optional(sparse_matrix_csv(shown)); },
                  typed, out);
}

struct MixingOptions {
    std::optional<std::uint64_t> p;
    std::optional<long> d;
    std::string c_grid;
    std::string m_grid;
};

inline int cmd_mixing(const CommonOptions& common, const MixingOptions& opt, std::ostream& out)
{
    if (opt.p.has_value() == opt.d.has_value())
        throw InputError("mixing: give exactly one of --p and --d");
    long d = 0;
    if (opt.p) {
        const std::uint64_t p = *opt.p;
        if (p < 3 || !is_prime(p))
            throw InputError("mixing: p = " + std::to_string(p) + " is not an odd prime");
        if (!is_two_primitive_root(p))
            throw InputError("mixing: 2 is not a primitive root mod " + std::to_string(p) + "; order of 2 mod " +
                             std::to_string(p) + " is " + std::to_string(order_of_two(p)));
        d = static_cast<long>(p - 1);
    } else {
        d = *opt.d;
        if (d < 2)
            throw InputError("mixing: d must be at least 2");
    }
    std::vector<MixingReport> reports;
    if (!opt.m_grid.empty())
        for (double m : parse_grid(opt.m_grid)) {
            if (m <= 0)
                throw InputError("mixing: m must be positive");
            reports.push_back(l2_bound_and_tv(d, Real(m)));
        }
    const std::string c_grid = opt.c_grid.empty() && opt.m_grid.empty() ? "1,2,3,4,5" : opt.c_grid;
    if (!c_grid.empty())
        for (double c : parse_grid(c_grid)) {
            if ((std::log(static_cast<double>(d)) + c) <= 0)
                throw InputError("mixing: c = " + io::format_double(c) + " gives m <= 0");
            reports.push_back(mixing_report_at_c(d, Real(c)));
        }

    Checks checks;
    for (const auto& r : reports) {
        checks.add("lower_term_below_l2", r.lower_term <= r.l2_sq * (1 + 1e-12) || d < 3);
        checks.add("tv_upper_finite", std::isfinite(r.tv_upper));
        if (r.envelopes)
            for (int i = 0; i < 4; ++i)
                checks.add("envelopes_dominate", r.sigma[i] <= (*r.envelopes)[static_cast<std::size_t>(i)] * (1 + 1e-12));
    }

    json rows = json::array();
    for (const auto& r : reports)
        rows.push_back(io::to_json(r));
    json config = common_config(common);
    config["p"] = opt.p ? json(*opt.p) : json(nullptr);
    config["d"] = d;
    config["c_grid"] = opt.c_grid;
    config["m_grid"] = opt.m_grid;

    const auto typed = [&](const std::string& text) {
        if (common.format == "json") {
            const json doc = json::parse(text);
            for (const auto& row : doc["result"]["rows"])
                if (io::to_json(io::mixing_report_from_json(row)) != row)
                    return false;
            return true;
        }
        const auto table = io::CsvTable::parse(text);
        auto back = io::to_csv(io::mixing_reports_from_csv(table));
        back.comments = table.comments;
        return back.str() == text;
    };
    return finish(common, "mixing", config, checks, json{{"d", d}, {"rows", rows}},
                  [&] { return std::optional(io::to_csv(reports)); }, typed, out);
}

struct ModpOptions {
    std::optional<std::uint64_t> p;
    std::string range;
};

inline int cmd_modp(const CommonOptions& common, const ModpOptions& opt, std::ostream& out)
{
    if (opt.p.has_value() == !opt.range.empty())
        throw InputError("modp: give exactly one of --p and --range");
    json config = common_config(common);
    config["p"] = opt.p ? json(*opt.p) : json(nullptr);
    config["range"] = opt.range;
    Checks checks;

    if (opt.p) {
        const std::uint64_t p = *opt.p;
        if (p == 2)
            throw InputError("modp: p = 2 rejected, +1 and -1 coincide");
        if (p > kMaxModpPrime)
            throw InputError("modp: p = " + std::to_string(p) + " exceeds cap " + std::to_string(kMaxModpPrime));
        if (p < 3 || !is_prime(p))
            throw InputError("modp: p = " + std::to_string(p) + " is not an odd prime");
        const StationaryReport r = stationary_integer(p);
        checks.add("stationary_unique", r.unique);
        checks.add("predicted_zeros_are_zero", std::includes(r.zero_set.begin(), r.zero_set.end(),
                                                             r.predicted_zero_set.begin(), r.predicted_zero_set.end()));
        json result = io::to_json(r);
        result["zero_count"] = r.zero_set.size();
        result["max_min_ratio_approx"] = r.max_min_ratio.get_d();
        if (p % 4 == 3) {
            const Distribution he = he_distribution(p);
            const bool he_stationary = is_stationary(he, build_modp(p));
            bool matches = true;
            for (std::uint64_t j = 0; j < p; ++j) {
                Rational expected(r.pi_tilde[j], BigInt(static_cast<unsigned long>(2 * p)));
                expected.canonicalize();
                matches = matches && he[j] == expected;
            }
            checks.add("he_distribution_stationary", he_stationary);
            checks.add("he_distribution_matches", matches);
            checks.add("zeros_exactly_predicted", r.zero_set == r.predicted_zero_set);
        }
        const auto typed = [&](const std::string& text) {
            if (common.format == "json") {
                const json doc = json::parse(text);
                const auto back = io::stationary_report_from_json(doc["result"]);
                return back.pi_tilde == r.pi_tilde && back.zero_set == r.zero_set;
            }
            const auto table = io::CsvTable::parse(text);
            return table.rows == io::to_csv(r).rows;
        };
        return finish(common, "modp", config, checks, result, [&] { return std::optional(io::to_csv(r)); }, typed,
                      out);
    }

    const auto colon = opt.range.find(':');
    if (colon == std::string::npos)
        throw InputError("modp: --range must be LO:HI");
    std::uint64_t lo = 0, hi = 0;
    try {
        lo = std::stoull(opt.range.substr(0, colon));
        hi = std::stoull(opt.range.substr(colon + 1));
    } catch (const std::exception&) {
        throw InputError("modp: malformed --range '" + opt.range + "'");
    }
    if (hi < lo)
        throw InputError("modp: empty range");
    if (hi > kMaxModpPrime)
        throw InputError("modp: range end " + std::to_string(hi) + " exceeds cap " + std::to_string(kMaxModpPrime));
    const Census census = zero_census(lo, hi, common.threads);
    bool all_unique = true;
    for (const auto& row : census.rows)
        all_unique = all_unique && row.unique;
    checks.add("stationary_unique", all_unique);
    checks.add("three_mod_four_zeros_exactly_predicted",
               census.three_mod_four.exact_matches == census.three_mod_four.primes);
    const auto typed = [&](const std::string& text) {
        if (common.format == "json") {
            const json doc = json::parse(text);
            return doc["result"]["rows"].size() == census.rows.size();
        }
        const auto table = io::CsvTable::parse(text);
        Census back;
        back.rows = io::census_rows_from_csv(table);
        return io::to_csv(back).rows == table.rows;
    };
    return finish(common, "modp", config, checks, io::to_json(census), [&] { return std::optional(io::to_csv(census)); },
                  typed, out);
}

struct SimulateOptions {
    std::string poly;
    std::string basis = "power";
    std::optional<std::uint64_t> p;
    std::size_t n = 0;
    std::uint64_t trials = 0;
};

inline int cmd_simulate(const CommonOptions& common, const SimulateOptions& opt, std::ostream& out)
{
    if (opt.p.has_value() == !opt.poly.empty())
        throw InputError("simulate: give exactly one of --poly and --p");
    if (opt.trials == 0)
        throw InputError("simulate: trials must be positive (empty distribution)");
    std::optional<WalkSpec> spec;
    if (opt.p) {
        if (*opt.p < 3 || !is_prime(*opt.p))
            throw InputError("simulate: p = " + std::to_string(*opt.p) + " is not an odd prime");
        spec = ModpWalkSpec{*opt.p};
    } else {
        const BinaryPolynomial f = parse_polynomial(opt.poly);
        if (f.degree() < 1)
            throw InputError("modulus must have degree at least 1");
        if (!is_squarefree(f))
            throw InputError("modulus not squarefree: " + format_polynomial(f));
        QuotientAlgebra alg(f);
        if (alg.dimension() > 26)
            throw InputError("simulate: field walks limited to d <= 26");
        std::optional<DiscreteLog> dl;
        if (alg.is_field() && alg.dimension() <= 16)
            dl.emplace(alg);
        auto basis = parse_basis(alg, opt.basis, dl);
        spec = FieldWalkSpec{std::move(alg), std::move(basis)};
    }
    const Distribution emp = simulate(*spec, opt.n, opt.trials, common.seed, common.threads);
    std::vector<std::string> states;
    if (const auto* fw = std::get_if<FieldWalkSpec>(&*spec))
        states = detail::element_labels(fw->algebra);
    else
        for (std::uint64_t j = 0; j < emp.size(); ++j)
            states.push_back(std::to_string(j));

    Checks checks;
    json result;
    result["n"] = opt.n;
    result["trials"] = opt.trials;
    result["empirical"] = io::to_json(emp, states);
    const bool exact_available = state_count(*spec) <= kMaxDenseStates;
    if (exact_available) {
        const TransitionMatrix k = build_chain(*spec);
        const Distribution exact = evolve(Distribution::point_mass(k.size(), 0), k, opt.n);
        const Rational tv = tv_distance(emp, exact);
        result["tv_to_exact"] = to_fraction_string(tv);
        result["tv_to_exact_approx"] = tv.get_d();
        bool support_ok = true;
        for (std::size_t i = 0; i < emp.size(); ++i)
            support_ok = support_ok && (emp[i] == 0 || exact[i] > 0);
        checks.add("empirical_support_within_exact", support_ok);
    } else {
        result["tv_to_exact"] = nullptr;
        result["tv_to_exact_approx"] = nullptr;
    }

    json config = common_config(common);
    config["poly"] = opt.poly;
    config["basis"] = opt.basis;
    config["p"] = opt.p ? json(*opt.p) : json(nullptr);
    config["n"] = opt.n;
    config["trials"] = opt.trials;

    const auto typed = [&](const std::string& text) {
        if (common.format == "json") {
            const json doc = json::parse(text);
            return io::distribution_from_json(doc["result"]["empirical"]) == emp;
        }
        return io::distribution_from_csv(io::CsvTable::parse(text)) == emp;
    };
    return finish(common, "simulate", config, checks, result, [&] { return std::optional(io::to_csv(emp, states)); },
                  typed, out);
}

// ---------------------------------------------------------------------------

inline void add_common(CLI::App* sub, CommonOptions& c)
{
    sub->add_option("--out", c.out, "Output path, '-' for stdout")->capture_default_str();
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    sub->add_option("--seed", c.seed, "Random seed")->capture_default_str();
    sub->add_option("--threads", c.threads, "Worker threads")->check(CLI::Range(1u, 256u))->capture_default_str();
}

/// Entry point shared by the executable and the tests. Exit codes: 0 all checks pass,
/// 1 a consistency check failed, 2 bad input.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Square-and-add random walks: exact chains, spectra, mixing bounds and mod-p stationary data"};
    app.set_version_flag("--version", std::string("sqadd ") + kVersion);
    app.require_subcommand(1);

    CommonOptions common;
    FieldReportOptions field;
    MixingOptions mixing;
    ModpOptions modp;
    SimulateOptions sim;
    std::uint64_t mix_p = 0, modp_p = 0, sim_p = 0;
    long mix_d = 0;

    auto* fr = app.add_subcommand("field-report", "Chain, spectrum and stationary data for F_2[x]/(f)");
    fr->add_option("--poly", field.poly, "Modulus f: exponent list '0,1,3' or hex '0xb'")->required();
    fr->add_option("--basis", field.basis, "power | normal | normal:K | 'e1;e2;...' with r, r^k or polynomial text")
        ->capture_default_str();
    fr->add_option("--order", field.order, "State order: auto | log | index")->capture_default_str();
    add_common(fr, common);

    auto* mx = app.add_subcommand("mixing", "Fourier L2 bounds across a c or m grid");
    auto* mx_p = mx->add_option("--p", mix_p, "Prime with 2 a primitive root; d = p - 1");
    auto* mx_d = mx->add_option("--d", mix_d, "Dimension d");
    mx->add_option("--c-grid", mixing.c_grid, "c values: 'a,b,c' or 'start:stop:step'");
    mx->add_option("--m-grid", mixing.m_grid, "m values (n = d m): 'a,b,c' or 'start:stop:step'");
    add_common(mx, common);

    auto* mp = app.add_subcommand("modp", "Exact stationary vectors of X -> X^2 +- 1 mod p");
    auto* mp_p = mp->add_option("--p", modp_p, "Single odd prime");
    mp->add_option("--range", modp.range, "Census over primes in LO:HI");
    add_common(mp, common);

    auto* sm = app.add_subcommand("simulate", "Seeded Monte Carlo run, compared with the exact law");
    sm->add_option("--poly", sim.poly, "Field walk modulus");
    sm->add_option("--basis", sim.basis, "Basis for the field walk")->capture_default_str();
    auto* sm_p = sm->add_option("--p", sim_p, "Mod-p walk");
    sm->add_option("--n", sim.n, "Steps")->required();
    sm->add_option("--trials", sim.trials, "Independent runs")->required();
    add_common(sm, common);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << "sqadd " << kVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (fr->parsed())
            return cmd_field_report(common, field, out);
        if (mx->parsed()) {
            if (*mx_p)
                mixing.p = mix_p;
            if (*mx_d)
                mixing.d = mix_d;
            return cmd_mixing(common, mixing, out);
        }
        if (mp->parsed()) {
            if (*mp_p)
                modp.p = modp_p;
            return cmd_modp(common, modp, out);
        }
        if (*sm_p)
            sim.p = sim_p;
        return cmd_simulate(common, sim, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << " (at position " << e.position() << ")\n";
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
    }
    return 2;
}

} // namespace sqadd::cli
