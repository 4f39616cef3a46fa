#pragma once

#include <array>
#include <charconv>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "chain.hpp"
#include "modp.hpp"
#include "rational.hpp"
#include "spectral.hpp"

namespace sqadd::io {

using nlohmann::json;

/// Shortest decimal that parses back to the same double.
inline std::string format_double(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s)
{
    double v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::invalid_argument("malformed number '" + std::string(s) + "'");
    return v;
}

/// Integers that fit in 64 bits become JSON numbers, larger ones decimal strings.
inline json bigint_to_json(const BigInt& v)
{
    if (v.fits_slong_p())
        return static_cast<std::int64_t>(v.get_si());
    return v.get_str();
}

inline BigInt bigint_from_json(const json& j)
{
    if (j.is_string())
        return BigInt(j.get<std::string>());
    if (j.is_number_unsigned())
        return BigInt(std::to_string(j.get<std::uint64_t>()));
    return BigInt(std::to_string(j.get<std::int64_t>()));
}

// ---------------------------------------------------------------------------
// CSV

/// Comment lines (leading '#'), one header row, data rows; no quoting is needed by any writer here.
struct CsvTable {
    std::vector<std::string> comments;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string str() const
    {
        std::ostringstream os;
        for (const auto& c : comments)
            os << "# " << c << '\n';
        const auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                os << (i ? "," : "");
                if (cells[i].find_first_of(",\"\n") == std::string::npos) {
                    os << cells[i];
                    continue;
                }
                os << '"';
                for (char ch : cells[i])
                    os << (ch == '"' ? "\"\"" : std::string(1, ch));
                os << '"';
            }
            os << '\n';
        };
        line(header);
        for (const auto& r : rows)
            line(r);
        return os.str();
    }

    static CsvTable parse(std::string_view text)
    {
        CsvTable t;
        bool have_header = false;
        std::size_t pos = 0;
        while (pos < text.size()) {
            std::size_t end = text.find('\n', pos);
            if (end == std::string_view::npos)
                end = text.size();
            std::string_view line = text.substr(pos, end - pos);
            pos = end + 1;
            if (line.starts_with("# ")) {
                t.comments.emplace_back(line.substr(2));
                continue;
            }
            std::vector<std::string> cells;
            std::string cell;
            bool quoted = false;
            for (std::size_t i = 0; i < line.size(); ++i) {
                const char ch = line[i];
                if (quoted) {
                    if (ch != '"')
                        cell += ch;
                    else if (i + 1 < line.size() && line[i + 1] == '"')
                        cell += line[++i];
                    else
                        quoted = false;
                } else if (ch == '"') {
                    quoted = true;
                } else if (ch == ',') {
                    cells.push_back(std::move(cell));
                    cell.clear();
                } else {
                    cell += ch;
                }
            }
            if (quoted)
                throw std::invalid_argument("CSV line has an unterminated quote");
            cells.push_back(std::move(cell));
            if (!have_header) {
                t.header = std::move(cells);
                have_header = true;
            } else {
                if (cells.size() != t.header.size())
                    throw std::invalid_argument("CSV row has " + std::to_string(cells.size()) + " cells, header has " +
                                                std::to_string(t.header.size()));
                t.rows.push_back(std::move(cells));
            }
        }
        return t;
    }

    std::size_t column(std::string_view name) const
    {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name)
                return i;
        throw std::invalid_argument("CSV has no column '" + std::string(name) + "'");
    }
};

// ---------------------------------------------------------------------------
// Distributions and transition matrices

inline json to_json(const Distribution& d, const std::vector<std::string>& states)
{
    json values = json::array();
    for (const auto& v : d.values())
        values.push_back(to_fraction_string(v));
    return json{{"states", states}, {"values", values}};
}

inline Distribution distribution_from_json(const json& j)
{
    std::vector<Rational> v;
    for (const auto& s : j.at("values"))
        v.push_back(parse_fraction(s.get<std::string>()));
    return Distribution(std::move(v));
}

inline CsvTable to_csv(const Distribution& d, const std::vector<std::string>& states)
{
    CsvTable t;
    t.header = {"state", "probability"};
    for (std::size_t i = 0; i < d.size(); ++i)
        t.rows.push_back({states.at(i), to_fraction_string(d[i])});
    return t;
}

inline Distribution distribution_from_csv(const CsvTable& t)
{
    const std::size_t col = t.column("probability");
    std::vector<Rational> v;
    for (const auto& r : t.rows)
        v.push_back(parse_fraction(r[col]));
    return Distribution(std::move(v));
}

/// {"states": [...], "rows": [[[column, "num/den"], ...], ...]}
inline json to_json(const TransitionMatrix& k)
{
    json rows = json::array();
    for (std::size_t x = 0; x < k.size(); ++x) {
        json row = json::array();
        for (const auto& [y, p] : k.row(x))
            row.push_back(json::array({y, to_fraction_string(p)}));
        rows.push_back(std::move(row));
    }
    return json{{"states", k.states()}, {"rows", rows}};
}

inline TransitionMatrix transition_matrix_from_json(const json& j)
{
    std::vector<std::string> states = j.at("states").get<std::vector<std::string>>();
    std::vector<std::vector<TransitionMatrix::Entry>> rows;
    for (const auto& row : j.at("rows")) {
        std::vector<TransitionMatrix::Entry> r;
        for (const auto& e : row)
            r.emplace_back(e.at(0).get<std::size_t>(), parse_fraction(e.at(1).get<std::string>()));
        rows.push_back(std::move(r));
    }
    return TransitionMatrix(std::move(states), std::move(rows));
}

/// Dense form with "num/den" strings, rows in state order.
inline CsvTable to_csv(const TransitionMatrix& k)
{
    CsvTable t;
    t.header.push_back("from\\to");
    for (const auto& s : k.states())
        t.header.push_back(s);
    const auto dense = k.dense();
    for (std::size_t x = 0; x < k.size(); ++x) {
        std::vector<std::string> row{k.states()[x]};
        for (const auto& v : dense[x])
            row.push_back(to_fraction_string(v));
        t.rows.push_back(std::move(row));
    }
    return t;
}

// ---------------------------------------------------------------------------
// Mixing reports

inline const std::vector<std::string>& mixing_columns()
{
    static const std::vector<std::string> cols{"d",     "m",        "c",          "sigma1", "sigma2", "sigma3", "sigma4",
                                               "l2_sq", "tv_upper", "lower_term", "f1",     "f2",     "f3",     "f4"};
    return cols;
}

inline json to_json(const MixingReport& r)
{
    json j{{"d", r.d},
           {"m", r.m},
           {"c", r.c},
           {"sigma1", r.sigma[0]},
           {"sigma2", r.sigma[1]},
           {"sigma3", r.sigma[2]},
           {"sigma4", r.sigma[3]},
           {"l2_sq", r.l2_sq},
           {"tv_upper", r.tv_upper},
           {"lower_term", r.lower_term}};
    for (int i = 0; i < 4; ++i) {
        const std::string key = "f" + std::to_string(i + 1);
        j[key] = r.envelopes ? json((*r.envelopes)[static_cast<std::size_t>(i)]) : json(nullptr);
    }
    return j;
}

inline MixingReport mixing_report_from_json(const json& j)
{
    MixingReport r;
    r.d = j.at("d").get<long>();
    r.m = j.at("m").get<double>();
    r.n = r.m * static_cast<double>(r.d);
    r.c = j.at("c").get<double>();
    for (int i = 0; i < 4; ++i)
        r.sigma[i] = j.at("sigma" + std::to_string(i + 1)).get<double>();
    r.l2_sq = j.at("l2_sq").get<double>();
    r.tv_upper = j.at("tv_upper").get<double>();
    r.lower_term = j.at("lower_term").get<double>();
    if (!j.at("f1").is_null()) {
        std::array<double, 4> f{};
        for (int i = 0; i < 4; ++i)
            f[static_cast<std::size_t>(i)] = j.at("f" + std::to_string(i + 1)).get<double>();
        r.envelopes = f;
    }
    return r;
}

inline CsvTable to_csv(const std::vector<MixingReport>& reports)
{
    CsvTable t;
    t.header = mixing_columns();
    for (const auto& r : reports) {
        std::vector<std::string> row{std::to_string(r.d), format_double(r.m), format_double(r.c)};
        for (double s : r.sigma)
            row.push_back(format_double(s));
        row.push_back(format_double(r.l2_sq));
        row.push_back(format_double(r.tv_upper));
        row.push_back(format_double(r.lower_term));
        for (int i = 0; i < 4; ++i)
            row.push_back(r.envelopes ? format_double((*r.envelopes)[static_cast<std::size_t>(i)]) : "");
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline std::vector<MixingReport> mixing_reports_from_csv(const CsvTable& t)
{
    std::vector<MixingReport> out;
    for (const auto& row : t.rows) {
        MixingReport r;
        r.d = std::stol(row[t.column("d")]);
        r.m = parse_double(row[t.column("m")]);
        r.n = r.m * static_cast<double>(r.d);
        r.c = parse_double(row[t.column("c")]);
        for (int i = 0; i < 4; ++i)
            r.sigma[i] = parse_double(row[t.column("sigma" + std::to_string(i + 1))]);
        r.l2_sq = parse_double(row[t.column("l2_sq")]);
        r.tv_upper = parse_double(row[t.column("tv_upper")]);
        r.lower_term = parse_double(row[t.column("lower_term")]);
        if (!row[t.column("f1")].empty()) {
            std::array<double, 4> f{};
            for (int i = 0; i < 4; ++i)
                f[static_cast<std::size_t>(i)] = parse_double(row[t.column("f" + std::to_string(i + 1))]);
            r.envelopes = f;
        }
        out.push_back(r);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Mod-p reports

inline json to_json(const StationaryReport& r)
{
    json pi = json::array();
    for (const auto& v : r.pi_tilde)
        pi.push_back(bigint_to_json(v));
    return json{{"p", r.p},
                {"pi_tilde", pi},
                {"zero_set", r.zero_set},
                {"predicted_zero_set", r.predicted_zero_set},
                {"unexplained_zeros", r.unexplained_zeros()},
                {"unique", r.unique},
                {"max_min_ratio", to_fraction_string(r.max_min_ratio)}};
}

inline StationaryReport stationary_report_from_json(const json& j)
{
    StationaryReport r;
    r.p = j.at("p").get<std::uint64_t>();
    for (const auto& v : j.at("pi_tilde"))
        r.pi_tilde.push_back(bigint_from_json(v));
    r.zero_set = j.at("zero_set").get<std::vector<std::uint64_t>>();
    r.predicted_zero_set = j.at("predicted_zero_set").get<std::vector<std::uint64_t>>();
    r.unique = j.at("unique").get<bool>();
    r.max_min_ratio = parse_fraction(j.at("max_min_ratio").get<std::string>());
    return r;
}

/// One row per residue j.
inline CsvTable to_csv(const StationaryReport& r)
{
    CsvTable t;
    t.header = {"j", "pi_tilde", "predicted_zero"};
    std::vector<bool> predicted(r.p, false);
    for (auto j : r.predicted_zero_set)
        predicted[j] = true;
    for (std::uint64_t j = 0; j < r.p; ++j)
        t.rows.push_back({std::to_string(j), r.pi_tilde[j].get_str(), predicted[j] ? "1" : "0"});
    return t;
}

inline CsvTable to_csv(const Census& c)
{
    CsvTable t;
    t.header = {"p", "p_mod_4", "zero_count", "predicted_count", "exact_match", "unique", "min_nonzero", "max_nonzero"};
    for (const auto& r : c.rows)
        t.rows.push_back({std::to_string(r.p), std::to_string(r.residue_class), std::to_string(r.zero_count),
                          std::to_string(r.predicted_count), r.exact_match ? "1" : "0", r.unique ? "1" : "0",
                          r.min_nonzero.get_str(), r.max_nonzero.get_str()});
    return t;
}

inline std::vector<CensusRow> census_rows_from_csv(const CsvTable& t)
{
    std::vector<CensusRow> out;
    for (const auto& row : t.rows) {
        CensusRow r;
        r.p = std::stoull(row[t.column("p")]);
        r.residue_class = std::stoull(row[t.column("p_mod_4")]);
        r.zero_count = std::stoull(row[t.column("zero_count")]);
        r.predicted_count = std::stoull(row[t.column("predicted_count")]);
        r.exact_match = row[t.column("exact_match")] == "1";
        r.unique = row[t.column("unique")] == "1";
        r.min_nonzero = BigInt(row[t.column("min_nonzero")]);
        r.max_nonzero = BigInt(row[t.column("max_nonzero")]);
        out.push_back(std::move(r));
    }
    return out;
}

inline json summary_to_json(const ClassSummary& s)
{
    return json{{"primes", s.primes}, {"exact_matches", s.exact_matches}, {"mean_zero_proportion", s.mean_zero_proportion}};
}

inline json to_json(const Census& c)
{
    json rows = json::array();
    for (const auto& r : c.rows)
        rows.push_back(json{{"p", r.p},
                            {"p_mod_4", r.residue_class},
                            {"zero_count", r.zero_count},
                            {"predicted_count", r.predicted_count},
                            {"exact_match", r.exact_match},
                            {"unique", r.unique},
                            {"min_nonzero", bigint_to_json(r.min_nonzero)},
                            {"max_nonzero", bigint_to_json(r.max_nonzero)}});
    return json{{"rows", rows},
                {"one_mod_four", summary_to_json(c.one_mod_four)},
                {"three_mod_four", summary_to_json(c.three_mod_four)}};
}

} // namespace sqadd::io
